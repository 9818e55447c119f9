/*
   Copyright 2026 The ppinv Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef PPINV_LITERALS_HPP
#define PPINV_LITERALS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "ppinv/field.hpp"
#include "ppinv/linpoly.hpp"
#include "ppinv/matrix.hpp"
#include "ppinv/poly.hpp"
#include "ppinv/subspace.hpp"

namespace ppinv {

/// Decimal element literal in [0, q^n).
Elem parse_elem(const FieldTower& F, std::string_view text);
/// poly:[e0,e1,...]
Poly parse_poly(const FieldTower& F, std::string_view text);
/// lin:[e0,...,e_{n-1}]
LinPoly parse_lin(const FieldTower& F, std::string_view text);
/// span{e1,...,ek} over F_q; the generators need not be independent.
SubspaceBasis parse_span(const FieldTower& F, std::string_view text);

std::string format_elem(Elem a);
std::string format_poly(const Poly& f);
std::string format_lin(const LinPoly& L);
std::string format_span(const FieldTower& F, const SubspaceBasis& V);
/// Rows separated by ';', entries by ','.
std::string format_matrix(const Matrix& M);

}  // namespace ppinv

#endif
