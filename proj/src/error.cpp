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

#include "ppinv/error.hpp"

namespace ppinv {

std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::not_prime: return "not_prime";
        case Errc::not_irreducible: return "not_irreducible";
        case Errc::degree_mismatch: return "degree_mismatch";
        case Errc::tower_mismatch: return "tower_mismatch";
        case Errc::division_by_zero: return "division_by_zero";
        case Errc::desk_scale_exceeded: return "desk_scale_exceeded";
        case Errc::not_permutation: return "not_permutation";
        case Errc::duplicate_node: return "duplicate_node";
        case Errc::not_bijective_on_domain: return "not_bijective_on_domain";
        case Errc::singular_basis_system: return "singular_basis_system";
        case Errc::singular_dickson: return "singular_dickson";
        case Errc::hypothesis_violated: return "hypothesis_violated";
        case Errc::not_bijective_on_subspace: return "not_bijective_on_subspace";
        case Errc::no_solution: return "no_solution";
        case Errc::no_suitable_root: return "no_suitable_root";
        case Errc::zero_c: return "zero_c";
        case Errc::trace_zero: return "trace_zero";
        case Errc::bad_exponent: return "bad_exponent";
        case Errc::no_branch_applies: return "no_branch_applies";
        case Errc::parse_error: return "parse_error";
        case Errc::overflow: return "overflow";
        case Errc::internal: return "internal";
    }
    return "unknown";
}

}  // namespace ppinv
