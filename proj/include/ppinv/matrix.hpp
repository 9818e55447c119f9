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

#ifndef PPINV_MATRIX_HPP
#define PPINV_MATRIX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "ppinv/field.hpp"

namespace ppinv {

/// Dense row-major matrix over F_{q^n} (scalar-level matrices use embedded codes).
class Matrix {
   public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Elem& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    Elem operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
    std::vector<Elem> row(std::size_t i) const;
    std::vector<Elem> col(std::size_t j) const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

   private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Elem> data_;
};

Matrix mat_mul(const FieldTower& F, const Matrix& A, const Matrix& B);
Matrix transpose(const Matrix& A);
std::vector<Elem> vec_mat(const FieldTower& F, const std::vector<Elem>& v, const Matrix& A);

/// Reduced row echelon form with first-nonzero pivoting; pivots receives pivot columns.
Matrix rref(const FieldTower& F, Matrix A, std::vector<std::size_t>* pivots = nullptr);
std::size_t rank(const FieldTower& F, const Matrix& A);
Elem determinant(const FieldTower& F, Matrix A);
/// A x = b with free variables set to 0, or nullopt when inconsistent.
std::optional<std::vector<Elem>> solve(const FieldTower& F, const Matrix& A, const std::vector<Elem>& b);
/// Basis of {x : A x = 0}.
std::vector<std::vector<Elem>> null_space(const FieldTower& F, const Matrix& A);
std::optional<Matrix> inverse(const FieldTower& F, const Matrix& A);

}  // namespace ppinv

#endif
