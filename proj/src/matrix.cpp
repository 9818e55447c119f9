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

#include "ppinv/matrix.hpp"

#include <utility>

namespace ppinv {

Matrix Matrix::identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = Elem{1};
    return I;
}

std::vector<Elem> Matrix::row(std::size_t i) const {
    return std::vector<Elem>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<Elem> Matrix::col(std::size_t j) const {
    std::vector<Elem> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix mat_mul(const FieldTower& F, const Matrix& A, const Matrix& B) {
    if (A.cols() != B.rows()) throw Error(Errc::internal, "matrix shapes do not match");
    Matrix C(A.rows(), B.cols());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t k = 0; k < A.cols(); ++k) {
            Elem a = A(i, k);
            if (a.code == 0) continue;
            for (std::size_t j = 0; j < B.cols(); ++j) C(i, j) = F.add(C(i, j), F.mul(a, B(k, j)));
        }
    return C;
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.cols(), A.rows());
    for (std::size_t i = 0; i < A.rows(); ++i)
        for (std::size_t j = 0; j < A.cols(); ++j) T(j, i) = A(i, j);
    return T;
}

std::vector<Elem> vec_mat(const FieldTower& F, const std::vector<Elem>& v, const Matrix& A) {
    if (v.size() != A.rows()) throw Error(Errc::internal, "vector and matrix shapes do not match");
    std::vector<Elem> out(A.cols(), Elem{0});
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (v[i].code == 0) continue;
        for (std::size_t j = 0; j < A.cols(); ++j) out[j] = F.add(out[j], F.mul(v[i], A(i, j)));
    }
    return out;
}

Matrix rref(const FieldTower& F, Matrix A, std::vector<std::size_t>* pivots) {
    std::size_t r = 0;
    if (pivots) pivots->clear();
    for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
        std::size_t piv = r;
        while (piv < A.rows() && A(piv, c).code == 0) ++piv;
        if (piv == A.rows()) continue;
        if (piv != r)
            for (std::size_t j = 0; j < A.cols(); ++j) std::swap(A(piv, j), A(r, j));
        Elem s = F.inv(A(r, c));
        for (std::size_t j = 0; j < A.cols(); ++j) A(r, j) = F.mul(A(r, j), s);
        for (std::size_t i = 0; i < A.rows(); ++i) {
            if (i == r || A(i, c).code == 0) continue;
            Elem f = A(i, c);
            for (std::size_t j = 0; j < A.cols(); ++j) A(i, j) = F.sub(A(i, j), F.mul(f, A(r, j)));
        }
        if (pivots) pivots->push_back(c);
        ++r;
    }
    return A;
}

std::size_t rank(const FieldTower& F, const Matrix& A) {
    std::vector<std::size_t> piv;
    rref(F, A, &piv);
    return piv.size();
}

Elem determinant(const FieldTower& F, Matrix A) {
    if (A.rows() != A.cols()) throw Error(Errc::internal, "determinant of a non-square matrix");
    const std::size_t n = A.rows();
    Elem det{1};
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && A(piv, c).code == 0) ++piv;
        if (piv == n) return Elem{0};
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, A(c, c));
        Elem s = F.inv(A(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            if (A(i, c).code == 0) continue;
            Elem f = F.mul(A(i, c), s);
            for (std::size_t j = c; j < n; ++j) A(i, j) = F.sub(A(i, j), F.mul(f, A(c, j)));
        }
    }
    return det;
}

std::optional<std::vector<Elem>> solve(const FieldTower& F, const Matrix& A, const std::vector<Elem>& b) {
    if (b.size() != A.rows()) throw Error(Errc::internal, "right-hand side has wrong length");
    Matrix aug(A.rows(), A.cols() + 1);
    for (std::size_t i = 0; i < A.rows(); ++i) {
        for (std::size_t j = 0; j < A.cols(); ++j) aug(i, j) = A(i, j);
        aug(i, A.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    Matrix R = rref(F, std::move(aug), &piv);
    if (!piv.empty() && piv.back() == A.cols()) return std::nullopt;
    std::vector<Elem> x(A.cols(), Elem{0});
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = R(r, A.cols());
    return x;
}

std::vector<std::vector<Elem>> null_space(const FieldTower& F, const Matrix& A) {
    std::vector<std::size_t> piv;
    Matrix R = rref(F, A, &piv);
    std::vector<bool> is_pivot(A.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<Elem>> basis;
    for (std::size_t f = 0; f < A.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Elem> v(A.cols(), Elem{0});
        v[f] = Elem{1};
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = F.neg(R(r, f));
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Matrix> inverse(const FieldTower& F, const Matrix& A) {
    const std::size_t n = A.rows();
    if (A.cols() != n) throw Error(Errc::internal, "inverse of a non-square matrix");
    if (n == 0) return Matrix{};
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
        aug(i, n + i) = Elem{1};
    }
    std::vector<std::size_t> piv;
    Matrix R = rref(F, std::move(aug), &piv);
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i, j) = R(i, n + j);
    return out;
}

}  // namespace ppinv
