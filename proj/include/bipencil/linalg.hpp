/*
 * Copyright 2026 The bipencil Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "bipencil/matrix.hpp"

#include <functional>
#include <optional>

namespace bipencil {

template <typename T>
struct RowEchelon {
    Matrix<T> reduced;               ///< reduced row-echelon form, zero rows dropped
    std::vector<std::size_t> pivots; ///< pivot column of each nonzero row
};

namespace detail {

inline int pivot_weight(const Rational& q)
{
    return static_cast<int>(mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2));
}
inline int pivot_weight(const RationalFunction& f)
{
    return 64 * (f.numerator().degree() + f.denominator().degree()) + static_cast<int>(f.numerator().coefficients().size());
}

} // namespace detail

/// Gauss-Jordan elimination over a field. The row space, and therefore the
/// reduced form, does not depend on pivot choice within a column.
template <typename T>
RowEchelon<T> row_echelon(Matrix<T> m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::optional<std::size_t> best;
        int best_weight = 0;
        for (std::size_t i = r; i < rows; ++i) {
            if (is_zero(m(i, c)))
                continue;
            const int w = detail::pivot_weight(m(i, c));
            if (!best || w < best_weight) {
                best = i;
                best_weight = w;
            }
        }
        if (!best)
            continue;
        m.swap_rows(r, *best);
        const T inv = T(1) / m(r, c);
        for (std::size_t j = c; j < cols; ++j)
            m(r, j) = m(r, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || is_zero(m(i, c)))
                continue;
            const T factor = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!is_zero(m(r, j)))
                    m(i, j) = m(i, j) - factor * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    Matrix<T> reduced(r, cols);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            reduced(i, j) = m(i, j);
    return {std::move(reduced), std::move(pivots)};
}

/// Basis of the right kernel {x : M x = 0}, one vector per row.
template <typename T>
Matrix<T> kernel_basis(const Matrix<T>& m)
{
    const auto ech = row_echelon(m);
    const std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto p : ech.pivots)
        is_pivot[p] = true;
    Matrix<T> basis(0, cols);
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<T> v(cols, T(0));
        v[free] = T(1);
        for (std::size_t i = 0; i < ech.pivots.size(); ++i)
            v[ech.pivots[i]] = -ech.reduced(i, free);
        basis.append_row(v);
    }
    return basis;
}

std::size_t matrix_rank(const QMatrix& m);
std::size_t matrix_rank(const RFMatrix& m);
/// Rank over the fraction field, by fraction-free (Bareiss) elimination.
std::size_t matrix_rank(const PolyMatrix& m);

/// Kernel over Q(λ) with denominators cleared and polynomial content removed.
PolyMatrix polynomial_kernel_basis(const PolyMatrix& m);

Rational determinant(const QMatrix& m);
Polynomial determinant(const PolyMatrix& m);

/// Pfaffian of a skew matrix with Pf([[0,a],[-a,0]]) = a and first-row
/// expansion sign convention. Throws StructuralError on odd or non-skew input.
Rational pfaffian(const QMatrix& m);
/// Polynomial entries: evaluation at deg+1 rational nodes and interpolation.
Polynomial pfaffian(const PolyMatrix& m);

/// Recursive first-row expansion; exponential, usable over any ring.
template <typename T>
T pfaffian_by_expansion(const Matrix<T>& m)
{
    const std::size_t n = m.rows();
    if (!m.is_skew())
        throw StructuralError("pfaffian of a non-skew matrix");
    if (n % 2 != 0)
        throw StructuralError("pfaffian of an odd-order matrix");
    if (n == 0)
        return T(1);
    T total(0);
    for (std::size_t j = 1; j < n; ++j) {
        if (is_zero(m(0, j)))
            continue;
        std::vector<std::size_t> rest;
        for (std::size_t k = 1; k < n; ++k)
            if (k != j)
                rest.push_back(k);
        T term = m(0, j) * pfaffian_by_expansion(m.principal_minor(rest));
        if (j % 2 == 1)
            total += term;
        else
            total -= term;
    }
    return total;
}

std::optional<QMatrix> inverse(const QMatrix& m);
/// Solves A X = B; nullopt when inconsistent. Returns one particular solution.
std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b);

/// Reduced row-echelon basis of the row space of m.
QMatrix row_space(const QMatrix& m);

QMatrix to_rational_matrix(const Matrix<long>& m);

/// Calls fn on every k-subset of {0..n-1} in lexicographic order; stops
/// early when fn returns false.
void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn);

} // namespace bipencil
