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

#include "bipencil/linalg.hpp"

#include <sstream>

namespace bipencil {

PolyMatrix linear_pencil_matrix(const QMatrix& a, const QMatrix& b)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw StructuralError("pencil matrices differ in shape");
    PolyMatrix m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m(i, j) = Polynomial({a(i, j), b(i, j)});
    return m;
}

QMatrix evaluate(const PolyMatrix& m, const Rational& at)
{
    QMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = m(i, j).evaluate(at);
    return out;
}

RFMatrix to_rational_functions(const PolyMatrix& m)
{
    RFMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(i, j) = RationalFunction(m(i, j));
    return out;
}

std::string to_string(const QMatrix& m)
{
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j)
            out << (j ? ", " : "") << to_string(m(i, j));
        out << ']';
    }
    out << ']';
    return out.str();
}

std::size_t matrix_rank(const QMatrix& m)
{
    return row_echelon(m).pivots.size();
}

std::size_t matrix_rank(const RFMatrix& m)
{
    return row_echelon(m).pivots.size();
}

namespace {

// Fraction-free elimination over an integral domain with exact division.
// Returns the rank and, for square input, the determinant (sign tracked).
template <typename T, typename ExactDiv>
std::pair<std::size_t, T> bareiss(Matrix<T> m, ExactDiv exact_div)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    T prev(1);
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = rows;
        for (std::size_t i = r; i < rows; ++i)
            if (!is_zero(m(i, c))) {
                piv = i;
                break;
            }
        if (piv == rows)
            continue;
        if (piv != r) {
            m.swap_rows(piv, r);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                T v = m(r, c) * m(i, j) - m(i, c) * m(r, j);
                m(i, j) = exact_div(v, prev);
            }
            m(i, c) = T(0);
        }
        prev = m(r, c);
        ++r;
    }
    T det(0);
    if (rows == cols && r == rows) {
        det = prev;
        if (sign < 0)
            det = -det;
    } else if (rows == cols && rows == 0) {
        det = T(1);
    }
    return {r, det};
}

Rational q_div(const Rational& a, const Rational& b)
{
    return a / b;
}

Polynomial p_div(const Polynomial& a, const Polynomial& b)
{
    return a.exact_div(b);
}

} // namespace

std::size_t matrix_rank(const PolyMatrix& m)
{
    return bareiss(m, p_div).first;
}

Rational determinant(const QMatrix& m)
{
    if (!m.is_square())
        throw StructuralError("determinant of a non-square matrix");
    return bareiss(m, q_div).second;
}

Polynomial determinant(const PolyMatrix& m)
{
    if (!m.is_square())
        throw StructuralError("determinant of a non-square matrix");
    return bareiss(m, p_div).second;
}

PolyMatrix polynomial_kernel_basis(const PolyMatrix& m)
{
    const RFMatrix k = kernel_basis(to_rational_functions(m));
    PolyMatrix out(0, m.cols());
    for (std::size_t r = 0; r < k.rows(); ++r) {
        Polynomial den(Rational(1));
        for (std::size_t j = 0; j < k.cols(); ++j)
            den = lcm(den, k(r, j).denominator());
        std::vector<Polynomial> v(k.cols());
        Polynomial content;
        for (std::size_t j = 0; j < k.cols(); ++j) {
            v[j] = k(r, j).numerator() * den.exact_div(k(r, j).denominator());
            content = gcd(content, v[j]);
        }
        if (!content.is_zero() && !content.is_constant())
            for (auto& e : v)
                e = e.exact_div(content);
        // normalize the last nonzero entry's leading coefficient to 1
        for (std::size_t j = v.size(); j-- > 0;)
            if (!v[j].is_zero()) {
                const Rational s = 1 / v[j].leading();
                for (auto& e : v)
                    e *= s;
                break;
            }
        out.append_row(v);
    }
    return out;
}

Rational pfaffian(const QMatrix& input)
{
    const std::size_t n = input.rows();
    if (!input.is_skew())
        throw StructuralError("pfaffian of a non-skew matrix");
    if (n % 2 != 0)
        throw StructuralError("pfaffian of an odd-order matrix");
    QMatrix m = input;
    Rational result = 1;
    for (std::size_t k = 0; k + 1 < n; k += 2) {
        std::size_t piv = n;
        for (std::size_t j = k + 1; j < n; ++j)
            if (!is_zero(m(k, j))) {
                piv = j;
                break;
            }
        if (piv == n)
            return 0;
        if (piv != k + 1) {
            m.swap_rows(piv, k + 1);
            m.swap_cols(piv, k + 1);
            result = -result;
        }
        const Rational p = m(k, k + 1);
        result *= p;
        // Schur complement of the leading 2x2 block:
        // C'_{ab} = C_{ab} + (v_a u_b - u_a v_b) / p, u = row k, v = row k+1.
        for (std::size_t a = k + 2; a < n; ++a) {
            const Rational ua = m(k, a);
            const Rational va = m(k + 1, a);
            if (is_zero(ua) && is_zero(va))
                continue;
            for (std::size_t b = k + 2; b < n; ++b) {
                const Rational delta = (va * m(k, b) - ua * m(k + 1, b)) / p;
                if (!is_zero(delta))
                    m(a, b) += delta;
            }
        }
    }
    return result;
}

Polynomial pfaffian(const PolyMatrix& m)
{
    const std::size_t n = m.rows();
    if (!m.is_skew())
        throw StructuralError("pfaffian of a non-skew matrix");
    if (n % 2 != 0)
        throw StructuralError("pfaffian of an odd-order matrix");
    int max_deg = 0;
    for (const auto& e : m.data())
        max_deg = std::max(max_deg, e.degree());
    const std::size_t nodes = (n / 2) * static_cast<std::size_t>(max_deg) + 1;
    std::vector<Rational> xs, ys;
    xs.reserve(nodes);
    ys.reserve(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
        xs.emplace_back(static_cast<long>(k));
        ys.push_back(pfaffian(evaluate(m, xs.back())));
    }
    return interpolate(xs, ys);
}

std::optional<QMatrix> inverse(const QMatrix& m)
{
    if (!m.is_square())
        throw StructuralError("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    const auto ech = row_echelon(aug);
    if (ech.pivots.size() < n || ech.pivots[n - 1] != n - 1)
        return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = ech.reduced(i, n + j);
    return inv;
}

std::optional<QMatrix> solve(const QMatrix& a, const QMatrix& b)
{
    if (a.rows() != b.rows())
        throw StructuralError("solve: row count mismatch");
    const std::size_t n = a.cols();
    const std::size_t k = b.cols();
    QMatrix aug(a.rows(), n + k);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug(i, j) = a(i, j);
        for (std::size_t j = 0; j < k; ++j)
            aug(i, n + j) = b(i, j);
    }
    const auto ech = row_echelon(aug);
    QMatrix x(n, k);
    for (std::size_t r = 0; r < ech.pivots.size(); ++r) {
        const std::size_t p = ech.pivots[r];
        if (p >= n)
            return std::nullopt;
        for (std::size_t j = 0; j < k; ++j)
            x(p, j) = ech.reduced(r, n + j);
    }
    return x;
}

QMatrix row_space(const QMatrix& m)
{
    return row_echelon(m).reduced;
}

QMatrix to_rational_matrix(const Matrix<long>& m)
{
    QMatrix q(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            q(i, j) = m(i, j);
    return q;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& fn)
{
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    if (k > n)
        return;
    for (;;) {
        if (!fn(idx))
            return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace bipencil
