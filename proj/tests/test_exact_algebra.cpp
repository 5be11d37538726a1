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

#include "bipencil/factor.hpp"
#include "bipencil/linalg.hpp"
#include "bipencil/smith.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bipencil;

namespace {

const Polynomial lam = Polynomial::monomial(1);

Polynomial lin(long c0, long c1)
{
    return Polynomial({Rational(c0), Rational(c1)});
}

// Leibniz-free determinant oracle: cofactor expansion along the first row.
Rational cofactor_det(const QMatrix& m)
{
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    Rational total = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_zero(m(0, j)))
            continue;
        std::vector<std::size_t> rows, cols;
        for (std::size_t k = 1; k < n; ++k)
            rows.push_back(k);
        for (std::size_t k = 0; k < n; ++k)
            if (k != j)
                cols.push_back(k);
        Rational term = m(0, j) * cofactor_det(m.submatrix(rows, cols));
        total += (j % 2 == 0) ? term : Rational(-term);
    }
    return total;
}

QMatrix random_skew(std::mt19937_64& rng, std::size_t n, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    QMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            m(i, j) = Rational(d(rng), 1 + std::abs(d(rng)));
            m(i, j).canonicalize();
            m(j, i) = -m(i, j);
        }
    return m;
}

QMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int bound)
{
    std::uniform_int_distribution<int> d(-bound, bound);
    QMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = d(rng);
    return m;
}

} // namespace

TEST(Rational, ParsesFractionsAndDecimals)
{
    EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
    EXPECT_EQ(parse_rational("-1.25"), Rational(-5, 4));
    EXPECT_EQ(parse_rational(" 7 "), Rational(7));
    EXPECT_EQ(to_string(parse_rational("-3/6")), "-1/2");
    EXPECT_THROW(parse_rational("1/0"), FormatError);
    EXPECT_THROW(parse_rational("abc"), FormatError);
    EXPECT_THROW(parse_rational(""), FormatError);
}

TEST(MatrixRank, ZeroIdentityAndSymbolic)
{
    EXPECT_EQ(matrix_rank(QMatrix(3, 3)), 0u);
    EXPECT_EQ(matrix_rank(QMatrix::identity(4)), 4u);
    // [[0,1,λ],[-1,0,0],[-λ,0,0]]
    PolyMatrix m{{Polynomial(), Polynomial(1L), lam}, {Polynomial(-1L), Polynomial(), Polynomial()}, {-lam, Polynomial(), Polynomial()}};
    EXPECT_EQ(matrix_rank(m), 2u);
    EXPECT_EQ(matrix_rank(to_rational_functions(m)), 2u);
}

TEST(KernelBasis, ExamplesAndEmptyKernel)
{
    EXPECT_EQ(kernel_basis(QMatrix::identity(3)).rows(), 0u);
    EXPECT_EQ(kernel_basis(QMatrix(2, 2)).rows(), 2u);
    PolyMatrix m{{Polynomial(), Polynomial(1L), lam}, {Polynomial(-1L), Polynomial(), Polynomial()}, {-lam, Polynomial(), Polynomial()}};
    const PolyMatrix k = polynomial_kernel_basis(m);
    ASSERT_EQ(k.rows(), 1u);
    EXPECT_EQ(k(0, 0), Polynomial());
    EXPECT_EQ(k(0, 1), -lam);
    EXPECT_EQ(k(0, 2), Polynomial(1L));
}

TEST(KernelBasis, RankNullityAndAnnihilationProperty)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 7;
        QMatrix m = random_matrix(rng, r, c, 2);
        if (trial % 3 == 0 && r > 1) // force dependence
            for (std::size_t j = 0; j < c; ++j)
                m(r - 1, j) = m(0, j) * 2;
        const QMatrix k = kernel_basis(m);
        EXPECT_EQ(matrix_rank(m) + k.rows(), c);
        for (std::size_t i = 0; i < k.rows(); ++i)
            for (const auto& e : m * k.row(i))
                EXPECT_TRUE(is_zero(e));
    }
}

TEST(Pfaffian, BaseCases)
{
    QMatrix two{{0, 5}, {-5, 0}};
    EXPECT_EQ(pfaffian(two), Rational(5));
    QMatrix symp(4, 4);
    symp(0, 2) = symp(1, 3) = 1;
    symp(2, 0) = symp(3, 1) = -1;
    // first-row expansion: Pf = a f - b e + c d, here -b e = -1
    EXPECT_EQ(pfaffian(symp), Rational(-1));
    EXPECT_EQ(pfaffian(QMatrix(0, 0)), Rational(1));
    EXPECT_THROW(pfaffian(QMatrix(3, 3)), StructuralError);
    EXPECT_THROW(pfaffian(QMatrix{{0, 1}, {1, 0}}), StructuralError);
}

TEST(Pfaffian, JordanPencilIsSquareOfShift)
{
    // A + λB for the 4x4 Jordan template with M_A = [[-3,1],[0,-3]]
    PolyMatrix m(4, 4);
    const Polynomial d = lin(-3, 1);
    m(0, 2) = d;
    m(0, 3) = Polynomial(1L);
    m(1, 3) = d;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            m(j, i) = -m(i, j);
    // only the b e term survives: Pf = -(λ - 3)^2
    EXPECT_EQ(pfaffian(m), -(d * d));
    EXPECT_EQ(pfaffian_by_expansion(m), -(d * d));
}

TEST(Pfaffian, SquareEqualsDeterminant)
{
    std::mt19937_64 rng(1);
    for (std::size_t n = 2; n <= 10; n += 2)
        for (int trial = 0; trial < 6; ++trial) {
            const QMatrix m = random_skew(rng, n, 3);
            const Rational pf = pfaffian(m);
            EXPECT_EQ(pf * pf, determinant(m)) << "n=" << n;
            if (n <= 8)
                EXPECT_EQ(pf, pfaffian_by_expansion(m));
        }
}

TEST(Pfaffian, CongruenceScalesByDeterminant)
{
    std::mt19937_64 rng(2);
    for (std::size_t n = 2; n <= 8; n += 2)
        for (int trial = 0; trial < 8; ++trial) {
            const QMatrix m = random_skew(rng, n, 3);
            const QMatrix s = random_matrix(rng, n, n, 3);
            EXPECT_EQ(pfaffian(s.transpose() * m * s), determinant(s) * pfaffian(m));
        }
}

TEST(Determinant, BareissMatchesCofactorExpansion)
{
    std::mt19937_64 rng(3);
    for (std::size_t n = 1; n <= 6; ++n)
        for (int trial = 0; trial < 5; ++trial) {
            const QMatrix m = random_matrix(rng, n, n, 4);
            EXPECT_EQ(determinant(m), cofactor_det(m));
        }
}

TEST(PolyGcd, Examples)
{
    const Polynomial a = lam * lam - Polynomial(1L);
    EXPECT_EQ(gcd(a, lin(-1, 1)), lin(-1, 1));
    const Polynomial p = lin(2, 4) * lin(1, 3);
    EXPECT_EQ(gcd(p, Polynomial()), p.monic());
    EXPECT_TRUE(gcd(Polynomial(), Polynomial()).is_zero());
    EXPECT_EQ(gcd(lin(-3, 1) * lin(-3, 1), lin(-3, 1) * lin(-5, 1)), lin(-3, 1));
}

TEST(PolyGcd, ExtendedGcdBezoutIdentity)
{
    const Polynomial a = lin(-3, 1) * lin(1, 1) * lin(2, 1);
    const Polynomial b = lin(-3, 1) * (lam * lam + Polynomial(1L));
    const auto eg = extended_gcd(a, b);
    EXPECT_EQ(eg.g, lin(-3, 1));
    EXPECT_EQ(eg.s * a + eg.t * b, eg.g);
}

TEST(Factor, SplitsRationalAndQuadraticFactors)
{
    const Polynomial q = lam * lam - lam * Rational(2) + Polynomial(5L); // t^2 - 2t + 5
    const Polynomial p = lin(-3, 1).pow(2) * q * lin(1, 2) * (lam * lam - Polynomial(2L));
    const auto f = irreducible_factors(p);
    ASSERT_EQ(f.size(), 4u);
    EXPECT_EQ(f[0].factor, lin(-3, 1));
    EXPECT_EQ(f[0].multiplicity, 2);
    EXPECT_EQ(f[1].factor, Polynomial({Rational(1, 2), Rational(1)}));
    EXPECT_EQ(f[2].factor, q);
    EXPECT_EQ(f[3].factor, lam * lam - Polynomial(2L));
    EXPECT_EQ(factored_string(lin(-3, 1).pow(2)), "(λ - 3)^2");
    EXPECT_EQ(factored_string(Polynomial(1L)), "1");
}

TEST(Factor, NumericRootsOfConjugatePair)
{
    const auto roots = numeric_roots(Polynomial({Rational(5), Rational(-2), Rational(1)}));
    ASSERT_EQ(roots.size(), 2u);
    EXPECT_NEAR(roots[0].real(), 1.0, 1e-14);
    EXPECT_NEAR(roots[0].imag(), -2.0, 1e-14);
    EXPECT_NEAR(roots[1].imag(), 2.0, 1e-14);
}

TEST(SmithForm, Examples)
{
    PolyMatrix d{{Polynomial(1L), Polynomial()}, {Polynomial(), lam}};
    auto s = smith_normal_form(d);
    ASSERT_EQ(s.invariant_factors.size(), 2u);
    EXPECT_EQ(s.invariant_factors[0], Polynomial(1L));
    EXPECT_EQ(s.invariant_factors[1], lam);

    PolyMatrix j{{lam, Polynomial(1L)}, {Polynomial(), lam}};
    s = smith_normal_form(j);
    ASSERT_EQ(s.invariant_factors.size(), 2u);
    EXPECT_EQ(s.invariant_factors[0], Polynomial(1L));
    EXPECT_EQ(s.invariant_factors[1], lam * lam);

    EXPECT_TRUE(smith_normal_form(PolyMatrix(3, 2)).invariant_factors.empty());
}

TEST(SmithForm, TransformsAreUnimodularAndDiagonalize)
{
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
        PolyMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < c; ++k)
                m(i, k) = Polynomial({Rational(d(rng)), Rational(d(rng)), Rational(trial % 2 ? d(rng) : 0)});
        const auto s = smith_normal_form(m);
        const PolyMatrix prod = s.left * m * s.right;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < c; ++k) {
                if (i == k && i < s.invariant_factors.size())
                    EXPECT_EQ(prod(i, k), s.invariant_factors[i]);
                else
                    EXPECT_TRUE(prod(i, k).is_zero());
            }
        EXPECT_EQ(determinant(s.left).degree(), 0);
        EXPECT_EQ(determinant(s.right).degree(), 0);
        for (std::size_t i = 1; i < s.invariant_factors.size(); ++i)
            EXPECT_TRUE(s.invariant_factors[i].divisible_by(s.invariant_factors[i - 1]));
    }
}

TEST(SmithForm, MatchesDeterminantalDivisorOracle)
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + rng() % 5; // up to 6
        // a skew pencil A + λB, the shape jk_invariants feeds to the Smith form
        PolyMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = i + 1; k < n; ++k) {
                m(i, k) = lin(d(rng), (trial % 3 == 0 && k != i + 1) ? 0 : d(rng));
                m(k, i) = -m(i, k);
            }
        EXPECT_EQ(smith_normal_form(m, false).invariant_factors, invariant_factors_by_minors(m));
    }
}

TEST(Interpolation, RecoversPolynomial)
{
    const Polynomial p({Rational(3), Rational(-1, 2), Rational(0), Rational(2)});
    std::vector<Rational> xs, ys;
    for (long k = -2; k <= 2; ++k) {
        xs.emplace_back(k);
        ys.push_back(p.evaluate(xs.back()));
    }
    EXPECT_EQ(interpolate(xs, ys), p);
    EXPECT_EQ(p.shifted(Rational(1)).evaluate(Rational(2)), p.evaluate(Rational(3)));
}
