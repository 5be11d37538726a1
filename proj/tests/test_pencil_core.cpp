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

#include "bipencil/pencil.hpp"
#include "bipencil/smith.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace bipencil;
using bipencil::testing::random_invariants;
using bipencil::testing::random_unimodular;

namespace {

const Polynomial lam = Polynomial::monomial(1);

SkewPencil k3() { return kronecker_block(1); }
SkewPencil j4(long root) { return jordan_block(Rational(-root), 2); }
SkewPencil c4() { return complex_jordan_block(Rational(1), Rational(2), 1); }

SkewPencil zero_pencil(std::size_t n) { return SkewPencil(QMatrix(n, n), QMatrix(n, n)); }

} // namespace

TEST(Templates, MatchDocumentedMatrices)
{
    QMatrix a{{0, 1, 0}, {-1, 0, 0}, {0, 0, 0}};
    QMatrix b{{0, 0, 1}, {0, 0, 0}, {-1, 0, 0}};
    EXPECT_EQ(k3(), SkewPencil(a, b));

    QMatrix ja{{0, 0, -3, 1}, {0, 0, 0, -3}, {3, 0, 0, 0}, {-1, 3, 0, 0}};
    QMatrix jb{{0, 0, 1, 0}, {0, 0, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
    EXPECT_EQ(j4(3), SkewPencil(ja, jb));
    EXPECT_THROW(SkewPencil(QMatrix{{0, 1}, {1, 0}}, QMatrix(2, 2)), StructuralError);
}

TEST(PencilRank, Examples)
{
    EXPECT_EQ(pencil_rank(zero_pencil(3)), 0u);
    EXPECT_EQ(pencil_rank(k3()), 2u);
    EXPECT_EQ(pencil_rank(j4(3)), 4u);
}

TEST(PencilRank, AgreesWithFractionFreeRankOverQLambda)
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const auto q = canonical_pencil(random_invariants(rng, 9));
        EXPECT_EQ(pencil_rank(q), matrix_rank(q.matrix()));
        EXPECT_EQ(pencil_rank(q) % 2, 0u);
    }
}

TEST(CharacteristicPolynomial, Examples)
{
    EXPECT_EQ(characteristic_polynomial(j4(3)), (lam - Polynomial(3L)).pow(2));
    EXPECT_EQ(characteristic_polynomial(k3()), Polynomial(1L));
    EXPECT_EQ(characteristic_polynomial(direct_sum(j4(3), k3())), (lam - Polynomial(3L)).pow(2));
    EXPECT_THROW(characteristic_polynomial(zero_pencil(3)), DomainError);
}

TEST(Eigenvalues, Examples)
{
    auto ev = eigenvalues(j4(3));
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(ev[0].key, EigenvalueKey::rational(Rational(-3)));
    EXPECT_EQ(ev[0].multiplicity, 2);
    EXPECT_DOUBLE_EQ(ev[0].approximations.at(0).real(), -3.0);

    EXPECT_TRUE(eigenvalues(k3()).empty());

    ev = eigenvalues(c4());
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(ev[0].key.minimal_polynomial, Polynomial({Rational(5), Rational(-2), Rational(1)}, "t"));
    ASSERT_EQ(ev[0].approximations.size(), 2u);
    EXPECT_NEAR(ev[0].approximations[0].real(), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(ev[0].approximations[0].imag()), 2.0, 1e-14);
    EXPECT_NEAR(ev[0].approximations[0].imag(), -ev[0].approximations[1].imag(), 1e-14);
}

TEST(Eigenvalues, InfinityIffBDropsRank)
{
    const auto p = direct_sum(infinite_jordan_block(2), j4(3));
    const auto ev = eigenvalues(p);
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_EQ(ev[0].key, EigenvalueKey::rational(Rational(-3)));
    EXPECT_TRUE(ev[1].key.infinite);
    EXPECT_EQ(ev[1].multiplicity, 2);
}

TEST(Eigenvalues, DirectSumIsMultisetUnion)
{
    const auto p = direct_sum(direct_sum(j4(3), c4()), direct_sum(j4(5), k3()));
    const auto ev = eigenvalues(p);
    ASSERT_EQ(ev.size(), 3u);
    EXPECT_EQ(ev[0].key, EigenvalueKey::rational(Rational(-3)));
    EXPECT_EQ(ev[1].key, EigenvalueKey::rational(Rational(-5)));
    EXPECT_EQ(ev[2].key.minimal_polynomial.degree(), 2);
}

TEST(RegularValue, Examples)
{
    EXPECT_TRUE(is_regular_value(j4(3), ProjectiveValue::finite(0)));
    EXPECT_FALSE(is_regular_value(j4(3), ProjectiveValue::finite(3)));
    EXPECT_TRUE(is_regular_value(j4(3), ProjectiveValue::infinity()));
    for (long v = -4; v <= 4; ++v)
        EXPECT_TRUE(is_regular_value(k3(), ProjectiveValue::finite(v)));
    EXPECT_FALSE(is_regular_value(infinite_jordan_block(1), ProjectiveValue::infinity()));
}

TEST(CoreSubspace, Examples)
{
    EXPECT_EQ(core_subspace(k3()), Subspace::coordinate(3, {1, 2}));
    EXPECT_TRUE(core_subspace(j4(3)).is_zero());
    EXPECT_EQ(core_subspace(direct_sum(j4(3), k3())), Subspace::coordinate(7, {5, 6}));
    EXPECT_EQ(core_subspace(kronecker_block(2)), Subspace::coordinate(5, {2, 3, 4}));
}

TEST(CoreSubspace, ContainsEveryRegularKernel)
{
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 10; ++trial) {
        const auto base = canonical_pencil(random_invariants(rng, 9));
        const auto p = congruence(base, random_unimodular(rng, base.dimension()));
        const Subspace core = core_subspace(p);
        const std::size_t rank = pencil_rank(p);
        for (long v = -3; v <= 3; ++v) {
            const QMatrix m = p.at(Rational(v, 2));
            if (matrix_rank(m) == rank)
                EXPECT_TRUE(core.contains(Subspace(p.dimension(), kernel_basis(m))));
        }
    }
}

TEST(JKInvariants, Examples)
{
    auto inv = jk_invariants(k3());
    EXPECT_EQ(inv.kronecker_sizes, std::vector<int>{3});
    EXPECT_TRUE(inv.jordan.empty());

    inv = jk_invariants(j4(3));
    EXPECT_TRUE(inv.kronecker_sizes.empty());
    ASSERT_EQ(inv.jordan.size(), 1u);
    EXPECT_EQ(inv.jordan[0].eigenvalue, EigenvalueKey::rational(Rational(-3)));
    EXPECT_EQ(inv.jordan[0].partition, std::vector<int>{2});

    inv = jk_invariants(direct_sum(j4(3), k3()));
    EXPECT_EQ(inv.kronecker_sizes, std::vector<int>{3});
    ASSERT_EQ(inv.jordan.size(), 1u);
    EXPECT_EQ(inv.jordan[0].partition, std::vector<int>{2});
}

TEST(JKInvariants, SmithFactorsOfJordanTemplate)
{
    // the oracle behind the J4(3) partition: factors (1, 1, (λ-3)^2, (λ-3)^2)
    const auto s = smith_normal_form(j4(3).matrix(), false);
    const Polynomial sq = (lam - Polynomial(3L)).pow(2);
    EXPECT_EQ(s.invariant_factors, (std::vector<Polynomial>{Polynomial(1L), Polynomial(1L), sq, sq}));
}

TEST(JKInvariants, CanonicalRoundTrip)
{
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const JKInvariants inv = random_invariants(rng, 12);
        const SkewPencil p = canonical_pencil(inv);
        EXPECT_EQ(jk_invariants(p), inv) << inv.to_string();
    }
}

TEST(JKInvariants, CongruenceInvariance)
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        const SkewPencil p = canonical_pencil(random_invariants(rng, 10));
        const SkewPencil q = congruence(p, random_unimodular(rng, p.dimension()));
        EXPECT_EQ(jk_invariants(q), jk_invariants(p));
        EXPECT_EQ(pencil_rank(q), pencil_rank(p));
        if (pencil_rank(p) > 0)
            EXPECT_EQ(characteristic_polynomial(q), characteristic_polynomial(p));
    }
}

TEST(JKInvariants, KroneckerCountEqualsGenericCorank)
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        const SkewPencil p = canonical_pencil(random_invariants(rng, 11));
        EXPECT_EQ(jk_invariants(p).kronecker_sizes.size(), p.dimension() - pencil_rank(p));
    }
}

TEST(CharacteristicPolynomial, DegreeBoundAndCommonCasimirCondition)
{
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 25; ++trial) {
        const SkewPencil p = canonical_pencil(random_invariants(rng, 10, {.allow_kronecker = true, .allow_infinite = false}));
        const std::size_t rank = pencil_rank(p);
        if (rank == 0)
            continue;
        const auto cp = characteristic_polynomial(p);
        EXPECT_LE(static_cast<std::size_t>(cp.degree()), rank / 2);
        // equality exactly when every Kronecker block is 1x1
        const auto inv = jk_invariants(p);
        const bool trivial_kronecker = std::all_of(inv.kronecker_sizes.begin(), inv.kronecker_sizes.end(), [](int s) { return s == 1; });
        EXPECT_EQ(static_cast<std::size_t>(cp.degree()) == rank / 2, trivial_kronecker) << inv.to_string();
    }
    // refuted on K3 ⊕ J4: degree 2 < 3
    EXPECT_LT(characteristic_polynomial(direct_sum(k3(), j4(3))).degree(), 3);
}

TEST(SameBundle, Examples)
{
    EXPECT_TRUE(same_bundle(j4(3), j4(5)));
    EXPECT_FALSE(same_bundle(j4(3), direct_sum(k3(), zero_pencil(1))));
    EXPECT_FALSE(same_bundle(direct_sum(j4(3), j4(3)), direct_sum(j4(3), j4(5))));
    EXPECT_FALSE(same_bundle(c4(), direct_sum(jordan_block(Rational(3), 1), jordan_block(Rational(5), 1))));
    EXPECT_TRUE(same_bundle(c4(), complex_jordan_block(Rational(-2), Rational(1, 3), 1)));
    EXPECT_THROW(same_bundle(j4(3), k3()), StructuralError);
}

TEST(CanonicalPencil, ExamplesAndErrors)
{
    EXPECT_EQ(canonical_pencil(JKInvariants{{3}, {}}), k3());
    EXPECT_EQ(canonical_pencil(JKInvariants{{}, {{EigenvalueKey::rational(Rational(-3)), {2}}}}), j4(3));
    EXPECT_THROW(canonical_pencil(JKInvariants{{3}, {}}, 4), StructuralError);
    EXPECT_THROW(canonical_pencil(JKInvariants{{2}, {}}), StructuralError);
}

TEST(CanonicalPencil, IrrationalKeysUseCompanionBlocks)
{
    JKInvariants inv{{}, {{{false, Polynomial({Rational(-2), Rational(0), Rational(1)}, "t")}, {1}}}};
    const auto p = canonical_pencil(inv);
    EXPECT_EQ(p.dimension(), 4u);
    EXPECT_EQ(jk_invariants(p), inv);
}
