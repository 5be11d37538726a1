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

#include "bipencil/errors.hpp"
#include "bipencil/subspaces.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace bipencil;
using bipencil::testing::BlockChoice;
using bipencil::testing::random_invariants;
using bipencil::testing::random_unimodular;

namespace {

SkewPencil k3() { return kronecker_block(1); }
SkewPencil j4(long root) { return jordan_block(Rational(-root), 2); }
SkewPencil c4() { return complex_jordan_block(Rational(1), Rational(2), 1); }

Subspace coord(std::size_t n, std::initializer_list<std::size_t> one_based)
{
    std::vector<std::size_t> idx;
    for (auto i : one_based)
        idx.push_back(i - 1);
    return Subspace::coordinate(n, idx);
}

constexpr BlockChoice nondegenerate{.allow_kronecker = false, .allow_infinite = false, .allow_complex = true};

SkewPencil random_nondegenerate(std::mt19937_64& rng, std::size_t max_dim)
{
    const SkewPencil base = canonical_pencil(random_invariants(rng, max_dim, nondegenerate));
    return congruence(base, random_unimodular(rng, base.dimension()));
}

Subspace random_subspace(std::mt19937_64& rng, std::size_t n, std::size_t k)
{
    std::uniform_int_distribution<int> entry(-2, 2);
    QMatrix rows(k, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rows(i, j) = entry(rng);
    return Subspace(n, rows);
}

} // namespace

TEST(OrthoComplement, Examples)
{
    auto c = ortho_complement(k3(), coord(3, {2}));
    EXPECT_FALSE(c.lambda_dependent);
    EXPECT_EQ(c.complement, coord(3, {2, 3}));

    c = ortho_complement(k3(), coord(3, {1}));
    EXPECT_TRUE(c.lambda_dependent);
    ASSERT_TRUE(c.sample_lambda.has_value());
    // {v2 + λ v3 = 0} at the sampled λ
    const Rational l = *c.sample_lambda;
    EXPECT_EQ(c.complement, Subspace::span(3, {{Rational(1), Rational(0), Rational(0)}, {Rational(0), -l, Rational(1)}}));

    const auto full = ortho_complement(j4(3), Subspace::full(4));
    EXPECT_TRUE(full.complement.is_zero());
    // K3 has a λ-dependent generic kernel spanned by (0, λ, -1)
    const auto kernel = ortho_complement(k3(), Subspace::full(3));
    EXPECT_TRUE(kernel.lambda_dependent);
    EXPECT_EQ(kernel.complement.dim(), 1u);
    EXPECT_TRUE(core_subspace(k3()).contains(kernel.complement));
}

TEST(OrthoComplement, FlagsInfinityWhenBDropsRank)
{
    const SkewPencil p = infinite_jordan_block(1);
    const auto c = ortho_complement(p, coord(2, {1}));
    EXPECT_FALSE(c.lambda_dependent);
    EXPECT_TRUE(c.differs_at_infinity);
    EXPECT_FALSE(ortho_complement(j4(3), coord(4, {1})).differs_at_infinity);
}

TEST(BiIsotropic, Examples)
{
    EXPECT_TRUE(is_bi_isotropic(j4(3), coord(4, {1, 2})));
    EXPECT_FALSE(is_bi_isotropic(j4(3), coord(4, {1, 3})));
    EXPECT_TRUE(is_bi_isotropic(k3(), Subspace(3)));
}

TEST(Admissible, Examples)
{
    EXPECT_TRUE(is_admissible(k3(), coord(3, {2})));
    EXPECT_FALSE(is_admissible(k3(), coord(3, {1})));
    EXPECT_TRUE(is_admissible(j4(3), Subspace(4)));
}

TEST(Admissible, AgreesWithSamplingOracle)
{
    // oracle: the complement is the same at rk + 1 regular rational values
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const SkewPencil p = canonical_pencil(random_invariants(rng, 7));
        const std::size_t n = p.dimension();
        const Subspace u = random_subspace(rng, n, 1 + trial % 2);
        const std::size_t rk = pencil_rank(p);
        std::vector<Subspace> samples;
        for (long v = 0; samples.size() < rk + 2 && v < 40; ++v) {
            const Rational lambda(v % 2 ? -v : v, 3);
            if (!is_regular_value(p, ProjectiveValue::finite(lambda)))
                continue;
            samples.push_back(complement_at(p, u, ProjectiveValue::finite(lambda)));
        }
        // generic rank of U·A_λ can still drop at a sample; keep the smallest complements
        std::size_t min_dim = n;
        for (const auto& s : samples)
            min_dim = std::min(min_dim, s.dim());
        std::vector<Subspace> generic;
        for (const auto& s : samples)
            if (s.dim() == min_dim)
                generic.push_back(s);
        const bool all_equal = std::all_of(generic.begin(), generic.end(), [&](const Subspace& s) { return s == generic[0]; });
        EXPECT_EQ(is_admissible(p, u), all_equal) << u.to_string();
    }
}

TEST(BiLagrangian, Examples)
{
    EXPECT_TRUE(is_bi_lagrangian(j4(3), coord(4, {1, 2})));
    EXPECT_TRUE(is_bi_lagrangian(direct_sum(j4(3), k3()), coord(7, {1, 2, 6, 7})));
    EXPECT_FALSE(is_bi_lagrangian(j4(3), coord(4, {1})));
}

TEST(RecursionOperator, Examples)
{
    auto r = recursion_operator(j4(3));
    EXPECT_EQ(j4(3).b() * r.p, j4(3).a());
    EXPECT_EQ(r.semisimple, QMatrix::identity(4) * Rational(-3));
    EXPECT_FALSE(r.nilpotent.is_zero());
    EXPECT_EQ(r.minimal_polynomial, Polynomial({Rational(9), Rational(6), Rational(1)}, "t"));

    r = recursion_operator(c4());
    EXPECT_EQ(r.minimal_polynomial, Polynomial({Rational(5), Rational(-2), Rational(1)}, "t"));
    EXPECT_TRUE(r.nilpotent.is_zero());

    r = recursion_operator(SkewPencil(j4(3).b(), j4(3).b()));
    EXPECT_EQ(r.p, QMatrix::identity(4));
    EXPECT_TRUE(r.nilpotent.is_zero());

    EXPECT_THROW(recursion_operator(k3()), DomainError);
}

TEST(RecursionOperator, SplitOnRandomPencils)
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const SkewPencil p = random_nondegenerate(rng, 10);
        const auto r = recursion_operator(p);
        const std::size_t n = p.dimension();
        EXPECT_EQ(p.b() * r.p, p.a());
        EXPECT_EQ(r.semisimple + r.nilpotent, r.p);
        EXPECT_EQ(r.semisimple * r.nilpotent, r.nilpotent * r.semisimple);
        QMatrix power = QMatrix::identity(n);
        for (std::size_t k = 0; k < n; ++k)
            power = power * r.nilpotent;
        EXPECT_TRUE(power.is_zero());
        const Polynomial ms = minimal_polynomial(r.semisimple);
        EXPECT_EQ(ms, squarefree_part(ms));
    }
}

TEST(BuildBiLagrangian, Examples)
{
    const Subspace l = build_bi_lagrangian(j4(3), Subspace(4));
    EXPECT_EQ(l.dim(), 2u);
    EXPECT_TRUE(is_bi_lagrangian(j4(3), l));

    const Subspace lc = build_bi_lagrangian(c4(), Subspace(4));
    EXPECT_TRUE(is_bi_lagrangian(c4(), lc));

    const SkewPencil zero_a(QMatrix(4, 4), j4(3).b());
    const Subspace l0 = build_bi_lagrangian(zero_a, Subspace(4));
    EXPECT_TRUE(is_bi_lagrangian(zero_a, l0));
    EXPECT_EQ(l0, coord(4, {1, 2}));

    EXPECT_THROW(build_bi_lagrangian(j4(3), coord(4, {1, 3})), DomainError);
}

TEST(BuildBiLagrangian, ExhaustiveGridAtDimensionFour)
{
    // every 2-plane spanned by {-1,0,1} vectors: bi-Lagrangian iff B-Lagrangian and P-invariant
    for (const SkewPencil& p : {j4(3), c4(), direct_sum(jordan_block(Rational(1), 1), jordan_block(Rational(2), 1))}) {
        const auto r = recursion_operator(p);
        std::vector<QVector> grid;
        for (int code = 0; code < 81; ++code) {
            QVector v(4);
            int c = code;
            for (auto& x : v) {
                x = c % 3 - 1;
                c /= 3;
            }
            grid.push_back(v);
        }
        int found = 0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (std::size_t j = i + 1; j < grid.size(); ++j) {
                const Subspace l = Subspace::span(4, {grid[i], grid[j]});
                if (l.dim() != 2)
                    continue;
                const bool lagrangian = (l.basis() * p.b() * l.basis().transpose()).is_zero() && l.is_invariant(r.p);
                ASSERT_EQ(is_bi_lagrangian(p, l), lagrangian) << l.to_string();
                found += lagrangian;
            }
        EXPECT_GT(found, 0);
    }
}

TEST(BuildBiLagrangian, RandomSeedsAndCompanion)
{
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const SkewPencil p = random_nondegenerate(rng, 8);
        const auto r = recursion_operator(p);
        // seed: a cyclic subspace of a random vector, truncated to an isotropic invariant piece
        Subspace seed(p.dimension());
        if (trial % 2 == 1) {
            const Subspace full = build_bi_lagrangian(p, Subspace(p.dimension()));
            // the first eigen-chain of a bi-Lagrangian is a valid seed
            const auto factors = irreducible_factors(r.minimal_polynomial);
            seed = Subspace(p.dimension(), kernel_basis(evaluate_polynomial(factors[0].factor, r.p))).intersect(full);
        }
        const Subspace l = build_bi_lagrangian(p, seed);
        EXPECT_TRUE(l.contains(seed));
        EXPECT_TRUE(is_bi_lagrangian(p, l));
        EXPECT_TRUE(l.is_invariant(r.p));
        EXPECT_TRUE(is_bi_lagrangian(nilpotent_companion(p), l));
        EXPECT_EQ(l.dim(), p.dimension() - pencil_rank(p) / 2);
    }
}

TEST(NilpotentCompanion, Examples)
{
    const SkewPencil c = nilpotent_companion(j4(3));
    const QMatrix expected{{0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {-1, 0, 0, 0}};
    EXPECT_EQ(c.a(), expected);
    EXPECT_TRUE(is_bi_lagrangian(c, coord(4, {1, 2})));
    EXPECT_TRUE(nilpotent_companion(c4()).a().is_zero());
    EXPECT_TRUE(nilpotent_companion(SkewPencil(j4(3).b() * Rational(3), j4(3).b())).a().is_zero());
}

TEST(Reduction, Examples)
{
    auto red = reduce_pencil(k3(), coord(3, {2, 3}));
    EXPECT_EQ(red.pencil.dimension(), 0u);

    const SkewPencil p = direct_sum(j4(3), k3());
    red = reduce_pencil(p, coord(7, {6, 7}));
    EXPECT_EQ(red.u_perp, coord(7, {1, 2, 3, 4, 6, 7}));
    EXPECT_EQ(jk_invariants(red.pencil), jk_invariants(j4(3)));
    const Subspace lr = reduce_subspace(p, coord(7, {6, 7}), coord(7, {1, 2, 6, 7}));
    EXPECT_EQ(lr, coord(4, {1, 2}));
    EXPECT_TRUE(is_bi_lagrangian(red.pencil, lr));
    EXPECT_EQ(red.lift(lr), coord(7, {1, 2, 6, 7}));
    EXPECT_TRUE(reduce_subspace(p, coord(7, {6, 7}), coord(7, {6, 7})).is_zero());

    red = reduce_pencil(j4(3), Subspace(4));
    EXPECT_EQ(red.pencil, j4(3));
    EXPECT_EQ(reduce_subspace(j4(3), Subspace(4), coord(4, {1, 2})), coord(4, {1, 2}));

    EXPECT_THROW(reduce_pencil(k3(), coord(3, {1})), DomainError);
    EXPECT_THROW(reduce_pencil(j4(3), coord(4, {1, 3})), DomainError);
}

TEST(Reduction, PreservesBiIsotropyAndBiLagrangians)
{
    std::mt19937_64 rng(23);
    int reduced = 0;
    for (int trial = 0; trial < 30; ++trial) {
        const SkewPencil base = random_nondegenerate(rng, 8);
        const std::size_t n = base.dimension();
        const Subspace l = build_bi_lagrangian(base, Subspace(n));
        // U: a bi-isotropic admissible piece of L, namely the first eigen-chain
        const auto r = recursion_operator(base);
        const auto factors = irreducible_factors(r.minimal_polynomial);
        const Subspace u = Subspace(n, kernel_basis(evaluate_polynomial(factors[0].factor, r.p))).intersect(l);
        ASSERT_TRUE(is_admissible(base, u));
        const Reduction red = reduce_pencil(base, u);
        EXPECT_EQ(red.pencil.dimension(), n - 2 * u.dim());
        const Subspace lr = red.project(l.intersect(red.u_perp) + u);
        EXPECT_TRUE(is_bi_lagrangian(red.pencil, lr));
        EXPECT_EQ(red.lift(lr), l);
        const Subspace iso = Subspace(n, QMatrix(1, n, {l.basis().row(0).begin(), l.basis().row(0).end()}));
        EXPECT_TRUE(is_bi_isotropic(red.pencil, reduce_subspace(base, u, iso)));
        ++reduced;
    }
    EXPECT_EQ(reduced, 30);
}

TEST(SpectrumContainment, Examples)
{
    const SkewPencil p = direct_sum(j4(3), k3());
    auto s = spectrum_containment(p, coord(7, {6, 7}));
    EXPECT_TRUE(s.holds());
    ASSERT_EQ(s.reduced.size(), 1u);
    EXPECT_EQ(s.reduced[0].key, EigenvalueKey::rational(Rational(-3)));

    const SkewPencil q = direct_sum(direct_sum(j4(3), j4(5)), k3());
    s = spectrum_containment(q, coord(11, {5, 6, 10, 11}));
    EXPECT_TRUE(s.holds());
    EXPECT_EQ(s.original.size(), 2u);
    ASSERT_EQ(s.reduced.size(), 1u);
    EXPECT_EQ(s.reduced[0].key, EigenvalueKey::rational(Rational(-3)));

    s = spectrum_containment(q, core_subspace(q));
    EXPECT_EQ(s.reduced.size(), s.original.size());
    EXPECT_THROW(spectrum_containment(q, coord(11, {5, 6})), DomainError);
}

TEST(EigenSplitting, Examples)
{
    const auto parts = eigen_splitting(direct_sum(j4(3), j4(5)));
    ASSERT_EQ(parts.size(), 2u);
    EXPECT_EQ(parts[0].subspace.dim(), 4u);
    EXPECT_EQ(parts[0].eigenvalue, EigenvalueKey::rational(Rational(-3)));
    EXPECT_EQ(parts[1].eigenvalue, EigenvalueKey::rational(Rational(-5)));
    EXPECT_EQ(eigen_splitting(c4()).size(), 1u);
    EXPECT_EQ(eigen_splitting(j4(3)).size(), 1u);
}

TEST(EigenSplitting, SummandsAreOrthogonalAndInvariantsConcatenate)
{
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        const SkewPencil p = random_nondegenerate(rng, 10);
        const auto parts = eigen_splitting(p);
        JKInvariants merged;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            for (std::size_t j = i + 1; j < parts.size(); ++j) {
                EXPECT_TRUE((parts[i].subspace.basis() * p.a() * parts[j].subspace.basis().transpose()).is_zero());
                EXPECT_TRUE((parts[i].subspace.basis() * p.b() * parts[j].subspace.basis().transpose()).is_zero());
            }
            const auto inv = jk_invariants(parts[i].pencil);
            EXPECT_EQ(inv.jordan.size(), 1u);
            merged.jordan.insert(merged.jordan.end(), inv.jordan.begin(), inv.jordan.end());
        }
        merged.normalize();
        EXPECT_EQ(merged, jk_invariants(p));
    }
}

TEST(ComplexStructure, Examples)
{
    const auto cs = complex_structure(c4());
    const auto r = recursion_operator(c4());
    EXPECT_EQ(cs.j, (r.p - QMatrix::identity(4)) * Rational(1, 2));
    EXPECT_TRUE(cs.a_hat.is_zero());

    const SkewPencil big = complex_jordan_block(Rational(1), Rational(2), 2);
    const auto cb = complex_structure(big);
    EXPECT_FALSE(cb.a_hat.is_zero());
    const auto ev = eigenvalues(SkewPencil(cb.a_hat, big.b()));
    ASSERT_EQ(ev.size(), 1u);
    EXPECT_EQ(ev[0].key, EigenvalueKey::rational(Rational(0)));
    EXPECT_EQ(ev[0].multiplicity, 4);

    const auto scaled = complex_structure(SkewPencil(c4().a() * Rational(2), c4().b() * Rational(2)));
    EXPECT_EQ(scaled.j, cs.j);

    EXPECT_THROW(complex_structure(j4(3)), DomainError);
    EXPECT_THROW(complex_structure(direct_sum(c4(), complex_jordan_block(Rational(0), Rational(1), 1))), DomainError);
}
