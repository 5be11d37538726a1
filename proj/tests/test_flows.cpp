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

#include "bipencil/corpus.hpp"
#include "bipencil/errors.hpp"
#include "bipencil/flows.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace bipencil;

namespace {

MultiPoly var(std::size_t n, std::size_t i) { return MultiPoly::variable(n, i); }

const CorpusEntry& euler() { return corpus_entry("euler-top"); }

State start() { return {1.0, 0.5, 1.0 / 3.0}; }

ChartPencil rotation_chart()
{
    PolyBivector a(2), b(2);
    a.set(0, 1, MultiPoly::constant(2, 1));
    b.set(0, 1, MultiPoly::constant(2, 1));
    return ChartPencil(a, b);
}

} // namespace

TEST(Field, Examples)
{
    const auto& e = euler();
    const MultiPoly h0 = e.hamiltonians[0].h;
    // constant Hamiltonian
    const BiHamiltonianField zero(*e.chart, {{ProjectiveValue::finite(0), MultiPoly::constant(3, 5)}});
    EXPECT_EQ(zero({1, 2, 3}), (State{0, 0, 0}));

    // v = A dH0 at (1,1,1): (-x2 x3, 2 x1 x3, -x1 x2)
    const BiHamiltonianField f(*e.chart, {{ProjectiveValue::finite(0), h0}});
    EXPECT_EQ(f({1, 1, 1}), (State{-1, 2, -1}));

    const BiHamiltonianField scaled(*e.chart, {{ProjectiveValue::finite(0), h0 * Rational(3)}});
    EXPECT_EQ(scaled({1, 1, 1}), (State{-3, 6, -3}));

    EXPECT_THROW(BiHamiltonianField(*e.chart, {}), DomainError);
}

TEST(Field, ConsistencyVanishesForVerifiedPairs)
{
    const auto& e = euler();
    const BiHamiltonianField f(*e.chart, e.hamiltonians);
    EXPECT_LE(f.consistency({0.3, -1.2, 2.5}), 1e-12);
    const auto& frozen = corpus_entry("so3-frozen");
    const BiHamiltonianField g(*frozen.chart, {{ProjectiveValue::finite(0), e.hamiltonians[0].h},
                                               {ProjectiveValue::infinity(), e.hamiltonians[1].h}});
    EXPECT_GT(g.consistency({1, 1, 1}), 0.1);
}

TEST(Integrate, ZeroFieldIsConstant)
{
    const BiHamiltonianField zero(*euler().chart, {{ProjectiveValue::finite(0), MultiPoly(3)}});
    const auto t = integrate(zero, start(), 1.0, 0.01);
    EXPECT_EQ(t.states.size(), 101u);
    for (const auto& x : t.states)
        EXPECT_EQ(x, start());
}

TEST(Integrate, CircleKeepsRadius)
{
    // H = (x1^2 + x2^2)/2 with A = dx1^dx2 gives v = (x2, -x1)
    const MultiPoly h = (var(2, 0).pow(2) + var(2, 1).pow(2)) * Rational(1, 2);
    const BiHamiltonianField f(rotation_chart(), {{ProjectiveValue::finite(0), h}});
    EXPECT_EQ(f({1, 0}), (State{0, -1}));
    const auto t = integrate(f, {1, 0}, 10, 1e-3);
    double worst = 0;
    for (const auto& x : t.states)
        worst = std::max(worst, std::abs(std::hypot(x[0], x[1]) - 1));
    EXPECT_LE(worst, 1e-10);
}

TEST(Integrate, EulerTopIsBounded)
{
    const BiHamiltonianField f(*euler().chart, euler().hamiltonians);
    const auto t = integrate(f, start(), 10, 1e-3);
    EXPECT_FALSE(t.aborted);
    EXPECT_EQ(t.states.size(), 10001u);
    for (const auto& x : t.states)
        EXPECT_LE(std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]), 3.0);
}

TEST(Integrate, NonFiniteAborts)
{
    // v = (x1^2) blows up in finite time
    PolyBivector a(2);
    a.set(0, 1, MultiPoly::constant(2, 1));
    const ChartPencil c(a, a);
    const BiHamiltonianField f(c, {{ProjectiveValue::finite(0), var(2, 1) * var(2, 0).pow(2)}});
    const auto t = integrate(f, {1, 0}, 5, 1e-2);
    EXPECT_TRUE(t.aborted);
    EXPECT_LT(t.states.size(), 501u);
    EXPECT_THROW(integrate(f, {1, 0}, -1, 1e-2), DomainError);
}

TEST(Drift, EulerTopConservesVerifiedIntegrals)
{
    const auto& e = euler();
    const BiHamiltonianField f(*e.chart, e.hamiltonians);
    const auto coarse = drift_report(integrate(f, start(), 10, 1e-3), f, *e.family);
    const auto fine = drift_report(integrate(f, start(), 10, 5e-4), f, *e.family);
    ASSERT_EQ(coarse.drifts.size(), 2u);
    EXPECT_EQ(coarse.samples, 10001u);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_LE(coarse.drifts[i].max_drift, 1e-8) << coarse.drifts[i].label;
        const double ratio = coarse.drifts[i].max_drift / fine.drifts[i].max_drift;
        EXPECT_GE(ratio, 8.0) << coarse.drifts[i].label;
        EXPECT_LE(ratio, 32.0) << coarse.drifts[i].label;
    }
    ASSERT_EQ(coarse.consistency.size(), 1u);
    EXPECT_LE(coarse.consistency[0].max_discrepancy, 1e-12);
}

TEST(Drift, ConstantTrajectoryAndNonIntegral)
{
    const auto& e = euler();
    const BiHamiltonianField zero(*e.chart, {{ProjectiveValue::finite(0), MultiPoly(3)}});
    auto r = drift_report(integrate(zero, start(), 1, 0.1), zero, *e.family);
    for (const auto& d : r.drifts)
        EXPECT_EQ(d.max_drift, 0.0);

    const BiHamiltonianField f(*e.chart, e.hamiltonians);
    r = drift_report(integrate(f, start(), 10, 1e-3), f, FunctionFamily::untagged({var(3, 0)}));
    EXPECT_GT(r.drifts[0].max_drift, 1e-2);
}

TEST(Integrate, TimeReversal)
{
    for (const char* name : {"euler-top"}) {
        const auto& e = corpus_entry(name);
        const BiHamiltonianField f(*e.chart, e.hamiltonians);
        const auto forward = integrate(f, start(), 10, 1e-3);
        const auto back = integrate(f, forward.states.back(), 10, 1e-3, true);
        for (std::size_t i = 0; i < 3; ++i)
            EXPECT_NEAR(back.states.back()[i], start()[i], 1e-6);
    }
}

TEST(Export, JsonLines)
{
    const auto& e = euler();
    const BiHamiltonianField f(*e.chart, e.hamiltonians);
    const auto t = integrate(f, start(), 0.002, 1e-3);
    std::ostringstream os;
    write_json_lines(os, t, *e.family);
    std::istringstream is(os.str());
    std::string line;
    int count = 0;
    while (std::getline(is, line)) {
        ++count;
        EXPECT_NE(line.find("\"integrals\""), std::string::npos);
    }
    EXPECT_EQ(count, 3);
}
