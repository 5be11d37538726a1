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

namespace bipencil {

namespace {

struct Vars {
    std::size_t n;
    MultiPoly operator[](std::size_t i) const { return MultiPoly::variable(n, i); }
    MultiPoly c(const Rational& v) const { return MultiPoly::constant(n, v); }
};

PolyBivector so3(std::size_t n)
{
    const Vars x{n};
    PolyBivector a(n);
    a.set(0, 1, x[2]);
    a.set(0, 2, -x[1]);
    a.set(1, 2, x[0]);
    return a;
}

/// [[0, M], [-Mᵀ, 0]] on the first four coordinates.
PolyBivector two_by_two_block(std::size_t n, const MultiPoly& m11, const MultiPoly& m12, const MultiPoly& m21,
                              const MultiPoly& m22)
{
    PolyBivector a(n);
    a.set(0, 2, m11);
    a.set(0, 3, m12);
    a.set(1, 2, m21);
    a.set(1, 3, m22);
    return a;
}

PolyBivector standard_symplectic(std::size_t n)
{
    const Vars x{n};
    return two_by_two_block(n, x.c(1), x.c(0), x.c(0), x.c(1));
}

TaggedFunction casimir(const MultiPoly& f, ProjectiveValue at, std::string label)
{
    return {f, FunctionRole::casimir, at, std::move(label)};
}

Point point(std::initializer_list<Rational> v)
{
    Point p(v);
    for (auto& q : p)
        q.canonicalize();
    return p;
}

ChartPencil verified(PolyBivector a, PolyBivector b, std::vector<std::string> names = {})
{
    ChartPencil c(std::move(a), std::move(b), std::move(names));
    c.verify();
    return c;
}

CorpusEntry pencil_entry(std::string name, std::string provenance, SkewPencil p)
{
    CorpusEntry e;
    e.name = std::move(name);
    e.kind = "pencil";
    e.provenance = std::move(provenance);
    e.pencil = std::move(p);
    return e;
}

CorpusEntry chart_entry(std::string name, std::string provenance, ChartPencil c)
{
    CorpusEntry e;
    e.name = std::move(name);
    e.kind = "chart";
    e.provenance = std::move(provenance);
    e.expect_compatible = c.compatibility_verified;
    e.chart = std::move(c);
    return e;
}

std::vector<CorpusEntry> build()
{
    std::vector<CorpusEntry> out;
    const SkewPencil j43 = jordan_block(Rational(-3), 2);
    const SkewPencil j45 = jordan_block(Rational(-5), 2);
    out.push_back(pencil_entry("K1", "1x1 Kronecker block: the zero pencil on a line", kronecker_block(0)));
    out.push_back(pencil_entry("K3", "3x3 Kronecker block, minimal index 1", kronecker_block(1)));
    out.push_back(pencil_entry("K5", "5x5 Kronecker block, minimal index 2", kronecker_block(2)));
    out.push_back(pencil_entry("J4(3)", "2x2-matrix Jordan block; A + λB drops rank at λ = 3, eigenvalue -3", j43));
    out.push_back(pencil_entry("J4(5)", "2x2-matrix Jordan block; eigenvalue -5", j45));
    out.push_back(pencil_entry("C4(1,2)", "complex block with eigenvalues 1 ± 2i",
                               complex_jordan_block(Rational(1), Rational(2), 1)));
    out.push_back(pencil_entry("C8(1,2)", "complex Jordan block of size 2 with eigenvalues 1 ± 2i",
                               complex_jordan_block(Rational(1), Rational(2), 2)));
    out.push_back(pencil_entry("J4(3)+K3", "direct sum of a Jordan and a Kronecker block", direct_sum(j43, kronecker_block(1))));
    out.push_back(pencil_entry("J4(3)+J4(5)", "two Jordan blocks with distinct eigenvalues", direct_sum(j43, j45)));
    out.push_back(pencil_entry("J4(3)+J4(5)+K3", "two Jordan blocks and a Kronecker block",
                               direct_sum(direct_sum(j43, j45), kronecker_block(1))));

    {
        const Vars x{3};
        PolyBivector b(3);
        b.set(0, 1, x.c(1));
        auto e = chart_entry("so3-frozen", "so(3) Lie-Poisson bracket with the constant bracket frozen at (0, 0, 1)",
                             verified(so3(3), b));
        FunctionFamily f;
        f.functions.push_back(casimir(x[0].pow(2) + x[1].pow(2) + x[2].pow(2), ProjectiveValue::finite(0), "|x|^2"));
        f.functions.push_back(casimir(x[2], ProjectiveValue::infinity(), "x3"));
        e.family = f;
        e.point = point({1, 1, 1});
        out.push_back(std::move(e));
    }
    {
        const Vars x{3};
        PolyBivector a(3), b(3);
        a.set(0, 1, x[2]);
        b.set(0, 1, x.c(1));
        auto e = chart_entry("pqz", "common-Casimir chart A = z dp^dq, B = dp^dq; eigenvalue z",
                             verified(a, b, {"p", "q", "z"}));
        e.point = point({1, 1, 5});
        e.shift = x[2];
        FunctionFamily f;
        f.functions.push_back(casimir(x[2], ProjectiveValue::finite(0), "z"));
        f.functions.push_back({x[2], FunctionRole::eigenvalue_real, std::nullopt, "mu"});
        e.family = f;
        out.push_back(std::move(e));
    }
    {
        const Vars x{5};
        auto e = chart_entry("jordan5", "Jordan-type chart M = [[z, 1], [0, z]] over the symplectic form, Casimir z",
                             verified(two_by_two_block(5, x[4], x.c(1), x.c(0), x[4]), standard_symplectic(5),
                                      {"x1", "x2", "x3", "x4", "z"}));
        e.point = point({1, 2, -1, 3, 2});
        e.shift = x[4];
        out.push_back(std::move(e));
    }
    {
        const Vars x{5};
        auto e = chart_entry("complex5", "complex-type chart M = [[z, -1], [1, z]], eigenvalues z ± i, Casimir z",
                             verified(two_by_two_block(5, x[4], x.c(-1), x.c(1), x[4]), standard_symplectic(5),
                                      {"x1", "x2", "x3", "x4", "z"}));
        e.point = point({1, -1, 2, 1, Rational(1, 2)});
        e.shift = x[4];
        out.push_back(std::move(e));
    }
    {
        // weighted so(3): B^{ij} = -ε_{ijk} ω_k x_k with ω = (1, 2, 3)
        const Vars x{3};
        PolyBivector b(3);
        b.set(0, 1, x[2] * Rational(-3));
        b.set(0, 2, x[1] * Rational(2));
        b.set(1, 2, -x[0]);
        auto e = chart_entry("euler-top", "Euler top: so(3) paired with the inertia-weighted bracket; "
                                          "v = A dH0 = B dH_inf",
                             verified(so3(3), b));
        const MultiPoly sq = x[0].pow(2) + x[1].pow(2) + x[2].pow(2);
        const MultiPoly h0 = (x[0].pow(2) + x[1].pow(2) * Rational(2) + x[2].pow(2) * Rational(3)) * Rational(1, 2);
        FunctionFamily f;
        f.functions.push_back(casimir(sq, ProjectiveValue::finite(0), "|x|^2"));
        f.functions.push_back(casimir(h0, ProjectiveValue::infinity(), "H0"));
        e.family = f;
        e.hamiltonians = {{ProjectiveValue::finite(0), h0}, {ProjectiveValue::infinity(), sq * Rational(1, 2)}};
        e.point = point({1, Rational(1, 2), Rational(1, 3)});
        out.push_back(std::move(e));
    }
    {
        const Vars x{3};
        PolyBivector b(3);
        b.set(0, 1, x[0]);
        auto e = chart_entry("incompatible", "so(3) with B^{12} = x1: each bracket is Poisson, the pair is not compatible",
                             verified(so3(3), b));
        out.push_back(std::move(e));
    }
    {
        const Vars x{4};
        PolyBivector b(4);
        b.set(0, 1, x[0]);
        auto e = chart_entry("bordered-incompatible",
                             "incompatible pair in bordered form with x4 as a parameter (m = 1)", verified(so3(4), b));
        e.bordered = 1;
        out.push_back(std::move(e));
    }
    {
        // z = 2 y1 + y2 + y4 + y5 spreads the Casimir over several coordinates
        const Vars x{5};
        const MultiPoly g = x[4] + x[4].pow(3) * Rational(1, 30);
        const QMatrix t_inv{{1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}, {2, 1, 0, 1, 1}};
        const QMatrix t = *inverse(t_inv);
        auto e = chart_entry("jordan5-cubic",
                             "Jordan-type chart with eigenvalue z + z^3/30, in skewed linear coordinates y = T x",
                             transform_chart(verified(two_by_two_block(5, g, x.c(1), x.c(0), g), standard_symplectic(5),
                                                      {"x1", "x2", "x3", "x4", "z"}),
                                             t));
        e.point = transform_point(point({1, 2, -1, 3, 1}), t);
        e.shift = transform_function(x[4], t);
        out.push_back(std::move(e));
    }
    {
        // a + i b = f(x1 + i x2) with f(w) = w + w^3/30
        const Vars x{4};
        const MultiPoly re = x[0] + (x[0].pow(3) - x[0] * x[1].pow(2) * Rational(3)) * Rational(1, 30);
        const MultiPoly im = x[1] + (x[0].pow(2) * x[1] * Rational(3) - x[1].pow(3)) * Rational(1, 30);
        auto e = chart_entry("holomorphic4", "M = [[a, -b], [b, a]] with a + ib holomorphic in x1 + i x2; "
                                             "complex eigenvalue a ± ib",
                             verified(two_by_two_block(4, re, -im, im, re), standard_symplectic(4)));
        e.point = point({1, Rational(1, 2), 0, 0});
        out.push_back(std::move(e));
    }
    return out;
}

} // namespace

const std::vector<CorpusEntry>& corpus()
{
    static const std::vector<CorpusEntry> entries = build();
    return entries;
}

const CorpusEntry& corpus_entry(const std::string& name)
{
    for (const auto& e : corpus())
        if (e.name == name)
            return e;
    throw FormatError("unknown corpus entry '" + name + "'");
}

} // namespace bipencil
