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

#include "bipencil/poisson_charts.hpp"

#include "bipencil/errors.hpp"
#include "bipencil/parallel.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <limits>
#include <random>
#include <sstream>

namespace bipencil {

// ---------------------------------------------------------------- bivectors

PolyBivector::PolyBivector(std::size_t n) : n_(n), upper_(n * n, MultiPoly(n)) {}

std::size_t PolyBivector::index(std::size_t i, std::size_t j) const
{
    if (i >= n_ || j >= n_)
        throw StructuralError("bivector index out of range");
    return i * n_ + j;
}

MultiPoly PolyBivector::operator()(std::size_t i, std::size_t j) const
{
    if (i == j) {
        index(i, j);
        return MultiPoly(n_);
    }
    return i < j ? upper_[index(i, j)] : -upper_[index(j, i)];
}

void PolyBivector::set(std::size_t i, std::size_t j, const MultiPoly& value)
{
    if (i == j)
        throw StructuralError("diagonal of a bivector is zero");
    if (value.variables() != n_)
        throw StructuralError("bivector entry has the wrong number of variables");
    if (i < j)
        upper_[index(i, j)] = value;
    else
        upper_[index(j, i)] = -value;
}

bool PolyBivector::is_zero() const
{
    return std::all_of(upper_.begin(), upper_.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

QMatrix PolyBivector::evaluate(const Point& x) const
{
    QMatrix m(n_, n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j) {
            const Rational v = upper_[i * n_ + j].evaluate(x);
            m(i, j) = v;
            m(j, i) = -v;
        }
    return m;
}

std::vector<MultiPoly> PolyBivector::apply(const std::vector<MultiPoly>& df) const
{
    std::vector<MultiPoly> out(n_, MultiPoly(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
            if (i != j && !df[j].is_zero())
                out[i] += (*this)(i, j) * df[j];
    return out;
}

PolyBivector operator+(const PolyBivector& a, const PolyBivector& b)
{
    if (a.n_ != b.n_)
        throw StructuralError("bivector dimensions differ");
    PolyBivector out(a.n_);
    for (std::size_t k = 0; k < a.upper_.size(); ++k)
        out.upper_[k] = a.upper_[k] + b.upper_[k];
    return out;
}

PolyBivector operator*(const MultiPoly& f, const PolyBivector& p)
{
    PolyBivector out(p.n_);
    for (std::size_t k = 0; k < p.upper_.size(); ++k)
        if (!p.upper_[k].is_zero())
            out.upper_[k] = f * p.upper_[k];
    return out;
}

// ---------------------------------------------------------- identity checks

namespace {

MultiPoly schouten_partial(const PolyBivector& p, const PolyBivector& q, std::size_t i, std::size_t j, std::size_t k,
                           std::size_t range)
{
    MultiPoly sum(p.dimension());
    const std::size_t idx[3] = {i, j, k};
    for (int c = 0; c < 3; ++c) {
        const std::size_t a = idx[c], b = idx[(c + 1) % 3], d = idx[(c + 2) % 3];
        const MultiPoly target = q(b, d);
        if (target.is_zero())
            continue;
        for (std::size_t s = 0; s < range; ++s) {
            const MultiPoly coeff = p(a, s);
            if (coeff.is_zero())
                continue;
            const MultiPoly ds = target.derivative(s);
            if (!ds.is_zero())
                sum += coeff * ds;
        }
    }
    return sum;
}

IdentityCheck run_identity(std::size_t n, std::size_t range,
                           const std::function<MultiPoly(std::size_t, std::size_t, std::size_t, std::size_t)>& term)
{
    IdentityCheck out;
    for (std::size_t i = 0; i < range; ++i)
        for (std::size_t j = i + 1; j < range; ++j)
            for (std::size_t k = j + 1; k < range; ++k) {
                MultiPoly r = term(i, j, k, range);
                if (!r.is_zero())
                    out.residuals.push_back({{int(i) + 1, int(j) + 1, int(k) + 1}, std::move(r)});
            }
    (void)n;
    out.ok = out.residuals.empty();
    return out;
}

} // namespace

MultiPoly schouten_term(const PolyBivector& p, const PolyBivector& q, int i, int j, int k)
{
    return schouten_partial(p, q, i, j, k, p.dimension());
}

IdentityCheck jacobi_check(const PolyBivector& p)
{
    return run_identity(p.dimension(), p.dimension(), [&](std::size_t i, std::size_t j, std::size_t k, std::size_t r) {
        return schouten_partial(p, p, i, j, k, r);
    });
}

IdentityCheck compatibility_check(const PolyBivector& a, const PolyBivector& b)
{
    if (a.dimension() != b.dimension())
        throw StructuralError("bivector dimensions differ");
    return run_identity(a.dimension(), a.dimension(), [&](std::size_t i, std::size_t j, std::size_t k, std::size_t r) {
        return schouten_partial(a, b, i, j, k, r) + schouten_partial(b, a, i, j, k, r);
    });
}

BlockCompatibility block_compatibility_check(const PolyBivector& a, const PolyBivector& b, std::size_t m)
{
    const std::size_t n = a.dimension();
    if (b.dimension() != n || m > n)
        throw StructuralError("bordered form needs equal dimensions and m <= n");
    for (std::size_t i = n - m; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a(i, j).is_zero() || !b(i, j).is_zero())
                throw StructuralError("bivectors do not vanish on the last m rows and columns");
    BlockCompatibility out;
    out.full_check = compatibility_check(a, b);
    // upper-left block with the last m variables as parameters: derivatives and
    // indices range over the first n - m coordinates only
    out.block_check = run_identity(n, n - m, [&](std::size_t i, std::size_t j, std::size_t k, std::size_t r) {
        return schouten_partial(a, b, i, j, k, r) + schouten_partial(b, a, i, j, k, r);
    });
    out.full = out.full_check.ok;
    out.block = out.block_check.ok;
    return out;
}

ChartPencil::ChartPencil(PolyBivector a_, PolyBivector b_, std::vector<std::string> names_)
    : a(std::move(a_)), b(std::move(b_)), names(std::move(names_))
{
    if (a.dimension() != b.dimension())
        throw StructuralError("chart bivectors differ in dimension");
    if (names.empty())
        names = default_variable_names(a.dimension());
    if (names.size() != a.dimension())
        throw StructuralError("variable name count differs from the chart dimension");
}

bool ChartPencil::verify()
{
    jacobi_verified = jacobi_check(a).ok && jacobi_check(b).ok;
    compatibility_verified = jacobi_verified && compatibility_check(a, b).ok;
    return compatibility_verified;
}

SkewPencil evaluate_at(const ChartPencil& c, const Point& x)
{
    if (x.size() != c.dimension())
        throw StructuralError("point dimension differs from the chart");
    return SkewPencil(c.a.evaluate(x), c.b.evaluate(x));
}

ChartPencil constant_chart(const SkewPencil& p)
{
    const std::size_t n = p.dimension();
    PolyBivector a(n), b(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            a.set(i, j, MultiPoly::constant(n, p.a()(i, j)));
            b.set(i, j, MultiPoly::constant(n, p.b()(i, j)));
        }
    ChartPencil c(a, b);
    c.jacobi_verified = c.compatibility_verified = true;
    return c;
}

std::optional<SkewPencil> as_constant(const ChartPencil& c)
{
    const std::size_t n = c.dimension();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!c.a(i, j).is_constant() || !c.b(i, j).is_constant())
                return std::nullopt;
    return evaluate_at(c, Point(n, Rational(0)));
}

// ------------------------------------------------------------- pointwise

bool RegularScan::all_same() const
{
    return std::all_of(samples.begin(), samples.end(), [](const ScanEntry& e) { return e.same_bundle; });
}

RegularScan jk_regular_scan(const ChartPencil& c, const Point& base, const std::vector<Point>& samples)
{
    RegularScan out;
    const SkewPencil p0 = evaluate_at(c, base);
    out.base = jk_invariants(p0);
    out.base_rank = pencil_rank(p0);
    out.samples = parallel_map(samples.size(), [&](std::size_t i) {
        const SkewPencil p = evaluate_at(c, samples[i]);
        return ScanEntry{samples[i], pencil_rank(p), same_bundle(out.base, jk_invariants(p))};
    });
    return out;
}

bool is_common_casimir(const ChartPencil& c, const MultiPoly& f)
{
    const auto df = f.gradient();
    const auto za = c.a.apply(df), zb = c.b.apply(df);
    const auto zero = [](const MultiPoly& p) { return p.is_zero(); };
    return std::all_of(za.begin(), za.end(), zero) && std::all_of(zb.begin(), zb.end(), zero);
}

ChartPencil casimir_shift(const ChartPencil& c, const MultiPoly& f)
{
    if (f.variables() != c.dimension())
        throw StructuralError("function has the wrong number of variables");
    if (!is_common_casimir(c, f))
        throw DomainError("shift function is not a common Casimir of A and B");
    ChartPencil out(c.a + f * c.b, c.b, c.names);
    out.verify();
    return out;
}

namespace {

std::vector<PencilEigenvalue> eigenvalues_or_empty(const SkewPencil& p)
{
    if (pencil_rank(p) == 0)
        return {};
    return eigenvalues(p);
}

} // namespace

ShiftReport verify_eigenvalue_shift(const ChartPencil& c, const MultiPoly& f, const Point& x)
{
    const ChartPencil shifted = casimir_shift(c, f);
    ShiftReport r;
    r.point = x;
    r.shift = f.evaluate(x);
    const auto before = eigenvalues_or_empty(evaluate_at(c, x));
    const auto after = eigenvalues_or_empty(evaluate_at(shifted, x));
    std::vector<std::pair<EigenvalueKey, int>> expected, got;
    for (const auto& e : before) {
        r.before.push_back(e.key);
        EigenvalueKey k = e.key;
        if (!k.infinite)
            k.minimal_polynomial = k.minimal_polynomial.shifted(-r.shift);
        expected.emplace_back(k, e.multiplicity);
    }
    for (const auto& e : after) {
        r.after.push_back(e.key);
        got.emplace_back(e.key, e.multiplicity);
    }
    const auto by_key = [](const auto& u, const auto& v) { return u.first < v.first; };
    std::sort(expected.begin(), expected.end(), by_key);
    std::sort(got.begin(), got.end(), by_key);
    r.ok = expected == got;
    return r;
}

MultiPoly bracket(const ChartPencil& c, const MultiPoly& f, const MultiPoly& g, const ProjectiveValue& lambda)
{
    const auto [fa, fb] = bracket_pair(c, f, g);
    if (lambda.infinite)
        return fb;
    return fa + fb * lambda.value;
}

std::pair<MultiPoly, MultiPoly> bracket_pair(const ChartPencil& c, const MultiPoly& f, const MultiPoly& g)
{
    const auto df = f.gradient();
    const auto dg = g.gradient();
    const auto va = c.a.apply(dg), vb = c.b.apply(dg);
    MultiPoly ra(c.dimension()), rb(c.dimension());
    for (std::size_t i = 0; i < c.dimension(); ++i) {
        if (df[i].is_zero())
            continue;
        ra += df[i] * va[i];
        rb += df[i] * vb[i];
    }
    return {ra, rb};
}

std::string role_name(FunctionRole r)
{
    switch (r) {
    case FunctionRole::casimir:
        return "casimir";
    case FunctionRole::eigenvalue_real:
        return "eigenvalue-real-part";
    case FunctionRole::eigenvalue_imag:
        return "eigenvalue-imag-part";
    case FunctionRole::hamiltonian:
        return "hamiltonian";
    case FunctionRole::extension:
        return "extension";
    }
    return "extension";
}

FunctionRole parse_role(const std::string& s)
{
    for (auto r : {FunctionRole::casimir, FunctionRole::eigenvalue_real, FunctionRole::eigenvalue_imag,
                   FunctionRole::hamiltonian, FunctionRole::extension})
        if (role_name(r) == s)
            return r;
    throw FormatError("unknown function role '" + s + "'");
}

FunctionFamily FunctionFamily::untagged(const std::vector<MultiPoly>& fs)
{
    FunctionFamily g;
    for (std::size_t i = 0; i < fs.size(); ++i)
        g.functions.push_back({fs[i], FunctionRole::extension, std::nullopt, "g" + std::to_string(i + 1)});
    return g;
}

InvolutionCheck bi_involution_check(const ChartPencil& c, const FunctionFamily& g)
{
    InvolutionCheck out;
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            auto [ra, rb] = bracket_pair(c, g.functions[i].f, g.functions[j].f);
            if (ra.is_zero() && rb.is_zero())
                continue;
            out.ok = false;
            out.first = int(i);
            out.second = int(j);
            out.bracket = ra.is_zero() ? "B" : "A";
            out.residual = ra.is_zero() ? rb : ra;
            return out;
        }
    return out;
}

QMatrix jacobian(const FunctionFamily& g, const Point& x)
{
    QMatrix j(g.size(), x.size());
    for (std::size_t r = 0; r < g.size(); ++r)
        for (std::size_t k = 0; k < x.size(); ++k)
            j(r, k) = g.functions[r].f.derivative(k).evaluate(x);
    return j;
}

namespace {

std::vector<Point> random_points(std::size_t n, std::size_t count, unsigned long seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    std::vector<Point> pts;
    for (std::size_t s = 0; s < count; ++s) {
        Point x(n);
        for (auto& v : x) {
            v = Rational(num(rng), den(rng));
            v.canonicalize();
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

} // namespace

CompletenessReport completeness_check(const ChartPencil& c, const FunctionFamily& g, const Point& x,
                                      const std::optional<Subspace>& target, unsigned long seed, std::size_t samples)
{
    CompletenessReport r;
    const std::size_t n = c.dimension();
    const auto pts = random_points(n, samples, seed);
    r.family_size = g.size();
    r.max_pencil_rank = pencil_rank(evaluate_at(c, x));
    const auto ranks = parallel_map(pts.size(), [&](std::size_t i) {
        return std::pair{pencil_rank(evaluate_at(c, pts[i])), matrix_rank(jacobian(g, pts[i]))};
    });
    for (const auto& [pr, jr] : ranks) {
        r.max_pencil_rank = std::max(r.max_pencil_rank, pr);
        r.jacobian_rank_at_samples.push_back(jr);
    }
    r.expected_count = n - r.max_pencil_rank / 2;
    r.count_ok = r.family_size == r.expected_count;
    const QMatrix jx = jacobian(g, x);
    r.jacobian_rank_at_point = matrix_rank(jx);
    r.independent = r.jacobian_rank_at_point == g.size()
                    || std::any_of(r.jacobian_rank_at_samples.begin(), r.jacobian_rank_at_samples.end(),
                                   [&](std::size_t k) { return k == g.size(); });
    if (target)
        r.span_matches_target = Subspace(n, jx) == *target;
    return r;
}

std::vector<MultiPoly> polynomial_casimirs(const PolyBivector& p, int degree)
{
    const std::size_t n = p.dimension();
    if (degree < 0)
        return {};
    // monomials of degree <= d, graded ascending
    std::vector<Exponents> monos;
    Exponents e(n, 0);
    std::function<void(std::size_t, int)> gen = [&](std::size_t i, int left) {
        if (i == n) {
            monos.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[i] = k;
            gen(i + 1, left - k);
        }
        e[i] = 0;
    };
    gen(0, degree);
    std::stable_sort(monos.begin(), monos.end(), [](const Exponents& a, const Exponents& b) {
        const int da = std::accumulate(a.begin(), a.end(), 0), db = std::accumulate(b.begin(), b.end(), 0);
        return da != db ? da < db : a > b;
    });

    std::map<std::pair<std::size_t, Exponents>, std::size_t> row_of;
    std::vector<std::vector<std::pair<std::size_t, Rational>>> columns(monos.size());
    for (std::size_t m = 0; m < monos.size(); ++m) {
        const MultiPoly f = MultiPoly::monomial(monos[m]);
        const auto image = p.apply(f.gradient());
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& [ex, c] : image[i].terms()) {
                const auto key = std::pair{i, ex};
                auto it = row_of.find(key);
                if (it == row_of.end())
                    it = row_of.emplace(key, row_of.size()).first;
                columns[m].emplace_back(it->second, c);
            }
    }
    QMatrix system(row_of.size(), monos.size());
    for (std::size_t m = 0; m < monos.size(); ++m)
        for (const auto& [r, c] : columns[m])
            system(r, m) = c;
    // echelon basis of the kernel with the highest monomials eliminated first
    QMatrix ker = kernel_basis(system);
    QMatrix reversed(ker.rows(), ker.cols());
    for (std::size_t i = 0; i < ker.rows(); ++i)
        for (std::size_t j = 0; j < ker.cols(); ++j)
            reversed(i, ker.cols() - 1 - j) = ker(i, j);
    const Subspace s(ker.cols(), reversed);
    std::vector<MultiPoly> out;
    for (std::size_t i = s.dim(); i-- > 0;) {
        MultiPoly f(n);
        for (std::size_t j = 0; j < ker.cols(); ++j)
            f.add_term(monos[ker.cols() - 1 - j], s.basis()(i, j));
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<MultiPoly> hamiltonian_field(const ChartPencil& c, const HamiltonianTerm& t)
{
    const auto dh = t.h.gradient();
    if (t.alpha.infinite)
        return c.b.apply(dh);
    auto va = c.a.apply(dh);
    const auto vb = c.b.apply(dh);
    for (std::size_t i = 0; i < va.size(); ++i)
        va[i] += vb[i] * t.alpha.value;
    return va;
}

bool IntegralsReport::ok() const
{
    return std::all_of(items.begin(), items.end(), [](const CheckItem& i) { return i.ok; });
}

namespace {

std::string first_nonzero(const std::vector<MultiPoly>& v, const std::vector<std::string>& names)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            return "component " + std::to_string(i + 1) + ": " + v[i].to_string(names);
    return "identically zero";
}

bool all_zero(const std::vector<MultiPoly>& v)
{
    return std::all_of(v.begin(), v.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

} // namespace

IntegralsReport standard_integrals_verify(const ChartPencil& c, const FunctionFamily& f,
                                          const std::vector<HamiltonianTerm>& hamiltonians, unsigned long seed)
{
    if (hamiltonians.empty())
        throw DomainError("at least one Hamiltonian is required to define the field");
    IntegralsReport r;
    const auto& names = c.names;
    const auto pts = random_points(c.dimension(), 4, seed);

    for (const auto& t : f.functions) {
        if (t.role != FunctionRole::casimir)
            continue;
        if (!t.at)
            throw FormatError("casimir tag needs a λ value");
        const ProjectiveValue l0 = *t.at;
        const auto df = t.f.gradient();
        std::vector<MultiPoly> image = l0.infinite ? c.b.apply(df) : hamiltonian_field(c, {l0, t.f});
        r.items.push_back({"casimir " + t.label + " at " + l0.to_string(), all_zero(image), first_nonzero(image, names)});
        std::size_t regular = 0;
        for (const auto& x : pts) {
            const SkewPencil p = evaluate_at(c, x);
            regular += is_regular_value(p, l0) ? 1 : 0;
        }
        r.items.push_back({"regular " + l0.to_string() + " for " + t.label, regular == pts.size(),
                           std::to_string(regular) + "/" + std::to_string(pts.size()) + " sample points"});
    }

    std::vector<std::vector<MultiPoly>> fields;
    for (const auto& h : hamiltonians)
        fields.push_back(hamiltonian_field(c, h));
    for (std::size_t i = 0; i < fields.size(); ++i)
        for (std::size_t j = i + 1; j < fields.size(); ++j) {
            std::vector<MultiPoly> diff;
            for (std::size_t k = 0; k < fields[i].size(); ++k)
                diff.push_back(fields[i][k] - fields[j][k]);
            r.items.push_back({"field consistency " + hamiltonians[i].alpha.to_string() + "/"
                                   + hamiltonians[j].alpha.to_string(),
                               all_zero(diff), first_nonzero(diff, names)});
        }

    const InvolutionCheck inv = bi_involution_check(c, f);
    std::string detail = "all pairs commute";
    if (!inv.ok)
        detail = "{" + f.functions[inv.first].label + ", " + f.functions[inv.second].label + "}_" + inv.bracket + " = "
                 + inv.residual.to_string(names);
    r.items.push_back({"bi-involution", inv.ok, detail});

    const auto& v = fields.front();
    for (const auto& t : f.functions) {
        const auto df = t.f.gradient();
        MultiPoly lie(c.dimension());
        for (std::size_t k = 0; k < v.size(); ++k)
            if (!df[k].is_zero())
                lie += df[k] * v[k];
        r.items.push_back({"first integral " + t.label, lie.is_zero(), lie.is_zero() ? "v(f) = 0" : "v(f) = " + lie.to_string(names)});
    }

    // informational: whether each Hamiltonian is functionally dependent on F
    for (const auto& h : hamiltonians) {
        FunctionFamily with = f;
        with.functions.push_back({h.h, FunctionRole::hamiltonian, h.alpha, "H"});
        bool dependent = true;
        for (const auto& x : pts)
            if (matrix_rank(jacobian(with, x)) > matrix_rank(jacobian(f, x)))
                dependent = false;
        r.items.push_back({"hamiltonian " + h.alpha.to_string() + " dependence", true,
                           dependent ? "dependent on F" : "independent of F"});
    }
    return r;
}

// ---------------------------------------------------- eigenvalue differentials

std::string status_name(CheckStatus s)
{
    switch (s) {
    case CheckStatus::pass:
        return "pass";
    case CheckStatus::fail:
        return "fail";
    case CheckStatus::inconclusive:
        return "inconclusive";
    }
    return "fail";
}

CheckStatus DifferentialReport::status() const
{
    CheckStatus s = CheckStatus::pass;
    for (const auto& e : eigenvalues) {
        if (e.status == CheckStatus::fail)
            return CheckStatus::fail;
        if (e.status == CheckStatus::inconclusive)
            s = CheckStatus::inconclusive;
    }
    return s;
}

namespace {

using cd = std::complex<double>;

/// Finite eigenvalues μ (negated roots of the squarefree characteristic polynomial).
std::optional<std::vector<cd>> eigenvalue_roots(const SkewPencil& p, std::size_t expected_rank)
{
    if (pencil_rank(p) != expected_rank)
        return std::nullopt;
    if (expected_rank == 0)
        return std::vector<cd>{};
    const Polynomial s = squarefree_part(characteristic_polynomial(p));
    std::vector<cd> mu;
    for (const auto& r : numeric_roots(s))
        mu.push_back(-r);
    return mu;
}

Eigen::MatrixXcd to_complex(const QMatrix& m)
{
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out(Eigen::Index(i), Eigen::Index(j)) = m(i, j).get_d();
    return out;
}

double membership_residual(const SkewPencil& p, const Subspace& core, cd mu, const std::vector<cd>& grad)
{
    const Eigen::Index n = Eigen::Index(p.dimension());
    const Eigen::MatrixXcd m = to_complex(p.a()) - mu * to_complex(p.b());
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double scale = std::max(1.0, sv.size() ? sv(0) : 0.0);
    std::vector<Eigen::VectorXcd> span;
    for (Eigen::Index k = 0; k < n; ++k)
        if (k >= sv.size() || sv(k) <= 1e-9 * scale)
            span.push_back(svd.matrixV().col(k));
    for (std::size_t r = 0; r < core.dim(); ++r) {
        Eigen::VectorXcd v(n);
        for (Eigen::Index j = 0; j < n; ++j)
            v(j) = core.basis()(r, std::size_t(j)).get_d();
        span.push_back(v);
    }
    Eigen::VectorXcd d(n);
    for (Eigen::Index j = 0; j < n; ++j)
        d(j) = grad[std::size_t(j)];
    if (span.empty())
        return d.cwiseAbs().maxCoeff();
    Eigen::MatrixXcd basis(n, Eigen::Index(span.size()));
    for (std::size_t k = 0; k < span.size(); ++k)
        basis.col(Eigen::Index(k)) = span[k];
    Eigen::JacobiSVD<Eigen::MatrixXcd> bs(basis, Eigen::ComputeThinU);
    const double top = bs.singularValues()(0);
    Eigen::Index r = 0;
    while (r < bs.singularValues().size() && bs.singularValues()(r) > 1e-10 * top)
        ++r;
    const Eigen::MatrixXcd u = bs.matrixU().leftCols(r);
    const Eigen::VectorXcd rest = d - u * (u.adjoint() * d);
    return rest.cwiseAbs().maxCoeff();
}

} // namespace

DifferentialReport eigenvalue_differential_check(const ChartPencil& c, const Point& x, double h, double tolerance)
{
    if (!(h > 0))
        throw DomainError("step must be positive");
    DifferentialReport rep;
    rep.step = h;
    rep.tolerance = tolerance;
    const std::size_t n = c.dimension();
    const SkewPencil p0 = evaluate_at(c, x);
    rep.pencil_rank = pencil_rank(p0);
    const auto base = eigenvalue_roots(p0, rep.pencil_rank);
    if (!base || base->empty())
        return rep;
    const Rational hq = rational_from_double(h);

    struct Side {
        std::optional<std::vector<cd>> plus, minus;
    };
    const auto sides = parallel_map(n, [&](std::size_t k) {
        Point xp = x, xm = x;
        xp[k] += hq;
        xm[k] -= hq;
        return Side{eigenvalue_roots(evaluate_at(c, xp), rep.pencil_rank),
                    eigenvalue_roots(evaluate_at(c, xm), rep.pencil_rank)};
    });

    double separation = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < base->size(); ++i)
        for (std::size_t j = i + 1; j < base->size(); ++j)
            separation = std::min(separation, std::abs((*base)[i] - (*base)[j]));
    const SkewPencil& pencil = p0;
    const Subspace core = core_subspace(p0);

    for (const cd mu : *base) {
        if (mu.imag() < -1e-12 * (1 + std::abs(mu)))
            continue; // the conjugate of a reported pair
        EigenvalueDifferential e;
        e.value = mu;
        e.complex_pair = std::abs(mu.imag()) > 1e-12 * (1 + std::abs(mu));
        bool tracked = true;
        for (std::size_t k = 0; k < n && tracked; ++k) {
            const auto& s = sides[k];
            if (!s.plus || !s.minus || s.plus->size() != base->size() || s.minus->size() != base->size()) {
                tracked = false;
                break;
            }
            const auto nearest = [&](const std::vector<cd>& roots) {
                cd best = roots.front();
                for (const cd r : roots)
                    if (std::abs(r - mu) < std::abs(best - mu))
                        best = r;
                return best;
            };
            const cd up = nearest(*s.plus), down = nearest(*s.minus);
            if (std::abs(up - mu) > separation / 3 || std::abs(down - mu) > separation / 3)
                tracked = false;
            e.gradient.push_back((up - down) / (2 * h));
        }
        if (!tracked) {
            e.status = CheckStatus::inconclusive;
            e.note = "root collision or rank change within the tracking radius";
            e.gradient.clear();
            rep.eigenvalues.push_back(std::move(e));
            continue;
        }
        if (e.complex_pair) {
            e.residual = membership_residual(pencil, core, mu, e.gradient);
            // a non-converging membership residual is not a refutation
            e.status = e.residual <= tolerance ? CheckStatus::pass : CheckStatus::inconclusive;
            e.note = "distance of dα + i·dβ from Ker(A - μB) + K";
        } else {
            double worst = 0;
            for (std::size_t i = 0; i < n; ++i) {
                double s = 0;
                for (std::size_t j = 0; j < n; ++j)
                    s += (pencil.a()(i, j).get_d() - mu.real() * pencil.b()(i, j).get_d()) * e.gradient[j].real();
                worst = std::max(worst, std::abs(s));
            }
            e.residual = worst;
            e.status = e.residual <= tolerance ? CheckStatus::pass : CheckStatus::fail;
            e.note = "‖(A - μB)·dμ‖∞";
        }
        rep.eigenvalues.push_back(std::move(e));
    }
    std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(), [](const auto& u, const auto& v) {
        return u.value.real() != v.value.real() ? u.value.real() < v.value.real() : u.value.imag() < v.value.imag();
    });
    return rep;
}

CheckStatus ConvergenceReport::status() const
{
    // coarse steps may exceed the residual tolerance; only lost tracking matters here
    for (const auto& r : runs)
        for (const auto& e : r.eigenvalues)
            if (e.gradient.empty())
                return CheckStatus::inconclusive;
    for (const auto& o : order)
        if (o && (*o < order_low || *o > order_high))
            return CheckStatus::fail;
    return CheckStatus::pass;
}

ConvergenceReport eigenvalue_differential_order(const ChartPencil& c, const Point& x, const std::vector<double>& steps,
                                                double tolerance)
{
    if (steps.size() < 2)
        throw DomainError("order estimation needs at least two steps");
    ConvergenceReport out;
    out.steps = steps;
    for (double h : steps)
        out.runs.push_back(eigenvalue_differential_check(c, x, h, tolerance));
    const std::size_t count = out.runs.front().eigenvalues.size();
    for (const auto& r : out.runs)
        if (r.eigenvalues.size() != count)
            throw ConsistencyError("eigenvalue count changed between step sizes");
    constexpr double round_off = 1e-13;
    for (std::size_t e = 0; e < count; ++e) {
        bool measurable = true;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t s = 0; s < steps.size(); ++s) {
            const double r = out.runs[s].eigenvalues[e].residual;
            if (r <= round_off) {
                measurable = false;
                break;
            }
            const double lx = std::log(steps[s]), ly = std::log(r);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        if (!measurable) {
            out.order.push_back(std::nullopt);
            continue;
        }
        const double k = double(steps.size());
        out.order.push_back((k * sxy - sx * sy) / (k * sxx - sx * sx));
    }
    return out;
}

// ------------------------------------------------------- coordinate changes

namespace {

std::vector<MultiPoly> inverse_images(const QMatrix& t)
{
    const auto inv = inverse(t);
    if (!inv)
        throw DomainError("coordinate change is singular");
    const std::size_t n = t.rows();
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < n; ++i) {
        MultiPoly xi(n);
        for (std::size_t j = 0; j < n; ++j)
            if ((*inv)(i, j) != 0)
                xi += MultiPoly::variable(n, j) * (*inv)(i, j);
        images.push_back(std::move(xi));
    }
    return images;
}

} // namespace

MultiPoly transform_function(const MultiPoly& f, const QMatrix& t)
{
    return f.compose(inverse_images(t));
}

Point transform_point(const Point& x, const QMatrix& t)
{
    return t * std::span<const Rational>(x);
}

ChartPencil transform_chart(const ChartPencil& c, const QMatrix& t)
{
    const std::size_t n = c.dimension();
    if (t.rows() != n || t.cols() != n)
        throw StructuralError("coordinate change has the wrong size");
    const auto images = inverse_images(t);
    const auto push = [&](const PolyBivector& p) {
        std::vector<MultiPoly> sub(n * n, MultiPoly(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const MultiPoly e = p(i, j);
                if (!e.is_zero()) {
                    sub[i * n + j] = e.compose(images);
                    sub[j * n + i] = -sub[i * n + j];
                }
            }
        PolyBivector out(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = a + 1; b < n; ++b) {
                MultiPoly v(n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        if (t(a, i) != 0 && t(b, j) != 0 && !sub[i * n + j].is_zero())
                            v += sub[i * n + j] * (t(a, i) * t(b, j));
                out.set(a, b, v);
            }
        return out;
    };
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("y" + std::to_string(i + 1));
    ChartPencil out(push(c.a), push(c.b), names);
    out.jacobi_verified = c.jacobi_verified;
    out.compatibility_verified = c.compatibility_verified;
    return out;
}

} // namespace bipencil
