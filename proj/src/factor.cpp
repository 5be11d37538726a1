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

#include "bipencil/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

namespace bipencil {

std::vector<FactorPower> squarefree_decomposition(const Polynomial& p)
{
    std::vector<FactorPower> out;
    if (p.degree() < 1)
        return out;
    const Polynomial f = p.monic();
    Polynomial a = gcd(f, f.derivative());
    Polynomial b = f.exact_div(a);
    Polynomial c = f.derivative().exact_div(a) * Rational(1) - b.derivative();
    Polynomial d = c;
    int i = 1;
    // Yun: b_i = gcd(b, d), c_{i+1} = b / b_i, d = c' - b'
    while (b.degree() >= 1) {
        Polynomial bi = gcd(b, d);
        if (bi.degree() >= 1)
            out.push_back({bi, i});
        b = b.exact_div(bi);
        Polynomial ci = d.exact_div(bi);
        d = ci - b.derivative();
        ++i;
    }
    return out;
}

bool canonical_less(const Polynomial& a, const Polynomial& b)
{
    if (a.degree() != b.degree())
        return a.degree() < b.degree();
    for (int k = a.degree(); k >= 0; --k) {
        const Rational ca = a.coefficient(k);
        const Rational cb = b.coefficient(k);
        if (ca != cb)
            return ca < cb;
    }
    return false;
}

std::vector<std::complex<double>> numeric_roots(const Polynomial& p)
{
    using cld = std::complex<long double>;
    std::vector<std::complex<double>> roots;
    const int deg = p.degree();
    if (deg < 1)
        return roots;
    const Polynomial m = p.monic();
    if (deg == 1) {
        roots.emplace_back(-m.coefficient(0).get_d(), 0.0);
        return roots;
    }
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i)
        companion(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i)
        companion(i, deg - 1) = -m.coefficient(i).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
    const Polynomial dm = m.derivative();
    for (int i = 0; i < deg; ++i) {
        cld z(solver.eigenvalues()[i].real(), solver.eigenvalues()[i].imag());
        for (int it = 0; it < 60; ++it) {
            const cld fz = m.evaluate(z);
            const cld dz = dm.evaluate(z);
            if (std::abs(dz) == 0.0L)
                break;
            const cld step = fz / dz;
            z -= step;
            if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(z)))
                break;
        }
        double re = static_cast<double>(z.real());
        double im = static_cast<double>(z.imag());
        if (std::abs(im) <= 1e-14 * std::max(1.0, std::abs(re)))
            im = 0.0;
        roots.emplace_back(re, im);
    }
    std::sort(roots.begin(), roots.end(), [](auto x, auto y) {
        if (x.real() != y.real())
            return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return roots;
}

namespace {

struct RootUnit {
    std::vector<std::complex<double>> roots; // one real root or a conjugate pair
};

std::vector<RootUnit> group_conjugates(const std::vector<std::complex<double>>& roots)
{
    std::vector<RootUnit> units;
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i])
            continue;
        used[i] = true;
        if (roots[i].imag() == 0.0) {
            units.push_back({{roots[i]}});
            continue;
        }
        std::size_t best = roots.size();
        double best_dist = 0;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (used[j])
                continue;
            const double dist = std::abs(roots[j] - std::conj(roots[i]));
            if (best == roots.size() || dist < best_dist) {
                best = j;
                best_dist = dist;
            }
        }
        if (best == roots.size()) {
            units.push_back({{roots[i]}});
        } else {
            used[best] = true;
            units.push_back({{roots[i], roots[best]}});
        }
    }
    return units;
}

// Integer candidate lc * prod (x - r) with rounding; empty when rounding is unsafe.
std::optional<Polynomial> rounded_candidate(const Integer& lc, const std::vector<std::complex<double>>& roots)
{
    std::vector<std::complex<long double>> coeffs{1.0L};
    for (const auto& r : roots) {
        std::vector<std::complex<long double>> next(coeffs.size() + 1, 0.0L);
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            next[k + 1] += coeffs[k];
            next[k] -= coeffs[k] * std::complex<long double>(r.real(), r.imag());
        }
        coeffs = std::move(next);
    }
    const long double scale = lc.get_d();
    std::vector<Rational> rounded;
    for (const auto& c : coeffs) {
        const long double v = c.real() * scale;
        if (std::abs(v) > 1e15L || std::abs(c.imag() * scale) > 1e-3L)
            return std::nullopt;
        const long double r = std::round(v);
        if (std::abs(v - r) > 1e-3L)
            return std::nullopt;
        rounded.emplace_back(static_cast<long>(r));
    }
    Polynomial cand(rounded);
    if (cand.degree() < 1)
        return std::nullopt;
    return cand.monic();
}

std::vector<Polynomial> split_squarefree(const Polynomial& f)
{
    std::vector<Polynomial> factors;
    Polynomial rest = f.monic();
    if (rest.degree() <= 1) {
        if (rest.degree() == 1)
            factors.push_back(rest);
        return factors;
    }
    auto units = group_conjugates(numeric_roots(rest));
    bool progress = true;
    while (progress && rest.degree() > 1) {
        progress = false;
        const int deg = rest.degree();
        const auto coeffs = rest.primitive_integer_coefficients();
        const Integer lc = coeffs.back();
        std::vector<std::size_t> chosen;
        // enumerate unit subsets by increasing total degree
        for (int target = 1; target <= deg / 2 && !progress; ++target) {
            std::function<bool(std::size_t, int)> search = [&](std::size_t start, int remaining) -> bool {
                if (remaining == 0) {
                    std::vector<std::complex<double>> roots;
                    for (auto idx : chosen)
                        roots.insert(roots.end(), units[idx].roots.begin(), units[idx].roots.end());
                    auto cand = rounded_candidate(lc, roots);
                    if (!cand || !rest.divisible_by(*cand))
                        return false;
                    factors.push_back(*cand);
                    rest = rest.exact_div(*cand).monic();
                    std::vector<RootUnit> kept;
                    for (std::size_t u = 0; u < units.size(); ++u)
                        if (std::find(chosen.begin(), chosen.end(), u) == chosen.end())
                            kept.push_back(units[u]);
                    units = std::move(kept);
                    return true;
                }
                for (std::size_t u = start; u < units.size(); ++u) {
                    const int size = static_cast<int>(units[u].roots.size());
                    if (size > remaining)
                        continue;
                    chosen.push_back(u);
                    if (search(u + 1, remaining - size))
                        return true;
                    chosen.pop_back();
                }
                return false;
            };
            chosen.clear();
            progress = search(0, target);
        }
    }
    if (rest.degree() >= 1)
        factors.push_back(rest);
    return factors;
}

} // namespace

std::vector<FactorPower> irreducible_factors(const Polynomial& p)
{
    std::vector<FactorPower> out;
    for (const auto& sf : squarefree_decomposition(p))
        for (auto& f : split_squarefree(sf.factor))
            out.push_back({f.with_variable(p.variable()), sf.multiplicity});
    std::sort(out.begin(), out.end(), [](const FactorPower& x, const FactorPower& y) {
        if (x.factor != y.factor)
            return canonical_less(x.factor, y.factor);
        return x.multiplicity < y.multiplicity;
    });
    return out;
}

std::string factored_string(const Polynomial& p)
{
    if (p.is_zero())
        return "0";
    if (p.degree() < 1)
        return to_string(p.coefficient(0));
    std::ostringstream out;
    const Rational lead = p.leading();
    bool first = true;
    if (lead != 1) {
        out << to_string(lead);
        first = false;
    }
    for (const auto& fp : irreducible_factors(p)) {
        if (!first)
            out << ' ';
        first = false;
        out << '(' << fp.factor.to_string() << ')';
        if (fp.multiplicity > 1)
            out << '^' << fp.multiplicity;
    }
    return out.str();
}

} // namespace bipencil
