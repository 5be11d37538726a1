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

#include "bipencil/multipoly.hpp"

#include "bipencil/errors.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

namespace bipencil {

namespace {

void check_same(std::size_t a, std::size_t b)
{
    if (a != b)
        throw StructuralError("polynomials live in different numbers of variables");
}

} // namespace

MultiPoly MultiPoly::constant(std::size_t n, const Rational& c)
{
    MultiPoly p(n);
    p.add_term(Exponents(n, 0), c);
    return p;
}

MultiPoly MultiPoly::variable(std::size_t n, std::size_t i)
{
    if (i >= n)
        throw StructuralError("variable index out of range");
    Exponents e(n, 0);
    e[i] = 1;
    return monomial(e);
}

MultiPoly MultiPoly::monomial(const Exponents& e, const Rational& c)
{
    MultiPoly p(e.size());
    p.add_term(e, c);
    return p;
}

bool MultiPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && degree() == 0);
}

int MultiPoly::degree() const
{
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

Rational MultiPoly::coefficient(const Exponents& e) const
{
    const auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Exponents& e, const Rational& c)
{
    if (e.size() != n_)
        throw StructuralError("exponent vector length differs from the variable count");
    if (std::any_of(e.begin(), e.end(), [](int k) { return k < 0; }))
        throw FormatError("negative exponent");
    Rational v = c;
    v.canonicalize();
    if (v == 0)
        return;
    auto [it, inserted] = terms_.emplace(e, v);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o)
{
    check_same(n_, o.n_);
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o)
{
    check_same(n_, o.n_);
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    Rational f = s;
    f.canonicalize();
    for (auto& [e, c] : terms_)
        c *= f;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b)
{
    check_same(a.n_, b.n_);
    MultiPoly out(a.n_);
    Exponents e(a.n_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < a.n_; ++i)
                e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

MultiPoly MultiPoly::pow(unsigned k) const
{
    MultiPoly result = constant(n_, 1);
    MultiPoly base = *this;
    while (k > 0) {
        if (k & 1u)
            result = result * base;
        base = base * base;
        k >>= 1u;
    }
    return result;
}

MultiPoly MultiPoly::derivative(std::size_t i) const
{
    MultiPoly out(n_);
    for (const auto& [e, c] : terms_) {
        if (e[i] == 0)
            continue;
        Exponents d = e;
        --d[i];
        out.add_term(d, c * e[i]);
    }
    return out;
}

std::vector<MultiPoly> MultiPoly::gradient() const
{
    std::vector<MultiPoly> g;
    for (std::size_t i = 0; i < n_; ++i)
        g.push_back(derivative(i));
    return g;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& x) const
{
    check_same(n_, x.size());
    Rational sum = 0;
    for (const auto& [e, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < n_; ++i)
            for (int k = 0; k < e[i]; ++k)
                t *= x[i];
        sum += t;
    }
    return sum;
}

double MultiPoly::evaluate(const std::vector<double>& x) const
{
    return CompiledPoly(*this)(x);
}

MultiPoly MultiPoly::compose(const std::vector<MultiPoly>& images) const
{
    check_same(n_, images.size());
    const std::size_t m = images.empty() ? 0 : images[0].variables();
    MultiPoly out(m);
    for (const auto& [e, c] : terms_) {
        MultiPoly t = constant(m, c);
        for (std::size_t i = 0; i < n_; ++i)
            if (e[i] > 0)
                t = t * images[i].pow(static_cast<unsigned>(e[i]));
        out += t;
    }
    return out;
}

std::vector<std::string> default_variable_names(std::size_t n)
{
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i)
        names.push_back("x" + std::to_string(i + 1));
    return names;
}

std::string MultiPoly::to_string(const std::vector<std::string>& names_in) const
{
    if (terms_.empty())
        return "0";
    const auto names = names_in.empty() ? default_variable_names(n_) : names_in;
    // graded order, highest degree first, then lexicographically larger first
    std::vector<std::pair<Exponents, Rational>> ordered(terms_.begin(), terms_.end());
    std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
        const int dx = std::accumulate(x.first.begin(), x.first.end(), 0);
        const int dy = std::accumulate(y.first.begin(), y.first.end(), 0);
        if (dx != dy)
            return dx > dy;
        return x.first > y.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : ordered) {
        const bool negative = c < 0;
        const Rational mag = abs(c);
        if (first)
            os << (negative ? "-" : "");
        else
            os << (negative ? " - " : " + ");
        first = false;
        std::string mono;
        for (std::size_t i = 0; i < n_; ++i) {
            if (e[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += names[i];
            if (e[i] > 1)
                mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty())
            os << bipencil::to_string(mag);
        else if (mag == 1)
            os << mono;
        else
            os << bipencil::to_string(mag) << "*" << mono;
    }
    return os.str();
}

CompiledPoly::CompiledPoly(const MultiPoly& p)
{
    for (const auto& [e, c] : p.terms()) {
        coeffs_.push_back(c.get_d());
        std::vector<std::pair<std::size_t, int>> pw;
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0)
                pw.emplace_back(i, e[i]);
        powers_.push_back(std::move(pw));
    }
}

double CompiledPoly::operator()(const std::vector<double>& x) const
{
    double sum = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        double v = coeffs_[t];
        for (const auto& [i, k] : powers_[t])
            for (int r = 0; r < k; ++r)
                v *= x[i];
        sum += v;
    }
    return sum;
}

} // namespace bipencil
