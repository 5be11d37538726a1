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

#include "bipencil/polynomial.hpp"

#include "bipencil/errors.hpp"

#include <algorithm>
#include <sstream>

namespace bipencil {

Polynomial::Polynomial(const Rational& constant)
{
    if (!bipencil::is_zero(constant))
        coeffs_.push_back(constant);
}

Polynomial::Polynomial(std::vector<Rational> coefficients, std::string variable)
    : coeffs_(std::move(coefficients)), variable_(std::move(variable))
{
    trim();
}

Polynomial Polynomial::monomial(int degree, const Rational& coefficient, std::string variable)
{
    std::vector<Rational> c(static_cast<std::size_t>(degree) + 1);
    c.back() = coefficient;
    return Polynomial(std::move(c), std::move(variable));
}

Polynomial Polynomial::linear_factor(const Rational& root, std::string variable)
{
    return Polynomial({-root, Rational(1)}, std::move(variable));
}

Rational Polynomial::coefficient(int power) const
{
    if (power < 0 || power > degree())
        return 0;
    return coeffs_[static_cast<std::size_t>(power)];
}

Polynomial Polynomial::with_variable(std::string variable) const
{
    Polynomial p = *this;
    p.variable_ = std::move(variable);
    return p;
}

void Polynomial::trim()
{
    while (!coeffs_.empty() && bipencil::is_zero(coeffs_.back()))
        coeffs_.pop_back();
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] += other.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    if (other.coeffs_.size() > coeffs_.size())
        coeffs_.resize(other.coeffs_.size());
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
        coeffs_[i] -= other.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other)
{
    if (is_zero() || other.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (bipencil::is_zero(coeffs_[i]))
            continue;
        for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i] * other.coeffs_[j];
    }
    coeffs_ = std::move(out);
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar)
{
    if (bipencil::is_zero(scalar)) {
        coeffs_.clear();
        return *this;
    }
    for (auto& c : coeffs_)
        c *= scalar;
    return *this;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& divisor) const
{
    if (divisor.is_zero())
        throw DomainError("polynomial division by zero");
    Polynomial rem = *this;
    if (degree() < divisor.degree())
        return {Polynomial(std::vector<Rational>{}, variable_), rem};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - divisor.degree()) + 1);
    const Rational inv_lead = 1 / divisor.leading();
    const int dd = divisor.degree();
    while (!rem.is_zero() && rem.degree() >= dd) {
        const int shift = rem.degree() - dd;
        const Rational factor = rem.leading() * inv_lead;
        quot[static_cast<std::size_t>(shift)] = factor;
        for (int k = 0; k <= dd; ++k)
            rem.coeffs_[static_cast<std::size_t>(shift + k)] -= factor * divisor.coeffs_[static_cast<std::size_t>(k)];
        rem.trim();
    }
    return {Polynomial(std::move(quot), variable_), rem};
}

Polynomial Polynomial::exact_div(const Polynomial& divisor) const
{
    auto [q, r] = divmod(divisor);
    if (!r.is_zero())
        throw ConsistencyError("inexact polynomial division");
    return q;
}

bool Polynomial::divisible_by(const Polynomial& divisor) const
{
    return divmod(divisor).second.is_zero();
}

Polynomial Polynomial::monic() const
{
    if (is_zero())
        return *this;
    return *this * (1 / leading());
}

Polynomial Polynomial::derivative() const
{
    if (coeffs_.size() <= 1)
        return Polynomial(std::vector<Rational>{}, variable_);
    std::vector<Rational> d(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        d[i - 1] = coeffs_[i] * static_cast<long>(i);
    return Polynomial(std::move(d), variable_);
}

Rational Polynomial::evaluate(const Rational& at) const
{
    Rational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * at + *it;
    return acc;
}

std::complex<long double> Polynomial::evaluate(std::complex<long double> at) const
{
    std::complex<long double> acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * at + static_cast<long double>(it->get_d());
    return acc;
}

Polynomial Polynomial::shifted(const Rational& shift) const
{
    // Horner in the ring: p(t + s) = (...(c_d (t+s) + c_{d-1})(t+s) + ...)
    const Polynomial step({shift, Rational(1)}, variable_);
    Polynomial acc(std::vector<Rational>{}, variable_);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * step + Polynomial(*it);
    return acc.with_variable(variable_);
}

Polynomial Polynomial::reflected_monic() const
{
    Polynomial r = *this;
    for (std::size_t i = 1; i < r.coeffs_.size(); i += 2)
        r.coeffs_[i] = -r.coeffs_[i];
    return r.monic();
}

std::vector<Integer> Polynomial::primitive_integer_coefficients() const
{
    Integer den_lcm = 1;
    for (const auto& c : coeffs_)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<Integer> out;
    out.reserve(coeffs_.size());
    Integer content = 0;
    for (const auto& c : coeffs_) {
        Integer v = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        out.push_back(v);
    }
    if (content != 0) {
        if (!out.empty() && out.back() < 0)
            content = -content;
        for (auto& v : out)
            v /= content;
    }
    return out;
}

Polynomial Polynomial::pow(unsigned exponent) const
{
    Polynomial result(Rational(1));
    result.variable_ = variable_;
    Polynomial base = *this;
    while (exponent) {
        if (exponent & 1U)
            result *= base;
        exponent >>= 1U;
        if (exponent)
            base *= base;
    }
    return result;
}

std::string Polynomial::to_string() const
{
    if (is_zero())
        return "0";
    std::ostringstream out;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
        const Rational& c = coeffs_[static_cast<std::size_t>(k)];
        if (bipencil::is_zero(c))
            continue;
        const Rational mag = abs(c);
        if (first)
            out << (sgn(c) < 0 ? "-" : "");
        else
            out << (sgn(c) < 0 ? " - " : " + ");
        first = false;
        const bool unit = mag == 1;
        if (k == 0) {
            out << bipencil::to_string(mag);
            continue;
        }
        if (!unit) {
            if (mag.get_den() == 1)
                out << bipencil::to_string(mag);
            else
                out << '(' << bipencil::to_string(mag) << ')';
        }
        out << variable_;
        if (k > 1)
            out << '^' << k;
    }
    return out.str();
}

Polynomial gcd(const Polynomial& a, const Polynomial& b)
{
    if (!a.variable().empty() && !b.variable().empty() && a.variable() != b.variable()
        && !a.is_constant() && !b.is_constant())
        throw StructuralError("gcd of polynomials in different variables");
    Polynomial x = a.monic();
    Polynomial y = b.monic();
    while (!y.is_zero()) {
        Polynomial r = x.divmod(y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

Polynomial lcm(const Polynomial& a, const Polynomial& b)
{
    if (a.is_zero() || b.is_zero())
        return Polynomial();
    return (a * b).exact_div(gcd(a, b)).monic();
}

ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b)
{
    Polynomial r0 = a, r1 = b;
    Polynomial s0(Rational(1)), s1;
    Polynomial t0, t1(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r);
        Polynomial s2 = s0 - q * s1;
        Polynomial t2 = t0 - q * t1;
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.is_zero())
        return {r0, s0, t0};
    const Rational inv = 1 / r0.leading();
    return {r0 * inv, s0 * inv, t0 * inv};
}

Polynomial squarefree_part(const Polynomial& p)
{
    if (p.is_constant())
        return p.is_zero() ? p : Polynomial(Rational(1)).with_variable(p.variable());
    return p.exact_div(gcd(p, p.derivative())).monic();
}

Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys)
{
    if (xs.size() != ys.size())
        throw StructuralError("interpolation needs matching abscissae and values");
    // Newton divided differences
    const std::size_t n = xs.size();
    std::vector<Rational> dd(ys);
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i) {
            const Rational span = xs[i] - xs[i - level];
            if (bipencil::is_zero(span))
                throw DomainError("interpolation nodes must be distinct");
            dd[i] = (dd[i] - dd[i - 1]) / span;
        }
    Polynomial acc;
    for (std::size_t i = n; i-- > 0;)
        acc = acc * Polynomial::linear_factor(xs[i]) + Polynomial(dd[i]);
    return acc;
}

} // namespace bipencil
