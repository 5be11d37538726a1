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

#pragma once

#include "bipencil/rational.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace bipencil {

using Exponents = std::vector<int>;

/// Sparse multivariate polynomial over the rationals in a fixed number of
/// variables. Zero coefficients are never stored.
class MultiPoly {
public:
    explicit MultiPoly(std::size_t variables = 0) : n_(variables) {}

    static MultiPoly constant(std::size_t n, const Rational& c);
    /// The coordinate function x_i, 0-based.
    static MultiPoly variable(std::size_t n, std::size_t i);
    static MultiPoly monomial(const Exponents& e, const Rational& c = 1);

    std::size_t variables() const { return n_; }
    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    int degree() const;
    Rational coefficient(const Exponents& e) const;

    void add_term(const Exponents& e, const Rational& c);

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& s);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
    friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly operator-() const { return *this * Rational(-1); }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(unsigned k) const;
    /// ∂/∂x_i, 0-based.
    MultiPoly derivative(std::size_t i) const;
    std::vector<MultiPoly> gradient() const;

    Rational evaluate(const std::vector<Rational>& x) const;
    double evaluate(const std::vector<double>& x) const;

    /// Substitutes x_i -> images[i]; all images share one variable count.
    MultiPoly compose(const std::vector<MultiPoly>& images) const;

    /// e.g. "x1^2 + 2*x2*x3 - 1/2"; names default to x1..xn.
    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    std::size_t n_;
    std::map<Exponents, Rational> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

std::vector<std::string> default_variable_names(std::size_t n);

/// Fast double evaluation of a fixed polynomial.
class CompiledPoly {
public:
    CompiledPoly() = default;
    explicit CompiledPoly(const MultiPoly& p);
    double operator()(const std::vector<double>& x) const;

private:
    std::vector<double> coeffs_;
    std::vector<std::vector<std::pair<std::size_t, int>>> powers_;
};

} // namespace bipencil
