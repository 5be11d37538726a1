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
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace bipencil {

/// Dense univariate polynomial over the rationals, lowest degree first.
///
/// The coefficient vector is always trimmed, so the zero polynomial is the
/// empty vector and degree() == size() - 1. The variable tag only affects
/// printing and is checked by gcd().
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(const Rational& constant);          // NOLINT(implicit)
    Polynomial(long constant) : Polynomial(Rational(constant)) {} // NOLINT(implicit)
    explicit Polynomial(std::vector<Rational> coefficients, std::string variable = "λ");

    static Polynomial monomial(int degree, const Rational& coefficient = 1, std::string variable = "λ");
    /// The polynomial t - root.
    static Polynomial linear_factor(const Rational& root, std::string variable = "λ");

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_constant() const { return coeffs_.size() <= 1; }
    const std::vector<Rational>& coefficients() const { return coeffs_; }
    Rational coefficient(int power) const;
    const Rational& leading() const { return coeffs_.back(); }
    const std::string& variable() const { return variable_; }
    Polynomial with_variable(std::string variable) const;

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const Rational& scalar);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Euclidean division: returns (quotient, remainder). Throws on zero divisor.
    std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const;
    /// Division that must be exact; throws ConsistencyError otherwise.
    Polynomial exact_div(const Polynomial& divisor) const;
    bool divisible_by(const Polynomial& divisor) const;

    Polynomial monic() const;
    Polynomial derivative() const;
    Rational evaluate(const Rational& at) const;
    std::complex<long double> evaluate(std::complex<long double> at) const;
    /// p(t + shift)
    Polynomial shifted(const Rational& shift) const;
    /// p(-t), rescaled to be monic when p is nonzero.
    Polynomial reflected_monic() const;
    /// Integer-coefficient primitive associate with positive leading coefficient.
    std::vector<Integer> primitive_integer_coefficients() const;
    Polynomial pow(unsigned exponent) const;

    /// Expanded form, e.g. "λ^2 - 6λ + 9".
    std::string to_string() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
    std::string variable_ = "λ";
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p)
{
    return os << p.to_string();
}

/// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
Polynomial lcm(const Polynomial& a, const Polynomial& b);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g monic.
struct ExtendedGcd {
    Polynomial g, s, t;
};
ExtendedGcd extended_gcd(const Polynomial& a, const Polynomial& b);
/// Product of the distinct irreducible factors, monic.
Polynomial squarefree_part(const Polynomial& p);

/// Lagrange interpolation through (x_i, y_i); the x_i must be distinct.
Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

} // namespace bipencil
