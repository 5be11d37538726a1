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

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bipencil {

/// Exact rational scalar. GMP keeps it canonical: gcd(num, den) = 1, den > 0.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p", "p/q" or a plain decimal such as "-1.25".
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without the denominator.
std::string to_string(const Rational& q);

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

/// Exact conversion of a finite double.
Rational rational_from_double(double value);

/// Rational square root when q is a perfect square, otherwise false.
bool rational_sqrt(const Rational& q, Rational& root);

} // namespace bipencil
