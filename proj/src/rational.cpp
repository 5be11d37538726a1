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

#include "bipencil/rational.hpp"

#include "bipencil/errors.hpp"

#include <cmath>

namespace bipencil {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto trim = [](std::string& t) {
        const auto first = t.find_first_not_of(" \t\n\r");
        const auto last = t.find_last_not_of(" \t\n\r");
        t = first == std::string::npos ? std::string() : t.substr(first, last - first + 1);
    };
    trim(s);
    if (s.empty())
        throw FormatError("empty rational literal");
    if (s.front() == '+')
        s.erase(0, 1);

    const auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos)
            throw FormatError("mixed decimal/fraction literal '" + std::string(text) + "'");
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t scale = s.size() - dot - 1;
        if (digits.empty() || digits == "-")
            throw FormatError("bad decimal literal '" + std::string(text) + "'");
        Integer num;
        if (num.set_str(digits, 10) != 0)
            throw FormatError("bad decimal literal '" + std::string(text) + "'");
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, scale);
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    Rational q;
    if (q.set_str(s, 10) != 0)
        throw FormatError("bad rational literal '" + std::string(text) + "'");
    if (q.get_den() == 0)
        throw FormatError("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q)
{
    return q.get_str(10);
}

Rational rational_from_double(double value)
{
    if (!std::isfinite(value))
        throw DomainError("non-finite value has no rational representation");
    return Rational(value);
}

bool rational_sqrt(const Rational& q, Rational& root)
{
    if (sgn(q) < 0)
        return false;
    if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
        return false;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
    root = Rational(n, d);
    root.canonicalize();
    return true;
}

} // namespace bipencil
