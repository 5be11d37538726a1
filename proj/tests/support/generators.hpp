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

// Random fixtures shared by the unit and acceptance suites.

#include "bipencil/pencil.hpp"

#include <algorithm>
#include <random>

namespace bipencil::testing {

/// Unimodular integer matrix with entries in [-bound, bound], built from
/// elementary column operations, a permutation and sign flips.
inline QMatrix random_unimodular(std::mt19937_64& rng, std::size_t n, int bound = 3)
{
    QMatrix s = QMatrix::identity(n);
    if (n == 0)
        return s;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::uniform_int_distribution<int> coin(0, 1);
    for (std::size_t step = 0; step < 4 * n; ++step) {
        const std::size_t i = pick(rng), j = pick(rng);
        if (i == j)
            continue;
        const int k = coin(rng) ? 1 : -1;
        QMatrix trial = s;
        bool ok = true;
        for (std::size_t r = 0; r < n && ok; ++r) {
            trial(r, j) += trial(r, i) * k;
            ok = abs(trial(r, j)) <= bound;
        }
        if (ok)
            s = std::move(trial);
    }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i)
        perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    QMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            out(r, perm[c]) = s(r, c) * (coin(rng) ? 1 : -1);
    return out;
}

struct BlockChoice {
    bool allow_kronecker = true;
    bool allow_infinite = true;
    bool allow_complex = true;
};

/// Random Jordan-Kronecker invariants of total dimension <= max_dim; eigenvalues
/// are drawn from a small pool so coincidences occur.
inline JKInvariants random_invariants(std::mt19937_64& rng, std::size_t max_dim, BlockChoice choice = {})
{
    static const Rational pool[] = {Rational(-3), Rational(0), Rational(1, 2), Rational(2), Rational(5, 3)};
    JKInvariants inv;
    std::size_t dim = 0;
    std::uniform_int_distribution<int> kind(0, 9);
    std::uniform_int_distribution<int> pick_pool(0, 4);
    std::uniform_int_distribution<int> small(1, 3);
    for (int attempts = 0; attempts < 12; ++attempts) {
        const int k = kind(rng);
        const std::size_t left = max_dim - dim;
        if (k <= 2 && choice.allow_kronecker) {
            const int idx = small(rng) - 1; // 0..2
            if (static_cast<std::size_t>(2 * idx + 1) <= left) {
                inv.kronecker_sizes.push_back(2 * idx + 1);
                dim += static_cast<std::size_t>(2 * idx + 1);
            }
        } else if (k <= 6) {
            const int m = small(rng);
            if (static_cast<std::size_t>(2 * m) <= left) {
                inv.jordan.push_back({EigenvalueKey::rational(pool[pick_pool(rng)]), {m}});
                dim += static_cast<std::size_t>(2 * m);
            }
        } else if (k <= 8 && choice.allow_complex) {
            if (left >= 4) {
                // (t - 1)^2 + 4 or (t + 1/2)^2 + 1
                const bool first = pick_pool(rng) % 2 == 0;
                const Rational alpha = first ? Rational(1) : Rational(-1, 2);
                const Rational beta = first ? Rational(2) : Rational(1);
                Polynomial key({alpha * alpha + beta * beta, -2 * alpha, Rational(1)}, "t");
                inv.jordan.push_back({{false, key}, {1}});
                dim += 4;
            }
        } else if (choice.allow_infinite) {
            const int m = small(rng) % 2 + 1;
            if (static_cast<std::size_t>(2 * m) <= left) {
                inv.jordan.push_back({EigenvalueKey::at_infinity(), {m}});
                dim += static_cast<std::size_t>(2 * m);
            }
        }
    }
    if (dim == 0) {
        inv.kronecker_sizes.push_back(1);
    }
    inv.normalize();
    return inv;
}

} // namespace bipencil::testing
