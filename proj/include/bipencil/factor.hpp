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

#include "bipencil/polynomial.hpp"

#include <complex>
#include <vector>

namespace bipencil {

struct FactorPower {
    Polynomial factor; ///< monic, irreducible over Q
    int multiplicity = 0;
};

/// Square-free decomposition (Yun): p = lc * prod f_i^i with f_i square-free.
std::vector<FactorPower> squarefree_decomposition(const Polynomial& p);

/// Factorization over Q into monic irreducible factors, sorted by
/// canonical_less. Candidate factors come from subsets of numerically
/// computed roots and are accepted only after exact division, so every
/// reported factor divides p exactly.
std::vector<FactorPower> irreducible_factors(const Polynomial& p);

/// Degree first, then coefficients from the top down.
bool canonical_less(const Polynomial& a, const Polynomial& b);

/// All complex roots of a square-free polynomial, Newton-polished in long
/// double. Sorted by real part, then imaginary part.
std::vector<std::complex<double>> numeric_roots(const Polynomial& p);

/// "(λ - 3)^2 (λ^2 + 1)"; "1" for constants.
std::string factored_string(const Polynomial& p);

} // namespace bipencil
