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

#include "bipencil/matrix.hpp"

namespace bipencil {

/// Smith normal form over Q[λ]: left * M * right = diag(d_1, ..., d_r, 0, ...)
/// with d_1 | d_2 | ... | d_r monic and left/right unimodular.
struct SmithForm {
    std::vector<Polynomial> invariant_factors;
    PolyMatrix left;  ///< empty unless transforms were requested
    PolyMatrix right; ///< empty unless transforms were requested
};

/// Elementary row/column moves with minimal-degree pivots. Practical up to
/// order ~16; coefficient growth makes larger inputs slow.
SmithForm smith_normal_form(const PolyMatrix& m, bool with_transforms = true);

/// Independent oracle: D_k = monic gcd of all k x k minors, d_k = D_k / D_{k-1}.
/// Exponential in the order; intended for tests at order <= 6.
std::vector<Polynomial> invariant_factors_by_minors(const PolyMatrix& m);

} // namespace bipencil
