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

#include "bipencil/pencil.hpp"

#include <optional>
#include <vector>

namespace bipencil {

/// P = B⁻¹A with its Jordan–Chevalley split P = S + N.
struct RecursionOperator {
    QMatrix p;
    QMatrix semisimple;
    QMatrix nilpotent;
    Polynomial minimal_polynomial; ///< in t
};

Polynomial minimal_polynomial(const QMatrix& m);
QMatrix evaluate_polynomial(const Polynomial& f, const QMatrix& m);

/// Throws DomainError when B is singular.
RecursionOperator recursion_operator(const SkewPencil& p);

struct ComplementResult {
    Subspace complement;
    bool lambda_dependent = false;
    /// Set when the complement had to be taken at a fixed regular λ.
    std::optional<Rational> sample_lambda;
    /// The complement w.r.t. B alone is strictly larger than the generic one.
    bool differs_at_infinity = false;
};

/// Generic skew-orthogonal complement {v : A_λ(u, v) = 0 for all u ∈ U}.
ComplementResult ortho_complement(const SkewPencil& p, const Subspace& u);
Subspace complement_at(const SkewPencil& p, const Subspace& u, const ProjectiveValue& lambda);

bool is_bi_isotropic(const SkewPencil& p, const Subspace& u);
bool is_admissible(const SkewPencil& p, const Subspace& u);
bool is_bi_lagrangian(const SkewPencil& p, const Subspace& l);

/// Extends a bi-isotropic P-invariant seed to a bi-Lagrangian subspace.
/// Requires B invertible.
Subspace build_bi_lagrangian(const SkewPencil& p, const Subspace& seed);

/// (B N, B) where N is the nilpotent part of the recursion operator.
SkewPencil nilpotent_companion(const SkewPencil& p);

/// Quotient pencil on U⊥/U. `section` rows are lifts of the quotient basis;
/// `projection` maps vectors of U⊥ to quotient coordinates (Π w).
struct Reduction {
    SkewPencil pencil;
    Subspace u;
    Subspace u_perp;
    QMatrix section;
    QMatrix projection;

    Subspace project(const Subspace& w) const;
    Subspace lift(const Subspace& reduced) const;
};

Reduction reduce_pencil(const SkewPencil& p, const Subspace& u);
Subspace reduce_subspace(const SkewPencil& p, const Subspace& u, const Subspace& l);

struct SpectrumContainment {
    std::vector<PencilEigenvalue> original;
    std::vector<PencilEigenvalue> reduced;
    bool contained = false;
    bool reduced_nondegenerate = false;
    bool holds() const { return contained && reduced_nondegenerate; }
};

SpectrumContainment spectrum_containment(const SkewPencil& p, const Subspace& u);

struct PrimaryComponent {
    EigenvalueKey eigenvalue;
    Subspace subspace;
    SkewPencil pencil; ///< restriction to the summand in its echelon basis
};

std::vector<PrimaryComponent> eigen_splitting(const SkewPencil& p);

struct ComplexStructure {
    Rational alpha;
    Rational beta;
    QMatrix j;
    QMatrix a_hat; ///< A - αB - βB J
};

/// Requires a single conjugate pair α ± iβ with β rational.
ComplexStructure complex_structure(const SkewPencil& p);

} // namespace bipencil
