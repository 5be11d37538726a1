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

#include "bipencil/factor.hpp"
#include "bipencil/subspace.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace bipencil {

/// Pair (A, B) of skew-symmetric rational matrices, the linear pencil A + λB.
/// A_∞ means B.
class SkewPencil {
public:
    SkewPencil() = default;
    SkewPencil(QMatrix a, QMatrix b);

    std::size_t dimension() const { return a_.rows(); }
    const QMatrix& a() const { return a_; }
    const QMatrix& b() const { return b_; }
    QMatrix at(const Rational& lambda) const { return a_ + b_ * lambda; }
    PolyMatrix matrix() const { return linear_pencil_matrix(a_, b_); }
    /// The pencil B + μA, whose eigenvalue 0 is this pencil's ∞.
    SkewPencil reversed() const { return SkewPencil(b_, a_); }

    friend bool operator==(const SkewPencil& x, const SkewPencil& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

private:
    QMatrix a_;
    QMatrix b_;
};

/// Point of the projective line Q ∪ {∞}.
struct ProjectiveValue {
    bool infinite = false;
    Rational value;

    static ProjectiveValue finite(const Rational& v) { return {false, v}; }
    static ProjectiveValue infinity() { return {true, 0}; }
    std::string to_string() const;
};

/// Eigenvalue as exact algebraic data: a monic irreducible polynomial in t
/// (all of its roots), or ∞.
struct EigenvalueKey {
    bool infinite = false;
    Polynomial minimal_polynomial;

    static EigenvalueKey at_infinity() { return {true, Polynomial()}; }
    static EigenvalueKey rational(const Rational& mu) { return {false, Polynomial::linear_factor(mu, "t")}; }
    int degree() const { return infinite ? 1 : minimal_polynomial.degree(); }
    std::string to_string() const;

    friend bool operator==(const EigenvalueKey& x, const EigenvalueKey& y)
    {
        return x.infinite == y.infinite && x.minimal_polynomial == y.minimal_polynomial;
    }
    friend bool operator<(const EigenvalueKey& x, const EigenvalueKey& y);
};

struct PencilEigenvalue {
    EigenvalueKey key;
    int multiplicity = 0; ///< exponent of the factor in the characteristic polynomial
    std::vector<std::complex<double>> approximations;
};

struct JordanData {
    EigenvalueKey eigenvalue;
    /// Block sizes m of the m x m matrix Jordan blocks (each realized as a
    /// 2m x 2m skew block per complex eigenvalue), sorted descending.
    std::vector<int> partition;

    friend bool operator==(const JordanData& x, const JordanData& y)
    {
        return x.eigenvalue == y.eigenvalue && x.partition == y.partition;
    }
};

/// Jordan-Kronecker invariants of a skew pencil.
struct JKInvariants {
    std::vector<int> kronecker_sizes; ///< odd sizes 2k+1, ascending, 1x1 blocks included
    std::vector<JordanData> jordan;   ///< sorted by eigenvalue

    std::size_t dimension() const;
    void normalize();
    std::string to_string() const;
    friend bool operator==(const JKInvariants& x, const JKInvariants& y)
    {
        return x.kronecker_sizes == y.kronecker_sizes && x.jordan == y.jordan;
    }
};

std::size_t pencil_rank(const SkewPencil& p);

/// Monic gcd of the Pfaffians of the principal minors of A + λB of order
/// rk P. Throws DomainError for rank 0.
Polynomial characteristic_polynomial(const SkewPencil& p);

/// Values μ with rank(A - μB) < rk P: the negated roots of the
/// characteristic polynomial, plus ∞ when rank B < rk P.
std::vector<PencilEigenvalue> eigenvalues(const SkewPencil& p);

bool is_regular_value(const SkewPencil& p, const ProjectiveValue& lambda);

/// Sum of Ker(A + λB) over regular λ (vectors in the coordinates of the
/// matrices). Computed from a Q(λ) kernel basis and cross-checked by
/// sampling; throws ConsistencyError if the two disagree.
Subspace core_subspace(const SkewPencil& p);
/// Sum of kernels at rk P + 1 regular rational sample values.
Subspace core_subspace_by_sampling(const SkewPencil& p);

JKInvariants jk_invariants(const SkewPencil& p);
/// Column minimal indices from ranks of block-Toeplitz expansion matrices.
std::vector<int> kronecker_minimal_indices(const SkewPencil& p);

/// Same Kronecker sizes and the same multiset of Jordan partitions per
/// complex eigenvalue, forgetting eigenvalue values.
bool same_bundle(const JKInvariants& x, const JKInvariants& y);
bool same_bundle(const SkewPencil& p1, const SkewPencil& p2);

// Canonical block templates.
SkewPencil kronecker_block(int k);                               ///< size 2k+1
SkewPencil jordan_block(const Rational& eigenvalue, int m);      ///< size 2m, eigenvalue μ
SkewPencil complex_jordan_block(const Rational& alpha, const Rational& beta, int m); ///< size 4m, α ± iβ
SkewPencil infinite_jordan_block(int m);                         ///< size 2m
SkewPencil jordan_block(const EigenvalueKey& eigenvalue, int m); ///< companion-based for general keys
SkewPencil direct_sum(const SkewPencil& x, const SkewPencil& y);
/// Block-diagonal pencil realizing the invariants; Jordan blocks first.
SkewPencil canonical_pencil(const JKInvariants& inv, std::optional<std::size_t> dimension = std::nullopt);
/// Congruence S^T A S, S^T B S.
SkewPencil congruence(const SkewPencil& p, const QMatrix& s);

} // namespace bipencil
