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

#include "bipencil/multipoly.hpp"
#include "bipencil/pencil.hpp"

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace bipencil {

using Point = std::vector<Rational>;

/// Skew matrix of polynomial functions; entries are set pairwise.
class PolyBivector {
public:
    explicit PolyBivector(std::size_t n = 0);

    std::size_t dimension() const { return n_; }
    /// Entry P^{ij}, 0-based; P^{ji} = -P^{ij} and P^{ii} = 0.
    MultiPoly operator()(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const MultiPoly& value);
    bool is_zero() const;

    QMatrix evaluate(const Point& x) const;
    /// Components of P·df, i.e. Σ_j P^{ij} ∂_j f.
    std::vector<MultiPoly> apply(const std::vector<MultiPoly>& df) const;

    friend PolyBivector operator+(const PolyBivector& a, const PolyBivector& b);
    friend PolyBivector operator*(const MultiPoly& f, const PolyBivector& p);
    friend bool operator==(const PolyBivector& a, const PolyBivector& b) { return a.n_ == b.n_ && a.upper_ == b.upper_; }

private:
    std::size_t index(std::size_t i, std::size_t j) const;

    std::size_t n_;
    std::vector<MultiPoly> upper_; ///< i < j, row-major
};

/// A residual on the index triple i < j < k (1-based).
struct TripleResidual {
    std::array<int, 3> triple{};
    MultiPoly residual;
};

struct IdentityCheck {
    bool ok = true;
    std::vector<TripleResidual> residuals; ///< every nonzero triple, lexicographic
    const TripleResidual* witness() const { return residuals.empty() ? nullptr : &residuals.front(); }
};

/// Cyclic sum over (i, j, k) of Σ_s P^{is} ∂_s Q^{jk}.
MultiPoly schouten_term(const PolyBivector& p, const PolyBivector& q, int i, int j, int k);

IdentityCheck jacobi_check(const PolyBivector& p);
IdentityCheck compatibility_check(const PolyBivector& a, const PolyBivector& b);

struct BlockCompatibility {
    bool full = false;
    bool block = false;
    bool agree() const { return full == block; }
    IdentityCheck full_check;
    IdentityCheck block_check;
};

/// Both bivectors must vanish on the last m rows and columns.
BlockCompatibility block_compatibility_check(const PolyBivector& a, const PolyBivector& b, std::size_t m);

struct ChartPencil {
    PolyBivector a;
    PolyBivector b;
    std::vector<std::string> names;
    bool jacobi_verified = false;
    bool compatibility_verified = false;

    ChartPencil() = default;
    ChartPencil(PolyBivector a, PolyBivector b, std::vector<std::string> names = {});

    std::size_t dimension() const { return a.dimension(); }
    /// Runs the symbolic checks and sets the flags; returns whether both hold.
    bool verify();
};

SkewPencil evaluate_at(const ChartPencil& c, const Point& x);

/// The constant chart of a linear pencil, and the inverse when every entry is constant.
ChartPencil constant_chart(const SkewPencil& p);
std::optional<SkewPencil> as_constant(const ChartPencil& c);

struct ScanEntry {
    Point point;
    std::size_t rank = 0;
    bool same_bundle = false;
};

struct RegularScan {
    JKInvariants base;
    std::size_t base_rank = 0;
    std::vector<ScanEntry> samples;
    bool all_same() const;
};

RegularScan jk_regular_scan(const ChartPencil& c, const Point& base, const std::vector<Point>& samples);

/// A·df ≡ 0 and B·df ≡ 0.
bool is_common_casimir(const ChartPencil& c, const MultiPoly& f);
ChartPencil casimir_shift(const ChartPencil& c, const MultiPoly& f);

struct ShiftReport {
    Point point;
    Rational shift;
    std::vector<EigenvalueKey> before;
    std::vector<EigenvalueKey> after;
    bool ok = false;
};

ShiftReport verify_eigenvalue_shift(const ChartPencil& c, const MultiPoly& f, const Point& x);

/// {f, g}_λ = (df)ᵀ (A + λB) (dg); λ = ∞ gives the B-bracket.
MultiPoly bracket(const ChartPencil& c, const MultiPoly& f, const MultiPoly& g, const ProjectiveValue& lambda);
/// ({f, g}_A, {f, g}_B); the λ-bracket is their affine combination.
std::pair<MultiPoly, MultiPoly> bracket_pair(const ChartPencil& c, const MultiPoly& f, const MultiPoly& g);

enum class FunctionRole { casimir, eigenvalue_real, eigenvalue_imag, hamiltonian, extension };

std::string role_name(FunctionRole r);
FunctionRole parse_role(const std::string& s);

struct TaggedFunction {
    MultiPoly f;
    FunctionRole role = FunctionRole::extension;
    std::optional<ProjectiveValue> at; ///< λ0 for casimirs, α for hamiltonians
    std::string label;
};

struct FunctionFamily {
    std::vector<TaggedFunction> functions;

    std::size_t size() const { return functions.size(); }
    static FunctionFamily untagged(const std::vector<MultiPoly>& fs);
};

struct InvolutionCheck {
    bool ok = true;
    int first = -1; ///< 0-based indices of the offending pair
    int second = -1;
    std::string bracket; ///< "A" or "B"
    MultiPoly residual;
};

InvolutionCheck bi_involution_check(const ChartPencil& c, const FunctionFamily& g);

QMatrix jacobian(const FunctionFamily& g, const Point& x);

struct CompletenessReport {
    std::size_t expected_count = 0;
    std::size_t family_size = 0;
    std::size_t max_pencil_rank = 0;
    std::size_t jacobian_rank_at_point = 0;
    std::vector<std::size_t> jacobian_rank_at_samples;
    bool count_ok = false;
    bool independent = false;
    std::optional<bool> span_matches_target;
    bool ok() const { return count_ok && independent && span_matches_target.value_or(true); }
};

/// Samples are pseudo-random rational points drawn from `seed`.
CompletenessReport completeness_check(const ChartPencil& c, const FunctionFamily& g, const Point& x,
                                      const std::optional<Subspace>& target = std::nullopt,
                                      unsigned long seed = 1, std::size_t samples = 6);

/// Basis of {f : P·df ≡ 0, deg f ≤ d}, in echelon form of the coefficient space.
std::vector<MultiPoly> polynomial_casimirs(const PolyBivector& p, int degree);

struct HamiltonianTerm {
    ProjectiveValue alpha;
    MultiPoly h;
};

/// (A + αB)·dH, or B·dH at ∞.
std::vector<MultiPoly> hamiltonian_field(const ChartPencil& c, const HamiltonianTerm& t);

struct CheckItem {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct IntegralsReport {
    std::vector<CheckItem> items;
    bool ok() const;
};

IntegralsReport standard_integrals_verify(const ChartPencil& c, const FunctionFamily& f,
                                          const std::vector<HamiltonianTerm>& hamiltonians,
                                          unsigned long seed = 1);

enum class CheckStatus { pass, fail, inconclusive };
std::string status_name(CheckStatus s);

struct EigenvalueDifferential {
    std::complex<double> value;
    std::vector<std::complex<double>> gradient;
    double residual = 0;
    bool complex_pair = false;
    CheckStatus status = CheckStatus::pass;
    std::string note;
};

struct DifferentialReport {
    double step = 0;
    double tolerance = 0;
    std::size_t pencil_rank = 0;
    std::vector<EigenvalueDifferential> eigenvalues;
    CheckStatus status() const;
};

DifferentialReport eigenvalue_differential_check(const ChartPencil& c, const Point& x, double h,
                                                 double tolerance = 1e-8);

struct ConvergenceReport {
    std::vector<double> steps;
    std::vector<DifferentialReport> runs;
    /// Per eigenvalue; empty when the residual is at round-off at every step.
    std::vector<std::optional<double>> order;
    double order_low = 1.7;
    double order_high = 2.3;
    CheckStatus status() const;
};

ConvergenceReport eigenvalue_differential_order(const ChartPencil& c, const Point& x, const std::vector<double>& steps,
                                                double tolerance = 1e-8);

/// Chart in coordinates y = T x; T must be invertible.
ChartPencil transform_chart(const ChartPencil& c, const QMatrix& t);
MultiPoly transform_function(const MultiPoly& f, const QMatrix& t);
Point transform_point(const Point& x, const QMatrix& t);

} // namespace bipencil
