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

#include "bipencil/poisson_charts.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace bipencil {

using State = std::vector<double>;

/// x ↦ (A(x) + α B(x)) ∇H(x) for each supplied (α, H); the first pair
/// drives the flow and the rest feed the consistency metric.
class BiHamiltonianField {
public:
    BiHamiltonianField(const ChartPencil& c, std::vector<HamiltonianTerm> hamiltonians);

    std::size_t dimension() const { return n_; }
    const std::vector<HamiltonianTerm>& hamiltonians() const { return terms_; }
    /// Symbolic components of the field of the i-th pair.
    const std::vector<MultiPoly>& symbolic(std::size_t i) const { return symbolic_[i]; }

    State operator()(const State& x) const;
    State evaluate(std::size_t i, const State& x) const;
    /// max over pairs i < j of ‖v_i(x) - v_j(x)‖∞.
    double consistency(const State& x) const;

private:
    std::size_t n_;
    std::vector<HamiltonianTerm> terms_;
    std::vector<std::vector<MultiPoly>> symbolic_;
    std::vector<std::vector<CompiledPoly>> compiled_;
};

BiHamiltonianField bi_hamiltonian_field(const ChartPencil& c, const std::vector<HamiltonianTerm>& hamiltonians);

struct Trajectory {
    double step = 0;
    std::vector<double> times;
    std::vector<State> states;
    bool aborted = false; ///< a non-finite state stopped the integration
};

/// Classical fixed-step fourth-order Runge–Kutta with compensated state
/// summation; `backward` integrates along -v.
Trajectory integrate(const BiHamiltonianField& field, const State& x0, double horizon, double step,
                     bool backward = false);

struct IntegralDrift {
    std::string label;
    double max_drift = 0;
};

struct PairConsistency {
    std::string first;
    std::string second;
    double max_discrepancy = 0;
};

struct TrajectoryReport {
    State initial;
    double step = 0;
    double horizon = 0;
    std::size_t samples = 0;
    bool aborted = false;
    std::vector<IntegralDrift> drifts;
    std::vector<PairConsistency> consistency;
    /// energies[i][t]: the i-th Hamiltonian along the trajectory
    std::vector<std::vector<double>> energies;
};

TrajectoryReport drift_report(const Trajectory& t, const BiHamiltonianField& field, const FunctionFamily& f);

/// One JSON object per sample: {"t": ..., "x": [...], "integrals": [...]}.
void write_json_lines(std::ostream& os, const Trajectory& t, const FunctionFamily& f);

} // namespace bipencil
