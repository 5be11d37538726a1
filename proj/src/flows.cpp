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

#include "bipencil/flows.hpp"

#include "bipencil/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace bipencil {

BiHamiltonianField::BiHamiltonianField(const ChartPencil& c, std::vector<HamiltonianTerm> hamiltonians)
    : n_(c.dimension()), terms_(std::move(hamiltonians))
{
    if (terms_.empty())
        throw DomainError("a bi-Hamiltonian field needs at least one (α, H) pair");
    for (const auto& t : terms_) {
        if (t.h.variables() != n_)
            throw StructuralError("Hamiltonian has the wrong number of variables");
        symbolic_.push_back(hamiltonian_field(c, t));
        std::vector<CompiledPoly> comp;
        for (const auto& p : symbolic_.back())
            comp.emplace_back(p);
        compiled_.push_back(std::move(comp));
    }
}

State BiHamiltonianField::evaluate(std::size_t i, const State& x) const
{
    State v(n_);
    for (std::size_t k = 0; k < n_; ++k)
        v[k] = compiled_[i][k](x);
    return v;
}

State BiHamiltonianField::operator()(const State& x) const
{
    return evaluate(0, x);
}

double BiHamiltonianField::consistency(const State& x) const
{
    double worst = 0;
    std::vector<State> vs;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        vs.push_back(evaluate(i, x));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = i + 1; j < vs.size(); ++j)
            for (std::size_t k = 0; k < n_; ++k)
                worst = std::max(worst, std::abs(vs[i][k] - vs[j][k]));
    return worst;
}

BiHamiltonianField bi_hamiltonian_field(const ChartPencil& c, const std::vector<HamiltonianTerm>& hamiltonians)
{
    return BiHamiltonianField(c, hamiltonians);
}

Trajectory integrate(const BiHamiltonianField& field, const State& x0, double horizon, double step, bool backward)
{
    if (!(horizon > 0) || !(step > 0))
        throw DomainError("horizon and step must be positive");
    if (x0.size() != field.dimension())
        throw StructuralError("initial point has the wrong dimension");
    const auto steps = static_cast<std::size_t>(std::llround(horizon / step));
    const double h = backward ? -step : step;
    const std::size_t n = x0.size();

    Trajectory t;
    t.step = step;
    t.times.reserve(steps + 1);
    t.states.reserve(steps + 1);
    t.times.push_back(0);
    t.states.push_back(x0);

    State x = x0, carry(n, 0.0), tmp(n);
    for (std::size_t s = 0; s < steps; ++s) {
        const State k1 = field(x);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + 0.5 * h * k1[i];
        const State k2 = field(tmp);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + 0.5 * h * k2[i];
        const State k3 = field(tmp);
        for (std::size_t i = 0; i < n; ++i)
            tmp[i] = x[i] + h * k3[i];
        const State k4 = field(tmp);
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            // Kahan summation of the increments
            const double inc = h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) - carry[i];
            const double next = x[i] + inc;
            carry[i] = (next - x[i]) - inc;
            x[i] = next;
            finite = finite && std::isfinite(next);
        }
        if (!finite) {
            t.aborted = true;
            break;
        }
        t.times.push_back(static_cast<double>(s + 1) * step);
        t.states.push_back(x);
    }
    return t;
}

TrajectoryReport drift_report(const Trajectory& t, const BiHamiltonianField& field, const FunctionFamily& f)
{
    TrajectoryReport r;
    r.initial = t.states.front();
    r.step = t.step;
    r.horizon = t.times.back();
    r.samples = t.states.size();
    r.aborted = t.aborted;
    for (const auto& g : f.functions) {
        const CompiledPoly c(g.f);
        const double f0 = c(t.states.front());
        double worst = 0;
        for (const auto& x : t.states)
            worst = std::max(worst, std::abs(c(x) - f0));
        r.drifts.push_back({g.label, worst});
    }
    const auto& hs = field.hamiltonians();
    for (std::size_t i = 0; i < hs.size(); ++i)
        for (std::size_t j = i + 1; j < hs.size(); ++j) {
            double worst = 0;
            for (const auto& x : t.states) {
                const State vi = field.evaluate(i, x), vj = field.evaluate(j, x);
                for (std::size_t k = 0; k < vi.size(); ++k)
                    worst = std::max(worst, std::abs(vi[k] - vj[k]));
            }
            r.consistency.push_back({hs[i].alpha.to_string(), hs[j].alpha.to_string(), worst});
        }
    for (const auto& h : hs) {
        const CompiledPoly c(h.h);
        std::vector<double> e;
        e.reserve(t.states.size());
        for (const auto& x : t.states)
            e.push_back(c(x));
        r.energies.push_back(std::move(e));
    }
    return r;
}

void write_json_lines(std::ostream& os, const Trajectory& t, const FunctionFamily& f)
{
    std::vector<CompiledPoly> fs;
    for (const auto& g : f.functions)
        fs.emplace_back(g.f);
    for (std::size_t s = 0; s < t.states.size(); ++s) {
        nlohmann::json line;
        line["t"] = t.times[s];
        line["x"] = t.states[s];
        std::vector<double> values;
        for (const auto& c : fs)
            values.push_back(c(t.states[s]));
        line["integrals"] = values;
        os << line.dump() << '\n';
    }
}

} // namespace bipencil
