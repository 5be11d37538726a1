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

#include <optional>
#include <string>
#include <vector>

namespace bipencil {

/// A bundled example. Constant pencils carry `pencil`; charts carry `chart`
/// plus whatever fixtures the chart-level commands need.
struct CorpusEntry {
    std::string name;
    std::string kind; ///< "pencil" or "chart"
    std::string provenance;
    std::optional<SkewPencil> pencil;
    std::optional<ChartPencil> chart;
    std::optional<FunctionFamily> family;
    std::vector<HamiltonianTerm> hamiltonians;
    std::optional<Point> point;
    std::optional<MultiPoly> shift;      ///< a common Casimir for shift tests
    std::size_t bordered = 0;            ///< m for the bordered-form check
    bool expect_compatible = true;
};

const std::vector<CorpusEntry>& corpus();
/// Throws FormatError for unknown names.
const CorpusEntry& corpus_entry(const std::string& name);

} // namespace bipencil
