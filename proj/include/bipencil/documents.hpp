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

// JSON documents. Exact rationals are strings "p/q"; λ = ∞ is the string "inf";
// matrix indices are 1-based.

#include "bipencil/corpus.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bipencil {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

/// Pencil of bivectors. Constant pencils have no variables and empty exponent vectors.
struct PencilDocument {
    std::size_t dimension = 0;
    std::vector<std::string> variables;
    ChartPencil chart;
    bool is_constant_form() const { return variables.empty(); }
    /// The linear pencil when every entry is constant.
    std::optional<SkewPencil> constant() const { return as_constant(chart); }
};

PencilDocument pencil_document(const SkewPencil& p);
PencilDocument pencil_document(const ChartPencil& c);

/// Functions with role "hamiltonian" are kept apart from the integral family.
struct FamilyDocument {
    FunctionFamily family;
    std::vector<HamiltonianTerm> hamiltonians;
};

/// Parses text, turning syntax errors into FormatError with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
std::string read_text_file(const std::string& path);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& where);
Json projective_to_json(const ProjectiveValue& v);
ProjectiveValue projective_from_json(const Json& j, const std::string& where);

Json polynomial_to_json(const MultiPoly& p, bool constant_form = false);
MultiPoly polynomial_from_json(const Json& j, std::size_t variables, const std::string& where);

Json pencil_to_json(const PencilDocument& d);
PencilDocument pencil_from_json(const Json& j);

Json subspace_to_json(const Subspace& s);
Subspace subspace_from_json(const Json& j);

Json matrix_to_json(const QMatrix& m);

Json point_to_json(const Point& x);
Point point_from_json(const Json& j, std::size_t n, const std::string& where);

Json family_to_json(const FamilyDocument& f, const std::vector<std::string>& variables);
FamilyDocument family_from_json(const Json& j, std::size_t variables);

/// Pencil document plus every bundled fixture of the entry.
Json corpus_entry_to_json(const CorpusEntry& e);
CorpusEntry corpus_entry_from_json(const Json& j);
Json corpus_manifest();

std::string sha256_hex(const std::string& data);

} // namespace bipencil
