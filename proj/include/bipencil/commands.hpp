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

// Subcommands as request-in, report-out functions.
//
// A request is a JSON object. The pencil comes from "corpus" (a bundled
// name), "pencil" (inline document) or "pencil_file" (path). Optional inputs
// follow the same pattern: "other", "subspace", "lagrangian", "family"
// (inline or *_file). Scalars: "point" (rational strings), "shift"
// (polynomial terms), "seed", "samples", "step", "horizon", "tolerance",
// "bordered", "threads", "trajectory_file", "name".

#include "bipencil/documents.hpp"

#include <string>
#include <vector>

namespace bipencil {

enum ExitCode { exit_pass = 0, exit_fail = 1, exit_usage = 2, exit_inconclusive = 3 };

struct CommandReport {
    Json document;
    std::string table;
    int exit_code = exit_pass;
};

const std::vector<std::string>& command_names();

/// Throws FormatError for unreadable or malformed inputs and StructuralError
/// for shape mismatches; check failures are reported, not thrown.
CommandReport run_command(const std::string& command, const Json& request);

} // namespace bipencil
