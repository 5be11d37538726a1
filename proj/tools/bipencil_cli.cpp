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

#include "bipencil/bipencil.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using Json = nlohmann::ordered_json;

struct Options {
    std::string input;
    std::string corpus;
    std::string other;
    std::string subspace;
    std::string lagrangian;
    std::string family;
    std::string point;
    std::string trajectory;
    std::string name;
    std::string export_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> step;
    std::optional<double> horizon;
    std::optional<double> tolerance;
    std::optional<long> samples;
    std::optional<long> bordered;
};

struct ContextDeleter {
    void operator()(bp_context* c) const { bp_context_destroy(c); }
};
struct ReportDeleter {
    void operator()(bp_report* r) const { bp_report_destroy(r); }
};

int status_exit(bp_status s)
{
    return s == BP_ERR_DOMAIN || s == BP_ERR_CONSISTENCY ? BP_EXIT_FAIL : BP_EXIT_USAGE;
}

std::string take(char* s)
{
    std::string out = s ? s : "";
    bp_string_free(s);
    return out;
}

std::vector<std::string> command_list(bp_context* ctx)
{
    char* raw = nullptr;
    if (bp_command_list(ctx, &raw) != BP_OK)
        return {};
    std::istringstream is(take(raw));
    std::vector<std::string> names;
    for (std::string line; std::getline(is, line);)
        if (!line.empty())
            names.push_back(line);
    return names;
}

Json point_json(const std::string& text)
{
    Json out = Json::array();
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, ',');) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        out.push_back(b == std::string::npos ? std::string() : item.substr(b, e - b + 1));
    }
    return out;
}

Json build_request(const Options& o)
{
    Json r = Json::object();
    if (!o.input.empty())
        r["pencil_file"] = o.input;
    if (!o.corpus.empty())
        r["corpus"] = o.corpus;
    if (!o.other.empty())
        r["other_file"] = o.other;
    if (!o.subspace.empty())
        r["subspace_file"] = o.subspace;
    if (!o.lagrangian.empty())
        r["lagrangian_file"] = o.lagrangian;
    if (!o.family.empty())
        r["family_file"] = o.family;
    if (!o.point.empty())
        r["point"] = point_json(o.point);
    if (!o.trajectory.empty())
        r["trajectory_file"] = o.trajectory;
    if (!o.name.empty())
        r["name"] = o.name;
    if (o.seed)
        r["seed"] = *o.seed;
    if (o.step)
        r["step"] = *o.step;
    if (o.horizon)
        r["horizon"] = *o.horizon;
    if (o.tolerance)
        r["tolerance"] = *o.tolerance;
    if (o.samples)
        r["samples"] = *o.samples;
    if (o.bordered)
        r["bordered"] = *o.bordered;
    return r;
}

std::string describe(const std::string& command)
{
    static const std::map<std::string, std::string> text = {
        {"jk", "Jordan-Kronecker invariants"},
        {"charpoly", "characteristic polynomial and eigenvalues"},
        {"core", "core subspace"},
        {"bundle", "bundle of the canonical form; JK-regularity near a point"},
        {"reduce", "bi-Poisson reduction by an admissible bi-isotropic subspace"},
        {"bilagrangian", "build or verify a bi-Lagrangian subspace"},
        {"split", "primary splitting by eigenvalue"},
        {"complexify", "complex structure of a single complex eigenvalue pair"},
        {"check-jacobi", "Jacobi identity of both bivectors"},
        {"check-compat", "compatibility of the two bivectors"},
        {"shift", "Casimir shift of the pencil and its eigenvalues"},
        {"involution", "bi-involution of a function family"},
        {"complete", "completeness of a function family"},
        {"integrals", "standard integrals and Hamiltonian fields"},
        {"eigdiff", "eigenvalue differentials and their convergence order"},
        {"flow", "integrate a bi-Hamiltonian field and monitor integral drift"},
        {"corpus", "bundled examples: manifest, entries, export"},
    };
    const auto it = text.find(command);
    return it == text.end() ? command : it->second;
}

std::string file_name(const std::string& entry)
{
    std::string out;
    for (char c : entry)
        out += std::isalnum(static_cast<unsigned char>(c)) || c == '-' ? c : '_';
    return out + ".json";
}

int export_corpus(bp_context* ctx, const std::string& dir)
{
    char* raw = nullptr;
    if (bp_corpus_manifest(ctx, &raw) != BP_OK) {
        std::cerr << "error: " << bp_context_last_error(ctx) << '\n';
        return BP_EXIT_USAGE;
    }
    const Json manifest = Json::parse(take(raw));
    std::filesystem::create_directories(dir);
    for (const auto& e : manifest["entries"]) {
        const std::string name = e["name"].get<std::string>();
        if (bp_corpus_document(ctx, name.c_str(), &raw) != BP_OK) {
            std::cerr << "error: " << bp_context_last_error(ctx) << '\n';
            return BP_EXIT_USAGE;
        }
        std::ofstream(std::filesystem::path(dir) / file_name(name)) << take(raw) << '\n';
    }
    std::ofstream(std::filesystem::path(dir) / "manifest.json") << manifest.dump(2) << '\n';
    std::cerr << "wrote " << manifest["entries"].size() << " entries to " << dir << '\n';
    return BP_EXIT_PASS;
}

} // namespace

int main(int argc, char** argv)
{
    bp_context* raw_ctx = nullptr;
    if (bp_context_create(&raw_ctx) != BP_OK) {
        std::cerr << "error: cannot create context\n";
        return BP_EXIT_USAGE;
    }
    std::unique_ptr<bp_context, ContextDeleter> ctx(raw_ctx);
    if (const char* env = std::getenv("BIPENCIL_THREADS")) {
        char* end = nullptr;
        const unsigned long n = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0') {
            std::cerr << "error: BIPENCIL_THREADS must be a nonnegative integer\n";
            return BP_EXIT_USAGE;
        }
        bp_context_set_threads(ctx.get(), static_cast<unsigned>(n));
    }

    CLI::App app{"bipencil: exact invariants and bi-integrability checks for Poisson pencils"};
    app.require_subcommand(1);
    Options o;
    std::vector<std::pair<std::string, CLI::App*>> subs;
    for (const auto& name : command_list(ctx.get())) {
        CLI::App* sub = app.add_subcommand(name, describe(name));
        sub->add_option("input", o.input, "pencil document (or corpus-entry document)")->check(CLI::ExistingFile);
        sub->add_option("--corpus", o.corpus, "use a bundled corpus entry and its fixtures");
        sub->add_option("--other", o.other, "second pencil document (bundle)")->check(CLI::ExistingFile);
        sub->add_option("--subspace", o.subspace, "subspace document")->check(CLI::ExistingFile);
        sub->add_option("--lagrangian", o.lagrangian, "subspace document of a bi-Lagrangian candidate")
            ->check(CLI::ExistingFile);
        sub->add_option("--family", o.family, "family document")->check(CLI::ExistingFile);
        sub->add_option("--point", o.point, "comma-separated rational coordinates, e.g. 1,1/2,1/3");
        sub->add_option("--seed", o.seed, "seed for randomized sampling");
        sub->add_option("--step", o.step, "step size h");
        sub->add_option("--horizon", o.horizon, "integration horizon T");
        sub->add_option("--tolerance", o.tolerance, "numeric tolerance");
        sub->add_option("--samples", o.samples, "number of random sample points");
        sub->add_option("--bordered", o.bordered, "size m of the bordered block");
        sub->add_option("--trajectory", o.trajectory, "write the trajectory as JSON lines");
        if (name == "corpus") {
            sub->add_option("--name", o.name, "print one entry document");
            sub->add_option("--export", o.export_dir, "write every entry document into a directory");
        }
        subs.emplace_back(name, sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? BP_EXIT_PASS : BP_EXIT_USAGE;
    }

    std::string command;
    for (const auto& [name, sub] : subs)
        if (sub->parsed())
            command = name;
    if (command == "corpus" && !o.export_dir.empty())
        return export_corpus(ctx.get(), o.export_dir);

    const std::string request = build_request(o).dump();
    bp_report* raw_report = nullptr;
    const bp_status status = bp_run(ctx.get(), command.c_str(), request.c_str(), &raw_report);
    if (status != BP_OK) {
        std::cerr << "error: " << bp_context_last_error(ctx.get()) << '\n';
        return status_exit(status);
    }
    std::unique_ptr<bp_report, ReportDeleter> report(raw_report);
    std::cout << bp_report_json(report.get()) << '\n';
    std::cerr << bp_report_text(report.get());
    return bp_report_exit_code(report.get());
}
