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

#include "bipencil/commands.hpp"
#include "bipencil/factor.hpp"
#include "bipencil/parallel.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>

struct bp_context {
    std::string last_error;
    std::uint64_t seed = 1;
};

struct bp_pencil {
    bipencil::PencilDocument doc;
};

struct bp_report {
    std::string json;
    std::string text;
    int exit_code = 0;
};

namespace {

using namespace bipencil;

char* duplicate(const std::string& s)
{
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out)
        throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
bp_status guarded(bp_context* ctx, Fn&& fn)
{
    if (!ctx)
        return BP_ERR_INVALID_ARGUMENT;
    ctx->last_error.clear();
    try {
        fn();
        return BP_OK;
    } catch (const FormatError& e) {
        ctx->last_error = e.what();
        return BP_ERR_FORMAT;
    } catch (const StructuralError& e) {
        ctx->last_error = e.what();
        return BP_ERR_STRUCTURAL;
    } catch (const DomainError& e) {
        ctx->last_error = e.what();
        return BP_ERR_DOMAIN;
    } catch (const ConsistencyError& e) {
        ctx->last_error = e.what();
        return BP_ERR_CONSISTENCY;
    } catch (const Json::exception& e) {
        ctx->last_error = e.what();
        return BP_ERR_FORMAT;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return BP_ERR_INTERNAL;
    } catch (...) {
        ctx->last_error = "unknown error";
        return BP_ERR_INTERNAL;
    }
}

bp_status missing(bp_context* ctx, const char* what)
{
    if (ctx)
        ctx->last_error = std::string("null argument: ") + what;
    return BP_ERR_INVALID_ARGUMENT;
}

SkewPencil constant_of(const bp_pencil* p)
{
    auto c = p->doc.constant();
    if (!c)
        throw DomainError("the pencil has non-constant entries");
    return *c;
}

} // namespace

extern "C" {

const char* bp_version(void) { return "0.1.0"; }

void bp_string_free(char* s) { std::free(s); }

bp_status bp_context_create(bp_context** out)
{
    if (!out)
        return BP_ERR_INVALID_ARGUMENT;
    *out = new (std::nothrow) bp_context();
    return *out ? BP_OK : BP_ERR_INTERNAL;
}

void bp_context_destroy(bp_context* ctx) { delete ctx; }

bp_status bp_context_set_seed(bp_context* ctx, uint64_t seed)
{
    return guarded(ctx, [&] { ctx->seed = seed; });
}

bp_status bp_context_set_threads(bp_context* ctx, unsigned threads)
{
    return guarded(ctx, [&] { set_thread_count(threads); });
}

const char* bp_context_last_error(const bp_context* ctx) { return ctx ? ctx->last_error.c_str() : "null context"; }

bp_status bp_pencil_from_json(bp_context* ctx, const char* json, bp_pencil** out)
{
    if (!json || !out)
        return missing(ctx, "json/out");
    return guarded(ctx, [&] {
        auto p = std::make_unique<bp_pencil>();
        p->doc = pencil_from_json(parse_json_text(json, "pencil"));
        *out = p.release();
    });
}

bp_status bp_pencil_from_corpus(bp_context* ctx, const char* name, bp_pencil** out)
{
    if (!name || !out)
        return missing(ctx, "name/out");
    return guarded(ctx, [&] {
        const CorpusEntry& e = corpus_entry(name);
        auto p = std::make_unique<bp_pencil>();
        p->doc = e.pencil ? pencil_document(*e.pencil) : pencil_document(*e.chart);
        *out = p.release();
    });
}

bp_status bp_pencil_to_json(bp_context* ctx, const bp_pencil* p, char** out)
{
    if (!p || !out)
        return missing(ctx, "pencil/out");
    return guarded(ctx, [&] { *out = duplicate(pencil_to_json(p->doc).dump(2)); });
}

bp_status bp_pencil_dimension(const bp_pencil* p, size_t* out)
{
    if (!p || !out)
        return BP_ERR_INVALID_ARGUMENT;
    *out = p->doc.dimension;
    return BP_OK;
}

bp_status bp_pencil_rank(bp_context* ctx, const bp_pencil* p, size_t* out)
{
    if (!p || !out)
        return missing(ctx, "pencil/out");
    return guarded(ctx, [&] { *out = pencil_rank(constant_of(p)); });
}

bp_status bp_pencil_charpoly(bp_context* ctx, const bp_pencil* p, char** out)
{
    if (!p || !out)
        return missing(ctx, "pencil/out");
    return guarded(ctx, [&] { *out = duplicate(factored_string(characteristic_polynomial(constant_of(p)))); });
}

void bp_pencil_destroy(bp_pencil* p) { delete p; }

bp_status bp_run(bp_context* ctx, const char* command, const char* request_json, bp_report** out)
{
    if (!command || !out)
        return missing(ctx, "command/out");
    return guarded(ctx, [&] {
        Json request = request_json && *request_json ? parse_json_text(request_json, "request") : Json::object();
        if (request.is_object() && !request.contains("seed"))
            request["seed"] = ctx->seed;
        const CommandReport r = run_command(command, request);
        auto report = std::make_unique<bp_report>();
        report->json = r.document.dump(2);
        report->text = r.table;
        report->exit_code = r.exit_code;
        *out = report.release();
    });
}

const char* bp_report_json(const bp_report* r) { return r ? r->json.c_str() : ""; }
const char* bp_report_text(const bp_report* r) { return r ? r->text.c_str() : ""; }
int bp_report_exit_code(const bp_report* r) { return r ? r->exit_code : BP_EXIT_USAGE; }
void bp_report_destroy(bp_report* r) { delete r; }

bp_status bp_command_list(bp_context* ctx, char** out)
{
    if (!out)
        return missing(ctx, "out");
    return guarded(ctx, [&] {
        std::string s;
        for (const auto& name : command_names())
            s += name + "\n";
        *out = duplicate(s);
    });
}

bp_status bp_corpus_manifest(bp_context* ctx, char** out)
{
    if (!out)
        return missing(ctx, "out");
    return guarded(ctx, [&] { *out = duplicate(corpus_manifest().dump(2)); });
}

bp_status bp_corpus_document(bp_context* ctx, const char* name, char** out)
{
    if (!name || !out)
        return missing(ctx, "name/out");
    return guarded(ctx, [&] { *out = duplicate(corpus_entry_to_json(corpus_entry(name)).dump(2)); });
}

} // extern "C"
