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

#include "bipencil/documents.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace bipencil {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw FormatError(where + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    if (!j.is_object())
        fail(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::size_t index_from_json(const Json& j, std::size_t n, const std::string& where)
{
    if (!j.is_number_integer())
        fail(where, "expected an integer index");
    const auto v = j.get<long long>();
    if (v < 1 || static_cast<std::size_t>(v) > n)
        fail(where, "index " + std::to_string(v) + " out of range 1.." + std::to_string(n));
    return static_cast<std::size_t>(v - 1);
}

void check_format(const Json& j, const char* format, const std::string& where)
{
    const Json& f = field(j, "format", where);
    if (!f.is_string() || f.get<std::string>() != format)
        fail(where, std::string("expected format '") + format + "'");
    const Json& v = field(j, "version", where);
    if (!v.is_number_integer() || v.get<int>() != kFormatVersion)
        fail(where, "unsupported version");
}

Json bivector_to_json(const PolyBivector& p, bool constant_form)
{
    Json entries = Json::array();
    for (std::size_t i = 0; i < p.dimension(); ++i)
        for (std::size_t j = i + 1; j < p.dimension(); ++j) {
            const MultiPoly e = p(i, j);
            if (e.is_zero())
                continue;
            entries.push_back({{"i", i + 1}, {"j", j + 1}, {"polynomial", polynomial_to_json(e, constant_form)}});
        }
    return entries;
}

PolyBivector bivector_from_json(const Json& j, std::size_t n, std::size_t vars, const std::string& where)
{
    if (!j.is_array())
        fail(where, "expected an array of entries");
    PolyBivector p(n);
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = where + "[" + std::to_string(k) + "]";
        const std::size_t r = index_from_json(field(j[k], "i", at), n, at + ".i");
        const std::size_t c = index_from_json(field(j[k], "j", at), n, at + ".j");
        if (r >= c)
            fail(at, "entries need i < j");
        if (!seen.insert({r, c}).second)
            fail(at, "duplicate entry");
        p.set(r, c, polynomial_from_json(field(j[k], "polynomial", at), vars, at + ".polynomial"));
    }
    return p;
}

} // namespace

Json parse_json_text(const std::string& text, const std::string& source)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        // Byte offsets are 1-based and point just past the offending character.
        std::size_t line = 1, column = 1;
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t k = 0; k < stop; ++k) {
            if (text[k] == '\n') {
                ++line;
                column = 1;
            } else {
                ++column;
            }
        }
        std::ostringstream os;
        os << source << ": malformed JSON at line " << line << ", column " << column << " (byte " << e.byte
           << "): " << e.what();
        throw FormatError(os.str());
    }
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw FormatError(path + ": cannot open file");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Json rational_to_json(const Rational& q) { return to_string(q); }

Rational rational_from_json(const Json& j, const std::string& where)
{
    if (!j.is_string())
        fail(where, "rational must be a string \"p/q\"");
    try {
        return parse_rational(j.get<std::string>());
    } catch (const FormatError& e) {
        fail(where, e.what());
    }
}

Json projective_to_json(const ProjectiveValue& v)
{
    return v.infinite ? Json("inf") : rational_to_json(v.value);
}

ProjectiveValue projective_from_json(const Json& j, const std::string& where)
{
    if (j.is_string() && j.get<std::string>() == "inf")
        return ProjectiveValue::infinity();
    return ProjectiveValue::finite(rational_from_json(j, where));
}

Json polynomial_to_json(const MultiPoly& p, bool constant_form)
{
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) {
        Json exps = Json::array();
        if (!constant_form)
            for (int k : e)
                exps.push_back(k);
        terms.push_back({{"coefficient", rational_to_json(c)}, {"exponents", exps}});
    }
    return terms;
}

MultiPoly polynomial_from_json(const Json& j, std::size_t variables, const std::string& where)
{
    if (!j.is_array())
        fail(where, "polynomial must be an array of terms");
    MultiPoly p(variables);
    for (std::size_t k = 0; k < j.size(); ++k) {
        const std::string at = where + "[" + std::to_string(k) + "]";
        const Rational c = rational_from_json(field(j[k], "coefficient", at), at + ".coefficient");
        const Json& ej = field(j[k], "exponents", at);
        if (!ej.is_array())
            fail(at + ".exponents", "expected an integer array");
        Exponents e(variables, 0);
        if (!ej.empty()) {
            if (ej.size() != variables)
                fail(at + ".exponents", "expected " + std::to_string(variables) + " exponents");
            for (std::size_t v = 0; v < variables; ++v) {
                if (!ej[v].is_number_integer() || ej[v].get<long long>() < 0)
                    fail(at + ".exponents", "exponents must be nonnegative integers");
                e[v] = ej[v].get<int>();
            }
        }
        p.add_term(e, c);
    }
    return p;
}

PencilDocument pencil_document(const SkewPencil& p)
{
    PencilDocument d;
    d.dimension = p.dimension();
    d.chart = constant_chart(p);
    return d;
}

PencilDocument pencil_document(const ChartPencil& c)
{
    PencilDocument d;
    d.dimension = c.dimension();
    d.variables = c.names;
    d.chart = c;
    return d;
}

Json pencil_to_json(const PencilDocument& d)
{
    const bool constant_form = d.is_constant_form();
    return {{"format", "bipencil.pencil"},
            {"version", kFormatVersion},
            {"dimension", d.dimension},
            {"variables", d.variables},
            {"A", bivector_to_json(d.chart.a, constant_form)},
            {"B", bivector_to_json(d.chart.b, constant_form)}};
}

PencilDocument pencil_from_json(const Json& j)
{
    const std::string where = "pencil";
    check_format(j, "bipencil.pencil", where);
    const Json& dim = field(j, "dimension", where);
    if (!dim.is_number_integer() || dim.get<long long>() < 1)
        fail(where + ".dimension", "expected a positive integer");
    PencilDocument d;
    d.dimension = dim.get<std::size_t>();
    const Json& vars = field(j, "variables", where);
    if (!vars.is_array())
        fail(where + ".variables", "expected an array of names");
    for (const auto& v : vars) {
        if (!v.is_string())
            fail(where + ".variables", "names must be strings");
        d.variables.push_back(v.get<std::string>());
    }
    if (!d.variables.empty() && d.variables.size() != d.dimension)
        fail(where + ".variables", "need one name per coordinate or none for a constant pencil");
    const std::size_t n = d.dimension;
    PolyBivector a = bivector_from_json(field(j, "A", where), n, n, where + ".A");
    PolyBivector b = bivector_from_json(field(j, "B", where), n, n, where + ".B");
    d.chart = ChartPencil(std::move(a), std::move(b), d.variables);
    if (d.is_constant_form()) {
        if (!d.constant())
            fail(where, "a pencil without variables must have constant entries");
        d.chart.jacobi_verified = d.chart.compatibility_verified = true;
    }
    return d;
}

Json matrix_to_json(const QMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(rational_to_json(m(i, k)));
        rows.push_back(row);
    }
    return rows;
}

Json subspace_to_json(const Subspace& s)
{
    return {{"format", "bipencil.subspace"},
            {"version", kFormatVersion},
            {"ambient", s.ambient()},
            {"basis", matrix_to_json(s.basis())}};
}

Subspace subspace_from_json(const Json& j)
{
    const std::string where = "subspace";
    check_format(j, "bipencil.subspace", where);
    const Json& amb = field(j, "ambient", where);
    if (!amb.is_number_integer() || amb.get<long long>() < 1)
        fail(where + ".ambient", "expected a positive integer");
    const auto n = amb.get<std::size_t>();
    const Json& rows = field(j, "basis", where);
    if (!rows.is_array())
        fail(where + ".basis", "expected an array of rows");
    QMatrix m(0, n);
    for (std::size_t r = 0; r < rows.size(); ++r)
        m.append_row(point_from_json(rows[r], n, where + ".basis[" + std::to_string(r) + "]"));
    return Subspace(n, m);
}

Json point_to_json(const Point& x)
{
    Json out = Json::array();
    for (const auto& v : x)
        out.push_back(rational_to_json(v));
    return out;
}

Point point_from_json(const Json& j, std::size_t n, const std::string& where)
{
    if (!j.is_array() || j.size() != n)
        fail(where, "expected " + std::to_string(n) + " rational strings");
    Point x;
    for (std::size_t k = 0; k < n; ++k)
        x.push_back(rational_from_json(j[k], where + "[" + std::to_string(k) + "]"));
    return x;
}

Json family_to_json(const FamilyDocument& f, const std::vector<std::string>& variables)
{
    Json fs = Json::array();
    for (const auto& t : f.family.functions) {
        Json item = {{"label", t.label}, {"role", role_name(t.role)}};
        if (t.at)
            item["at"] = projective_to_json(*t.at);
        item["polynomial"] = polynomial_to_json(t.f);
        fs.push_back(item);
    }
    for (const auto& h : f.hamiltonians)
        fs.push_back({{"label", ""},
                      {"role", role_name(FunctionRole::hamiltonian)},
                      {"at", projective_to_json(h.alpha)},
                      {"polynomial", polynomial_to_json(h.h)}});
    return {{"format", "bipencil.family"}, {"version", kFormatVersion}, {"variables", variables}, {"functions", fs}};
}

FamilyDocument family_from_json(const Json& j, std::size_t variables)
{
    const std::string where = "family";
    check_format(j, "bipencil.family", where);
    const Json& vars = field(j, "variables", where);
    if (!vars.is_array() || vars.size() != variables)
        fail(where + ".variables", "expected " + std::to_string(variables) + " variable names");
    const Json& fs = field(j, "functions", where);
    if (!fs.is_array())
        fail(where + ".functions", "expected an array");
    FamilyDocument out;
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const std::string at = where + ".functions[" + std::to_string(k) + "]";
        const Json& role_j = field(fs[k], "role", at);
        if (!role_j.is_string())
            fail(at + ".role", "expected a string");
        FunctionRole role;
        try {
            role = parse_role(role_j.get<std::string>());
        } catch (const Error& e) {
            fail(at + ".role", e.what());
        }
        std::optional<ProjectiveValue> tag;
        if (fs[k].contains("at"))
            tag = projective_from_json(fs[k]["at"], at + ".at");
        MultiPoly f = polynomial_from_json(field(fs[k], "polynomial", at), variables, at + ".polynomial");
        std::string label;
        if (fs[k].contains("label")) {
            if (!fs[k]["label"].is_string())
                fail(at + ".label", "expected a string");
            label = fs[k]["label"].get<std::string>();
        }
        if (role == FunctionRole::hamiltonian) {
            if (!tag)
                fail(at, "a hamiltonian needs its λ tag 'at'");
            out.hamiltonians.push_back({*tag, std::move(f)});
        } else {
            if (role == FunctionRole::casimir && !tag)
                fail(at, "a casimir needs its λ tag 'at'");
            out.family.functions.push_back({std::move(f), role, tag, std::move(label)});
        }
    }
    return out;
}

Json corpus_entry_to_json(const CorpusEntry& e)
{
    Json out = {{"format", "bipencil.corpus-entry"},
                {"version", kFormatVersion},
                {"name", e.name},
                {"kind", e.kind},
                {"provenance", e.provenance}};
    const PencilDocument d = e.pencil ? pencil_document(*e.pencil) : pencil_document(*e.chart);
    out["pencil"] = pencil_to_json(d);
    if (e.family || !e.hamiltonians.empty()) {
        FamilyDocument f;
        if (e.family)
            f.family = *e.family;
        f.hamiltonians = e.hamiltonians;
        out["family"] = family_to_json(f, d.chart.names);
    }
    if (e.point)
        out["point"] = point_to_json(*e.point);
    if (e.shift)
        out["shift"] = polynomial_to_json(*e.shift);
    if (e.bordered > 0)
        out["bordered"] = e.bordered;
    out["expect_compatible"] = e.expect_compatible;
    return out;
}

CorpusEntry corpus_entry_from_json(const Json& j)
{
    const std::string where = "corpus-entry";
    check_format(j, "bipencil.corpus-entry", where);
    CorpusEntry e;
    for (auto [key, target] : {std::pair{"name", &e.name}, {"kind", &e.kind}, {"provenance", &e.provenance}}) {
        const Json& v = field(j, key, where);
        if (!v.is_string())
            fail(where + "." + key, "expected a string");
        *target = v.get<std::string>();
    }
    const PencilDocument d = pencil_from_json(field(j, "pencil", where));
    const std::size_t n = d.dimension;
    if (e.kind == "pencil") {
        if (!d.constant())
            fail(where + ".pencil", "a pencil entry needs constant entries");
        e.pencil = *d.constant();
    } else if (e.kind == "chart") {
        e.chart = d.chart;
        e.chart->verify();
    } else {
        fail(where + ".kind", "expected 'pencil' or 'chart'");
    }
    if (j.contains("family")) {
        FamilyDocument f = family_from_json(j["family"], n);
        if (f.family.size() > 0)
            e.family = std::move(f.family);
        e.hamiltonians = std::move(f.hamiltonians);
    }
    if (j.contains("point"))
        e.point = point_from_json(j["point"], n, where + ".point");
    if (j.contains("shift"))
        e.shift = polynomial_from_json(j["shift"], n, where + ".shift");
    if (j.contains("bordered")) {
        if (!j["bordered"].is_number_unsigned())
            fail(where + ".bordered", "expected a nonnegative integer");
        e.bordered = j["bordered"].get<std::size_t>();
    }
    const Json& compat = field(j, "expect_compatible", where);
    if (!compat.is_boolean())
        fail(where + ".expect_compatible", "expected a boolean");
    e.expect_compatible = compat.get<bool>();
    return e;
}

Json corpus_manifest()
{
    Json entries = Json::array();
    for (const auto& e : corpus())
        entries.push_back({{"name", e.name},
                           {"kind", e.kind},
                           {"dimension", e.pencil ? e.pencil->dimension() : e.chart->dimension()},
                           {"provenance", e.provenance}});
    return {{"format", "bipencil.corpus"}, {"version", kFormatVersion}, {"entries", entries}};
}

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 digest failed");
    std::ostringstream os;
    for (unsigned int k = 0; k < length; ++k)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
    return os.str();
}

} // namespace bipencil
