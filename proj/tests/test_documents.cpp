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

#include "bipencil/commands.hpp"
#include "bipencil/documents.hpp"
#include "bipencil/subspaces.hpp"

#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace bipencil;

namespace {

Json request_for(const std::string& corpus_name, Json extra = Json::object())
{
    extra["corpus"] = corpus_name;
    return extra;
}

int exit_of(const std::string& command, const Json& request) { return run_command(command, request).exit_code; }

const Json* find_check(const Json& report, const std::string& name)
{
    for (const auto& c : report["checks"])
        if (c["name"] == name)
            return &c;
    return nullptr;
}

} // namespace

TEST(Documents, RationalsAndInfinity)
{
    EXPECT_EQ(rational_to_json(Rational(-3, 4)), "-3/4");
    EXPECT_EQ(rational_from_json("6/8", "x"), Rational(3, 4));
    EXPECT_THROW(rational_from_json(0.5, "x"), FormatError);
    EXPECT_THROW(rational_from_json("1/0", "x"), FormatError);
    EXPECT_TRUE(projective_from_json("inf", "x").infinite);
    EXPECT_EQ(projective_to_json(ProjectiveValue::infinity()), "inf");
    EXPECT_EQ(projective_to_json(ProjectiveValue::finite(Rational(2))), "2");
}

TEST(Documents, PencilRoundTripOnEveryCorpusEntry)
{
    for (const auto& e : corpus()) {
        const Json j = corpus_entry_to_json(e);
        const CorpusEntry back = corpus_entry_from_json(j);
        EXPECT_EQ(corpus_entry_to_json(back), j) << e.name;
        const PencilDocument d = pencil_from_json(j["pencil"]);
        EXPECT_EQ(pencil_to_json(d), j["pencil"]) << e.name;
        if (e.pencil) {
            EXPECT_TRUE(d.is_constant_form());
            EXPECT_EQ(*d.constant(), *e.pencil) << e.name;
        } else {
            EXPECT_EQ(d.chart.a, e.chart->a) << e.name;
            EXPECT_EQ(d.chart.b, e.chart->b) << e.name;
            EXPECT_EQ(d.variables, e.chart->names) << e.name;
        }
    }
}

TEST(Documents, ConstantPencilHasEmptyExponents)
{
    const Json j = pencil_to_json(pencil_document(jordan_block(Rational(3), 2)));
    EXPECT_TRUE(j["variables"].empty());
    for (const auto& entry : j["A"])
        for (const auto& term : entry["polynomial"])
            EXPECT_TRUE(term["exponents"].empty());
    EXPECT_EQ(j["A"][0]["i"], 1);
}

TEST(Documents, SubspaceAndFamilyRoundTrip)
{
    std::mt19937_64 rng(7);
    const Subspace s = Subspace::span(4, {{1, Rational(1, 2), 0, 3}, {0, 0, 1, Rational(-2, 3)}});
    EXPECT_EQ(subspace_from_json(subspace_to_json(s)), s);

    const auto& e = corpus_entry("euler-top");
    FamilyDocument f{*e.family, e.hamiltonians};
    const Json j = family_to_json(f, e.chart->names);
    const FamilyDocument back = family_from_json(j, 3);
    EXPECT_EQ(back.family.size(), f.family.size());
    EXPECT_EQ(back.hamiltonians.size(), 2u);
    EXPECT_TRUE(back.hamiltonians[1].alpha.infinite);
    EXPECT_EQ(family_to_json(back, e.chart->names), j);
}

TEST(Documents, MalformedInputsAreFormatErrors)
{
    try {
        parse_json_text("{\n  \"a\": [1, 2,\n}", "doc.json");
        FAIL() << "expected a FormatError";
    } catch (const FormatError& err) {
        const std::string what = err.what();
        EXPECT_NE(what.find("doc.json"), std::string::npos);
        EXPECT_NE(what.find("line 3"), std::string::npos) << what;
    }
    Json j = pencil_to_json(pencil_document(kronecker_block(1)));
    Json bad = j;
    bad["A"][0]["i"] = 3;
    EXPECT_THROW(pencil_from_json(bad), FormatError);
    bad = j;
    bad["A"][0]["i"] = 5;
    EXPECT_THROW(pencil_from_json(bad), FormatError);
    bad = j;
    bad["A"][0]["polynomial"][0]["coefficient"] = "x";
    EXPECT_THROW(pencil_from_json(bad), FormatError);
    bad = j;
    bad["version"] = 2;
    EXPECT_THROW(pencil_from_json(bad), FormatError);
    bad = j;
    bad["A"].push_back(bad["A"][0]);
    EXPECT_THROW(pencil_from_json(bad), FormatError);
}

TEST(Documents, Sha256)
{
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Commands, ExitCodeContract)
{
    EXPECT_EQ(exit_of("jk", request_for("K3")), exit_pass);
    EXPECT_EQ(exit_of("charpoly", request_for("J4(3)")), exit_pass);
    EXPECT_EQ(exit_of("check-compat", request_for("incompatible")), exit_fail);
    EXPECT_EQ(exit_of("check-compat", request_for("bordered-incompatible")), exit_fail);
    EXPECT_EQ(exit_of("integrals", request_for("euler-top")), exit_pass);
    EXPECT_EQ(exit_of("complexify", request_for("J4(3)")), exit_fail);
    EXPECT_EQ(exit_of("bundle", request_for("so3-frozen", {{"point", {"0", "0", "0"}}})), exit_fail);
    EXPECT_THROW(run_command("jk", Json::object()), FormatError);
    EXPECT_THROW(run_command("no-such-command", request_for("K3")), FormatError);
    EXPECT_THROW(run_command("eigdiff", {{"corpus", "K3"}}), FormatError);
}

TEST(Commands, ExamplesFromTheReports)
{
    auto r = run_command("jk", request_for("K3")).document;
    EXPECT_EQ(r["results"]["invariants"]["kronecker"], Json::array({3}));
    EXPECT_EQ(r["status"], "pass");
    EXPECT_EQ(r["inputs"][0]["source"], "corpus:K3");
    EXPECT_EQ(r["inputs"][0]["sha256"].get<std::string>().size(), 64u);

    r = run_command("charpoly", request_for("J4(3)")).document;
    EXPECT_EQ(r["results"]["characteristic_polynomial"], "(λ - 3)^2");

    r = run_command("check-compat", request_for("incompatible")).document;
    const Json* c = find_check(r, "compatibility");
    ASSERT_NE(c, nullptr);
    EXPECT_EQ((*c)["witness"]["residual"], "x2");
    EXPECT_EQ((*c)["witness"]["triple"], Json::array({1, 2, 3}));
}

TEST(Commands, InlineDocumentsMatchCorpusNames)
{
    const Json inline_doc = pencil_to_json(pencil_document(*corpus_entry("J4(3)+K3").pencil));
    const auto a = run_command("jk", {{"pencil", inline_doc}}).document;
    const auto b = run_command("jk", request_for("J4(3)+K3")).document;
    EXPECT_EQ(a["results"], b["results"]);
    EXPECT_EQ(a["command"]["arguments"]["pencil"], "inline");
    EXPECT_EQ(a["inputs"][0]["sha256"], b["inputs"][0]["sha256"]);
}

TEST(Commands, ReduceAndBilagrangian)
{
    // U = core of J4(3) + K3 is admissible and bi-isotropic
    const SkewPencil p = *corpus_entry("J4(3)+K3").pencil;
    const Json u = subspace_to_json(core_subspace(p));
    const Json pencil = pencil_to_json(pencil_document(p));
    auto r = run_command("reduce", {{"pencil", pencil}, {"subspace", u}});
    EXPECT_EQ(r.exit_code, exit_pass) << r.table;
    EXPECT_EQ(r.document["results"]["reduced_dimension"], 4);

    const SkewPencil q = *corpus_entry("J4(3)+J4(5)").pencil;
    r = run_command("bilagrangian", {{"pencil", pencil_to_json(pencil_document(q))}});
    EXPECT_EQ(r.exit_code, exit_pass) << r.table;
    const Subspace l = subspace_from_json(r.document["results"]["lagrangian"]);
    EXPECT_TRUE(is_bi_lagrangian(q, l));
    // a non-isotropic candidate fails
    r = run_command("bilagrangian",
                    {{"pencil", pencil_to_json(pencil_document(q))}, {"lagrangian", subspace_to_json(Subspace::full(8))}});
    EXPECT_EQ(r.exit_code, exit_fail);
}

TEST(Commands, ChartCommands)
{
    EXPECT_EQ(exit_of("shift", request_for("pqz", {{"samples", 5}})), exit_pass);
    EXPECT_EQ(exit_of("involution", request_for("so3-frozen")), exit_pass);
    EXPECT_EQ(exit_of("complete", request_for("so3-frozen")), exit_pass);
    EXPECT_EQ(exit_of("integrals", request_for("so3-frozen")), exit_fail);
    EXPECT_EQ(exit_of("eigdiff", request_for("jordan5-cubic")), exit_pass);
    EXPECT_EQ(exit_of("flow", request_for("euler-top", {{"horizon", 1.0}, {"step", 0.004}})), exit_pass);
    EXPECT_EQ(exit_of("flow", request_for("euler-top", {{"horizon", 1.0}, {"tolerance", 1e-20}})), exit_fail);
    EXPECT_EQ(exit_of("corpus", Json::object()), exit_pass);
    // x1 is not a common Casimir of pqz
    EXPECT_EQ(exit_of("shift", request_for("pqz", {{"shift", polynomial_to_json(MultiPoly::variable(3, 0))}})),
              exit_fail);
}
