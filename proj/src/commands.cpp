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

#include "bipencil/factor.hpp"
#include "bipencil/flows.hpp"
#include "bipencil/parallel.hpp"
#include "bipencil/smith.hpp"
#include "bipencil/subspaces.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

namespace bipencil {

namespace {

const char* const kPartitionConvention =
    "partition lists sizes m of m x m matrix Jordan blocks; each is a 2m x 2m skew block (4m x 4m for a complex pair)";

const char* const kInlineKeys[] = {"pencil", "other", "subspace", "lagrangian", "family"};

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    std::string detail;
    std::optional<double> residual;
    std::optional<double> tolerance;
    Json witness;
};

std::string format_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(3) << v;
    return os.str();
}

std::string triple_string(const std::array<int, 3>& t)
{
    return "(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) + ")";
}

Json invariants_json(const JKInvariants& inv)
{
    Json jordan = Json::array();
    for (const auto& j : inv.jordan)
        jordan.push_back({{"eigenvalue", j.eigenvalue.to_string()},
                          {"minimal_polynomial", j.eigenvalue.infinite ? std::string("inf")
                                                                       : j.eigenvalue.minimal_polynomial.to_string()},
                          {"partition", j.partition}});
    return {{"kronecker", inv.kronecker_sizes}, {"jordan", jordan}};
}

Json eigenvalues_json(const std::vector<PencilEigenvalue>& ev)
{
    Json out = Json::array();
    for (const auto& e : ev) {
        Json approx = Json::array();
        for (const auto& z : e.approximations)
            approx.push_back({z.real(), z.imag()});
        out.push_back({{"eigenvalue", e.key.to_string()}, {"multiplicity", e.multiplicity}, {"approximations", approx}});
    }
    return out;
}

Json residuals_json(const IdentityCheck& c, const std::vector<std::string>& names)
{
    Json out = Json::array();
    for (const auto& r : c.residuals)
        out.push_back({{"triple", r.triple}, {"residual", r.residual.to_string(names)}});
    return out;
}

Point random_point(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
    Point x;
    for (std::size_t k = 0; k < n; ++k)
        x.push_back(Rational(num(rng), den(rng)));
    for (auto& v : x)
        v.canonicalize();
    return x;
}

class Session {
public:
    Session(std::string command, const Json& request) : command_(std::move(command)), request_(request)
    {
        if (!request_.is_object())
            throw FormatError("request: expected a JSON object");
        seed_ = static_cast<unsigned long>(integer("seed", 1));
        if (request_.contains("threads"))
            set_thread_count(static_cast<unsigned>(integer("threads", 0)));
        if (request_.contains("corpus")) {
            const Json& name = request_["corpus"];
            if (!name.is_string())
                throw FormatError("request.corpus: expected an entry name");
            entry_ = &corpus_entry(name.get<std::string>());
        }
        if (command_ != "corpus")
            pencil();
    }

    const Json& request() const { return request_; }
    const CorpusEntry* entry() const { return entry_; }
    unsigned long seed() const { return seed_; }
    Json results = Json::object();

    long long integer(const char* key, long long fallback) const
    {
        if (!request_.contains(key))
            return fallback;
        if (!request_[key].is_number_integer())
            throw FormatError(std::string("request.") + key + ": expected an integer");
        return request_[key].get<long long>();
    }

    double number(const char* key, double fallback) const
    {
        if (!request_.contains(key))
            return fallback;
        if (!request_[key].is_number())
            throw FormatError(std::string("request.") + key + ": expected a number");
        return request_[key].get<double>();
    }

    /// Inline object under `key` or the parsed file under `key_file`.
    std::optional<Json> document(const std::string& key)
    {
        const std::string file_key = key + "_file";
        if (request_.contains(file_key)) {
            const Json& path = request_[file_key];
            if (!path.is_string())
                throw FormatError("request." + file_key + ": expected a path");
            const std::string text = read_text_file(path.get<std::string>());
            inputs_.push_back({{"role", key}, {"source", path.get<std::string>()}, {"sha256", sha256_hex(text)}});
            return parse_json_text(text, path.get<std::string>());
        }
        if (request_.contains(key)) {
            const Json& doc = request_[key];
            inputs_.push_back({{"role", key}, {"source", "inline"}, {"sha256", sha256_hex(doc.dump())}});
            return doc;
        }
        return std::nullopt;
    }

    const PencilDocument& pencil()
    {
        if (pencil_)
            return *pencil_;
        if (auto doc = document("pencil")) {
            if (doc->is_object() && doc->value("format", "") == "bipencil.corpus-entry") {
                owned_entry_ = corpus_entry_from_json(*doc);
                entry_ = &*owned_entry_;
                pencil_ = pencil_from_json((*doc)["pencil"]);
            } else {
                pencil_ = pencil_from_json(*doc);
            }
        } else if (entry_) {
            pencil_ = entry_->pencil ? pencil_document(*entry_->pencil) : pencil_document(*entry_->chart);
            inputs_.push_back({{"role", "pencil"},
                               {"source", "corpus:" + entry_->name},
                               {"sha256", sha256_hex(pencil_to_json(*pencil_).dump())}});
        } else {
            throw FormatError("no pencil given: use a pencil document or --corpus NAME");
        }
        return *pencil_;
    }

    const ChartPencil& chart() { return pencil().chart; }
    std::size_t dimension() { return pencil().dimension; }

    std::optional<Point> point()
    {
        if (request_.contains("point"))
            return point_from_json(request_["point"], dimension(), "request.point");
        if (entry_ && entry_->point)
            return entry_->point;
        return std::nullopt;
    }

    Point require_point()
    {
        auto x = point();
        if (!x)
            throw FormatError("this command needs a point: use --point");
        return *x;
    }

    /// The constant pencil, or the chart evaluated at the requested point.
    SkewPencil linear()
    {
        if (auto p = pencil().constant())
            return *p;
        auto x = point();
        if (!x)
            throw FormatError("the pencil has non-constant entries: give --point to evaluate it");
        results["evaluated_at"] = point_to_json(*x);
        return evaluate_at(chart(), *x);
    }

    std::optional<Subspace> subspace(const std::string& key)
    {
        auto doc = document(key);
        if (!doc)
            return std::nullopt;
        Subspace s = subspace_from_json(*doc);
        if (s.ambient() != dimension())
            throw StructuralError(key + ": ambient dimension " + std::to_string(s.ambient()) +
                                  " differs from the pencil dimension " + std::to_string(dimension()));
        return s;
    }

    Subspace require_subspace(const std::string& key)
    {
        auto s = subspace(key);
        if (!s)
            throw FormatError("this command needs a " + key + " document");
        return *s;
    }

    FamilyDocument family()
    {
        if (auto doc = document("family"))
            return family_from_json(*doc, dimension());
        if (entry_ && (entry_->family || !entry_->hamiltonians.empty())) {
            FamilyDocument f;
            if (entry_->family)
                f.family = *entry_->family;
            f.hamiltonians = entry_->hamiltonians;
            return f;
        }
        throw FormatError("this command needs a family document: use --family");
    }

    void check(std::string name, CheckStatus status, std::string detail = {}, std::optional<double> residual = {},
               std::optional<double> tolerance = {}, Json witness = nullptr)
    {
        checks_.push_back({std::move(name), status, std::move(detail), residual, tolerance, std::move(witness)});
    }

    void check(std::string name, bool ok, std::string detail = {}, Json witness = nullptr)
    {
        check(std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail), {}, {}, std::move(witness));
    }

    CommandReport finish() const;

private:
    std::string command_;
    const Json& request_;
    const CorpusEntry* entry_ = nullptr;
    std::optional<CorpusEntry> owned_entry_;
    unsigned long seed_ = 1;
    std::optional<PencilDocument> pencil_;
    Json inputs_ = Json::array();
    std::vector<Check> checks_;
};

void render_value(std::ostream& os, const std::string& key, const Json& v)
{
    const int width = static_cast<int>(std::max<std::size_t>(28, key.size() + 2));
    if (v.is_string())
        os << "  " << std::left << std::setw(width) << key << v.get<std::string>() << '\n';
    else if (v.is_number() || v.is_boolean())
        os << "  " << std::left << std::setw(width) << key << v.dump() << '\n';
}

CommandReport Session::finish() const
{
    Json echo = Json::object();
    for (const auto& [key, value] : request_.items()) {
        const bool inline_doc = std::find(std::begin(kInlineKeys), std::end(kInlineKeys), key) != std::end(kInlineKeys);
        echo[key] = inline_doc ? Json("inline") : value;
    }
    bool failed = false, inconclusive = false;
    Json checks = Json::array();
    for (const auto& c : checks_) {
        failed |= c.status == CheckStatus::fail;
        inconclusive |= c.status == CheckStatus::inconclusive;
        Json item = {{"name", c.name}, {"status", status_name(c.status)}};
        if (c.residual) {
            item["residual"] = *c.residual;
            item["tolerance"] = c.tolerance.value_or(0.0);
        }
        if (!c.detail.empty())
            item["detail"] = c.detail;
        if (!c.witness.is_null())
            item["witness"] = c.witness;
        checks.push_back(item);
    }
    const CheckStatus overall = failed ? CheckStatus::fail : inconclusive ? CheckStatus::inconclusive : CheckStatus::pass;

    CommandReport r;
    r.exit_code = failed ? exit_fail : inconclusive ? exit_inconclusive : exit_pass;
    r.document = {{"format", "bipencil.report"},
                  {"version", kFormatVersion},
                  {"command", {{"name", command_}, {"arguments", echo}}},
                  {"inputs", inputs_},
                  {"results", results},
                  {"checks", checks},
                  {"status", status_name(overall)},
                  {"exit_code", r.exit_code}};

    std::ostringstream os;
    os << "bipencil " << command_ << '\n';
    for (const auto& [key, value] : results.items())
        render_value(os, key, value);
    if (!checks_.empty()) {
        std::size_t width = 44;
        for (const auto& c : checks_)
            width = std::max(width, c.name.size() + 2);
        const int w = static_cast<int>(width);
        os << "  " << std::left << std::setw(w) << "check" << std::setw(14) << "status" << "detail\n";
        for (const auto& c : checks_) {
            std::string detail = c.detail;
            if (c.residual)
                detail = "residual " + format_double(*c.residual) + " (tol " + format_double(c.tolerance.value_or(0)) +
                         ")" + (detail.empty() ? "" : "; " + detail);
            os << "  " << std::left << std::setw(w) << c.name << std::setw(14) << status_name(c.status) << detail
               << '\n';
        }
    }
    os << "status: " << status_name(overall) << " (exit " << r.exit_code << ")\n";
    r.table = os.str();
    return r;
}

// ------------------------------------------------------------------ commands

void cmd_jk(Session& s)
{
    const SkewPencil p = s.linear();
    const JKInvariants inv = jk_invariants(p);
    s.results["dimension"] = p.dimension();
    s.results["rank"] = pencil_rank(p);
    s.results["summary"] = inv.to_string();
    s.results["invariants"] = invariants_json(inv);
    s.results["partition_convention"] = kPartitionConvention;
    const bool round_trip = jk_invariants(canonical_pencil(inv, p.dimension())) == inv;
    s.check("canonical form round trip", round_trip, "invariants of the canonical pencil");
}

void cmd_charpoly(Session& s)
{
    const SkewPencil p = s.linear();
    const Polynomial cp = characteristic_polynomial(p);
    s.results["characteristic_polynomial"] = factored_string(cp);
    s.results["expanded"] = cp.to_string();
    s.results["degree"] = cp.degree();
    s.results["rank"] = pencil_rank(p);
    s.results["eigenvalues"] = eigenvalues_json(eigenvalues(p));
    if (p.dimension() <= 16) {
        Polynomial product(1);
        for (const auto& d : smith_normal_form(p.matrix(), false).invariant_factors)
            if (!d.is_zero())
                product *= d;
        const bool ok = product.monic() == (cp * cp).monic();
        s.check("smith elementary divisors", ok, "square equals the product of the invariant factors");
    }
}

void cmd_core(Session& s)
{
    const SkewPencil p = s.linear();
    const Subspace core = core_subspace(p);
    s.results["dimension"] = core.dim();
    s.results["core"] = subspace_to_json(core);
    s.check("sampled kernels span the core", core == core_subspace_by_sampling(p));
}

Json bundle_json(const JKInvariants& inv)
{
    std::map<int, std::vector<std::vector<int>>> by_degree;
    for (const auto& j : inv.jordan)
        by_degree[j.eigenvalue.degree()].push_back(j.partition);
    Json jordan = Json::array();
    for (auto& [degree, parts] : by_degree) {
        std::sort(parts.begin(), parts.end());
        for (const auto& part : parts)
            jordan.push_back({{"eigenvalue_degree", degree}, {"partition", part}});
    }
    return {{"kronecker", inv.kronecker_sizes}, {"jordan", jordan}};
}

void cmd_bundle(Session& s)
{
    const SkewPencil p = s.linear();
    const JKInvariants inv = jk_invariants(p);
    s.results["summary"] = inv.to_string();
    s.results["bundle"] = bundle_json(inv);
    if (auto other_doc = s.document("other")) {
        const PencilDocument other = pencil_from_json(*other_doc);
        SkewPencil q;
        if (auto c = other.constant())
            q = *c;
        else
            q = evaluate_at(other.chart, s.require_point());
        s.results["other_summary"] = jk_invariants(q).to_string();
        s.check("same bundle", same_bundle(p, q));
        return;
    }
    if (s.pencil().constant())
        return;
    const Point base = s.require_point();
    std::mt19937_64 rng(s.seed());
    std::uniform_int_distribution<int> offset(-5, 5);
    std::vector<Point> samples;
    const auto count = static_cast<std::size_t>(s.integer("samples", 8));
    for (std::size_t k = 0; k < count; ++k) {
        Point x = base;
        for (auto& v : x)
            v += Rational(offset(rng), 1000);
        samples.push_back(x);
    }
    const RegularScan scan = jk_regular_scan(s.chart(), base, samples);
    Json entries = Json::array();
    Json witness;
    for (const auto& e : scan.samples) {
        entries.push_back({{"point", point_to_json(e.point)}, {"rank", e.rank}, {"same_bundle", e.same_bundle}});
        if (!e.same_bundle && witness.is_null())
            witness = point_to_json(e.point);
    }
    s.results["base_rank"] = scan.base_rank;
    s.results["scan"] = entries;
    s.check("JK-regular near the point", scan.all_same(), std::to_string(samples.size()) + " nearby points", witness);
}

void cmd_reduce(Session& s)
{
    const SkewPencil p = s.linear();
    const Subspace u = s.require_subspace("subspace");
    const bool iso = is_bi_isotropic(p, u);
    s.check("U bi-isotropic", iso);
    const bool adm = iso && is_admissible(p, u);
    s.check("U admissible", adm);
    if (!adm)
        return;
    const Reduction r = reduce_pencil(p, u);
    s.results["reduced_dimension"] = r.pencil.dimension();
    s.results["reduced_summary"] = jk_invariants(r.pencil).to_string();
    s.results["reduced_pencil"] = pencil_to_json(pencil_document(r.pencil));
    s.results["u_perp"] = subspace_to_json(r.u_perp);
    s.results["section"] = matrix_to_json(r.section);
    s.results["projection"] = matrix_to_json(r.projection);
    if (u.contains(core_subspace(p))) {
        const SpectrumContainment sc = spectrum_containment(p, u);
        s.results["original_spectrum"] = eigenvalues_json(sc.original);
        s.results["reduced_spectrum"] = eigenvalues_json(sc.reduced);
        s.check("reduced spectrum within original", sc.contained);
        s.check("reduced pencil nondegenerate", sc.reduced_nondegenerate);
    } else {
        s.results["spectrum_note"] = "core not contained in U; spectrum containment not checked";
    }
    if (auto l = s.subspace("lagrangian")) {
        s.check("L bi-Lagrangian", is_bi_lagrangian(p, *l));
        const Subspace reduced = reduce_subspace(p, u, *l);
        s.results["reduced_lagrangian"] = subspace_to_json(reduced);
        s.check("reduced L bi-Lagrangian", is_bi_lagrangian(r.pencil, reduced));
    }
}

void cmd_bilagrangian(Session& s)
{
    const SkewPencil p = s.linear();
    if (auto l = s.subspace("lagrangian")) {
        s.results["dimension"] = l->dim();
        s.check("bi-isotropic", is_bi_isotropic(p, *l));
        s.check("bi-Lagrangian", is_bi_lagrangian(p, *l));
        return;
    }
    const Subspace seed = s.subspace("subspace").value_or(Subspace(p.dimension()));
    const Subspace l = build_bi_lagrangian(p, seed);
    s.results["dimension"] = l.dim();
    s.results["lagrangian"] = subspace_to_json(l);
    s.check("contains the seed", l.contains(seed));
    s.check("bi-Lagrangian", is_bi_lagrangian(p, l));
    s.check("invariant under the recursion operator", l.is_invariant(recursion_operator(p).p));
}

bool forms_vanish(const SkewPencil& p, const Subspace& x, const Subspace& y)
{
    return (x.basis() * p.a() * y.basis().transpose()).is_zero() && (x.basis() * p.b() * y.basis().transpose()).is_zero();
}

void cmd_split(Session& s)
{
    const SkewPencil p = s.linear();
    const auto parts = eigen_splitting(p);
    Json comps = Json::array();
    Subspace total(p.dimension());
    std::size_t dims = 0;
    bool orthogonal = true;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        comps.push_back({{"eigenvalue", parts[i].eigenvalue.to_string()},
                         {"dimension", parts[i].subspace.dim()},
                         {"summary", jk_invariants(parts[i].pencil).to_string()},
                         {"subspace", subspace_to_json(parts[i].subspace)}});
        total = total + parts[i].subspace;
        dims += parts[i].subspace.dim();
        for (std::size_t j = 0; j < i; ++j)
            orthogonal = orthogonal && forms_vanish(p, parts[i].subspace, parts[j].subspace);
    }
    s.results["components"] = comps;
    s.check("direct sum", dims == p.dimension() && total.dim() == p.dimension());
    s.check("components orthogonal for A and B", orthogonal);
}

void cmd_complexify(Session& s)
{
    const SkewPencil p = s.linear();
    const ComplexStructure cs = complex_structure(p);
    const std::size_t n = p.dimension();
    s.results["alpha"] = to_string(cs.alpha);
    s.results["beta"] = to_string(cs.beta);
    s.results["J"] = matrix_to_json(cs.j);
    s.results["A_hat"] = matrix_to_json(cs.a_hat);
    s.check("J^2 = -id", cs.j * cs.j == -QMatrix::identity(n));
    s.check("A_hat skew", cs.a_hat.is_skew());
    const auto ev = eigenvalues(SkewPencil(cs.a_hat, p.b()));
    const bool single = ev.size() == 1 && ev[0].key == EigenvalueKey::rational(0) &&
                        static_cast<std::size_t>(ev[0].multiplicity) == n / 2;
    s.results["A_hat_spectrum"] = eigenvalues_json(ev);
    s.check("A_hat + λB has the single eigenvalue 0", single);
}

void identity_check(Session& s, const std::string& name, const IdentityCheck& c)
{
    const auto& names = s.chart().names;
    std::string detail;
    Json witness;
    if (const auto* w = c.witness()) {
        detail = "residual " + w->residual.to_string(names) + " at triple " + triple_string(w->triple);
        witness = {{"triple", w->triple}, {"residual", w->residual.to_string(names)}};
    }
    s.check(name, c.ok, detail, witness);
}

void cmd_check_jacobi(Session& s)
{
    const ChartPencil& c = s.chart();
    const IdentityCheck a = jacobi_check(c.a), b = jacobi_check(c.b);
    s.results["A_residuals"] = residuals_json(a, c.names);
    s.results["B_residuals"] = residuals_json(b, c.names);
    identity_check(s, "Jacobi identity for A", a);
    identity_check(s, "Jacobi identity for B", b);
}

void cmd_check_compat(Session& s)
{
    const ChartPencil& c = s.chart();
    const IdentityCheck r = compatibility_check(c.a, c.b);
    s.results["residuals"] = residuals_json(r, c.names);
    identity_check(s, "compatibility", r);
    std::size_t m = static_cast<std::size_t>(s.integer("bordered", 0));
    if (m == 0 && s.entry())
        m = s.entry()->bordered;
    if (m > 0) {
        const BlockCompatibility bc = block_compatibility_check(c.a, c.b, m);
        s.results["bordered"] = m;
        s.results["block_residuals"] = residuals_json(bc.block_check, c.names);
        s.check("block criterion agrees with the full check", bc.agree());
    }
}

MultiPoly shift_function(Session& s)
{
    if (s.request().contains("shift"))
        return polynomial_from_json(s.request()["shift"], s.dimension(), "request.shift");
    if (s.entry() && s.entry()->shift)
        return *s.entry()->shift;
    throw FormatError("shift needs a function: give 'shift' polynomial terms");
}

void cmd_shift(Session& s)
{
    const ChartPencil& c = s.chart();
    const MultiPoly f = shift_function(s);
    s.results["function"] = f.to_string(c.names);
    const bool casimir = is_common_casimir(c, f);
    s.check("common Casimir", casimir);
    if (!casimir)
        return;
    ChartPencil shifted = casimir_shift(c, f);
    s.results["shifted_pencil"] = pencil_to_json(pencil_document(shifted));
    s.check("shifted bracket is Poisson and compatible", shifted.verify());

    std::vector<Point> points;
    if (auto x = s.point())
        points.push_back(*x);
    std::mt19937_64 rng(s.seed());
    const auto count = static_cast<std::size_t>(s.integer("samples", 20));
    for (std::size_t k = 0; k < count; ++k)
        points.push_back(random_point(rng, c.dimension()));
    const auto reports = parallel_map(points.size(), [&](std::size_t k) {
        return verify_eigenvalue_shift(c, f, points[k]);
    });
    Json rows = Json::array();
    std::size_t passed = 0;
    Json witness;
    for (const auto& r : reports) {
        Json before = Json::array(), after = Json::array();
        for (const auto& k : r.before)
            before.push_back(k.to_string());
        for (const auto& k : r.after)
            after.push_back(k.to_string());
        rows.push_back({{"point", point_to_json(r.point)},
                        {"shift", to_string(r.shift)},
                        {"before", before},
                        {"after", after},
                        {"ok", r.ok}});
        passed += r.ok;
        if (!r.ok && witness.is_null())
            witness = point_to_json(r.point);
    }
    s.results["points"] = rows;
    s.check("eigenvalues shift by -f(x)", passed == reports.size(),
            std::to_string(passed) + "/" + std::to_string(reports.size()) + " points", witness);
}

void cmd_involution(Session& s)
{
    const ChartPencil& c = s.chart();
    const FamilyDocument f = s.family();
    const InvolutionCheck r = bi_involution_check(c, f.family);
    s.results["family_size"] = f.family.size();
    std::string detail;
    Json witness;
    if (!r.ok) {
        detail = "{f" + std::to_string(r.first + 1) + ", f" + std::to_string(r.second + 1) + "}_" + r.bracket + " = " +
                 r.residual.to_string(c.names);
        witness = {{"pair", {r.first + 1, r.second + 1}}, {"bracket", r.bracket}, {"residual", r.residual.to_string(c.names)}};
    }
    s.check("bi-involution", r.ok, detail, witness);
}

void cmd_complete(Session& s)
{
    const ChartPencil& c = s.chart();
    const FamilyDocument f = s.family();
    const Point x = s.require_point();
    std::optional<Subspace> target = s.subspace("lagrangian");
    if (!target)
        target = s.subspace("subspace");
    const CompletenessReport r =
        completeness_check(c, f.family, x, target, s.seed(), static_cast<std::size_t>(s.integer("samples", 6)));
    s.results["expected_count"] = r.expected_count;
    s.results["family_size"] = r.family_size;
    s.results["max_pencil_rank"] = r.max_pencil_rank;
    s.results["jacobian_rank_at_point"] = r.jacobian_rank_at_point;
    s.results["jacobian_rank_at_samples"] = r.jacobian_rank_at_samples;
    s.results["differentials"] = subspace_to_json(Subspace(c.dimension(), jacobian(f.family, x)));
    s.check("family size = dim - rank/2", r.count_ok,
            std::to_string(r.family_size) + " vs " + std::to_string(r.expected_count));
    s.check("functionally independent", r.independent);
    if (r.span_matches_target)
        s.check("differentials span the target", *r.span_matches_target);
}

void cmd_integrals(Session& s)
{
    const ChartPencil& c = s.chart();
    const FamilyDocument f = s.family();
    const IntegralsReport r = standard_integrals_verify(c, f.family, f.hamiltonians, s.seed());
    for (const auto& item : r.items)
        s.check(item.name, item.ok, item.detail);
}

std::string eigenvalue_label(const std::complex<double>& z)
{
    std::ostringstream os;
    os << std::setprecision(6) << z.real();
    if (z.imag() != 0)
        os << (z.imag() > 0 ? " + " : " - ") << std::abs(z.imag()) << "i";
    return os.str();
}

void cmd_eigdiff(Session& s)
{
    const ChartPencil& c = s.chart();
    const Point x = s.require_point();
    const double h = s.number("step", 1e-4);
    const double tol = s.number("tolerance", 1e-8);
    const DifferentialReport d = eigenvalue_differential_check(c, x, h, tol);
    s.results["pencil_rank"] = d.pencil_rank;
    s.results["step"] = h;
    Json rows = Json::array();
    for (const auto& e : d.eigenvalues) {
        Json grad = Json::array();
        for (const auto& g : e.gradient)
            grad.push_back({g.real(), g.imag()});
        rows.push_back({{"value", {e.value.real(), e.value.imag()}},
                        {"complex_pair", e.complex_pair},
                        {"gradient", grad},
                        {"residual", e.residual},
                        {"tolerance", tol},
                        {"status", status_name(e.status)}});
        s.check("dμ in kernel, μ = " + eigenvalue_label(e.value), e.status, e.note, e.residual, tol);
    }
    s.results["eigenvalues"] = rows;

    std::vector<double> steps = {1e-3, 5e-4, 2.5e-4};
    if (s.request().contains("steps"))
        steps = s.request()["steps"].get<std::vector<double>>();
    const ConvergenceReport conv = eigenvalue_differential_order(c, x, steps, tol);
    Json orders = Json::array();
    for (std::size_t k = 0; k < conv.order.size(); ++k) {
        const auto& o = conv.order[k];
        orders.push_back(o ? Json(*o) : Json());
        const std::string label = k < d.eigenvalues.size() ? eigenvalue_label(d.eigenvalues[k].value) : std::to_string(k);
        bool lost = false;
        for (const auto& run : conv.runs)
            lost = lost || k >= run.eigenvalues.size() || run.eigenvalues[k].gradient.empty();
        if (o) {
            const bool in_range = *o >= conv.order_low && *o <= conv.order_high;
            s.check("convergence order, μ = " + label, in_range,
                    "order " + format_double(*o) + " in [" + format_double(conv.order_low) + ", " +
                        format_double(conv.order_high) + "]");
        } else if (lost) {
            s.check("convergence order, μ = " + label, CheckStatus::inconclusive, "root tracking lost");
        }
    }
    s.results["steps"] = steps;
    s.results["orders"] = orders;
    if (std::any_of(conv.order.begin(), conv.order.end(), [](const auto& o) { return !o; }))
        s.results["order_note"] = "null order: residual at round-off for every step, not measurable";
}

State to_state(const Point& x)
{
    State out;
    for (const auto& v : x)
        out.push_back(v.get_d());
    return out;
}

void cmd_flow(Session& s)
{
    const ChartPencil& c = s.chart();
    const FamilyDocument f = s.family();
    if (f.hamiltonians.empty())
        throw FormatError("flow needs at least one function with role 'hamiltonian'");
    const State x0 = to_state(s.require_point());
    const double h = s.number("step", 1e-3);
    const double horizon = s.number("horizon", 10.0);
    const double tol = s.number("tolerance", 1e-8);
    const double consistency_tol = s.number("consistency_tolerance", 1e-12);
    if (!(h > 0) || !(horizon > 0))
        throw FormatError("step and horizon must be positive");
    const BiHamiltonianField field(c, f.hamiltonians);
    const Trajectory t = integrate(field, x0, horizon, h);
    const TrajectoryReport r = drift_report(t, field, f.family);
    s.results["initial"] = r.initial;
    s.results["step"] = r.step;
    s.results["horizon"] = r.horizon;
    s.results["samples"] = r.samples;
    s.results["final"] = t.states.back();
    Json energies = Json::array();
    for (std::size_t i = 0; i < r.energies.size(); ++i) {
        const auto& e = r.energies[i];
        double dev = 0;
        for (double v : e)
            dev = std::max(dev, std::abs(v - e.front()));
        energies.push_back({{"alpha", f.hamiltonians[i].alpha.to_string()},
                            {"initial", e.front()},
                            {"final", e.back()},
                            {"max_deviation", dev}});
    }
    s.results["energies"] = energies;
    s.check("finite trajectory", !r.aborted, r.aborted ? "non-finite state; trajectory truncated" : "");
    for (const auto& d : r.drifts)
        s.check("drift of " + d.label, d.max_drift <= tol ? CheckStatus::pass : CheckStatus::fail, {}, d.max_drift, tol);
    for (const auto& p : r.consistency)
        s.check("field consistency " + p.first + " / " + p.second,
                p.max_discrepancy <= consistency_tol ? CheckStatus::pass : CheckStatus::fail, {}, p.max_discrepancy,
                consistency_tol);

    if (s.request().value("order_check", true) && !r.aborted) {
        const Trajectory half = integrate(field, x0, horizon, h / 2);
        const TrajectoryReport rh = drift_report(half, field, f.family);
        Json ratios = Json::array();
        for (std::size_t i = 0; i < r.drifts.size(); ++i) {
            if (r.drifts[i].max_drift <= tol && rh.drifts[i].max_drift > 0) {
                const double ratio = r.drifts[i].max_drift / rh.drifts[i].max_drift;
                ratios.push_back({{"label", r.drifts[i].label},
                                  {"drift_h", r.drifts[i].max_drift},
                                  {"drift_half_h", rh.drifts[i].max_drift},
                                  {"ratio", ratio}});
                s.check("drift ratio h vs h/2 of " + r.drifts[i].label, ratio >= 8 && ratio <= 32,
                        "ratio " + format_double(ratio) + " in [8, 32]" +
                            (rh.drifts[i].max_drift < 1e-14 ? "; h/2 drift near round-off" : ""));
            }
        }
        s.results["drift_ratios"] = ratios;
    }
    if (s.request().contains("trajectory_file")) {
        const std::string path = s.request()["trajectory_file"].get<std::string>();
        std::ofstream out(path);
        if (!out)
            throw FormatError(path + ": cannot write trajectory");
        write_json_lines(out, t, f.family);
        s.results["trajectory_file"] = path;
    }
}

void cmd_corpus(Session& s)
{
    if (s.request().contains("name")) {
        const Json& name = s.request()["name"];
        if (!name.is_string())
            throw FormatError("request.name: expected an entry name");
        s.results["entry"] = corpus_entry_to_json(corpus_entry(name.get<std::string>()));
        return;
    }
    s.results["manifest"] = corpus_manifest();
    s.check("manifest has at least 10 entries", corpus().size() >= 10, std::to_string(corpus().size()) + " entries");
    const auto& entries = corpus();
    const auto outcomes = parallel_map(entries.size(), [&](std::size_t k) {
        const ChartPencil c = entries[k].chart ? *entries[k].chart : constant_chart(*entries[k].pencil);
        return std::array<bool, 2>{jacobi_check(c.a).ok && jacobi_check(c.b).ok,
                                   compatibility_check(c.a, c.b).ok == entries[k].expect_compatible};
    });
    for (std::size_t k = 0; k < entries.size(); ++k) {
        s.check(entries[k].name + ": Jacobi for A and B", outcomes[k][0]);
        s.check(entries[k].name + ": compatibility as documented", outcomes[k][1],
                entries[k].expect_compatible ? "compatible" : "deliberately incompatible");
    }
}

using Handler = void (*)(Session&);

const std::vector<std::pair<std::string, Handler>>& handlers()
{
    static const std::vector<std::pair<std::string, Handler>> table = {
        {"jk", cmd_jk},
        {"charpoly", cmd_charpoly},
        {"core", cmd_core},
        {"bundle", cmd_bundle},
        {"reduce", cmd_reduce},
        {"bilagrangian", cmd_bilagrangian},
        {"split", cmd_split},
        {"complexify", cmd_complexify},
        {"check-jacobi", cmd_check_jacobi},
        {"check-compat", cmd_check_compat},
        {"shift", cmd_shift},
        {"involution", cmd_involution},
        {"complete", cmd_complete},
        {"integrals", cmd_integrals},
        {"eigdiff", cmd_eigdiff},
        {"flow", cmd_flow},
        {"corpus", cmd_corpus},
    };
    return table;
}

} // namespace

const std::vector<std::string>& command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : handlers())
            out.push_back(name);
        return out;
    }();
    return names;
}

CommandReport run_command(const std::string& command, const Json& request)
{
    const auto& table = handlers();
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& h) { return h.first == command; });
    if (it == table.end())
        throw FormatError("unknown command '" + command + "'");
    Session s(command, request);
    try {
        it->second(s);
    } catch (const DomainError& e) {
        s.check("preconditions", false, e.what());
    } catch (const ConsistencyError& e) {
        s.check("internal consistency", false, e.what());
    }
    return s.finish();
}

} // namespace bipencil
