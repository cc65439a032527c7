#include <vertexflow/cli.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include <vertexflow/errors.hpp>
#include <vertexflow/vlie.hpp>

#ifndef VERTEXFLOW_VERSION
#define VERTEXFLOW_VERSION "0.0.0"
#endif

namespace vertexflow {

namespace {

class FieldReader {
public:
    FieldReader(const TomlDocument &doc, std::string origin) : doc_(doc), origin_(std::move(origin)) {}

    [[noreturn]] void fail(const std::string &path, const std::string &msg) const
    {
        const int line = doc_.line_of(path);
        std::string where = origin_;
        if (line > 0) where += ":" + std::to_string(line);
        throw ConfigError(where + ": field '" + path + "': " + msg);
    }

    const Json *find(const std::string &path) const
    {
        const Json *node = &doc_.root;
        std::size_t start = 0;
        while (true) {
            const std::size_t dot = path.find('.', start);
            const std::string part = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
            if (!node->is_object() || !node->contains(part)) return nullptr;
            node = &(*node)[part];
            if (dot == std::string::npos) return node;
            start = dot + 1;
        }
    }

    const Json &require(const std::string &path) const
    {
        const Json *j = find(path);
        if (!j) fail(path, "is required");
        return *j;
    }

    Rational rational(const std::string &path, const Json &j) const
    {
        if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
        if (j.is_string()) {
            try {
                return parse_rational(j.get<std::string>());
            } catch (const Error &e) {
                fail(path, e.what());
            }
        }
        fail(path, "expected an integer or a \"p/q\" string");
    }

    GaussVector gauss_vector(const std::string &path, const Json &j) const
    {
        if (!j.is_array()) fail(path, "expected an array of \"p/q+r/s i\" strings");
        GaussVector out;
        for (const auto &x : j) {
            if (x.is_number_integer()) {
                out.emplace_back(Rational(static_cast<long>(x.get<long long>())));
                continue;
            }
            if (!x.is_string()) fail(path, "expected an array of \"p/q+r/s i\" strings");
            try {
                out.push_back(parse_gauss(x.get<std::string>()));
            } catch (const Error &e) {
                fail(path, e.what());
            }
        }
        return out;
    }

private:
    const TomlDocument &doc_;
    std::string origin_;
};

void check_known(const FieldReader &r, const Json &root)
{
    static const std::map<std::string, std::set<std::string>> known{
        {"lattice", {"gram"}},
        {"deformation", {"h", "sign", "extra"}},
        {"truncation", {"N", "d", "d_gen"}},
        {"run", {"suites"}},
        {"jacobi", {"h", "N", "u_max"}},
        {"vlie", {"d"}},
        {"output", {"dir"}},
    };
    for (const auto &[key, value] : root.items()) {
        if (key == "schema_version") continue;
        auto it = known.find(key);
        if (it == known.end()) r.fail(key, "unknown table");
        if (!value.is_object()) r.fail(key, "expected a table");
        for (const auto &[sub, v] : value.items()) {
            if (!it->second.count(sub)) r.fail(key + "." + sub, "unknown field");
        }
    }
}

GaussVector signed_h(const ConformalDatum &d)
{
    GaussVector h = d.h;
    for (auto &x : h) x *= GaussRational(d.sign);
    return h;
}

Status worst(Status a, Status b) { return std::max(a, b); }

Json rat(const Rational &x) { return to_pq_string(x); }

struct Setup {
    EvenLattice lattice;
    ModeEngine engine;
    ConformalDatum datum;

    explicit Setup(const RunConfig &cfg)
        : lattice(EvenLattice::validate(cfg.gram)), engine(lattice), datum(make_datum(cfg))
    {
    }

private:
    ConformalDatum make_datum(const RunConfig &cfg)
    {
        GradedVector extra;
        if (!cfg.extra.empty()) extra = graded_vector_from_json(lattice, cfg.extra);
        return deform(engine, cfg.h, cfg.sign, extra);
    }
};

Json dims_json(const EvenLattice &lattice, std::size_t coset, const Rational &N)
{
    std::map<Rational, std::size_t> dims;
    for (const auto &b : enumerate_basis(lattice, coset, N)) ++dims[l0_weight(lattice, b)];
    Json out = Json::array();
    for (const auto &[w, n] : dims) out.push_back(Json{{"weight", rat(w)}, {"dim", n}});
    return out;
}

SuiteResult suite_lattice(const RunConfig &cfg)
{
    const auto lattice = EvenLattice::validate(cfg.gram);
    SuiteResult r;
    r.name = "lattice";
    Json cosets = Json::array();
    const GaussVector zero(lattice.rank());
    for (std::size_t c = 0; c < lattice.coset_reps().size(); ++c) {
        Json rep = Json::array();
        for (const auto &x : lattice.coords(lattice.coset_reps()[c])) rep.push_back(rat(x));
        cosets.push_back(Json{{"index", c},
                              {"rep", rep},
                              {"theta", to_json(theta_series(lattice, c, zero, cfg.N))},
                              {"graded_dims", dims_json(lattice, c, cfg.N)}});
    }
    Json smith = Json::array();
    for (auto x : lattice.smith_invariants()) smith.push_back(x);
    const bool consistent = static_cast<std::int64_t>(lattice.coset_reps().size()) == lattice.det();
    r.status = consistent ? Status::Pass : Status::Fail;
    r.report = Json{{"rank", lattice.rank()}, {"gram", cfg.gram}, {"det", lattice.det()},
                    {"smith_invariants", smith}, {"cosets", cosets}};
    return r;
}

SuiteResult suite_flow(const RunConfig &cfg)
{
    Setup s(cfg);
    SuiteResult r;
    r.name = "flow";
    Json failures = Json::array();
    std::size_t tested = 0;
    for (int m = -3; m <= 3; ++m) {
        for (int n = -3; n <= 3; ++n) {
            const auto v = virasoro_check(s.engine, s.datum, m, n, cfg.N);
            ++tested;
            if (!v.ok()) {
                failures.push_back(Json{{"m", m}, {"n", n}, {"bracket", v.bracket_ok},
                                        {"shifted_modes", v.shifted_modes_ok}, {"central", v.central_ok}});
            }
        }
    }
    const GradedVector one(s.engine.vacuum());
    const GradedVector l2 = lh_mode(s.engine, s.datum, 2, lh_mode(s.engine, s.datum, -2, one));
    const GaussRational half_c = s.datum.central_charge / GaussRational(2);
    const bool central = l2 == half_c * one;
    r.status = failures.empty() && central ? Status::Pass : Status::Fail;
    r.report = Json{{"central_charge", gauss_string(s.datum.central_charge)},
                    {"alpha", gauss_string(s.datum.alpha)},
                    {"beta", gauss_string(s.datum.beta)},
                    {"cartan", s.datum.is_cartan()},
                    {"pairs_tested", tested},
                    {"failures", failures},
                    {"central_term_on_vacuum", gauss_string(half_c)},
                    {"central_term_ok", central}};
    return r;
}

SuiteResult suite_spectrum(const RunConfig &cfg)
{
    Setup s(cfg);
    SuiteResult r;
    r.name = "spectrum";
    std::vector<SpectrumReport> reports;
    Json modules = Json::array();
    for (std::size_t c = 0; c < s.lattice.coset_reps().size(); ++c) {
        reports.push_back(spectrum(s.engine, s.datum, c, cfg.N));
        const auto &rep = reports.back();
        // multiplicities must fill every level
        std::map<Rational, std::size_t> sums;
        for (const auto &e : rep.entries) sums[e.level] += e.multiplicity;
        bool levels_ok = true;
        for (const auto &[level, total] : sums) levels_ok = levels_ok && total == level_basis(s.lattice, c, level).size();
        if (!levels_ok) r.status = Status::Fail;
        Json violations = Json::array();
        for (const auto &v : rep.violations) {
            violations.push_back(Json{{"level", rat(v.level)}, {"mu", gauss_string(v.mu)}, {"mult", v.multiplicity}});
        }
        Json mod{{"module", c}, {"levels_consistent", levels_ok}, {"level_violations", violations}};
        if (s.datum.is_cartan()) {
            const auto p = pvoa_check(s.engine, s.datum, c, cfg.N);
            Json pv = Json::array();
            for (const auto &v : p.violations) pv.push_back(Json{{"mu", gauss_string(v.mu)}, {"dim", v.dim}});
            mod["pvoa"] = Json{{"cutoff", rat(p.cutoff)}, {"violations", pv}, {"stable", p.stable}};
            if (!p.violations.empty()) r.status = worst(r.status, Status::CutoffQualified);
        }
        modules.push_back(mod);
    }
    r.files["spectrum.csv"] = spectrum_csv(reports);
    r.report = Json{{"cutoff", rat(cfg.N)}, {"modules", modules}};
    return r;
}

SuiteResult suite_zhu(const RunConfig &cfg)
{
    Setup s(cfg);
    SuiteResult r;
    r.name = "zhu";
    ZhuContext ctx(s.engine, s.datum, cfg.d, cfg.d_gen);
    const auto span = ov_span(ctx);
    Json identities = Json::array();
    for (const auto &rep : congruence_suite(ctx, span)) {
        identities.push_back(to_json(rep));
        if (!rep.ok()) r.status = worst(r.status, Status::CutoffQualified);
    }
    const auto q = zhu_quotient(ctx, span);
    if (!q.unit_ok || q.associativity_passes != q.associativity_triples) {
        r.status = worst(r.status, Status::CutoffQualified);
    }
    std::vector<std::vector<GradedVector>> tops;
    Json top_json = Json::array();
    for (std::size_t c = 0; c < s.lattice.coset_reps().size(); ++c) {
        tops.push_back(module_top(ctx, c));
        Json vecs = Json::array();
        for (const auto &v : tops.back()) vecs.push_back(to_json(s.lattice, v));
        top_json.push_back(Json{{"module", c}, {"dim", tops.back().size()}, {"basis", vecs}});
    }
    const auto tr = top_rep_check(ctx, span, tops, cfg.d);
    if (!tr.ok()) r.status = Status::Fail;
    const auto probe = semisimple_probe(ctx, tops);
    if (!probe.full()) r.status = worst(r.status, Status::CutoffQualified);
    r.report = Json{{"d", rat(cfg.d)},
                    {"d_gen", rat(cfg.d_gen)},
                    {"span_rank", span.rank()},
                    {"generators", span.generators().size()},
                    {"identities", identities},
                    {"quotient", to_json(s.lattice, q)},
                    {"tops", top_json},
                    {"top_rep", Json{{"generators_tested", tr.generators_tested},
                                     {"generator_failures", tr.generator_failures},
                                     {"pairs_tested", tr.pairs_tested},
                                     {"product_failures", tr.product_failures}}},
                    {"semisimple_probe", Json{{"image_dim", probe.image_dim}, {"target_dim", probe.target_dim}}}};
    return r;
}

SuiteResult suite_vlie(const RunConfig &cfg)
{
    Setup s(cfg);
    SuiteResult r;
    r.name = "vlie";
    VLie lie(s.engine, s.datum, cfg.d_gen);
    const auto samples = bracket_samples(lie, 25, 10, 1);
    if (!samples.ok()) r.status = Status::Fail;
    const auto kernel = kernel_check(lie, cfg.vlie_d);
    if (!kernel.equal()) r.status = Status::Fail;
    ZhuContext ctx(s.engine, s.datum, cfg.d, cfg.d_gen);
    const auto span = ov_span(ctx);
    Json phi = Json::array();
    for (const auto &rep : phi_check(lie, ctx, span)) {
        phi.push_back(to_json(rep));
        if (!rep.ok()) r.status = worst(r.status, Status::CutoffQualified);
    }
    Json witness = nullptr;
    if (const auto w = non_closure_witness(lie)) {
        auto sym_json = [&](const LieElement &x) {
            Json out = Json::array();
            for (const auto &[sym, c] : x.terms()) {
                out.push_back(Json{{"vector", to_json(s.lattice, GradedVector(sym.vector)).at(0)},
                                   {"index", sym.index},
                                   {"coeff", gauss_string(c)},
                                   {"deg", gauss_string(lie.deg(sym))}});
            }
            return out;
        };
        witness = Json{{"x", sym_json(w->x)}, {"y", sym_json(w->y)}, {"bracket", sym_json(w->bracket)},
                       {"bracket_class", to_string(*w->bracket_class)}};
    }
    r.report = Json{{"d_gen", rat(cfg.d_gen)},
                    {"antisymmetry", Json{{"tested", samples.antisymmetry_tested}, {"passes", samples.antisymmetry_passes}}},
                    {"jacobi", Json{{"tested", samples.jacobi_tested}, {"passes", samples.jacobi_passes}}},
                    {"deg_additivity", Json{{"tested", samples.deg_tested}, {"passes", samples.deg_passes}}},
                    {"kernel", Json{{"d", rat(kernel.d)},
                                    {"kernel_dim", kernel.kernel_dim},
                                    {"image_dim", kernel.image_dim},
                                    {"sum_dim", kernel.sum_dim},
                                    {"equal", kernel.equal()}}},
                    {"phi", phi},
                    {"non_closure_witness", witness}};
    return r;
}

SuiteResult suite_qseries(const RunConfig &cfg)
{
    Setup s(cfg);
    SuiteResult r;
    r.name = "qseries";
    Json modules = Json::array();
    for (std::size_t c = 0; c < s.lattice.coset_reps().size(); ++c) {
        const auto f = factorization_check(s.lattice, c, s.datum, cfg.N);
        if (!f.equal) r.status = Status::Fail;
        modules.push_back(Json{{"module", c},
                               {"partition_function", to_json(partition_function(s.lattice, c, s.datum, cfg.N))},
                               {"theta", to_json(theta_series(s.lattice, c, signed_h(s.datum), cfg.N))},
                               {"factorization_equal", f.equal}});
    }
    r.report = Json{{"cutoff", rat(cfg.N)},
                    {"central_charge", gauss_string(s.datum.central_charge)},
                    {"z_m1", to_json(z_m1(s.lattice.rank(), cfg.N))},
                    {"modules", modules}};
    return r;
}

SuiteResult suite_jacobi(const RunConfig &cfg)
{
    const auto lattice = EvenLattice::validate(cfg.gram);
    SuiteResult r;
    r.name = "jacobi";
    const GaussVector h = cfg.jacobi_h ? *cfg.jacobi_h : cfg.h;
    const auto tables = jacobi_tables(lattice, h, cfg.jacobi_N);
    r.files["jacobi.csv"] = jacobi_csv(tables);
    const auto g = growth_bound(lattice, h);
    Json vanishing = Json::array();
    if (g.m > 0) {
        for (std::size_t i = 0; i < tables.size(); ++i) {
            const auto v = vanishing_bound_check(tables[i], g.m, g.d[i]);
            if (!v.ok()) r.status = Status::Fail;
            Json bad = Json::array();
            for (const auto &[n, rr] : v.counterexamples) bad.push_back(Json::array({n, rr}));
            vanishing.push_back(Json{{"module", i}, {"d_i", rat(g.d[i])}, {"entries", v.entries_tested},
                                     {"counterexamples", bad}});
        }
    }
    Json elliptic = Json::array();
    for (std::int64_t u = -cfg.jacobi_u; u <= cfg.jacobi_u; ++u) {
        const auto e = elliptic_transform_check(lattice, h, tables, u);
        if (!e.ok()) r.status = Status::Fail;
        elliptic.push_back(Json{{"u", u}, {"checked", e.checked}, {"skipped", e.skipped}, {"failures", e.failures},
                                {"permutation", e.permutation}});
    }
    Json growth = Json::array();
    if (g.m > 0) {
        for (const auto &e : hn_growth(lattice, h, cfg.jacobi_N)) {
            if (!e.ok) r.status = Status::Fail;
            growth.push_back(Json{{"n", e.n}, {"h_n", e.h_n}, {"bound", rat(e.bound)}, {"ok", e.ok}});
        }
    }
    Json s_values = Json::array();
    for (const auto &t : tables) s_values.push_back(rat(t.s));
    r.report = Json{{"order", rat(cfg.jacobi_N)}, {"m", rat(g.m)}, {"s", s_values},
                    {"vanishing", vanishing}, {"elliptic", elliptic}, {"growth", growth}};
    return r;
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot write " + path.string());
    os << content;
    if (!os) throw Error("cannot write " + path.string());
}

std::string dump(const Json &j) { return j.dump(2) + "\n"; }

Json manifest_base(const RunConfig &cfg, const std::string &command)
{
    return Json{{"schema_version", kSchemaVersion},
                {"tool", "vertexflow"},
                {"version", VERTEXFLOW_VERSION},
                {"command", command},
                {"config_hash", fnv1a_hex(cfg.source)},
                {"cutoffs", Json{{"N", rat(cfg.N)}, {"d", rat(cfg.d)}, {"d_gen", rat(cfg.d_gen)}}}};
}

} // namespace

RunConfig parse_config(const std::string &text, const std::string &origin)
{
    const TomlDocument doc = parse_toml(text);
    const FieldReader r(doc, origin);
    check_known(r, doc.root);
    RunConfig cfg;
    cfg.source = text;

    if (const Json *v = r.find("schema_version")) {
        if (!v->is_number_integer() || v->get<long long>() != kSchemaVersion) {
            r.fail("schema_version", "unsupported schema version");
        }
    }
    const Json &gram = r.require("lattice.gram");
    if (!gram.is_array() || gram.empty()) r.fail("lattice.gram", "expected a nonempty array of integer rows");
    for (const auto &row : gram) {
        if (!row.is_array()) r.fail("lattice.gram", "expected a nonempty array of integer rows");
        IntVector out;
        for (const auto &x : row) {
            if (!x.is_number_integer()) r.fail("lattice.gram", "entries must be integers");
            out.push_back(x.get<std::int64_t>());
        }
        cfg.gram.push_back(out);
    }
    const std::size_t rank = cfg.gram.size();

    if (const Json *h = r.find("deformation.h")) {
        cfg.h = r.gauss_vector("deformation.h", *h);
        if (cfg.h.size() != rank) r.fail("deformation.h", "needs one coefficient per basis vector");
    } else {
        cfg.h.assign(rank, GaussRational(0));
    }
    if (const Json *s = r.find("deformation.sign")) {
        if (!s->is_number_integer() || (s->get<long long>() != 1 && s->get<long long>() != -1)) {
            r.fail("deformation.sign", "must be 1 or -1");
        }
        cfg.sign = static_cast<int>(s->get<long long>());
    }
    if (const Json *e = r.find("deformation.extra")) {
        if (!e->is_array()) r.fail("deformation.extra", "expected an array of graded vector terms");
        cfg.extra = *e;
    }
    if (const Json *n = r.find("truncation.N")) cfg.N = r.rational("truncation.N", *n);
    if (cfg.N < 0) r.fail("truncation.N", "must be nonnegative");
    if (const Json *d = r.find("truncation.d")) cfg.d = r.rational("truncation.d", *d);
    if (cfg.d < 0) r.fail("truncation.d", "must be nonnegative");
    cfg.d_gen = cfg.d + 4;
    if (const Json *d = r.find("truncation.d_gen")) cfg.d_gen = r.rational("truncation.d_gen", *d);
    if (cfg.d_gen < cfg.d) r.fail("truncation.d_gen", "must be at least truncation.d");

    if (const Json *s = r.find("run.suites")) {
        if (!s->is_array()) r.fail("run.suites", "expected an array of suite names");
        cfg.suites.clear();
        for (const auto &x : *s) {
            if (!x.is_string() || std::find(kSuites.begin(), kSuites.end(), x.get<std::string>()) == kSuites.end()) {
                r.fail("run.suites", "unknown suite " + x.dump());
            }
            cfg.suites.push_back(x.get<std::string>());
        }
    }
    if (const Json *h = r.find("jacobi.h")) {
        cfg.jacobi_h = r.gauss_vector("jacobi.h", *h);
        if (cfg.jacobi_h->size() != rank) r.fail("jacobi.h", "needs one coefficient per basis vector");
    }
    cfg.jacobi_N = cfg.N;
    if (const Json *n = r.find("jacobi.N")) cfg.jacobi_N = r.rational("jacobi.N", *n);
    if (const Json *u = r.find("jacobi.u_max")) {
        if (!u->is_number_integer() || u->get<long long>() < 0) r.fail("jacobi.u_max", "must be a nonnegative integer");
        cfg.jacobi_u = u->get<long long>();
    }
    if (const Json *d = r.find("vlie.d")) cfg.vlie_d = r.rational("vlie.d", *d);
    if (cfg.vlie_d > cfg.d_gen) r.fail("vlie.d", "must not exceed truncation.d_gen");
    if (const Json *o = r.find("output.dir")) {
        if (!o->is_string()) r.fail("output.dir", "expected a string");
        cfg.out_dir = o->get<std::string>();
    }
    return cfg;
}

RunConfig load_config(const std::string &path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError(path + ": cannot read config");
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str(), path);
}

std::string to_string(Status s)
{
    switch (s) {
    case Status::Pass: return "pass";
    case Status::CutoffQualified: return "cutoff_qualified_pass";
    case Status::Fail: return "fail";
    }
    return "";
}

SuiteResult run_suite(const std::string &name, const RunConfig &cfg)
{
    SuiteResult r;
    if (name == "lattice") r = suite_lattice(cfg);
    else if (name == "flow") r = suite_flow(cfg);
    else if (name == "spectrum") r = suite_spectrum(cfg);
    else if (name == "zhu") r = suite_zhu(cfg);
    else if (name == "vlie") r = suite_vlie(cfg);
    else if (name == "qseries") r = suite_qseries(cfg);
    else if (name == "jacobi") r = suite_jacobi(cfg);
    else throw ConfigError("unknown subcommand '" + name + "'");
    Json report{{"schema_version", kSchemaVersion}, {"suite", r.name}, {"status", to_string(r.status)}};
    report.update(r.report);
    r.report = std::move(report);
    r.files[name + ".json"] = dump(r.report);
    return r;
}

int run(const std::string &subcommand, const RunConfig &cfg, const std::string &out_dir, bool parallel,
        std::ostream &err)
{
    std::vector<std::string> names;
    if (subcommand == "verify-all") {
        names = cfg.suites;
    } else {
        names = {subcommand};
    }
    std::vector<SuiteResult> results;
    try {
        if (parallel) {
            std::vector<std::future<SuiteResult>> jobs;
            for (const auto &n : names) jobs.push_back(std::async(std::launch::async, run_suite, n, std::cref(cfg)));
            for (auto &j : jobs) results.push_back(j.get());
        } else {
            for (const auto &n : names) results.push_back(run_suite(n, cfg));
        }
    } catch (const LatticeError &e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return 1;
    } catch (const Unsatisfiable &e) {
        err << "error: Unsatisfiable: " << e.what() << "\n";
        return 1;
    } catch (const NonIntegralSpectrum &e) {
        err << "error: Unsatisfiable: NonIntegralSpectrum: " << e.what() << "\n";
        return 1;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    return write_reports(subcommand, cfg, results, out_dir);
}

int write_reports(const std::string &command, const RunConfig &cfg, const std::vector<SuiteResult> &results,
                  const std::string &out_dir)
{
    Json manifest = manifest_base(cfg, command);
    Json suites = Json::array();
    int code = 0;
    const std::filesystem::path root(out_dir);
    for (const auto &r : results) {
        Json files = Json::array();
        for (const auto &[name, content] : r.files) {
            write_file(root / name, content);
            files.push_back(name);
        }
        suites.push_back(Json{{"name", r.name}, {"status", to_string(r.status)}, {"files", files}});
        if (r.status == Status::Fail) code = 2;
    }
    manifest["suites"] = suites;
    write_file(root / "manifest.json", dump(manifest));
    return code;
}

int export_goldens(const RunConfig &cfg, const std::string &out_dir, std::ostream &err)
{
    try {
        std::map<std::string, std::string> files;
        const bool any = !cfg.suites.empty();
        if (!any) return 0;
        Setup s(cfg);
        const GaussVector zero(s.lattice.rank());
        auto wants = [&](const char *name) {
            return std::find(cfg.suites.begin(), cfg.suites.end(), name) != cfg.suites.end();
        };
        for (std::size_t c = 0; c < s.lattice.coset_reps().size(); ++c) {
            const std::string tag = std::to_string(c);
            if (wants("lattice")) {
                files["theta_" + tag + ".json"] = dump(to_json(theta_series(s.lattice, c, zero, cfg.N)));
                files["dims_" + tag + ".json"] = dump(dims_json(s.lattice, c, cfg.N));
            }
            if (wants("qseries") && s.datum.is_cartan()) {
                files["partition_" + tag + ".json"] = dump(to_json(partition_function(s.lattice, c, s.datum, cfg.N)));
            }
        }
        if (wants("spectrum")) {
            std::vector<SpectrumReport> reports;
            for (std::size_t c = 0; c < s.lattice.coset_reps().size(); ++c) {
                reports.push_back(spectrum(s.engine, s.datum, c, cfg.N));
            }
            files["spectrum.csv"] = spectrum_csv(reports);
        }
        if (files.empty()) return 0;
        Json manifest = manifest_base(cfg, "export-goldens");
        Json list = Json::array();
        for (const auto &[name, content] : files) {
            write_file(std::filesystem::path(out_dir) / name, content);
            list.push_back(name);
        }
        manifest["files"] = list;
        write_file(std::filesystem::path(out_dir) / "manifest.json", dump(manifest));
        return 0;
    } catch (const LatticeError &e) {
        err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return 1;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cli_main(int argc, char **argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Exact computations for lattice vertex algebras under conformal deformation"};
    app.require_subcommand(1, 1);
    std::string config_path, out_dir;
    bool parallel = false;
    std::vector<std::string> commands = kSuites;
    commands.push_back("verify-all");
    commands.push_back("export-goldens");
    for (const auto &name : commands) {
        auto *sub = app.add_subcommand(name, "run " + name);
        sub->add_option("--config", config_path, "TOML config")->required();
        sub->add_option("--out", out_dir, "output directory (defaults to output.dir)");
        sub->add_flag("--parallel", parallel, "run independent suites concurrently");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return 1;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    RunConfig cfg;
    try {
        cfg = load_config(config_path);
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    if (out_dir.empty()) out_dir = cfg.out_dir;
    if (command == "export-goldens") return export_goldens(cfg, out_dir, err);
    const int code = run(command, cfg, out_dir, parallel, err);
    if (code != 1) out << command << ": " << (code == 0 ? "ok" : "definitive failure") << " (" << out_dir << ")\n";
    return code;
}

} // namespace vertexflow
