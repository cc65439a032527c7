#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <vertexflow/cli.hpp>
#include <vertexflow/errors.hpp>

using namespace vertexflow;
namespace fs = std::filesystem;

namespace {

const std::string kConfigs = VF_CONFIG_DIR;

fs::path scratch(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / ("vertexflow_test_" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path &p)
{
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::map<std::string, std::string> tree(const fs::path &root)
{
    std::map<std::string, std::string> out;
    for (const auto &e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) out[fs::relative(e.path(), root).string()] = slurp(e.path());
    }
    return out;
}

fs::path write_config(const std::string &name, const std::string &text)
{
    const fs::path p = fs::temp_directory_path() / ("vertexflow_cfg_" + name + ".toml");
    std::ofstream(p, std::ios::binary) << text;
    return p;
}

struct Invocation {
    int code;
    std::string out, err;
};

Invocation invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "vertexflow");
    std::vector<char *> argv;
    for (auto &a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string config_error(const std::string &text)
{
    try {
        parse_config(text, "cfg.toml");
    } catch (const ConfigError &e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("toml subset")
{
    const auto doc = parse_toml(R"(# comment
title = "x # not a comment"
n = -3
f = 1.5
flag = true
[a.b]
list = [1,
        2, # trailing
        3,]
"quoted key" = 'lit\eral'
inline = { p = 1, q = "s" }
[c]
nested = [[1, 2], [3]]
)");
    const auto &r = doc.root;
    CHECK(r["title"] == "x # not a comment");
    CHECK(r["n"] == -3);
    CHECK(r["f"] == 1.5);
    CHECK(r["flag"] == true);
    CHECK(r["a"]["b"]["list"] == Json::array({1, 2, 3}));
    CHECK(r["a"]["b"]["quoted key"] == "lit\\eral");
    CHECK(r["a"]["b"]["inline"]["q"] == "s");
    CHECK(r["c"]["nested"][1] == Json::array({3}));
    CHECK(doc.line_of("n") == 3);
    CHECK(doc.line_of("a.b.list") == 7);
    CHECK(doc.line_of("c.nested") == 13);

    for (const char *bad : {"x = ", "x = [1, 2", "[t\nx=1", "x = 1\nx = 2", "x = \"open", "= 3", "x = 1 2"}) {
        INFO(bad);
        CHECK_THROWS_AS(parse_toml(bad), ConfigError);
    }
    try {
        parse_toml("a = 1\nb = 2\nc = @");
        FAIL("expected a parse error");
    } catch (const ConfigError &e) {
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("config validation names line and field")
{
    const auto cfg = parse_config("[lattice]\ngram = [[2]]\n[deformation]\nh = [\"1/2+1/3 i\"]\n[truncation]\nd = \"3/2\"\n");
    CHECK(cfg.h == GaussVector{GaussRational(Rational(1, 2), Rational(1, 3))});
    CHECK(cfg.d == Rational(3, 2));
    CHECK(cfg.d_gen == Rational(11, 2));
    CHECK(cfg.N == 6);
    CHECK(cfg.suites == kSuites);

    const auto missing = config_error("[deformation]\nh = [\"1\"]\n");
    CHECK(missing.find("lattice.gram") != std::string::npos);
    const auto rank = config_error("[lattice]\ngram = [[2]]\n[deformation]\nh = [\"1\", \"2\"]\n");
    CHECK(rank.find("cfg.toml:4") != std::string::npos);
    CHECK(rank.find("deformation.h") != std::string::npos);
    const auto gauss = config_error("[lattice]\ngram = [[2]]\n[deformation]\nh = [\"1/0\"]\n");
    CHECK(gauss.find("deformation.h") != std::string::npos);
    const auto suite = config_error("[lattice]\ngram = [[2]]\n[run]\nsuites = [\"nope\"]\n");
    CHECK(suite.find("run.suites") != std::string::npos);
    CHECK(config_error("[lattice]\ngram = [[2]]\nextra = 1\n").find("lattice.extra") != std::string::npos);
    CHECK(config_error("[lattice]\ngram = [[2]]\n[deformation]\nsign = 2\n").find("deformation.sign") != std::string::npos);
    CHECK(config_error("schema_version = 9\n[lattice]\ngram = [[2]]\n").find("schema_version") != std::string::npos);
    CHECK(config_error("[lattice]\ngram = [[2]]\n[truncation]\nd = 3\nd_gen = 2\n").find("truncation.d_gen") !=
          std::string::npos);
    CHECK(config_error("[lattice]\ngram = [[2.5]]\n").find("lattice.gram") != std::string::npos);
}

TEST_CASE("serialization round trips")
{
    QSeries s(Rational(3), GaussRational(Rational(-1, 24)));
    s.add_term(GaussRational(0), GaussRational(1));
    s.add_term(GaussRational(Rational(1), Rational(-1, 2)), GaussRational(Rational(2, 3), Rational(5)));
    const Json j = to_json(s);
    CHECK(j[0]["re_exp"] == "-1/24");
    CHECK(j[1]["im_coeff"] == "5/1");
    const auto back = qseries_from_json(j, Rational(3) + Rational(-1, 24));
    CHECK(equal_up_to(back, s.rebased(GaussRational(0))));
    CHECK(to_json(back) == j);

    const auto a1 = EvenLattice::validate({{2}});
    ModeEngine e(a1);
    GradedVector v = e.exp_vector({1});
    v.add(BasisVector{FockMonomial({FockFactor{2, 0}, FockFactor{1, 0}}), LatticePoint{{1}}},
          GaussRational(Rational(-3, 4), Rational(1)));
    const Json vj = to_json(a1, v);
    CHECK(graded_vector_from_json(a1, vj) == v);
    CHECK(to_json(a1, graded_vector_from_json(a1, vj)) == vj);
    CHECK_THROWS_AS(graded_vector_from_json(a1, Json::parse(R"([{"fock": [[0, 1]], "point": ["0"], "coeff": "1"}])")),
                    ConfigError);

    CHECK(gauss_string(GaussRational(Rational(1, 2), Rational(-1, 3))) == "1/2-1/3 i");
    CHECK(parse_gauss(gauss_string(GaussRational(Rational(0), Rational(7, 5)))) == GaussRational(Rational(0), Rational(7, 5)));
    CHECK(fnv1a_hex("") == "cbf29ce484222325");
    CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("exit code matrix")
{
    const auto out = scratch("matrix");
    auto run_cfg = [&](const std::string &cmd, const std::string &cfg) {
        return invoke({cmd, "--config", cfg, "--out", (out / cmd).string()});
    };
    const std::string half = kConfigs + "/a1_half.toml";

    const auto all = run_cfg("verify-all", half);
    CHECK(all.code == 0);
    const Json manifest = Json::parse(slurp(out / "verify-all" / "manifest.json"));
    CHECK(manifest["schema_version"] == 1);
    CHECK(manifest["config_hash"] == fnv1a_hex(slurp(half)));
    CHECK(manifest["cutoffs"]["d_gen"] == "6/1");
    REQUIRE(manifest["suites"].size() == kSuites.size());
    for (std::size_t i = 0; i < kSuites.size(); ++i) {
        CHECK(manifest["suites"][i]["name"] == kSuites[i]);
        CHECK(manifest["suites"][i]["status"] != "fail");
        for (const auto &f : manifest["suites"][i]["files"]) CHECK(fs::exists(out / "verify-all" / f.get<std::string>()));
    }

    const auto odd = run_cfg("lattice", kConfigs + "/invalid_odd.toml");
    CHECK(odd.code == 1);
    CHECK(odd.err.find("NotEven") != std::string::npos);
    const auto jac = run_cfg("jacobi", kConfigs + "/invalid_jacobi.toml");
    CHECK(jac.code == 1);
    CHECK(jac.err.find("Unsatisfiable") != std::string::npos);

    CHECK(invoke({"verify-all"}).code == 1);
    CHECK(invoke({"frobnicate", "--config", half}).code == 1);
    CHECK(invoke({"lattice", "--config", "/nonexistent/x.toml"}).code == 1);
    const auto bad = write_config("bad", "[lattice]\ngram = [[2]]\n[truncation]\nN = \"x\"\n");
    const auto diag = invoke({"lattice", "--config", bad.string()});
    CHECK(diag.code == 1);
    CHECK(diag.err.find("truncation.N") != std::string::npos);
    CHECK(diag.err.find(":4") != std::string::npos);

    for (const auto &suite : kSuites) {
        INFO(suite);
        CHECK(run_cfg(suite, kConfigs + "/a1_zero.toml").code == 0);
    }
}

TEST_CASE("definitive failure gives exit 2")
{
    RunConfig cfg = parse_config(slurp(kConfigs + "/a1_zero.toml"));
    auto good = run_suite("lattice", cfg);
    CHECK(good.status == Status::Pass);
    auto qualified = good;
    qualified.name = "qualified";
    qualified.status = Status::CutoffQualified;
    auto failed = good;
    failed.name = "failed";
    failed.status = Status::Fail;
    const auto out = scratch("exit2");
    CHECK(write_reports("verify-all", cfg, {good, qualified}, out.string()) == 0);
    CHECK(write_reports("verify-all", cfg, {good, failed, qualified}, out.string()) == 2);
    const Json manifest = Json::parse(slurp(out / "manifest.json"));
    CHECK(manifest["suites"][1]["status"] == "fail");
    CHECK(manifest["suites"][2]["status"] == "cutoff_qualified_pass");
}

TEST_CASE("reports are byte identical across runs")
{
    const std::string cfg = kConfigs + "/a1_complex.toml";
    const auto a = scratch("det_a"), b = scratch("det_b"), c = scratch("det_c");
    CHECK(invoke({"verify-all", "--config", cfg, "--out", a.string()}).code == 0);
    CHECK(invoke({"verify-all", "--config", cfg, "--out", b.string()}).code == 0);
    CHECK(invoke({"verify-all", "--config", cfg, "--out", c.string(), "--parallel"}).code == 0);
    const auto ta = tree(a);
    CHECK(ta.size() >= 7);
    CHECK(ta == tree(b));
    CHECK(ta == tree(c));
}

TEST_CASE("goldens")
{
    const auto cfg = write_config("goldens", R"([lattice]
gram = [[2]]
[deformation]
h = ["1/2 i"]
[truncation]
N = 6
[run]
suites = ["lattice", "spectrum", "qseries"]
)");
    const auto g1 = scratch("gold1"), g2 = scratch("gold2");
    CHECK(invoke({"export-goldens", "--config", cfg.string(), "--out", g1.string()}).code == 0);
    CHECK(invoke({"export-goldens", "--config", cfg.string(), "--out", g2.string()}).code == 0);
    CHECK(tree(g1) == tree(g2));

    // theta of A1: sum over n of q^{n^2}
    const auto theta = qseries_from_json(Json::parse(slurp(g1 / "theta_0.json")), Rational(6));
    CHECK(theta.terms().size() == 3);
    CHECK(theta.coeff(GaussRational(0)) == GaussRational(1));
    CHECK(theta.coeff(GaussRational(1)) == GaussRational(2));
    CHECK(theta.coeff(GaussRational(4)) == GaussRational(2));
    const auto dims1 = Json::parse(slurp(g1 / "dims_1.json"));
    CHECK(dims1[0]["weight"] == "1/4");
    CHECK(dims1[0]["dim"] == 2);

    // e^{+-alpha} at 1 -+ i, and the sector condition holds on the vacuum module
    const auto csv = slurp(g1 / "spectrum.csv");
    CHECK(csv.rfind("module,level,re_mu,im_mu,mult,jordan_max\n", 0) == 0);
    CHECK(csv.find("\n0,1/1,1/1,-1/1,1,1\n") != std::string::npos);
    CHECK(csv.find("\n0,1/1,1/1,1/1,1,1\n") != std::string::npos);
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        if (line[0] != '0') continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        for (std::string x; std::getline(ls, x, ',');) f.push_back(x);
        const Rational re = parse_rational(f[2]), im = parse_rational(f[3]);
        CHECK(re >= abs(im));
    }

    const auto empty = write_config("empty", "[lattice]\ngram = [[2]]\n[run]\nsuites = []\n");
    const auto g3 = scratch("gold3");
    CHECK(invoke({"export-goldens", "--config", empty.string(), "--out", g3.string()}).code == 0);
    CHECK(!fs::exists(g3));
}
