#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <vertexflow/io.hpp>

namespace vertexflow {

inline constexpr int kSchemaVersion = 1;
inline const std::vector<std::string> kSuites{"lattice", "flow", "spectrum", "zhu", "vlie", "qseries", "jacobi"};

struct RunConfig {
    IntMatrix gram;
    GaussVector h;
    Json extra = Json::array(); // non-Cartan part of h as a serialized graded vector
    int sign = 1;
    Rational N{6};
    Rational d{2};
    Rational d_gen{6};
    std::vector<std::string> suites = kSuites; // used by verify-all and export-goldens
    std::optional<GaussVector> jacobi_h;
    Rational jacobi_N{6};
    std::int64_t jacobi_u = 2;
    Rational vlie_d{3};
    std::string out_dir = "out";
    std::string source; // raw text, hashed into the manifest
};

// Parse and validate; every failure is a ConfigError naming the line and field.
RunConfig parse_config(const std::string &text, const std::string &origin = "config");
RunConfig load_config(const std::string &path);

enum class Status { Pass, CutoffQualified, Fail };
std::string to_string(Status s);

struct SuiteResult {
    std::string name;
    Status status = Status::Pass;
    Json report;
    std::map<std::string, std::string> files; // relative path -> content
};

SuiteResult run_suite(const std::string &name, const RunConfig &cfg);

// Writes every suite's files plus manifest.json; returns 2 if any suite failed, else 0.
int write_reports(const std::string &command, const RunConfig &cfg, const std::vector<SuiteResult> &results,
                  const std::string &out_dir);

// Runs one subcommand (a suite name or "verify-all") and writes reports plus manifest.json
// into out_dir. Library errors become exit code 1 with a diagnostic on `err`.
int run(const std::string &subcommand, const RunConfig &cfg, const std::string &out_dir, bool parallel,
        std::ostream &err);

// Canonical regression files for the configured suites under out_dir; nothing is written
// when no suite is selected.
int export_goldens(const RunConfig &cfg, const std::string &out_dir, std::ostream &err);

// Entry point shared by the executable and the tests.
int cli_main(int argc, char **argv, std::ostream &out, std::ostream &err);

} // namespace vertexflow
