#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include <vertexflow/flow.hpp>
#include <vertexflow/jacobi.hpp>
#include <vertexflow/qseries.hpp>
#include <vertexflow/zhu.hpp>

namespace vertexflow {

using Json = nlohmann::ordered_json;

// Parsed TOML document plus the source line of every key (dotted path).
struct TomlDocument {
    Json root = Json::object();
    std::map<std::string, int> lines;

    int line_of(const std::string &path) const;
};

// Subset of TOML: comments, [tables] (dotted), key = value with bare or quoted keys,
// basic and literal strings, integers, floats, booleans, arrays (may span lines) and
// inline tables. Throws ConfigError("line N: ...").
TomlDocument parse_toml(const std::string &text);

Json to_json(const QSeries &s); // offset folded into each exponent
QSeries qseries_from_json(const Json &j, const Rational &order);

// [{"fock": [[mode, index from 1], ...], "point": ["p/q", ...], "coeff": "p/q+r/s i"}, ...]
Json to_json(const EvenLattice &lattice, const GradedVector &v);
GradedVector graded_vector_from_json(const EvenLattice &lattice, const Json &j);

std::string gauss_string(const GaussRational &z);

std::string spectrum_csv(const std::vector<SpectrumReport> &reports);
std::string jacobi_csv(const std::vector<JacobiCoeffs> &tables);

Json to_json(const IdentityReport &r);
Json to_json(const EvenLattice &lattice, const ZhuQuotient &q);

// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(const std::string &bytes);

} // namespace vertexflow
