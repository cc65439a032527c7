#pragma once

#include <map>
#include <vector>

#include <vertexflow/flow.hpp>
#include <vertexflow/qseries.hpp>

namespace vertexflow {

// q^{-k/24} prod_{m >= 1} (1 - q^m)^{-k}, through order N (relative to the offset).
QSeries z_m1(std::size_t k, const Rational &N);

// Tr_M q^{L_h(0) - c_h/24} on the module of `coset`, through Re(L_h(0)) <= N.
QSeries partition_function(const EvenLattice &lattice, std::size_t coset, const ConformalDatum &d, const Rational &N);

struct FactorizationResult {
    QSeries lhs, rhs; // both with offset -k/24
    bool equal = false;
};
// q^{(c_h - k)/24 + <h,h>/2} Z compared with z_m1 * theta_{L - h - lambda}.
FactorizationResult factorization_check(const EvenLattice &lattice, std::size_t coset, const ConformalDatum &d,
                                        const Rational &N);

struct JacobiCoeffs {
    std::size_t module = 0;
    Rational lambda;  // lowest L(0)-weight of the module
    Rational s;       // -k/24 + lambda
    Rational order;   // levels n <= order
    std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> table; // (n, r) -> c(n, r), nonzero only

    std::int64_t at(std::int64_t n, std::int64_t r) const
    {
        auto it = table.find({n, r});
        return it == table.end() ? 0 : it->second;
    }
};

// Throws NonIntegralSpectrum unless h(0) has integer eigenvalues on the module.
JacobiCoeffs jacobi_coeffs(const EvenLattice &lattice, std::size_t coset, const GaussVector &h, const Rational &N);
std::vector<JacobiCoeffs> jacobi_tables(const EvenLattice &lattice, const GaussVector &h, const Rational &N);

struct GrowthBound {
    Rational m;                // <h,h>/2
    std::vector<Rational> d;   // d_i = max_j |s_i - s_j|
};
GrowthBound growth_bound(const EvenLattice &lattice, const GaussVector &h);

struct VanishingReport {
    std::size_t module = 0;
    std::size_t entries_tested = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> counterexamples;
    bool ok() const { return counterexamples.empty(); }
};
// c(n, r) = 0 whenever r^2 > m^2 + 4m(n + d_i). Requires m > 0.
VanishingReport vanishing_bound_check(const JacobiCoeffs &jc, const Rational &m, const Rational &d_i);

struct EllipticReport {
    std::int64_t u = 0;
    std::size_t checked = 0;
    std::size_t skipped = 0; // transformed level above the table order
    std::size_t failures = 0;
    std::vector<std::size_t> permutation; // i -> i'
    bool ok() const { return failures == 0; }
};
// c^{i'}(n + ru + mu^2 + s_i - s_{i'}, r + 2um) = c^i(n, r) with i' the coset of lambda_i + u h,
// checked on every nonzero entry of every table in both directions.
EllipticReport elliptic_transform_check(const EvenLattice &lattice, const GaussVector &h,
                                        const std::vector<JacobiCoeffs> &tables, std::int64_t u);

struct GrowthEntry {
    std::int64_t n = 0;
    std::int64_t h_n = 0;
    Rational bound;
    bool ok = false;
};
// h^n = max |r| with c^1(n, r) != 0, against (h^n)^2 <= 4mn + m^2 + 4m d_1.
std::vector<GrowthEntry> hn_growth(const EvenLattice &lattice, const GaussVector &h, const Rational &N);

} // namespace vertexflow
