#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <vertexflow/fock.hpp>
#include <vertexflow/linalg.hpp>

namespace vertexflow {

// Deformed conformal structure omega_h = omega + sign * T h for h in V_1.
struct ConformalDatum {
    GaussVector h;       // Cartan part, coefficients of b_1..b_k
    GradedVector extra;  // optional non-Cartan part of h, homogeneous of L(0)-weight 1
    int sign = 1;
    GradedVector omega;  // the deformed vector
    GaussRational central_charge;
    GaussRational alpha; // h(1)h = alpha 1
    GaussRational beta;  // L(1)h = beta 1

    bool is_cartan() const { return extra.is_zero(); }
};

// Throws NotWeightOne when `extra` has a component outside L(0)-weight 1.
ConformalDatum deform(ModeEngine &engine, const GaussVector &h, int sign = 1, const GradedVector &extra = {});

// h as a vector of V_1.
GradedVector h_state(const ModeEngine &engine, const ConformalDatum &d);

// L_h(0)-eigenvalue of a basis vector; Cartan data only.
GaussRational lh_weight(const EvenLattice &lattice, const ConformalDatum &d, const BasisVector &b);

// L_h(n) v = L(n) v - sign (n+1) h(n) v
GradedVector lh_mode(ModeEngine &engine, const ConformalDatum &d, std::int64_t n, const GradedVector &v);

struct VirasoroResult {
    bool bracket_ok = true;
    bool shifted_modes_ok = true; // omega_h(n+1) == L(n) - sign (n+1) h(n)
    bool central_ok = true;       // only meaningful for m + n == 0
    std::size_t vectors_tested = 0;
    bool ok() const { return bracket_ok && shifted_modes_ok && central_ok; }
};

// [L_h(m), L_h(n)] = (m-n) L_h(m+n) + (m^3-m)/12 delta c_h on every basis vector of V_L with
// L(0)-weight <= N - max(|m|,|n|). For m + n == 0 the central term on 1 is checked separately.
VirasoroResult virasoro_check(ModeEngine &engine, const ConformalDatum &d, std::int64_t m, std::int64_t n,
                              const Rational &N);

struct SpectrumEntry {
    Rational level; // L(0)-level
    GaussRational mu;
    std::size_t multiplicity = 0;
    std::size_t jordan_max = 0;
};

struct SpectrumReport {
    std::size_t coset = 0;
    Rational cutoff;
    std::vector<SpectrumEntry> entries;    // sorted by level, then mu
    std::vector<SpectrumEntry> violations; // entries with Re(mu) < |Im(mu)|
};

bool violates_sector(const GaussRational &mu);

// Generalized L_h(0)-eigenspaces on every L(0)-level <= N of the module on `coset`.
SpectrumReport spectrum(ModeEngine &engine, const ConformalDatum &d, std::size_t coset, const Rational &N);

struct EigenspaceDim {
    GaussRational mu;
    std::size_t dim = 0;
};

struct PvoaReport {
    std::size_t coset = 0;
    Rational cutoff;
    std::vector<EigenspaceDim> eigenspaces; // all mu with Re(mu) <= cutoff, sorted
    std::vector<EigenspaceDim> violations;
    bool stable = true;         // eigenspace dimensions unchanged when the cutoff is raised
    bool cutoff_qualified = true;
};

PvoaReport pvoa_check(ModeEngine &engine, const ConformalDatum &d, std::size_t coset, const Rational &N);

// Homogeneous lowest weight vectors with Re(weight) <= N, one basis per eigenvalue.
// Only generator modes (b_i(-1)1, e^{+-b_i}) are tested; a pass is cutoff-qualified.
struct LowestWeightSpace {
    GaussRational mu;
    std::vector<GradedVector> vectors;
};
std::vector<LowestWeightSpace> lowest_weight_vectors(ModeEngine &engine, const ConformalDatum &d, std::size_t coset,
                                                     const Rational &N);
// Whether the L_h(0)-homogeneous v passes the lowest weight test.
bool is_lowest_weight(ModeEngine &engine, const ConformalDatum &d, const GradedVector &v, const GaussRational &mu);

struct CGradedResult {
    std::size_t pairs_tested = 0;
    std::size_t failures = 0;
    bool ok() const { return failures == 0; }
};
// a(n)b homogeneous of weight |a|_h + |b|_h - n - 1 on all pairs from `samples`.
CGradedResult cgraded_check(ModeEngine &engine, const ConformalDatum &d, const std::vector<BasisVector> &samples,
                            std::int64_t nmin, std::int64_t nmax);

// Per-level Jordan-Chevalley split of h_full(0).
struct JordanLevel {
    Rational level;
    std::vector<BasisVector> basis;
    Matrix full;
    Matrix semisimple;
    Matrix nilpotent;
};
std::vector<JordanLevel> jordan_split_h0(ModeEngine &engine, const GradedVector &h_full, std::size_t coset,
                                         const Rational &N);

// Basis vectors of the module on `coset` with L(0)-weight exactly `level`.
std::vector<BasisVector> level_basis(const EvenLattice &lattice, std::size_t coset, const Rational &level);
// L(0)-levels <= N present in the module.
std::vector<Rational> levels_up_to(const EvenLattice &lattice, std::size_t coset, const Rational &N);

// Matrix of a linear map on span(basis); images must stay inside the span.
Matrix operator_matrix(const std::vector<BasisVector> &basis,
                       const std::function<GradedVector(const GradedVector &)> &op);

struct GeneralizedEigen {
    GaussRational mu;
    std::size_t multiplicity = 0;
    std::size_t jordan_max = 0;
    std::vector<std::vector<GaussRational>> basis; // generalized eigenvectors
};
// Throws Error if the eigenvalues are not all found among the
// diagonal entries (the matrices met here are triangular in a suitable order).
std::vector<GeneralizedEigen> generalized_eigenspaces(const Matrix &m);

} // namespace vertexflow
