#pragma once

#include <cstdint>
#include <vector>

#include <vertexflow/gauss_rational.hpp>
#include <vertexflow/qseries.hpp>

namespace vertexflow {

using IntVector = std::vector<std::int64_t>;
using IntMatrix = std::vector<IntVector>;
using RatVector = std::vector<Rational>;
using GaussVector = std::vector<GaussRational>;

// A point of the dual lattice in basis coordinates, stored as integer numerators over
// the lattice-wide denominator |det G|. Every vector of L° has this form.
struct LatticePoint {
    IntVector num;

    friend auto operator<=>(const LatticePoint &, const LatticePoint &) = default;
    bool is_zero() const;
};

struct CosetVector {
    LatticePoint point;
    std::size_t coset_label = 0;
};

struct Cocycle {
    // basis[i][j] = eps(b_i, b_j) in {+1, -1}
    std::vector<std::vector<int>> basis;
};

// Even positive-definite lattice given by its Gram matrix in a fixed basis b_1..b_k.
class EvenLattice {
public:
    // Throws LatticeError (NotSquare, NotSymmetric, NotEven, NotPositiveDefinite).
    static EvenLattice validate(const IntMatrix &gram);

    std::size_t rank() const noexcept { return gram_.size(); }
    const IntMatrix &gram() const noexcept { return gram_; }
    std::int64_t det() const noexcept { return det_; }
    const std::vector<RatVector> &gram_inverse() const noexcept { return gram_inv_; }
    const Cocycle &cocycle() const noexcept { return cocycle_; }

    // Denominator shared by all LatticePoint numerators.
    std::int64_t denom() const noexcept { return det_; }

    LatticePoint point(const RatVector &coords) const;
    LatticePoint point_from_ints(const IntVector &coords) const;
    RatVector coords(const LatticePoint &p) const;
    bool is_lattice_vector(const LatticePoint &p) const;
    // Integer coordinates; throws LatticeError(NonIntegerVector) otherwise.
    IntVector integer_coords(const LatticePoint &p) const;
    LatticePoint add(const LatticePoint &a, const LatticePoint &b) const;
    LatticePoint negate(const LatticePoint &a) const;

    Rational pair(const LatticePoint &a, const LatticePoint &b) const;
    Rational norm2(const LatticePoint &a) const { return pair(a, a); } // <a,a>
    // <h, p> for h = sum_i c_i b_i with complex coefficients.
    GaussRational pair(const GaussVector &h, const LatticePoint &p) const;
    GaussRational pair(const GaussVector &h, const GaussVector &g) const;
    // (G x)_i, the pairing of b_i with p.
    Rational pair_basis(std::size_t i, const LatticePoint &p) const;

    // Canonical representatives of L°/L with coordinates in [0,1); index 0 is the zero coset.
    const std::vector<LatticePoint> &coset_reps() const noexcept { return reps_; }
    std::size_t coset_of(const LatticePoint &p) const;
    // Smith invariants d_1 | d_2 | ... of G (diagonal of its Smith normal form).
    const IntVector &smith_invariants() const noexcept { return smith_; }

private:
    IntMatrix gram_;
    std::int64_t det_ = 1;
    std::vector<RatVector> gram_inv_;
    Cocycle cocycle_;
    std::vector<LatticePoint> reps_;
    IntVector smith_;
};

struct SmithForm {
    IntMatrix d; // U * A * V
    IntMatrix u;
    IntMatrix v;
};

SmithForm smith_normal_form(const IntMatrix &a);

// eps(alpha, beta) for integer vectors, bilinear extension of the basis table
// eps(b_i,b_j) = (-1)^{<b_i,b_j>} for i > j and 1 otherwise.
int cocycle_eval(const Cocycle &c, const IntVector &alpha, const IntVector &beta);
Cocycle make_cocycle(const IntMatrix &gram);

std::vector<CosetVector> discriminant_cosets(const EvenLattice &lattice);

// All points x of the coset with (x - c)^T G (x - c) / 2 <= radius, sorted by that
// value, then coordinates. Uses a Cauchy-Schwarz box around the real center c.
std::vector<LatticePoint> points_in_ellipsoid(const EvenLattice &lattice, std::size_t coset,
                                              const RatVector &center, const Rational &radius);

// All alpha in the coset with <alpha,alpha>/2 <= bound.
std::vector<CosetVector> vectors_up_to(const EvenLattice &lattice, std::size_t coset, const Rational &bound);

// sum over alpha in the coset of q^{<alpha - h, alpha - h>/2}, truncated at Re(exponent) <= order.
QSeries theta_series(const EvenLattice &lattice, std::size_t coset, const GaussVector &shift, const Rational &order);

} // namespace vertexflow
