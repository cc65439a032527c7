#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <vertexflow/flow.hpp>
#include <vertexflow/linalg.hpp>

namespace vertexflow {

// Grading by L_h(0)-weights of a Cartan datum, with quotient cutoff d and
// generator cutoff d_gen (on real parts of weights).
struct ZhuContext {
    ModeEngine *engine = nullptr;
    ConformalDatum datum;
    Rational d;
    Rational d_gen;

    ZhuContext(ModeEngine &e, ConformalDatum dat, Rational d_, Rational d_gen_);
    // Default d_gen = d + 4.
    ZhuContext(ModeEngine &e, ConformalDatum dat, Rational d_);

    const EvenLattice &lattice() const { return engine->lattice(); }
    GaussRational weight(const BasisVector &b) const { return lh_weight(lattice(), datum, b); }
    // ceiling of Re(weight)
    std::int64_t wt(const BasisVector &b) const;
    // weight - wt, with Re in (-1, 0]
    GaussRational r_of(const BasisVector &b) const;
};

std::map<GaussRational, GradedVector> vr_split(const ZhuContext &ctx, const GradedVector &v);

GradedVector circle(const ZhuContext &ctx, const GradedVector &a, const GradedVector &b);
GradedVector star(const ZhuContext &ctx, const GradedVector &a, const GradedVector &b);

// Res_z (1+z)^{wt a + delta - 1 + n} / z^{1 + delta + m} Y(a,z) b
GradedVector residue_family(const ZhuContext &ctx, const GradedVector &a, const GradedVector &b, std::int64_t m,
                            std::int64_t n);
// Res_z (1+z)^{e} z^{p} Y(a,z) b for an integer exponent e.
GradedVector residue(const ZhuContext &ctx, const GradedVector &a, const GradedVector &b, const GaussRational &e,
                     std::int64_t p);
// (T + L) a, with L the L_h(0) grading.
GradedVector t_plus_l(const ZhuContext &ctx, const GradedVector &a);

enum class Membership { InSpan, NotInSpanAtCutoff };
std::string to_string(Membership m);

// Truncated span of O(V). Generators are a o b for basis pairs with Re|a| + Re|b| <= d_gen and
// every basis vector of V^r (r != 0) up to the ambient weight d_gen + 1, which bounds every
// generator's weight. Elimination runs per lattice momentum with columns sorted by decreasing
// real weight, so rows pivoting at weight <= d span the intersection with V_{<= d}.
class OVSpan {
public:
    OVSpan() = default;

    const Rational &d() const noexcept { return d_; }
    const Rational &d_gen() const noexcept { return d_gen_; }
    const Rational &ambient() const noexcept { return ambient_; }
    const std::vector<GradedVector> &generators() const noexcept { return generators_; }
    std::size_t rank() const;

    // Throws WeightOutOfRange when v has a term above the ambient weight.
    Membership membership(const GradedVector &v) const;
    // Normal form: v minus its projection on the span; only free columns survive.
    GradedVector reduce(const GradedVector &v) const;
    // Row-reduced basis of span intersected with weights <= d.
    std::vector<GradedVector> reduced_basis() const;
    // Free basis vectors of V^0 with Re(weight) <= d.
    const std::vector<BasisVector> &quotient_representatives() const noexcept { return reps_; }

private:
    friend OVSpan ov_span(const ZhuContext &ctx);
    struct Block {
        std::vector<BasisVector> columns;
        std::map<BasisVector, int> index;
        RowReducer reducer{0};
    };
    SparseRow to_row(const Block &block, const GradedVector &v) const;
    GradedVector from_row(const Block &block, const SparseRow &row) const;

    Rational d_, d_gen_, ambient_;
    std::vector<GradedVector> generators_;
    std::map<LatticePoint, Block> blocks_;
    std::map<BasisVector, Rational> re_weight_;
    std::vector<BasisVector> reps_;
};

OVSpan ov_span(const ZhuContext &ctx);

struct IdentityReport {
    std::string name;
    std::size_t instances_tested = 0;
    std::size_t passes = 0;
    std::size_t cutoff_qualified = 0; // NotInSpanAtCutoff
    bool ok() const { return passes == instances_tested; }
};

struct CongruenceBudget {
    Rational tl_weight{2};      // (T+L)a for Re|a| <= this
    Rational pair_weight{2};    // Re|a| + Re|b| for pair identities
    Rational triple_weight{2};  // Re|a| + Re|b| + Re|c| for ideal identities
};

std::vector<IdentityReport> congruence_suite(const ZhuContext &ctx, const OVSpan &span,
                                             const CongruenceBudget &budget = {});

struct ZhuQuotient {
    Rational d, d_gen;
    std::size_t dim_upper_bound = 0;
    std::vector<BasisVector> representatives;
    // rep_i * rep_j = sum_k c_k rep_k mod span, when the product reduces into the representatives.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<GaussRational>> structure;
    std::size_t products_outside_cutoff = 0;
    std::size_t associativity_triples = 0;
    std::size_t associativity_passes = 0;
    bool unit_ok = false;
};

// Associativity is certified on all triples of representatives with Re weight <= assoc_weight.
ZhuQuotient zhu_quotient(const ZhuContext &ctx, const OVSpan &span, const Rational &assoc_weight = Rational(1));

// Lowest weight space of the module on `coset`: minimal Re(weight) eigenspaces, filtered by
// the lowest weight test.
std::vector<GradedVector> module_top(const ZhuContext &ctx, std::size_t coset);

// Coordinates of v in the basis `vecs` (which must be linearly independent); throws when
// v is outside their span.
std::vector<GaussRational> coordinates(const std::vector<GradedVector> &vecs, const GradedVector &v);

// o(a) = a(wt a - 1) extended linearly over homogeneous components.
GradedVector zero_mode_apply(const ZhuContext &ctx, const GradedVector &a, const GradedVector &w);
Matrix zero_mode(const ZhuContext &ctx, const GradedVector &a, const std::vector<GradedVector> &top);

struct TopRepReport {
    std::size_t generators_tested = 0;
    std::size_t generator_failures = 0;
    std::size_t pairs_tested = 0;
    std::size_t product_failures = 0;
    bool ok() const { return generator_failures == 0 && product_failures == 0; }
};
// Generators of the span annihilate every top; o(a*b) = o(a)o(b) for basis a, b of
// Re weight <= pair_weight.
TopRepReport top_rep_check(const ZhuContext &ctx, const OVSpan &span,
                           const std::vector<std::vector<GradedVector>> &tops, const Rational &pair_weight);

struct SemisimpleProbe {
    std::size_t image_dim = 0;
    std::size_t target_dim = 0; // sum of dim(top)^2
    bool full() const { return image_dim == target_dim; }
};
SemisimpleProbe semisimple_probe(const ZhuContext &ctx, const std::vector<std::vector<GradedVector>> &tops);

} // namespace vertexflow
