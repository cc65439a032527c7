#include <doctest.h>

#include <vertexflow/errors.hpp>
#include <vertexflow/zhu.hpp>

using namespace vertexflow;

namespace {

const IntMatrix kA1{{2}};

GaussVector cartan(const char *t) { return {parse_gauss(t)}; }

BasisVector half_exp(long num) { return BasisVector{FockMonomial(), LatticePoint{{num}}}; }

// Classical products for integer weights: a o b = sum_j C(wt a, j) a(j-2)b and
// a * b = sum_j C(wt a, j) a(j-1)b, both for homogeneous a of integer L(0)-weight.
GradedVector classical(ModeEngine &e, const BasisVector &a, const BasisVector &b, int shift)
{
    const auto &l = e.lattice();
    const long wa = to_int64_exact(l0_weight(l, a));
    const long top = to_int64(floor_of(l0_weight(l, a) + l0_weight(l, b))) - 1;
    GradedVector out;
    Integer c = 1;
    for (long j = 0; j <= wa && j - shift <= top; ++j) {
        if (j > 0) c = c * (wa - j + 1) / j;
        out.axpy(GaussRational(Rational(c)), e.mode(GradedVector(a), j - shift, GradedVector(b)));
    }
    return out;
}

} // namespace

TEST_CASE("V^r splitting")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const GradedVector ea(e.exp_vector({1})), eb(e.exp_vector({-1}));
    ZhuContext third(e, deform(e, cartan("1/3")), Rational(2));
    CHECK(third.weight(e.exp_vector({1})) == GaussRational(Rational(1, 3)));
    CHECK(third.wt(e.exp_vector({1})) == 1);
    CHECK(third.r_of(e.exp_vector({1})) == GaussRational(Rational(-2, 3)));
    const auto parts = vr_split(third, ea + eb + GradedVector(e.vacuum()));
    GradedVector sum;
    for (const auto &[r, v] : parts) {
        CHECK(r.re() <= 0);
        CHECK(r.re() > -1);
        sum += v;
    }
    CHECK(sum == ea + eb + GradedVector(e.vacuum()));
    ZhuContext half(e, deform(e, cartan("1/2")), Rational(2));
    CHECK(half.weight(e.exp_vector({1})) == GaussRational(0));
    CHECK(half.weight(e.exp_vector({-1})) == GaussRational(2));
    CHECK(vr_split(half, ea + eb).size() == 1);
    ZhuContext zero(e, deform(e, cartan("0")), Rational(2));
    CHECK(vr_split(zero, ea + eb + e.omega()).begin()->first == GaussRational(0));
    CHECK_THROWS_AS(ZhuContext(e, deform(e, cartan("0")), Rational(3), Rational(2)), ConfigError);
}

TEST_CASE("circle and star examples")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const GradedVector one(e.vacuum());
    const GradedVector w = e.omega();
    ZhuContext ctx(e, deform(e, cartan("0")), Rational(2));
    for (const auto &b : {GradedVector(e.exp_vector({1})), w, GradedVector(e.heisenberg_vector(0))}) {
        CHECK(circle(ctx, one, b).is_zero());
        CHECK(star(ctx, one, b) == b);
    }
    CHECK(circle(ctx, w, one) == t_plus_l(ctx, w));
    CHECK(t_plus_l(ctx, w) == e.translate(w) + GaussRational(2) * w);
    CHECK(star(ctx, w, one) == w);

    ZhuContext third(e, deform(e, cartan("1/3")), Rational(2));
    const GradedVector ea(e.exp_vector({1}));
    CHECK(circle(third, ea, one) == ea);
    CHECK(star(third, ea, w).is_zero());
    CHECK(star(third, ea, ea).is_zero());
}

TEST_CASE("classical products at h = 0")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    ZhuContext ctx(e, deform(e, cartan("0")), Rational(3));
    const auto basis = enumerate_basis(a1, 0, Rational(3));
    std::size_t pairs = 0;
    for (const auto &a : basis) {
        for (const auto &b : basis) {
            if (l0_weight(a1, a) + l0_weight(a1, b) > 3) continue;
            CHECK(circle(ctx, GradedVector(a), GradedVector(b)) == classical(e, a, b, 2));
            CHECK(star(ctx, GradedVector(a), GradedVector(b)) == classical(e, a, b, 1));
            ++pairs;
        }
    }
    CHECK(pairs > 30);
}

TEST_CASE("span membership")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const GradedVector one(e.vacuum());
    ZhuContext ctx(e, deform(e, cartan("0")), Rational(2), Rational(4));
    const auto span = ov_span(ctx);
    CHECK(span.ambient() == Rational(5));
    for (const auto &a : enumerate_basis(a1, 0, Rational(1))) CHECK(span.membership(t_plus_l(ctx, GradedVector(a))) == Membership::InSpan);
    CHECK(span.membership(t_plus_l(ctx, e.omega())) == Membership::InSpan);
    CHECK(span.membership(one) == Membership::NotInSpanAtCutoff);
    for (const auto &g : span.generators()) CHECK(span.membership(g) == Membership::InSpan);
    for (const auto &v : span.reduced_basis()) CHECK(span.membership(v) == Membership::InSpan);
    CHECK_THROWS_AS(span.membership(GradedVector(e.exp_vector({3}))), WeightOutOfRange);
    CHECK(to_string(Membership::InSpan) == "InSpan");

    ZhuContext zero(e, deform(e, cartan("0")), Rational(0), Rational(4));
    const auto span0 = ov_span(zero);
    CHECK(span0.reduced_basis().empty());
    CHECK(span0.quotient_representatives() == std::vector<BasisVector>{e.vacuum()});

    ZhuContext third(e, deform(e, cartan("1/3")), Rational(2));
    const auto span3 = ov_span(third);
    CHECK(span3.membership(GradedVector(e.exp_vector({1}))) == Membership::InSpan);
}

TEST_CASE("congruence suite")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const char *h : {"0", "1/2", "1/3", "1/2 i"}) {
        ZhuContext ctx(e, deform(e, cartan(h)), Rational(2));
        const auto span = ov_span(ctx);
        for (const auto &rep : congruence_suite(ctx, span)) {
            INFO(h << " " << rep.name);
            CHECK(rep.ok());
            CHECK(rep.passes == rep.instances_tested);
        }
    }
}

TEST_CASE("truncated quotient")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const auto d0 = deform(e, cartan("0"));
    std::size_t prev = SIZE_MAX;
    for (int dg = 2; dg <= 6; ++dg) {
        ZhuContext ctx(e, d0, Rational(2), Rational(dg));
        const auto span = ov_span(ctx);
        const auto q = zhu_quotient(ctx, span);
        CHECK(q.dim_upper_bound <= prev);
        prev = q.dim_upper_bound;
        CHECK(q.unit_ok);
    }
    CHECK(prev == 5);
    for (int d = 2; d <= 4; ++d) {
        ZhuContext ctx(e, d0, Rational(d), Rational(d + 4));
        const auto q = zhu_quotient(ctx, ov_span(ctx));
        CHECK(q.dim_upper_bound == 5);
        CHECK(q.representatives.front() == e.vacuum());
        CHECK(q.associativity_triples > 0);
        CHECK(q.associativity_passes == q.associativity_triples);
        CHECK(q.products_outside_cutoff == 0);
        // the unit row of the structure table
        for (std::size_t j = 0; j < q.representatives.size(); ++j) {
            const auto &row = q.structure.at({0, j});
            for (std::size_t k = 0; k < row.size(); ++k) CHECK(row[k] == GaussRational(k == j ? 1 : 0));
        }
    }
}

TEST_CASE("module tops and zero modes")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    ZhuContext ctx(e, deform(e, cartan("0")), Rational(2));
    const auto top0 = module_top(ctx, 0);
    REQUIRE(top0.size() == 1);
    CHECK(zero_mode(ctx, e.omega(), top0).is_zero());
    const auto top1 = module_top(ctx, 1);
    REQUIRE(top1.size() == 2);
    const std::vector<GradedVector> pm{GradedVector(half_exp(1)), GradedVector(half_exp(-1))};
    const Matrix b = zero_mode(ctx, GradedVector(e.heisenberg_vector(0)), pm);
    CHECK(b(0, 0) == GaussRational(1));
    CHECK(b(1, 1) == GaussRational(-1));
    CHECK(b(0, 1).is_zero());
    CHECK(b(1, 0).is_zero());
    const GradedVector ww = star(ctx, e.omega(), e.omega());
    const Matrix oww = zero_mode(ctx, ww, top1);
    CHECK(oww == GaussRational(Rational(1, 16)) * Matrix::identity(2));
    CHECK(oww == zero_mode(ctx, e.omega(), top1) * zero_mode(ctx, e.omega(), top1));
    CHECK(zero_mode(ctx, GradedVector(e.vacuum()), top1) == Matrix::identity(2));

    ZhuContext half(e, deform(e, cartan("1/2")), Rational(2));
    CHECK(module_top(half, 0).size() == 2);
    CHECK(module_top(half, 1).size() == 1);
    ZhuContext imag(e, deform(e, cartan("1/2 i")), Rational(2));
    CHECK(module_top(imag, 1).empty());

    ZhuContext third(e, deform(e, cartan("1/3")), Rational(2));
    for (std::size_t c = 0; c < 2; ++c) {
        const auto top = module_top(third, c);
        CHECK(zero_mode(third, GradedVector(e.exp_vector({1})), top).is_zero());
    }
    CHECK_THROWS_AS(coordinates(pm, GradedVector(e.vacuum())), Error);
}

TEST_CASE("top representation")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const char *h : {"0", "1/2", "1/3"}) {
        ZhuContext ctx(e, deform(e, cartan(h)), Rational(2), Rational(5));
        const auto span = ov_span(ctx);
        const std::vector<std::vector<GradedVector>> tops{module_top(ctx, 0), module_top(ctx, 1)};
        const auto rep = top_rep_check(ctx, span, tops, Rational(1));
        INFO(h);
        CHECK(rep.ok());
        CHECK(rep.generators_tested == span.generators().size());
        CHECK(rep.pairs_tested > 0);
    }
}

TEST_CASE("semisimplicity probe")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    ZhuContext ctx(e, deform(e, cartan("0")), Rational(2));
    const auto p = semisimple_probe(ctx, {module_top(ctx, 0), module_top(ctx, 1)});
    CHECK(p.target_dim == 5);
    CHECK(p.image_dim == 5);
    CHECK(p.full());

    const auto l4 = EvenLattice::validate({{4}});
    ModeEngine e4(l4);
    ZhuContext c3(e4, deform(e4, cartan("0")), Rational(3));
    std::vector<std::vector<GradedVector>> tops;
    for (std::size_t c = 0; c < l4.coset_reps().size(); ++c) tops.push_back(module_top(c3, c));
    CHECK(tops.size() == 4);
    // b(0) takes five values 0, 1, +-2, -1 on the tops; weight <= 3 Heisenberg states only
    // give polynomials of degree <= 3 in b(0), so one diagonal direction is missing at d = 3.
    const auto p3 = semisimple_probe(c3, tops);
    CHECK(p3.target_dim == 1 + 1 + 4 + 1);
    CHECK(p3.image_dim == 6);
    ZhuContext c4(e4, deform(e4, cartan("0")), Rational(4));
    CHECK(semisimple_probe(c4, tops).full());

    // single coset: the unit alone
    const auto a2 = EvenLattice::validate({{2, -1}, {-1, 2}});
    ModeEngine ea2(a2);
    ZhuContext ca2(ea2, deform(ea2, GaussVector{GaussRational(0), GaussRational(0)}), Rational(0));
    const auto pa = semisimple_probe(ca2, {module_top(ca2, 0)});
    CHECK(pa.target_dim == 1);
    CHECK(pa.full());
}

TEST_CASE("non-Cartan data are rejected")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const auto dn = deform(e, cartan("1/3"), 1, GradedVector(e.exp_vector({1})));
    CHECK_THROWS_AS(ZhuContext(e, dn, Rational(2)), Unsatisfiable);
}
