#include <doctest.h>

#include <random>

#include <vertexflow/errors.hpp>
#include <vertexflow/vlie.hpp>

using namespace vertexflow;

namespace {

const IntMatrix kA1{{2}};

GaussVector cartan(const char *t) { return {parse_gauss(t)}; }

ModeSymbol sym(const BasisVector &b, std::int64_t n) { return ModeSymbol{b, n}; }

} // namespace

TEST_CASE("bracket examples")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    VLie lie(e, deform(e, cartan("0")), Rational(6));
    const auto b = e.heisenberg_vector(0);
    const auto one = e.vacuum();
    // the raw commutator gives 2 1_0, which vanishes in the quotient since 1_0 = -(T1)_1 = 0
    CHECK(lie.bracket_raw(sym(b, 1), sym(b, 0)) == GaussRational(2) * LieElement(sym(one, 0)));
    CHECK(lie.bracket(sym(b, 1), sym(b, 0)).is_zero());
    CHECK(lie.bracket(sym(b, 1), sym(b, -1)) == GaussRational(2) * LieElement(sym(one, -1)));
    for (std::int64_t n = 0; n <= 3; ++n) {
        CHECK(lie.bracket(sym(one, n), sym(e.exp_vector({1}), -2)).is_zero());
        CHECK(lie.bracket(sym(one, n), LieElement::lift(e.omega(), 1)).is_zero());
    }
    // 1_n vanishes in the quotient unless n = -1
    CHECK(lie.canonical(sym(one, 2)).is_zero());
    CHECK(lie.canonical(sym(one, -1)) == LieElement(sym(one, -1)));
    // (T+L) omega goes to zero
    LieElement tl = LieElement::lift(e.translate(e.omega()), 2);
    tl += GaussRational(2) * LieElement::lift(e.omega(), 1);
    CHECK(lie.canonical(tl).is_zero());
    CHECK_THROWS_AS(lie.canonical(sym(e.exp_vector({3}), 0)), TruncationExceeded);
}

TEST_CASE("deg classes")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    VLie zero(e, deform(e, cartan("0")), Rational(4));
    const auto b = e.heisenberg_vector(0);
    CHECK(zero.classify(sym(b, 0)) == DegClass::Zero);
    CHECK(zero.classify(sym(b, -2)) == DegClass::Plus);
    CHECK(zero.classify(sym(b, 3)) == DegClass::Minus);
    VLie imag(e, deform(e, cartan("1/2 i")), Rational(4));
    CHECK(imag.deg(sym(e.exp_vector({1}), 0)) == parse_gauss("-1 i"));
    CHECK(imag.classify(sym(e.exp_vector({1}), 0)) == DegClass::Minus);
    CHECK(deg_classify(parse_gauss("0+1/3 i")) == DegClass::Minus);
    CHECK(deg_classify(parse_gauss("1/3-4 i")) == DegClass::Plus);
    CHECK(to_string(DegClass::Zero) == "zero");
}

TEST_CASE("normal forms are canonical")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const char *h : {"0", "1/2", "1/3 i"}) {
        VLie lie(e, deform(e, cartan(h)), Rational(5));
        const auto basis = lie.basis(Rational(3));
        std::mt19937 rng(11);
        std::uniform_int_distribution<std::size_t> bi(0, basis.size() - 1);
        std::uniform_int_distribution<int> ni(-3, 3), ci(-3, 3);
        for (int k = 0; k < 30; ++k) {
            LieElement x;
            for (int t = 0; t < 3; ++t) x.add(sym(basis[bi(rng)], ni(rng)), GaussRational(ci(rng)));
            const LieElement cx = lie.canonical(x);
            CHECK(lie.canonical(cx) == cx);
            // adding relations in either order does not change the normal form
            const auto c1 = basis[bi(rng)], c2 = basis[bi(rng)];
            const int n1 = ni(rng), n2 = ni(rng);
            if (lie.weight(c1).re() + 1 > Rational(5) || lie.weight(c2).re() + 1 > Rational(5)) continue;
            LieElement y = x + GaussRational(ci(rng)) * lie.relation(c1, n1);
            y += GaussRational(2) * lie.relation(c2, n2);
            CHECK(lie.canonical(y) == cx);
            CHECK(lie.canonical(lie.relation(c1, n1)).is_zero());
        }
    }
}

TEST_CASE("antisymmetry, Jacobi and deg additivity")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const char *h : {"0", "1/2", "1/2 i"}) {
        VLie lie(e, deform(e, cartan(h)), Rational(7));
        const auto rep = bracket_samples(lie, 25, 10, 5);
        INFO(std::string(h));
        CHECK(rep.antisymmetry_tested == 25);
        CHECK(rep.jacobi_tested == 10);
        CHECK(rep.ok());
    }
}

TEST_CASE("kernel of V^0 to the zero class")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const char *h : {"0", "1/2"}) {
        VLie lie(e, deform(e, cartan(h)), Rational(5));
        for (int d = 1; d <= 3; ++d) {
            const auto rep = kernel_check(lie, Rational(d));
            INFO(std::string(h) << " d=" << d);
            CHECK(rep.equal());
        }
    }
    VLie lie(e, deform(e, cartan("0")), Rational(5));
    CHECK(!lie.canonical(sym(e.vacuum(), -1)).is_zero());
    // d = 3 at h = 0: (T+L) is injective off the vacuum, so the image has dimension
    // dim V_{<=2} - 1 = (1 + 3 + 4) - 1
    const auto rep = kernel_check(lie, Rational(3));
    CHECK(rep.image_dim == 7);
}

TEST_CASE("non-closure of the minus part")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    VLie lie(e, deform(e, cartan("1/2 i")), Rational(4));
    const LieElement x(sym(e.exp_vector({1}), 0)), y(sym(e.exp_vector({-1}), 0));
    const LieElement xy = lie.bracket(x, y);
    CHECK(!xy.is_zero());
    CHECK(lie.classify(xy) == DegClass::Zero);
    const auto w = non_closure_witness(lie);
    REQUIRE(w.has_value());
    CHECK(w->exhibits());
    // at h = 0 there is no minus class with zero real part to pair
    VLie plain(e, deform(e, cartan("0")), Rational(4));
    CHECK(!non_closure_witness(plain).has_value());
}

TEST_CASE("phi certificates")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const char *h : {"0", "1/2 i"}) {
        const auto d = deform(e, cartan(h));
        VLie lie(e, d, Rational(6));
        ZhuContext ctx(e, d, Rational(2));
        const auto span = ov_span(ctx);
        const auto reps = phi_check(lie, ctx, span);
        REQUIRE(reps.size() == 2);
        INFO(std::string(h));
        CHECK(reps[0].instances_tested > 0);
        CHECK(reps[0].ok());
        CHECK(reps[0].passes == reps[0].instances_tested);
        CHECK(reps[1].passes == reps[1].instances_tested);
        if (std::string(h) == "1/2 i") CHECK(reps[1].instances_tested > 0);
    }
    // the zero-class pair (omega_1, b_0) at h = 0
    const auto d0 = deform(e, cartan("0"));
    VLie lie(e, d0, Rational(6));
    ZhuContext ctx(e, d0, Rational(2));
    const auto span = ov_span(ctx);
    const LieElement x = LieElement::lift(e.omega(), 1);
    const LieElement y(sym(e.heisenberg_vector(0), 0));
    GradedVector phi;
    for (const auto &[s, c] : lie.bracket(x, y).terms()) phi.add(s.vector, c);
    const GradedVector b(e.heisenberg_vector(0));
    CHECK(span.membership(phi - star(ctx, e.omega(), b) + star(ctx, b, e.omega())) == Membership::InSpan);
}
