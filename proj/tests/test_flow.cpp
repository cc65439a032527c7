#include <doctest.h>

#include <map>

#include <vertexflow/errors.hpp>
#include <vertexflow/flow.hpp>

using namespace vertexflow;

namespace {

const IntMatrix kA1{{2}};

GaussVector cartan(const char *t) { return {parse_gauss(t)}; }

} // namespace

TEST_CASE("deformed central charge")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    auto d0 = deform(e, cartan("0"));
    CHECK(d0.central_charge == GaussRational(1));
    CHECK(d0.omega == e.omega());
    auto d1 = deform(e, cartan("1/2"));
    CHECK(d1.alpha == GaussRational(Rational(1, 2)));
    CHECK(d1.beta == GaussRational(0));
    CHECK(d1.central_charge == GaussRational(-5));
    CHECK(deform(e, cartan("1/2 i")).central_charge == GaussRational(7));
    CHECK(deform(e, cartan("1/2"), -1).central_charge == GaussRational(-5));
    CHECK_THROWS_AS(deform(e, cartan("0"), 1, GradedVector(e.vacuum())), NotWeightOne);
}

TEST_CASE("Virasoro relations")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const char *t : {"0", "1/2", "1/3 i"}) {
        const auto d = deform(e, cartan(t));
        for (int m = -2; m <= 2; ++m) {
            for (int n = -2; n <= 2; ++n) CHECK(virasoro_check(e, d, m, n, Rational(4)).ok());
        }
    }
    const auto d0 = deform(e, cartan("0"));
    const GradedVector one(e.vacuum());
    CHECK(lh_mode(e, d0, 2, lh_mode(e, d0, -2, one)) == GaussRational(Rational(1, 2)) * one);
    const auto d1 = deform(e, cartan("1/2"));
    CHECK(lh_mode(e, d1, 2, lh_mode(e, d1, -2, one)) == GaussRational(Rational(-5, 2)) * one);
    // Mixed h with a nilpotent component
    const auto dn = deform(e, cartan("1/3"), 1, GradedVector(e.exp_vector({1})));
    CHECK(virasoro_check(e, dn, 2, -2, Rational(3)).ok());
    CHECK(virasoro_check(e, dn, 1, -1, Rational(3)).ok());
    CHECK(virasoro_check(e, dn, -1, 0, Rational(3)).ok());
}

TEST_CASE("Cartan spectrum")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const auto d1 = deform(e, cartan("1/2"));
    CHECK(lh_weight(a1, d1, e.exp_vector({1})) == GaussRational(0));
    CHECK(lh_weight(a1, d1, e.exp_vector({-1})) == GaussRational(2));
    const auto di = deform(e, cartan("1/2 i"));
    CHECK(lh_weight(a1, di, e.exp_vector({1})) == parse_gauss("1-1 i"));
    CHECK(lh_weight(a1, di, e.exp_vector({-1})) == parse_gauss("1+1 i"));

    for (const auto *t : {"0", "1/2", "1/2 i", "2"}) {
        const auto d = deform(e, cartan(t));
        for (std::size_t coset : {0u, 1u}) {
            const auto rep = spectrum(e, d, coset, Rational(6));
            std::map<Rational, std::size_t> sums;
            for (const auto &entry : rep.entries) {
                sums[entry.level] += entry.multiplicity;
                CHECK(entry.jordan_max == 1);
            }
            for (const auto &[level, total] : sums) CHECK(total == level_basis(a1, coset, level).size());
        }
    }
    for (const auto &entry : spectrum(e, deform(e, cartan("0")), 0, Rational(6)).entries) {
        CHECK(entry.mu.is_rational_integer());
        CHECK(entry.mu.re() == entry.level);
    }
}

TEST_CASE("non-Cartan spectrum has Jordan blocks")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const auto d = deform(e, cartan("0"), 1, GradedVector(e.exp_vector({1})));
    const auto rep = spectrum(e, d, 0, Rational(3));
    std::size_t biggest = 0;
    for (const auto &entry : rep.entries) {
        CHECK(entry.mu == GaussRational(entry.level));
        biggest = std::max(biggest, entry.jordan_max);
    }
    CHECK(biggest > 1);
}

TEST_CASE("PVOA sector condition")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    CHECK(pvoa_check(e, deform(e, cartan("1/2 i")), 0, Rational(6)).violations.empty());
    CHECK(pvoa_check(e, deform(e, cartan("0")), 0, Rational(6)).violations.empty());

    const auto d2 = deform(e, cartan("2"));
    const auto r6 = pvoa_check(e, d2, 0, Rational(6));
    const auto r8 = pvoa_check(e, d2, 0, Rational(8));
    CHECK(r6.stable);
    REQUIRE(r6.violations.size() == r8.violations.size());
    for (std::size_t i = 0; i < r6.violations.size(); ++i) {
        CHECK(r6.violations[i].mu == r8.violations[i].mu);
        CHECK(r6.violations[i].dim == r8.violations[i].dim);
    }
    // mu = d + n^2 - 4n over Fock degree d and gamma = n alpha; brute force.
    std::map<Rational, std::size_t> expect;
    const long p[] = {1, 1, 2, 3, 5, 7, 11};
    for (long n = -10; n <= 10; ++n)
        for (long deg = 0; deg <= 6; ++deg)
            if (deg + n * n - 4 * n < 0) expect[Rational(deg + n * n - 4 * n)] += static_cast<std::size_t>(p[deg]);
    std::map<Rational, std::size_t> got;
    for (const auto &v : r6.violations) got[v.mu.re()] = v.dim;
    CHECK(got == expect);
    CHECK(got.size() == 4);
}

TEST_CASE("lowest weight vectors")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const auto d0 = deform(e, cartan("0"));
    const auto lw = lowest_weight_vectors(e, d0, 0, Rational(3));
    REQUIRE(!lw.empty());
    CHECK(lw[0].mu == GaussRational(0));
    REQUIRE(lw[0].vectors.size() == 1);
    CHECK(lw[0].vectors[0] == GradedVector(e.vacuum()));
    CHECK(lw.size() == 1);
    CHECK_FALSE(is_lowest_weight(e, d0, GradedVector(e.heisenberg_vector(0)), GaussRational(1)));

    const auto d1 = deform(e, cartan("1/2"));
    CHECK(is_lowest_weight(e, d1, GradedVector(e.exp_vector({1})), GaussRational(0)));
    const auto tops = lowest_weight_vectors(e, d1, 0, Rational(0));
    REQUIRE(tops.size() == 1);
    CHECK(tops[0].vectors.size() == 2);

    const auto half = lowest_weight_vectors(e, d0, 1, Rational(2));
    REQUIRE(!half.empty());
    CHECK(half[0].mu == GaussRational(Rational(1, 4)));
    CHECK(half[0].vectors.size() == 2);
}

TEST_CASE("C-grading")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    auto samples = enumerate_basis(a1, 0, Rational(2));
    const auto mod = enumerate_basis(a1, 1, Rational(9, 4));
    samples.insert(samples.end(), mod.begin(), mod.end());
    for (const auto *t : {"0", "1/2", "1/3+1/2 i"}) CHECK(cgraded_check(e, deform(e, cartan(t)), samples, -2, 3).ok());
    const auto d1 = deform(e, cartan("1/2"));
    const auto r = e.mode(GradedVector(e.exp_vector({1})), 1, GradedVector(e.exp_vector({-1})));
    REQUIRE(r.size() == 1);
    CHECK(lh_weight(a1, d1, r.terms().begin()->first) == GaussRational(0));
}

TEST_CASE("Jordan decomposition of h(0)")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const auto &lvl : jordan_split_h0(e, GradedVector(e.heisenberg_vector(0)), 0, Rational(3))) {
        CHECK(lvl.nilpotent.is_zero());
    }
    const GradedVector ea(e.exp_vector({1}));
    for (const auto &lvl : jordan_split_h0(e, ea, 0, Rational(2))) {
        CHECK(lvl.semisimple.is_zero());
        CHECK(lvl.nilpotent == lvl.full);
        if (lvl.level == 1) {
            CHECK_FALSE(lvl.full.is_zero());
            CHECK(lvl.full.pow(3).is_zero());
        }
    }
    GradedVector mixed(e.heisenberg_vector(0));
    mixed += ea;
    for (const auto &lvl : jordan_split_h0(e, mixed, 0, Rational(3))) {
        CHECK(lvl.semisimple * lvl.nilpotent == lvl.nilpotent * lvl.semisimple);
        CHECK(lvl.semisimple + lvl.nilpotent == lvl.full);
        CHECK(lvl.nilpotent.pow(static_cast<unsigned>(lvl.basis.size())).is_zero());
    }
}
