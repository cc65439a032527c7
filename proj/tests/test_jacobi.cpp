#include <doctest.h>

#include <vertexflow/errors.hpp>
#include <vertexflow/jacobi.hpp>

using namespace vertexflow;

namespace {

const IntMatrix kA1{{2}};
const IntMatrix kA2{{2, -1}, {-1, 2}};

GaussVector cartan(const char *t) { return {parse_gauss(t)}; }

// counts multisets of (part, colour) with total n, pairs taken in nonincreasing order
long coloured_pairs(long n, long part, int colour, int k)
{
    if (n == 0) return 1;
    long total = 0;
    for (long p = std::min(n, part); p >= 1; --p) {
        for (int c = (p == part ? colour : k - 1); c >= 0; --c) total += coloured_pairs(n - p, p, c, k);
    }
    return total;
}

} // namespace

TEST_CASE("Heisenberg character")
{
    for (int k = 1; k <= 3; ++k) {
        const auto z = z_m1(static_cast<std::size_t>(k), Rational(8));
        CHECK(z.offset() == GaussRational(Rational(-k, 24)));
        for (long n = 0; n <= 8; ++n) CHECK(z.coeff(GaussRational(n)) == GaussRational(coloured_pairs(n, n, k - 1, k)));
    }
    const auto z1 = z_m1(1, Rational(5));
    const long expect[] = {1, 1, 2, 3, 5, 7};
    for (long n = 0; n <= 5; ++n) CHECK(z1.coeff(GaussRational(n)) == GaussRational(expect[n]));
    CHECK(z_m1(2, Rational(2)).coeff(GaussRational(2)) == GaussRational(5));
    CHECK(z_m1(4, Rational(0)).coeff(GaussRational(0)) == GaussRational(1));
}

TEST_CASE("partition function examples")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    const auto d0 = deform(e, cartan("0"));
    const auto z = partition_function(a1, 0, d0, Rational(2));
    CHECK(z.offset() == GaussRational(Rational(-1, 24)));
    CHECK(z.coeff(GaussRational(0)) == GaussRational(1));
    CHECK(z.coeff(GaussRational(1)) == GaussRational(3));
    CHECK(z.coeff(GaussRational(2)) == GaussRational(4));
    const auto z2 = partition_function(a1, 1, d0, Rational(1, 4));
    CHECK(z2.terms().size() == 1);
    CHECK(z2.coeff(GaussRational(Rational(1, 4))) == GaussRational(2));
    const auto dh = deform(e, cartan("1/2"));
    const auto zh = partition_function(a1, 0, dh, Rational(1));
    CHECK(zh.offset() == GaussRational(Rational(5, 24)));
    CHECK(zh.coeff(GaussRational(0)) == GaussRational(2));
    CHECK_THROWS_AS(partition_function(a1, 0, deform(e, cartan("0"), 1, GradedVector(e.exp_vector({1}))), Rational(2)),
                    Unsatisfiable);
}

TEST_CASE("factorization through theta series")
{
    const auto a1 = EvenLattice::validate(kA1);
    ModeEngine e(a1);
    for (const char *h : {"0", "1/2", "1/2+1/2 i", "1", "1/3 i"}) {
        for (std::size_t c = 0; c < 2; ++c) {
            const auto r = factorization_check(a1, c, deform(e, cartan(h)), Rational(6));
            INFO(std::string(h) << " coset " << c);
            CHECK(r.equal);
            CHECK(!r.lhs.empty());
        }
    }
    const auto r0 = factorization_check(a1, 0, deform(e, cartan("0")), Rational(0));
    CHECK(r0.equal);
    CHECK(r0.lhs.terms().size() == 1);

    const auto a2 = EvenLattice::validate(kA2);
    ModeEngine e2(a2);
    const auto d2 = deform(e2, GaussVector{GaussRational(0), GaussRational(0)});
    CHECK(factorization_check(a2, 0, d2, Rational(6)).equal);
    // a shift mixing both directions
    const auto d2h = deform(e2, GaussVector{parse_gauss("1/3"), parse_gauss("1/2 i")});
    for (std::size_t c = 0; c < 3; ++c) CHECK(factorization_check(a2, c, d2h, Rational(4)).equal);
}

TEST_CASE("Jacobi coefficients")
{
    const auto a1 = EvenLattice::validate(kA1);
    const GaussVector h = cartan("1");
    const auto t0 = jacobi_coeffs(a1, 0, h, Rational(10));
    CHECK(t0.at(0, 0) == 1);
    CHECK(t0.at(1, 2) == 1);
    CHECK(t0.at(1, -2) == 1);
    CHECK(t0.at(1, 0) == 1);
    CHECK(t0.s == Rational(-1, 24));
    const auto t1 = jacobi_coeffs(a1, 1, h, Rational(10));
    CHECK(t1.lambda == Rational(1, 4));
    CHECK(t1.at(0, 1) == 1);
    CHECK(t1.at(0, -1) == 1);
    CHECK(t1.at(0, 0) == 0);
    // summing over r gives the graded dimensions
    for (const auto *t : {&t0, &t1}) {
        for (std::int64_t n = 0; n <= 10; ++n) {
            std::int64_t sum = 0;
            for (const auto &[key, c] : t->table)
                if (key.first == n) sum += c;
            const Rational w = t->lambda + Rational(static_cast<long>(n));
            const auto upto = enumerate_basis(a1, t->module, w);
            std::int64_t level = 0;
            for (const auto &b : upto)
                if (l0_weight(a1, b) == w) ++level;
            CHECK(sum == level);
        }
    }
    // zeta = 1 against the partition function at h = 0
    ModeEngine e(a1);
    const auto z = partition_function(a1, 1, deform(e, cartan("0")), Rational(6));
    for (std::int64_t n = 0; n <= 5; ++n) {
        std::int64_t sum = 0;
        for (const auto &[key, c] : t1.table)
            if (key.first == n) sum += c;
        CHECK(z.coeff(GaussRational(Rational(1, 4) + Rational(static_cast<long>(n)))) == GaussRational(sum));
    }
    CHECK_THROWS_AS(jacobi_coeffs(a1, 1, cartan("1/2"), Rational(3)), NonIntegralSpectrum);
    CHECK_THROWS_AS(jacobi_coeffs(a1, 0, cartan("1 i"), Rational(3)), NonIntegralSpectrum);
    // h = alpha/2 in the dual: integral on L but not on the alpha/2 coset
    CHECK_NOTHROW(jacobi_coeffs(a1, 0, cartan("1/2"), Rational(1)));
}

TEST_CASE("vanishing bound")
{
    const auto a1 = EvenLattice::validate(kA1);
    const GaussVector h = cartan("1");
    const auto g = growth_bound(a1, h);
    CHECK(g.m == 1);
    CHECK(g.d == std::vector<Rational>{Rational(1, 4), Rational(1, 4)});
    const auto tables = jacobi_tables(a1, h, Rational(10));
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto rep = vanishing_bound_check(tables[i], g.m, g.d[i]);
        CHECK(rep.ok());
        CHECK(rep.entries_tested == tables[i].table.size());
    }
    // n = 4 has r = 4 from e^{2 alpha}
    CHECK(tables[0].at(4, 4) == 1);
    CHECK(tables[0].at(4, 6) == 0);
    CHECK_THROWS_AS(vanishing_bound_check(tables[0], Rational(0), Rational(0)), Unsatisfiable);
    // a deliberately wrong table is caught
    auto bad = tables[0];
    bad.table[{0, 5}] = 1;
    CHECK(vanishing_bound_check(bad, g.m, g.d[0]).counterexamples.size() == 1);
}

TEST_CASE("elliptic transformation")
{
    const auto a1 = EvenLattice::validate(kA1);
    const GaussVector h = cartan("1");
    const auto tables = jacobi_tables(a1, h, Rational(10));
    for (std::int64_t u = -2; u <= 2; ++u) {
        const auto rep = elliptic_transform_check(a1, h, tables, u);
        INFO(u);
        CHECK(rep.ok());
        CHECK(rep.checked > 0);
        CHECK(rep.permutation == std::vector<std::size_t>{0, 1});
    }
    // integrality forces h into L, so translation fixes every coset: [[4]] with h = alpha
    const auto l4 = EvenLattice::validate({{4}});
    const auto t4 = jacobi_tables(l4, cartan("1"), Rational(6));
    const auto rep = elliptic_transform_check(l4, cartan("1"), t4, 1);
    CHECK(rep.ok());
    CHECK(rep.permutation == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK_THROWS_AS(jacobi_tables(l4, cartan("1/2"), Rational(2)), NonIntegralSpectrum);
    // a perturbed table fails
    auto bad = tables;
    bad[0].table[{2, 0}] += 1;
    CHECK(!elliptic_transform_check(a1, h, bad, 1).ok());
}

TEST_CASE("growth of h^n")
{
    const auto a1 = EvenLattice::validate(kA1);
    const auto g = hn_growth(a1, cartan("1"), Rational(10));
    REQUIRE(g.size() == 11);
    CHECK(g[0].h_n == 0);
    CHECK(g[1].h_n == 2);
    CHECK(g[1].bound == 6);
    CHECK(g[4].h_n == 4);
    CHECK(g[4].bound == 18);
    for (const auto &e : g) CHECK(e.ok);
}
