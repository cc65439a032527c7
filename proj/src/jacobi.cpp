#include <vertexflow/jacobi.hpp>

#include <algorithm>

#include <vertexflow/errors.hpp>

namespace vertexflow {

namespace {

GaussVector signed_h(const ConformalDatum &d)
{
    GaussVector h = d.h;
    for (auto &x : h) x *= GaussRational(d.sign);
    return h;
}

Rational lowest_weight(const EvenLattice &lattice, std::size_t coset)
{
    const Rational rep = lattice.norm2(lattice.coset_reps()[coset]) / 2;
    Rational best = rep;
    // the minimum lies within the ellipsoid of the representative's norm
    for (const auto &p : points_in_ellipsoid(lattice, coset, RatVector(lattice.rank()), rep)) {
        best = std::min(best, Rational(lattice.norm2(p) / 2));
    }
    return best;
}

RatVector real_coords(const GaussVector &h)
{
    RatVector out;
    for (const auto &x : h) {
        if (x.im() != 0) throw NonIntegralSpectrum("h(0) has non-real eigenvalues");
        out.push_back(x.re());
    }
    return out;
}

} // namespace

QSeries z_m1(std::size_t k, const Rational &N)
{
    const std::int64_t top = to_int64(floor_of(N));
    std::vector<Integer> c(static_cast<std::size_t>(std::max<std::int64_t>(top, 0) + 1));
    if (top >= 0) c[0] = 1;
    // multiply by 1/(1 - q^m) once per colour
    for (std::int64_t m = 1; m <= top; ++m) {
        for (std::size_t colour = 0; colour < k; ++colour) {
            for (std::int64_t n = m; n <= top; ++n) c[static_cast<std::size_t>(n)] += c[static_cast<std::size_t>(n - m)];
        }
    }
    QSeries out(N, GaussRational(Rational(-static_cast<long>(k), 24)));
    for (std::int64_t n = 0; n <= top; ++n) {
        out.add_term(GaussRational(static_cast<long>(n)), GaussRational(Rational(c[static_cast<std::size_t>(n)])));
    }
    return out;
}

QSeries partition_function(const EvenLattice &lattice, std::size_t coset, const ConformalDatum &d, const Rational &N)
{
    if (!d.is_cartan()) throw Unsatisfiable("partition functions use the semisimple part; pass a Cartan datum");
    QSeries out(N, -d.central_charge / GaussRational(24));
    for (const auto &b : enumerate_basis_shifted(lattice, coset, signed_h(d), N)) {
        out.add_term(lh_weight(lattice, d, b), GaussRational(1));
    }
    return out;
}

FactorizationResult factorization_check(const EvenLattice &lattice, std::size_t coset, const ConformalDatum &d,
                                        const Rational &N)
{
    const std::size_t k = lattice.rank();
    const GaussVector h = signed_h(d);
    const GaussRational hh2 = lattice.pair(h, h) / GaussRational(2);
    const GaussRational base(Rational(-static_cast<long>(k), 24));

    const QSeries z = partition_function(lattice, coset, d, N);
    QSeries shift(N + hh2.re() + 1, (d.central_charge - GaussRational(static_cast<long>(k))) / GaussRational(24) + hh2);
    shift.add_term(GaussRational(0), GaussRational(1));
    FactorizationResult res;
    res.lhs = mul(z, shift).rebased(base);
    const Rational order = N + hh2.re();
    const QSeries theta = theta_series(lattice, coset, h, order);
    // mul keeps the common order, so z_m1 must reach past it by the most negative theta exponent
    Rational lowest = 0;
    for (const auto &[ex, c] : theta.terms()) lowest = std::min(lowest, ex.re());
    res.rhs = mul(z_m1(k, order - lowest), theta);
    res.equal = equal_up_to(res.lhs, res.rhs) && res.lhs.order() == res.rhs.order();
    return res;
}

JacobiCoeffs jacobi_coeffs(const EvenLattice &lattice, std::size_t coset, const GaussVector &h, const Rational &N)
{
    real_coords(h);
    const LatticePoint rep = lattice.coset_reps()[coset];
    const GaussVector &hg = h;
    // <h, b_i> and <h, rep> integral gives integral eigenvalues on the whole coset
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
        IntVector e(lattice.rank(), 0);
        e[i] = 1;
        if (!lattice.pair(hg, lattice.point_from_ints(e)).is_rational_integer()) throw NonIntegralSpectrum("h(0) is not integral on the lattice");
    }
    if (!lattice.pair(hg, rep).is_rational_integer()) throw NonIntegralSpectrum("h(0) is not integral on this module");

    JacobiCoeffs jc;
    jc.module = coset;
    jc.lambda = lowest_weight(lattice, coset);
    jc.s = Rational(-static_cast<long>(lattice.rank()), 24) + jc.lambda;
    jc.order = N;
    for (const auto &b : enumerate_basis(lattice, coset, jc.lambda + N)) {
        const std::int64_t n = to_int64_exact(l0_weight(lattice, b) - jc.lambda);
        const std::int64_t r = to_int64_exact(lattice.pair(hg, b.point).re());
        ++jc.table[{n, r}];
    }
    return jc;
}

std::vector<JacobiCoeffs> jacobi_tables(const EvenLattice &lattice, const GaussVector &h, const Rational &N)
{
    std::vector<JacobiCoeffs> out;
    for (std::size_t c = 0; c < lattice.coset_reps().size(); ++c) out.push_back(jacobi_coeffs(lattice, c, h, N));
    return out;
}

GrowthBound growth_bound(const EvenLattice &lattice, const GaussVector &h)
{
    GrowthBound g;
    g.m = lattice.pair(h, h).re() / 2;
    std::vector<Rational> lam;
    for (std::size_t c = 0; c < lattice.coset_reps().size(); ++c) lam.push_back(lowest_weight(lattice, c));
    for (const auto &li : lam) {
        Rational best = 0;
        for (const auto &lj : lam) best = std::max(best, Rational(abs(li - lj)));
        g.d.push_back(best);
    }
    return g;
}

VanishingReport vanishing_bound_check(const JacobiCoeffs &jc, const Rational &m, const Rational &d_i)
{
    if (m <= 0) throw Unsatisfiable("the vanishing bound needs m > 0");
    VanishingReport rep;
    rep.module = jc.module;
    for (const auto &[key, count] : jc.table) {
        const auto [n, r] = key;
        ++rep.entries_tested;
        const Rational lhs(static_cast<long>(r * r));
        if (count != 0 && lhs > m * m + 4 * m * (Rational(static_cast<long>(n)) + d_i)) rep.counterexamples.push_back(key);
    }
    return rep;
}

EllipticReport elliptic_transform_check(const EvenLattice &lattice, const GaussVector &h,
                                        const std::vector<JacobiCoeffs> &tables, std::int64_t u)
{
    EllipticReport rep;
    rep.u = u;
    const RatVector hc = real_coords(h);
    RatVector uh(hc.size());
    for (std::size_t i = 0; i < hc.size(); ++i) uh[i] = hc[i] * Rational(static_cast<long>(u));
    const LatticePoint shift = lattice.point(uh);
    const Rational m = lattice.pair(h, h).re() / 2;

    std::map<std::size_t, std::size_t> index;
    for (std::size_t i = 0; i < tables.size(); ++i) index.emplace(tables[i].module, i);
    for (const auto &t : tables) {
        const std::size_t target = lattice.coset_of(lattice.add(lattice.coset_reps()[t.module], shift));
        rep.permutation.push_back(target);
    }

    // (n, r) in table i -> (n', r') in table i' for translation by v*h
    auto image = [&](const JacobiCoeffs &from, const JacobiCoeffs &to, std::int64_t v, std::int64_t n,
                     std::int64_t r) {
        const Rational nn = Rational(static_cast<long>(n + r * v)) + m * Rational(static_cast<long>(v * v)) + from.s - to.s;
        return std::pair{to_int64_exact(nn), r + to_int64_exact(2 * m * Rational(static_cast<long>(v)))};
    };

    for (std::size_t i = 0; i < tables.size(); ++i) {
        const auto it = index.find(rep.permutation[i]);
        if (it == index.end()) continue;
        const JacobiCoeffs &src = tables[i];
        const JacobiCoeffs &dst = tables[it->second];
        auto check = [&](const JacobiCoeffs &from, const JacobiCoeffs &to, std::int64_t v) {
            for (const auto &[key, count] : from.table) {
                const auto [n2, r2] = image(from, to, v, key.first, key.second);
                if (Rational(static_cast<long>(n2)) > to.order) {
                    ++rep.skipped;
                    continue;
                }
                ++rep.checked;
                const std::int64_t other = n2 < 0 ? 0 : to.at(n2, r2);
                if (other != count) ++rep.failures;
            }
        };
        check(src, dst, u);
        check(dst, src, -u);
    }
    return rep;
}

std::vector<GrowthEntry> hn_growth(const EvenLattice &lattice, const GaussVector &h, const Rational &N)
{
    const JacobiCoeffs jc = jacobi_coeffs(lattice, 0, h, N);
    const GrowthBound g = growth_bound(lattice, h);
    std::vector<GrowthEntry> out;
    const std::int64_t top = to_int64(floor_of(N));
    for (std::int64_t n = 0; n <= top; ++n) {
        GrowthEntry e;
        e.n = n;
        for (const auto &[key, count] : jc.table) {
            if (key.first == n && count != 0) e.h_n = std::max(e.h_n, key.second < 0 ? -key.second : key.second);
        }
        e.bound = 4 * g.m * Rational(static_cast<long>(n)) + g.m * g.m + 4 * g.m * g.d[0];
        e.ok = Rational(static_cast<long>(e.h_n * e.h_n)) <= e.bound;
        out.push_back(e);
    }
    return out;
}

} // namespace vertexflow
