#include <vertexflow/flow.hpp>

#include <algorithm>
#include <map>
#include <set>

#include <vertexflow/errors.hpp>

namespace vertexflow {

namespace {

GaussRational vacuum_coeff(const ModeEngine &engine, const GradedVector &v) { return v.coeff(engine.vacuum()); }

std::map<GaussRational, std::vector<BasisVector>> group_by_mu(const EvenLattice &lattice, const ConformalDatum &d,
                                                              const std::vector<BasisVector> &basis)
{
    std::map<GaussRational, std::vector<BasisVector>> out;
    for (const auto &b : basis) out[lh_weight(lattice, d, b)].push_back(b);
    return out;
}

GaussVector scaled_h(const ConformalDatum &d)
{
    GaussVector out = d.h;
    for (auto &x : out) x *= GaussRational(d.sign);
    return out;
}

void require_cartan(const ConformalDatum &d, const char *what)
{
    if (!d.is_cartan()) throw Unsatisfiable(std::string(what) + " needs a Cartan deformation vector");
}

std::map<GaussRational, std::size_t> merge_dims(const std::vector<SpectrumEntry> &entries, const Rational &cutoff)
{
    std::map<GaussRational, std::size_t> out;
    for (const auto &e : entries) {
        if (e.mu.re() <= cutoff) out[e.mu] += e.multiplicity;
    }
    return out;
}

} // namespace

ConformalDatum deform(ModeEngine &engine, const GaussVector &h, int sign, const GradedVector &extra)
{
    const auto &lattice = engine.lattice();
    if (h.size() != lattice.rank()) throw ConfigError("deformation vector has wrong rank");
    if (sign != 1 && sign != -1) throw ConfigError("sign must be +1 or -1");
    for (const auto &[b, c] : extra.terms()) {
        if (l0_weight(lattice, b) != 1 || lattice.coset_of(b.point) != 0) {
            throw NotWeightOne("deformation vector has a component outside V_1");
        }
    }
    ConformalDatum d;
    d.h = h;
    d.extra = extra;
    d.sign = sign;
    const GradedVector hs = h_state(engine, d);
    d.omega = engine.omega();
    d.omega.axpy(GaussRational(sign), engine.translate(hs));
    d.alpha = vacuum_coeff(engine, engine.mode(hs, 1, hs));
    d.beta = vacuum_coeff(engine, engine.virasoro(1, hs));
    d.central_charge = GaussRational(engine.central_charge()) +
                       GaussRational(12) * (GaussRational(sign) * d.beta - d.alpha);
    return d;
}

GradedVector h_state(const ModeEngine &engine, const ConformalDatum &d)
{
    GradedVector hs = engine.heisenberg_state(d.h);
    hs += d.extra;
    return hs;
}

GaussRational lh_weight(const EvenLattice &lattice, const ConformalDatum &d, const BasisVector &b)
{
    return GaussRational(l0_weight(lattice, b)) - GaussRational(d.sign) * lattice.pair(d.h, b.point);
}

GradedVector lh_mode(ModeEngine &engine, const ConformalDatum &d, std::int64_t n, const GradedVector &v)
{
    GradedVector out = engine.virasoro(n, v);
    GradedVector hv = engine.heis_mode(d.h, n, v);
    if (!d.extra.is_zero()) hv += engine.mode(d.extra, n, v);
    out.axpy(GaussRational(static_cast<long>(-d.sign * (n + 1))), hv);
    return out;
}

VirasoroResult virasoro_check(ModeEngine &engine, const ConformalDatum &d, std::int64_t m, std::int64_t n,
                              const Rational &N)
{
    VirasoroResult res;
    const auto &lattice = engine.lattice();
    const Rational top = N - Rational(static_cast<long>(std::max(std::llabs(m), std::llabs(n))));
    if (top < 0) return res;
    const GaussRational central = (m + n == 0)
                                      ? GaussRational(Rational(m * m * m - m, 12)) * d.central_charge
                                      : GaussRational();
    for (const auto &b : enumerate_basis(lattice, 0, top)) {
        const GradedVector v(b);
        ++res.vectors_tested;
        GradedVector lhs = lh_mode(engine, d, m, lh_mode(engine, d, n, v));
        lhs -= lh_mode(engine, d, n, lh_mode(engine, d, m, v));
        GradedVector rhs = GaussRational(static_cast<long>(m - n)) * lh_mode(engine, d, m + n, v);
        rhs.axpy(central, v);
        if (!(lhs == rhs)) res.bracket_ok = false;
        for (auto k : {m, n, m + n}) {
            if (!(engine.mode(d.omega, k + 1, v) == lh_mode(engine, d, k, v))) res.shifted_modes_ok = false;
        }
    }
    if (m + n == 0) {
        const GradedVector one(engine.vacuum());
        GradedVector c = lh_mode(engine, d, m, lh_mode(engine, d, -m, one));
        c -= lh_mode(engine, d, -m, lh_mode(engine, d, m, one));
        c.axpy(GaussRational(static_cast<long>(-2 * m)), lh_mode(engine, d, 0, one));
        res.central_ok = c == central * one;
    }
    return res;
}

bool violates_sector(const GaussRational &mu)
{
    return mu.re() < abs(mu.im());
}

std::vector<Rational> levels_up_to(const EvenLattice &lattice, std::size_t coset, const Rational &N)
{
    std::set<Rational> levels;
    for (const auto &b : enumerate_basis(lattice, coset, N)) levels.insert(l0_weight(lattice, b));
    return {levels.begin(), levels.end()};
}

std::vector<BasisVector> level_basis(const EvenLattice &lattice, std::size_t coset, const Rational &level)
{
    std::vector<BasisVector> out;
    for (auto &b : enumerate_basis(lattice, coset, level)) {
        if (l0_weight(lattice, b) == level) out.push_back(std::move(b));
    }
    return out;
}

Matrix operator_matrix(const std::vector<BasisVector> &basis,
                       const std::function<GradedVector(const GradedVector &)> &op)
{
    std::map<BasisVector, std::size_t> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    Matrix m(basis.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j) {
        const GradedVector img = op(GradedVector(basis[j]));
        for (const auto &[b, c] : img.terms()) {
            auto it = index.find(b);
            if (it == index.end()) throw Error("operator image leaves the chosen subspace");
            m(it->second, j) = c;
        }
    }
    return m;
}

std::vector<GeneralizedEigen> generalized_eigenspaces(const Matrix &m)
{
    const std::size_t n = m.rows();
    std::set<GaussRational> candidates;
    for (std::size_t i = 0; i < n; ++i) candidates.insert(m(i, i));
    std::vector<GeneralizedEigen> out;
    std::size_t total = 0;
    for (const auto &mu : candidates) {
        Matrix a = m - mu * Matrix::identity(n);
        Matrix power = a;
        std::size_t prev = 0;
        std::size_t j = 1;
        std::size_t dim = n - power.rank();
        while (dim != prev) {
            prev = dim;
            power = power * a;
            dim = n - power.rank();
            ++j;
        }
        if (dim == 0) continue;
        GeneralizedEigen g;
        g.mu = mu;
        g.multiplicity = dim;
        g.jordan_max = j - 1;
        g.basis = power.kernel();
        total += dim;
        out.push_back(std::move(g));
    }
    if (total != n) throw Error("spectrum is not contained in Q(i)");
    return out;
}

SpectrumReport spectrum(ModeEngine &engine, const ConformalDatum &d, std::size_t coset, const Rational &N)
{
    const auto &lattice = engine.lattice();
    SpectrumReport rep;
    rep.coset = coset;
    rep.cutoff = N;
    std::map<Rational, std::vector<BasisVector>> by_level;
    for (auto &b : enumerate_basis(lattice, coset, N)) by_level[l0_weight(lattice, b)].push_back(std::move(b));
    for (const auto &[level, basis] : by_level) {
        if (d.is_cartan()) {
            for (const auto &[mu, vecs] : group_by_mu(lattice, d, basis)) rep.entries.push_back({level, mu, vecs.size(), 1});
            continue;
        }
        const Matrix m = operator_matrix(basis, [&](const GradedVector &v) { return lh_mode(engine, d, 0, v); });
        for (const auto &g : generalized_eigenspaces(m)) rep.entries.push_back({level, g.mu, g.multiplicity, g.jordan_max});
    }
    for (const auto &e : rep.entries) {
        if (violates_sector(e.mu)) rep.violations.push_back(e);
    }
    return rep;
}

PvoaReport pvoa_check(ModeEngine &engine, const ConformalDatum &d, std::size_t coset, const Rational &N)
{
    const auto &lattice = engine.lattice();
    PvoaReport rep;
    rep.coset = coset;
    rep.cutoff = N;
    std::map<GaussRational, std::size_t> dims, wider;
    if (d.is_cartan()) {
        const auto shift = scaled_h(d);
        for (const auto &[mu, vecs] : group_by_mu(lattice, d, enumerate_basis_shifted(lattice, coset, shift, N))) {
            dims[mu] = vecs.size();
        }
        for (const auto &[mu, vecs] : group_by_mu(lattice, d, enumerate_basis_shifted(lattice, coset, shift, N + 2))) {
            if (mu.re() <= N) wider[mu] = vecs.size();
        }
    } else {
        dims = merge_dims(spectrum(engine, d, coset, N).entries, N);
        wider = merge_dims(spectrum(engine, d, coset, N + 2).entries, N);
    }
    rep.stable = dims == wider;
    for (const auto &[mu, dim] : dims) {
        rep.eigenspaces.push_back({mu, dim});
        if (violates_sector(mu)) rep.violations.push_back({mu, dim});
    }
    return rep;
}

namespace {

struct Generator {
    GradedVector vec;
    GaussRational weight;
};

std::vector<Generator> lowest_weight_generators(ModeEngine &engine, const ConformalDatum &d)
{
    const auto &lattice = engine.lattice();
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
        gens.push_back({GradedVector(engine.heisenberg_vector(i)), GaussRational(1)});
        for (int s : {1, -1}) {
            IntVector beta(lattice.rank(), 0);
            beta[i] = s;
            const auto b = engine.exp_vector(beta);
            gens.push_back({GradedVector(b), lh_weight(lattice, d, b)});
        }
    }
    return gens;
}

// Kernel of all forbidden generator modes on span(candidates).
std::vector<GradedVector> lowest_weight_kernel(ModeEngine &engine, const ConformalDatum &d,
                                               const std::vector<BasisVector> &candidates)
{
    const auto &lattice = engine.lattice();
    Rational wmax = 0;
    for (const auto &b : candidates) wmax = std::max(wmax, l0_weight(lattice, b));
    // One row per (operator, result basis vector).
    std::map<std::pair<std::size_t, BasisVector>, std::size_t> rows;
    std::vector<std::vector<std::pair<std::size_t, GaussRational>>> cols(candidates.size());
    std::size_t block = 0;
    for (const auto &g : lowest_weight_generators(engine, d)) {
        const Rational g0 = l0_weight(lattice, g.vec.terms().begin()->first);
        const std::int64_t lo = to_int64(ceil_of(g.weight.re() - 1));
        const std::int64_t hi = to_int64(floor_of(g0 + wmax - 1));
        for (std::int64_t n = lo; n <= hi; ++n, ++block) {
            if (g.weight - GaussRational(1) == GaussRational(static_cast<long>(n))) continue;
            for (std::size_t j = 0; j < candidates.size(); ++j) {
                const GradedVector img = engine.mode(g.vec, n, GradedVector(candidates[j]));
                for (const auto &[b, c] : img.terms()) {
                    auto it = rows.try_emplace({block, b}, rows.size()).first;
                    cols[j].emplace_back(it->second, c);
                }
            }
        }
    }
    const std::size_t nrows = rows.size();
    Matrix m(nrows, candidates.size());
    for (std::size_t j = 0; j < candidates.size(); ++j)
        for (const auto &[r, x] : cols[j]) m(r, j) += x;
    std::vector<GradedVector> out;
    for (const auto &kv : m.kernel()) {
        GradedVector v;
        for (std::size_t j = 0; j < candidates.size(); ++j) v.add(candidates[j], kv[j]);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

std::vector<LowestWeightSpace> lowest_weight_vectors(ModeEngine &engine, const ConformalDatum &d, std::size_t coset,
                                                     const Rational &N)
{
    require_cartan(d, "lowest weight detection");
    const auto &lattice = engine.lattice();
    std::vector<LowestWeightSpace> out;
    for (const auto &[mu, vecs] : group_by_mu(lattice, d, enumerate_basis_shifted(lattice, coset, scaled_h(d), N))) {
        auto kernel = lowest_weight_kernel(engine, d, vecs);
        if (!kernel.empty()) out.push_back({mu, std::move(kernel)});
    }
    return out;
}

bool is_lowest_weight(ModeEngine &engine, const ConformalDatum &d, const GradedVector &v, const GaussRational &mu)
{
    const auto &lattice = engine.lattice();
    Rational wmax = 0;
    for (const auto &[b, c] : v.terms()) wmax = std::max(wmax, l0_weight(lattice, b));
    for (const auto &g : lowest_weight_generators(engine, d)) {
        const Rational g0 = l0_weight(lattice, g.vec.terms().begin()->first);
        const std::int64_t lo = to_int64(ceil_of(g.weight.re() - 1));
        const std::int64_t hi = to_int64(floor_of(g0 + wmax - 1));
        for (std::int64_t n = lo; n <= hi; ++n) {
            if (g.weight - GaussRational(1) == GaussRational(static_cast<long>(n))) continue;
            if (!engine.mode(g.vec, n, v).is_zero()) return false;
        }
    }
    (void)mu;
    return true;
}

CGradedResult cgraded_check(ModeEngine &engine, const ConformalDatum &d, const std::vector<BasisVector> &samples,
                            std::int64_t nmin, std::int64_t nmax)
{
    require_cartan(d, "the grading check");
    const auto &lattice = engine.lattice();
    CGradedResult res;
    for (const auto &a : samples) {
        if (lattice.coset_of(a.point) != 0) continue;
        for (const auto &b : samples) {
            ++res.pairs_tested;
            const GaussRational wa = lh_weight(lattice, d, a), wb = lh_weight(lattice, d, b);
            for (std::int64_t n = nmin; n <= nmax; ++n) {
                const GaussRational expect = wa + wb - GaussRational(static_cast<long>(n + 1));
                const GradedVector r = engine.mode(GradedVector(a), n, GradedVector(b));
                for (const auto &[rb, rc] : r.terms()) {
                    if (!(lh_weight(lattice, d, rb) == expect)) {
                        ++res.failures;
                        break;
                    }
                }
            }
        }
    }
    return res;
}

std::vector<JordanLevel> jordan_split_h0(ModeEngine &engine, const GradedVector &h_full, std::size_t coset,
                                         const Rational &N)
{
    const auto &lattice = engine.lattice();
    for (const auto &[b, c] : h_full.terms()) {
        if (l0_weight(lattice, b) != 1 || lattice.coset_of(b.point) != 0) {
            throw NotWeightOne("h is not homogeneous of weight 1");
        }
    }
    std::vector<JordanLevel> out;
    for (const auto &level : levels_up_to(lattice, coset, N)) {
        JordanLevel jl;
        jl.level = level;
        jl.basis = level_basis(lattice, coset, level);
        jl.full = operator_matrix(jl.basis, [&](const GradedVector &v) { return engine.mode(h_full, 0, v); });
        const std::size_t n = jl.basis.size();
        Matrix b(n, n), diag(n, n);
        std::size_t col = 0;
        for (const auto &g : generalized_eigenspaces(jl.full)) {
            for (const auto &v : g.basis) {
                for (std::size_t r = 0; r < n; ++r) b(r, col) = v[r];
                diag(col, col) = g.mu;
                ++col;
            }
        }
        jl.semisimple = b * diag * b.inverse();
        jl.nilpotent = jl.full - jl.semisimple;
        out.push_back(std::move(jl));
    }
    return out;
}

} // namespace vertexflow
