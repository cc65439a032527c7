#include <vertexflow/fock.hpp>

#include <algorithm>
#include <stdexcept>

#include <vertexflow/errors.hpp>

namespace vertexflow {

namespace {

bool precedes(const FockFactor &a, const FockFactor &b)
{
    return a.mode > b.mode || (a.mode == b.mode && a.index < b.index);
}

void hash_mix(std::size_t &seed, std::size_t v) { seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2); }

using FockVec = std::map<FockMonomial, GaussRational>;

void fock_add(FockVec &v, FockMonomial m, const GaussRational &c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = v.try_emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) v.erase(it);
    }
}

// sum_i coeffs_i b_i(n) for n != 0 on a pure Fock vector.
FockVec fock_heis(const EvenLattice &lattice, const std::vector<GaussRational> &coeffs, int n, const FockVec &v)
{
    FockVec out;
    const auto k = lattice.rank();
    for (const auto &[mono, c] : v) {
        if (n < 0) {
            for (std::size_t i = 0; i < k; ++i) {
                if (!coeffs[i].is_zero()) fock_add(out, mono.with({-n, static_cast<int>(i)}), c * coeffs[i]);
            }
            continue;
        }
        const auto &fs = mono.factors();
        for (std::size_t pos = 0; pos < fs.size(); ++pos) {
            if (fs[pos].mode != n) continue;
            GaussRational g;
            for (std::size_t i = 0; i < k; ++i) {
                const auto gij = lattice.gram()[i][static_cast<std::size_t>(fs[pos].index)];
                if (gij != 0 && !coeffs[i].is_zero()) g += coeffs[i] * GaussRational(static_cast<long>(gij));
            }
            if (!g.is_zero()) fock_add(out, mono.without(pos), c * g * GaussRational(static_cast<long>(n)));
        }
    }
    return out;
}

void fock_axpy(FockVec &y, const GaussRational &a, const FockVec &x)
{
    for (const auto &[m, c] : x) fock_add(y, m, a * c);
}

Rational max_l0_weight(const EvenLattice &lattice, const GradedVector &v)
{
    Rational best = 0;
    bool first = true;
    for (const auto &[b, c] : v.terms()) {
        const auto w = l0_weight(lattice, b);
        if (first || w > best) best = w;
        first = false;
    }
    return best;
}

} // namespace

FockMonomial::FockMonomial(std::vector<FockFactor> factors) : factors_(std::move(factors))
{
    for (const auto &f : factors_) {
        if (f.mode <= 0) throw std::invalid_argument("Fock factor needs a positive mode");
        degree_ += f.mode;
    }
    std::sort(factors_.begin(), factors_.end(), precedes);
}

FockMonomial FockMonomial::with(FockFactor f) const
{
    FockMonomial out;
    out.factors_.reserve(factors_.size() + 1);
    auto pos = std::upper_bound(factors_.begin(), factors_.end(), f, precedes);
    out.factors_.insert(out.factors_.end(), factors_.begin(), pos);
    out.factors_.push_back(f);
    out.factors_.insert(out.factors_.end(), pos, factors_.end());
    out.degree_ = degree_ + f.mode;
    return out;
}

FockMonomial FockMonomial::without(std::size_t pos) const
{
    FockMonomial out = *this;
    out.degree_ -= factors_[pos].mode;
    out.factors_.erase(out.factors_.begin() + static_cast<std::ptrdiff_t>(pos));
    return out;
}

std::strong_ordering operator<=>(const FockMonomial &a, const FockMonomial &b)
{
    if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
    const auto n = std::min(a.factors_.size(), b.factors_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.factors_[i].mode != b.factors_[i].mode) return b.factors_[i].mode <=> a.factors_[i].mode;
        if (a.factors_[i].index != b.factors_[i].index) return a.factors_[i].index <=> b.factors_[i].index;
    }
    return a.factors_.size() <=> b.factors_.size();
}

std::strong_ordering operator<=>(const BasisVector &a, const BasisVector &b)
{
    if (auto c = a.point <=> b.point; c != 0) return c;
    return a.fock <=> b.fock;
}

std::size_t BasisHash::operator()(const BasisVector &b) const noexcept
{
    std::size_t seed = 0;
    for (const auto &f : b.fock.factors()) hash_mix(seed, static_cast<std::size_t>(f.mode * 131 + f.index));
    for (auto x : b.point.num) hash_mix(seed, static_cast<std::size_t>(x));
    return seed;
}

GradedVector::GradedVector(const BasisVector &b, GaussRational c)
{
    if (!c.is_zero()) terms_.emplace(b, std::move(c));
}

GaussRational GradedVector::coeff(const BasisVector &b) const
{
    auto it = terms_.find(b);
    return it == terms_.end() ? GaussRational{} : it->second;
}

void GradedVector::add(const BasisVector &b, const GaussRational &c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(b, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void GradedVector::add(BasisVector &&b, const GaussRational &c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(b), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void GradedVector::axpy(const GaussRational &c, const GradedVector &other)
{
    if (c.is_zero()) return;
    const bool unit = c == GaussRational(1);
    for (const auto &[b, x] : other.terms_) add(b, unit ? x : c * x);
}

GradedVector &GradedVector::operator*=(const GaussRational &c)
{
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto &[b, x] : terms_) x *= c;
    return *this;
}

GradedVector GradedVector::filter(const std::function<bool(const BasisVector &)> &pred) const
{
    GradedVector out;
    for (const auto &[b, c] : terms_) {
        if (pred(b)) out.terms_.emplace(b, c);
    }
    return out;
}

Rational l0_weight(const EvenLattice &lattice, const BasisVector &b)
{
    return Rational(b.fock.degree()) + lattice.norm2(b.point) / 2;
}

std::vector<FockMonomial> fock_monomials(std::size_t rank, int degree)
{
    std::vector<FockMonomial> out;
    std::vector<FockFactor> cur;
    // Next factor must not precede the last one.
    std::function<void(int, FockFactor)> rec = [&](int left, FockFactor last) {
        if (left == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int m = std::min(left, last.mode); m >= 1; --m) {
            const int start = (m == last.mode) ? last.index : 0;
            for (int i = start; i < static_cast<int>(rank); ++i) {
                cur.push_back({m, i});
                rec(left - m, {m, i});
                cur.pop_back();
            }
        }
    };
    if (degree >= 0) rec(degree, {degree, 0});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<BasisVector> enumerate_basis(const EvenLattice &lattice, std::size_t coset, const Rational &max_weight)
{
    return enumerate_basis_shifted(lattice, coset, GaussVector(lattice.rank()), max_weight);
}

std::vector<BasisVector> enumerate_basis_shifted(const EvenLattice &lattice, std::size_t coset,
                                                 const GaussVector &h, const Rational &max_weight)
{
    const auto k = lattice.rank();
    GaussVector h_re(k);
    RatVector center(k);
    for (std::size_t i = 0; i < k; ++i) {
        center[i] = h[i].re();
        h_re[i] = GaussRational(h[i].re());
    }
    // <g,g>/2 - <h_re,g> <= N  iff  <g - h_re, g - h_re>/2 <= N + <h_re,h_re>/2
    const Rational radius = max_weight + lattice.pair(h_re, h_re).re() / 2;
    std::vector<std::pair<GaussRational, BasisVector>> keyed;
    for (const auto &p : points_in_ellipsoid(lattice, coset, center, radius)) {
        const GaussRational base = GaussRational(lattice.norm2(p) / 2) - lattice.pair(h, p);
        const Rational room = max_weight - base.re();
        if (room < 0) continue;
        const int top = static_cast<int>(to_int64(floor_of(room)));
        for (int d = 0; d <= top; ++d) {
            for (auto &m : fock_monomials(k, d)) {
                keyed.emplace_back(base + GaussRational(d), BasisVector{std::move(m), p});
            }
        }
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    std::vector<BasisVector> out;
    out.reserve(keyed.size());
    for (auto &kv : keyed) out.push_back(std::move(kv.second));
    return out;
}

std::size_t ModeEngine::KeyHash::operator()(const Key &k) const noexcept
{
    std::size_t seed = BasisHash{}(k.a);
    hash_mix(seed, static_cast<std::size_t>(k.n));
    hash_mix(seed, BasisHash{}(k.w));
    return seed;
}

ModeEngine::ModeEngine(const EvenLattice &lattice) : lattice_(lattice) {}

BasisVector ModeEngine::vacuum() const { return {FockMonomial{}, LatticePoint{IntVector(lattice_.rank(), 0)}}; }

BasisVector ModeEngine::exp_vector(const IntVector &alpha) const
{
    return {FockMonomial{}, lattice_.point_from_ints(alpha)};
}

BasisVector ModeEngine::heisenberg_vector(std::size_t i) const
{
    return {FockMonomial({{1, static_cast<int>(i)}}), LatticePoint{IntVector(lattice_.rank(), 0)}};
}

GradedVector ModeEngine::heisenberg_state(const GaussVector &h) const
{
    GradedVector out;
    for (std::size_t i = 0; i < lattice_.rank(); ++i) out.add(heisenberg_vector(i), h[i]);
    return out;
}

GradedVector ModeEngine::omega() const
{
    GradedVector out;
    const auto k = lattice_.rank();
    const auto zero = LatticePoint{IntVector(k, 0)};
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            const Rational c = lattice_.gram_inverse()[i][j] / 2;
            out.add(BasisVector{FockMonomial({{1, static_cast<int>(i)}, {1, static_cast<int>(j)}}), zero}, GaussRational(c));
        }
    }
    return out;
}

GradedVector ModeEngine::heis_mode(std::size_t i, std::int64_t n, const GradedVector &v) const
{
    GaussVector h(lattice_.rank());
    h[i] = GaussRational(1);
    return heis_mode(h, n, v);
}

GradedVector ModeEngine::heis_mode(const GaussVector &h, std::int64_t n, const GradedVector &v) const
{
    GradedVector out;
    if (n == 0) {
        for (const auto &[b, c] : v.terms()) out.add(b, c * lattice_.pair(h, b.point));
        return out;
    }
    for (const auto &[b, c] : v.terms()) {
        FockVec single{{b.fock, c}};
        for (auto &[m, x] : fock_heis(lattice_, h, static_cast<int>(n), single)) out.add(BasisVector{m, b.point}, x);
    }
    return out;
}

GradedVector ModeEngine::exp_basis_mode(const LatticePoint &beta, std::int64_t n, const BasisVector &w) const
{
    const auto k = lattice_.rank();
    const IntVector bi = lattice_.integer_coords(beta);
    GaussVector plus(k), minus(k);
    for (std::size_t i = 0; i < k; ++i) {
        plus[i] = GaussRational(static_cast<long>(-bi[i]));
        minus[i] = GaussRational(static_cast<long>(bi[i]));
    }
    const std::int64_t bg = to_int64_exact(lattice_.pair(beta, w.point));
    LatticePoint offset = w.point;
    const auto &rep = lattice_.coset_reps()[lattice_.coset_of(w.point)];
    for (std::size_t i = 0; i < k; ++i) offset.num[i] -= rep.num[i];
    const int sign = cocycle_eval(lattice_.cocycle(), bi, lattice_.integer_coords(offset));
    const LatticePoint target = lattice_.add(beta, w.point);

    const int deg = w.fock.degree();
    // S+_k = (1/k) sum_j (-beta(j)) S+_{k-j}
    std::vector<FockVec> splus(static_cast<std::size_t>(deg) + 1);
    splus[0][w.fock] = GaussRational(1);
    for (int kk = 1; kk <= deg; ++kk) {
        FockVec acc;
        for (int j = 1; j <= kk; ++j) fock_axpy(acc, GaussRational(1), fock_heis(lattice_, plus, j, splus[static_cast<std::size_t>(kk - j)]));
        const GaussRational inv(Rational(1, kk));
        for (auto &[m, c] : acc) c *= inv;
        splus[static_cast<std::size_t>(kk)] = std::move(acc);
    }

    GradedVector out;
    for (int kk = 0; kk <= deg; ++kk) {
        const std::int64_t l = kk - n - 1 - bg;
        if (l < 0 || splus[static_cast<std::size_t>(kk)].empty()) continue;
        // S-_l = (1/l) sum_j beta(-j) S-_{l-j}
        std::vector<FockVec> sminus(static_cast<std::size_t>(l) + 1);
        sminus[0] = splus[static_cast<std::size_t>(kk)];
        for (std::int64_t ll = 1; ll <= l; ++ll) {
            FockVec acc;
            for (std::int64_t j = 1; j <= ll; ++j) {
                fock_axpy(acc, GaussRational(1), fock_heis(lattice_, minus, static_cast<int>(-j), sminus[static_cast<std::size_t>(ll - j)]));
            }
            const GaussRational inv(Rational(1, static_cast<long>(ll)));
            for (auto &[m, c] : acc) c *= inv;
            sminus[static_cast<std::size_t>(ll)] = std::move(acc);
        }
        for (const auto &[m, c] : sminus[static_cast<std::size_t>(l)]) out.add(BasisVector{m, target}, sign > 0 ? c : -c);
    }
    return out;
}

GradedVector ModeEngine::exp_mode(const IntVector &alpha, std::int64_t n, const GradedVector &v,
                                  const std::optional<Truncation> &trunc)
{
    return mode(GradedVector(exp_vector(alpha)), n, v, trunc);
}

const GradedVector &ModeEngine::basis_mode(const BasisVector &a, std::int64_t n, const BasisVector &w)
{
    Key key{a, n, w};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    GradedVector value = compute_basis_mode(a, n, w);
    return memo_.emplace(std::move(key), std::move(value)).first->second;
}

GradedVector ModeEngine::compute_basis_mode(const BasisVector &a, std::int64_t n, const BasisVector &w)
{
    if (a.fock.empty()) {
        if (a.point.is_zero()) return n == -1 ? GradedVector(w) : GradedVector();
        return exp_basis_mode(a.point, n, w);
    }
    // a = h(-m) a', h = b_i with the smallest mode.
    const auto &fs = a.fock.factors();
    const std::size_t last = fs.size() - 1;
    const int m = fs[last].mode;
    const auto i = static_cast<std::size_t>(fs[last].index);
    const BasisVector ap{a.fock.without(last), a.point};
    const GradedVector wv(w);

    GradedVector out;
    // sum_j C(m+j-1, j) h(-m-j) a'(n+j) w
    const Rational wsum = l0_weight(lattice_, ap) + l0_weight(lattice_, w) - 1;
    const std::int64_t pmax = to_int64(floor_of(wsum));
    Integer binom = 1; // C(m+j-1, j)
    for (std::int64_t j = 0; n + j <= pmax; ++j) {
        if (j > 0) {
            binom *= (m + j - 1);
            binom /= j;
        }
        const GradedVector &t = basis_mode(ap, n + j, w);
        if (t.is_zero()) continue;
        out.axpy(GaussRational(Rational(binom)), heis_mode(i, -(m + j), t));
    }
    // - (-1)^m sum_j C(m+j-1, j) a'(n-m-j) h(j) w
    const GaussRational sign((m % 2 == 0) ? -1 : 1);
    binom = 1;
    for (std::int64_t j = 0; j <= w.fock.degree(); ++j) {
        if (j > 0) {
            binom *= (m + j - 1);
            binom /= j;
        }
        const GradedVector hw = heis_mode(i, j, wv);
        for (const auto &[b, c] : hw.terms()) {
            const GradedVector &t = basis_mode(ap, n - m - j, b);
            if (!t.is_zero()) out.axpy(sign * GaussRational(Rational(binom)) * c, t);
        }
    }
    return out;
}

void ModeEngine::apply_truncation(GradedVector &v, const std::optional<Truncation> &trunc) const
{
    if (!trunc) return;
    bool over = false;
    GradedVector kept = v.filter([&](const BasisVector &b) {
        if (l0_weight(lattice_, b) <= trunc->max_weight) return true;
        over = true;
        return false;
    });
    if (over && !trunc->lossy) {
        throw TruncationExceeded("result weight exceeds truncation " + to_pq_string(trunc->max_weight));
    }
    v = std::move(kept);
}

GradedVector ModeEngine::mode(const GradedVector &a, std::int64_t n, const GradedVector &b,
                              const std::optional<Truncation> &trunc)
{
    GradedVector out;
    for (const auto &[ab, ac] : a.terms()) {
        for (const auto &[bb, bc] : b.terms()) {
            const GradedVector &t = basis_mode(ab, n, bb);
            if (!t.is_zero()) out.axpy(ac * bc, t);
        }
    }
    apply_truncation(out, trunc);
    return out;
}

GradedVector ModeEngine::virasoro(std::int64_t n, const GradedVector &v) const
{
    const auto k = lattice_.rank();
    GradedVector out;
    for (const auto &[b, c] : v.terms()) {
        const GradedVector single(b, c);
        const std::int64_t deg = b.fock.degree();
        const std::int64_t plo = (n >= 0) ? (n + 1) / 2 : -((-n) / 2);
        const std::int64_t phi = std::max<std::int64_t>(deg, 0);
        for (std::int64_t p = plo; p <= phi; ++p) {
            const std::int64_t q = n - p;
            if (q > p) continue;
            const GaussRational weight = (p == q) ? GaussRational(Rational(1, 2)) : GaussRational(1);
            for (std::size_t j = 0; j < k; ++j) {
                const GradedVector first = heis_mode(j, p, single);
                if (first.is_zero()) continue;
                GaussVector dual(k);
                for (std::size_t i = 0; i < k; ++i) dual[i] = GaussRational(lattice_.gram_inverse()[i][j]);
                out.axpy(weight, heis_mode(dual, q, first));
            }
        }
    }
    return out;
}

GradedVector ModeEngine::translate(const GradedVector &v, const std::optional<Truncation> &trunc)
{
    return mode(v, -2, GradedVector(vacuum()), trunc);
}

bool ModeEngine::commutator_check(const GradedVector &a, const GradedVector &b, std::int64_t m, std::int64_t n,
                                  const std::vector<BasisVector> &test)
{
    const std::int64_t imax = to_int64(floor_of(max_l0_weight(lattice_, a) + max_l0_weight(lattice_, b) - 1));
    struct Product {
        std::int64_t i;
        GaussRational coeff;
        GradedVector ab;
    };
    std::vector<Product> products;
    for (std::int64_t i = 0; i <= imax; ++i) {
        GradedVector ab = mode(a, i, b);
        if (!ab.is_zero()) products.push_back({i, gbinom(GaussRational(static_cast<long>(m)), i), std::move(ab)});
    }
    for (const auto &w : test) {
        const GradedVector wv(w);
        GradedVector lhs = mode(a, m, mode(b, n, wv));
        lhs -= mode(b, n, mode(a, m, wv));
        GradedVector rhs;
        for (const auto &p : products) rhs.axpy(p.coeff, mode(p.ab, m + n - p.i, wv));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

} // namespace vertexflow
