#include <vertexflow/lattice.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include <vertexflow/errors.hpp>

namespace vertexflow {

bool LatticePoint::is_zero() const
{
    return std::all_of(num.begin(), num.end(), [](std::int64_t x) { return x == 0; });
}

namespace {

// Fraction-free (Bareiss) determinant of the leading m x m block.
Integer leading_minor(const IntMatrix &g, std::size_t m)
{
    if (m == 0) return 1;
    std::vector<std::vector<Integer>> a(m, std::vector<Integer>(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) a[i][j] = static_cast<long>(g[i][j]);
    }
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        if (a[k][k] == 0) {
            std::size_t s = k + 1;
            while (s < m && a[s][k] == 0) ++s;
            if (s == m) return 0;
            std::swap(a[s], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < m; ++i) {
            for (std::size_t j = k + 1; j < m; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[m - 1][m - 1];
}

std::vector<RatVector> rational_inverse(const IntMatrix &g)
{
    const std::size_t n = g.size();
    std::vector<RatVector> a(n, RatVector(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(g[i][j]);
        a[i][n + i] = 1;
    }
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t sel = col;
        while (sel < n && a[sel][col] == 0) ++sel;
        if (sel == n) throw std::domain_error("singular Gram matrix");
        std::swap(a[sel], a[col]);
        const Rational inv = 1 / a[col][col];
        for (auto &x : a[col]) x *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || a[r][col] == 0) continue;
            const Rational f = a[r][col];
            for (std::size_t c = 0; c < 2 * n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<RatVector> out(n, RatVector(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out[i][j] = a[i][n + j];
    }
    return out;
}

std::int64_t mod_pos(std::int64_t a, std::int64_t m)
{
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

EvenLattice EvenLattice::validate(const IntMatrix &gram)
{
    const std::size_t k = gram.size();
    if (k == 0) throw LatticeError(LatticeError::Kind::NotSquare, "empty Gram matrix");
    for (const auto &row : gram) {
        if (row.size() != k) throw LatticeError(LatticeError::Kind::NotSquare, "Gram matrix is not square");
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (gram[i][j] != gram[j][i]) {
                throw LatticeError(LatticeError::Kind::NotSymmetric, "Gram matrix is not symmetric at (" +
                                                                        std::to_string(i + 1) + "," +
                                                                        std::to_string(j + 1) + ")");
            }
        }
    }
    for (std::size_t i = 0; i < k; ++i) {
        if (gram[i][i] % 2 != 0) {
            throw LatticeError(LatticeError::Kind::NotEven,
                               "odd diagonal entry " + std::to_string(gram[i][i]) + " at position " +
                                   std::to_string(i + 1));
        }
    }
    for (std::size_t m = 1; m <= k; ++m) {
        if (leading_minor(gram, m) <= 0) {
            throw LatticeError(LatticeError::Kind::NotPositiveDefinite,
                               "leading principal minor of order " + std::to_string(m) + " is not positive");
        }
    }

    EvenLattice l;
    l.gram_ = gram;
    l.det_ = to_int64(leading_minor(gram, k));
    l.gram_inv_ = rational_inverse(gram);
    l.cocycle_ = make_cocycle(gram);

    const SmithForm snf = smith_normal_form(gram);
    for (std::size_t i = 0; i < k; ++i) l.smith_.push_back(std::llabs(snf.d[i][i]));

    // L° = V D^{-1} Z^k; enumerate t_i in [0, d_i).
    std::vector<LatticePoint> reps;
    IntVector t(k, 0);
    while (true) {
        LatticePoint p;
        p.num.assign(k, 0);
        for (std::size_t i = 0; i < k; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < k; ++j) acc += snf.v[i][j] * t[j] * (l.det_ / l.smith_[j]);
            p.num[i] = mod_pos(acc, l.det_);
        }
        reps.push_back(std::move(p));
        std::size_t pos = 0;
        while (pos < k) {
            if (++t[pos] < l.smith_[pos]) break;
            t[pos] = 0;
            ++pos;
        }
        if (pos == k) break;
    }
    std::sort(reps.begin(), reps.end());
    reps.erase(std::unique(reps.begin(), reps.end()), reps.end());
    l.reps_ = std::move(reps); // the zero vector sorts first
    return l;
}

LatticePoint EvenLattice::point(const RatVector &coords) const
{
    if (coords.size() != rank()) throw std::invalid_argument("coordinate vector has wrong rank");
    LatticePoint p;
    for (const auto &c : coords) {
        Rational scaled = c * static_cast<long>(det_);
        if (scaled.get_den() != 1) throw std::invalid_argument("point is not in the dual lattice");
        p.num.push_back(to_int64(scaled.get_num()));
    }
    if (!is_lattice_vector(p)) {
        // verify membership in L°: G x must be integral
        for (std::size_t i = 0; i < rank(); ++i) {
            if (pair_basis(i, p).get_den() != 1) throw std::invalid_argument("point is not in the dual lattice");
        }
    }
    return p;
}

LatticePoint EvenLattice::point_from_ints(const IntVector &coords) const
{
    LatticePoint p;
    for (auto c : coords) p.num.push_back(c * det_);
    return p;
}

RatVector EvenLattice::coords(const LatticePoint &p) const
{
    RatVector out;
    for (auto x : p.num) {
        Rational r(static_cast<long>(x), static_cast<long>(det_));
        r.canonicalize();
        out.push_back(r);
    }
    return out;
}

bool EvenLattice::is_lattice_vector(const LatticePoint &p) const
{
    return std::all_of(p.num.begin(), p.num.end(), [this](std::int64_t x) { return x % det_ == 0; });
}

IntVector EvenLattice::integer_coords(const LatticePoint &p) const
{
    if (!is_lattice_vector(p)) throw LatticeError(LatticeError::Kind::NonIntegerVector, "vector is not in L");
    IntVector out;
    for (auto x : p.num) out.push_back(x / det_);
    return out;
}

LatticePoint EvenLattice::add(const LatticePoint &a, const LatticePoint &b) const
{
    LatticePoint p;
    p.num.resize(rank());
    for (std::size_t i = 0; i < rank(); ++i) p.num[i] = a.num[i] + b.num[i];
    return p;
}

LatticePoint EvenLattice::negate(const LatticePoint &a) const
{
    LatticePoint p = a;
    for (auto &x : p.num) x = -x;
    return p;
}

Rational EvenLattice::pair(const LatticePoint &a, const LatticePoint &b) const
{
    Integer acc = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (a.num[i] == 0) continue;
        for (std::size_t j = 0; j < rank(); ++j) {
            acc += Integer(static_cast<long>(a.num[i])) * static_cast<long>(gram_[i][j]) * static_cast<long>(b.num[j]);
        }
    }
    Rational r(acc, Integer(static_cast<long>(det_)) * static_cast<long>(det_));
    r.canonicalize();
    return r;
}

Rational EvenLattice::pair_basis(std::size_t i, const LatticePoint &p) const
{
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < rank(); ++j) acc += gram_[i][j] * p.num[j];
    Rational r(static_cast<long>(acc), static_cast<long>(det_));
    r.canonicalize();
    return r;
}

GaussRational EvenLattice::pair(const GaussVector &h, const LatticePoint &p) const
{
    GaussRational acc;
    for (std::size_t i = 0; i < rank(); ++i) {
        if (h[i].is_zero()) continue;
        acc += h[i] * GaussRational(pair_basis(i, p));
    }
    return acc;
}

GaussRational EvenLattice::pair(const GaussVector &h, const GaussVector &g) const
{
    GaussRational acc;
    for (std::size_t i = 0; i < rank(); ++i) {
        for (std::size_t j = 0; j < rank(); ++j) {
            if (gram_[i][j] != 0) acc += h[i] * g[j] * GaussRational(static_cast<long>(gram_[i][j]));
        }
    }
    return acc;
}

std::size_t EvenLattice::coset_of(const LatticePoint &p) const
{
    LatticePoint r;
    for (auto x : p.num) r.num.push_back(mod_pos(x, det_));
    auto it = std::lower_bound(reps_.begin(), reps_.end(), r);
    if (it == reps_.end() || !(*it == r)) throw std::invalid_argument("point is not in the dual lattice");
    return static_cast<std::size_t>(it - reps_.begin());
}

SmithForm smith_normal_form(const IntMatrix &a)
{
    const std::size_t n = a.size();
    const std::size_t m = n == 0 ? 0 : a[0].size();
    SmithForm s{a, IntMatrix(n, IntVector(n, 0)), IntMatrix(m, IntVector(m, 0))};
    for (std::size_t i = 0; i < n; ++i) s.u[i][i] = 1;
    for (std::size_t i = 0; i < m; ++i) s.v[i][i] = 1;
    auto &d = s.d;

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        std::swap(d[i], d[j]);
        std::swap(s.u[i], s.u[j]);
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        for (auto &row : d) std::swap(row[i], row[j]);
        for (auto &row : s.v) std::swap(row[i], row[j]);
    };
    auto add_row = [&](std::size_t dst, std::size_t src, std::int64_t f) { // row_dst += f row_src
        for (std::size_t c = 0; c < m; ++c) d[dst][c] += f * d[src][c];
        for (std::size_t c = 0; c < n; ++c) s.u[dst][c] += f * s.u[src][c];
    };
    auto add_col = [&](std::size_t dst, std::size_t src, std::int64_t f) {
        for (std::size_t r = 0; r < n; ++r) d[r][dst] += f * d[r][src];
        for (std::size_t r = 0; r < m; ++r) s.v[r][dst] += f * s.v[r][src];
    };

    for (std::size_t t = 0; t < std::min(n, m); ++t) {
        while (true) {
            // Smallest nonzero |entry| in the trailing block moves to (t, t).
            std::size_t bi = n, bj = m;
            for (std::size_t i = t; i < n; ++i) {
                for (std::size_t j = t; j < m; ++j) {
                    if (d[i][j] != 0 && (bi == n || std::llabs(d[i][j]) < std::llabs(d[bi][bj]))) {
                        bi = i;
                        bj = j;
                    }
                }
            }
            if (bi == n) return s;
            swap_rows(t, bi);
            swap_cols(t, bj);
            bool clean = true;
            for (std::size_t i = t + 1; i < n; ++i) {
                add_row(i, t, -(d[i][t] / d[t][t]));
                if (d[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < m; ++j) {
                add_col(j, t, -(d[t][j] / d[t][t]));
                if (d[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            // Divisibility: fold any entry not divisible by the pivot back into row t.
            bool divisible = true;
            for (std::size_t i = t + 1; i < n && divisible; ++i) {
                for (std::size_t j = t + 1; j < m; ++j) {
                    if (d[i][j] % d[t][t] != 0) {
                        add_row(t, i, 1);
                        divisible = false;
                        break;
                    }
                }
            }
            if (divisible) break;
        }
        if (d[t][t] < 0) {
            for (std::size_t c = 0; c < m; ++c) d[t][c] = -d[t][c];
            for (std::size_t c = 0; c < n; ++c) s.u[t][c] = -s.u[t][c];
        }
    }
    return s;
}

Cocycle make_cocycle(const IntMatrix &gram)
{
    Cocycle c;
    const std::size_t k = gram.size();
    c.basis.assign(k, std::vector<int>(k, 1));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) c.basis[i][j] = (gram[i][j] % 2 == 0) ? 1 : -1;
    }
    return c;
}

int cocycle_eval(const Cocycle &c, const IntVector &alpha, const IntVector &beta)
{
    const std::size_t k = c.basis.size();
    if (alpha.size() != k || beta.size() != k) throw std::invalid_argument("cocycle argument has wrong rank");
    std::int64_t parity = 0;
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            if (c.basis[i][j] == -1) parity += (alpha[i] % 2) * (beta[j] % 2);
        }
    }
    return (parity % 2 == 0) ? 1 : -1;
}

std::vector<CosetVector> discriminant_cosets(const EvenLattice &lattice)
{
    std::vector<CosetVector> out;
    for (std::size_t i = 0; i < lattice.coset_reps().size(); ++i) out.push_back({lattice.coset_reps()[i], i});
    return out;
}

std::vector<LatticePoint> points_in_ellipsoid(const EvenLattice &lattice, std::size_t coset, const RatVector &center,
                                              const Rational &radius)
{
    const std::size_t k = lattice.rank();
    std::vector<LatticePoint> found;
    if (radius < 0) return found;
    const LatticePoint &rep = lattice.coset_reps().at(coset);
    const auto rep_coords = lattice.coords(rep);

    // |x_i - c_i|^2 <= 2 R (G^{-1})_{ii}; integer ranges for n_i = x_i - rep_i, widened by one.
    std::vector<std::int64_t> lo(k), hi(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double span = std::sqrt(2.0 * radius.get_d() * lattice.gram_inverse()[i][i].get_d());
        const double mid = Rational(center[i] - rep_coords[i]).get_d();
        lo[i] = static_cast<std::int64_t>(std::floor(mid - span)) - 1;
        hi[i] = static_cast<std::int64_t>(std::ceil(mid + span)) + 1;
    }

    std::vector<std::pair<Rational, LatticePoint>> hits;
    IntVector n(lo);
    const std::int64_t den = lattice.denom();
    while (true) {
        LatticePoint p;
        p.num.resize(k);
        for (std::size_t i = 0; i < k; ++i) p.num[i] = rep.num[i] + n[i] * den;
        RatVector diff(k);
        const auto pc = lattice.coords(p);
        for (std::size_t i = 0; i < k; ++i) diff[i] = pc[i] - center[i];
        Rational q = 0;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                if (lattice.gram()[i][j] != 0) q += diff[i] * diff[j] * static_cast<long>(lattice.gram()[i][j]);
            }
        }
        q /= 2;
        if (q <= radius) hits.emplace_back(q, std::move(p));
        std::size_t pos = 0;
        while (pos < k) {
            if (++n[pos] <= hi[pos]) break;
            n[pos] = lo[pos];
            ++pos;
        }
        if (pos == k) break;
    }
    std::sort(hits.begin(), hits.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    for (auto &h : hits) found.push_back(std::move(h.second));
    return found;
}

std::vector<CosetVector> vectors_up_to(const EvenLattice &lattice, std::size_t coset, const Rational &bound)
{
    std::vector<CosetVector> out;
    for (auto &p : points_in_ellipsoid(lattice, coset, RatVector(lattice.rank(), Rational(0)), bound)) {
        out.push_back({std::move(p), coset});
    }
    return out;
}

QSeries theta_series(const EvenLattice &lattice, std::size_t coset, const GaussVector &shift, const Rational &order)
{
    const std::size_t k = lattice.rank();
    if (shift.size() != k) throw std::invalid_argument("shift has wrong rank");
    GaussVector h_im(k);
    RatVector center(k);
    for (std::size_t i = 0; i < k; ++i) {
        center[i] = shift[i].re();
        h_im[i] = GaussRational(shift[i].im());
    }
    // Re<a-h,a-h>/2 = <a - Re h, a - Re h>/2 - <Im h, Im h>/2
    const Rational slack = lattice.pair(h_im, h_im).re() / 2;
    const GaussRational hh = lattice.pair(shift, shift);
    QSeries out(order);
    for (const auto &p : points_in_ellipsoid(lattice, coset, center, order + slack)) {
        GaussRational e = GaussRational(lattice.norm2(p) / 2) - lattice.pair(shift, p) + hh / GaussRational(2);
        out.add_term(e, GaussRational(1));
    }
    return out;
}

} // namespace vertexflow
