#include <vertexflow/zhu.hpp>

#include <algorithm>
#include <set>

#include <vertexflow/errors.hpp>

namespace vertexflow {

namespace {

std::int64_t top_mode(const EvenLattice &lattice, const BasisVector &a, const BasisVector &b)
{
    return to_int64(floor_of(l0_weight(lattice, a) + l0_weight(lattice, b) - 1));
}

// sum_{j >= 0} binom(e, j) a(p + j) b for basis a, b
GradedVector residue_basis(ModeEngine &engine, const BasisVector &a, const BasisVector &b, const GaussRational &e,
                           std::int64_t p)
{
    GradedVector out;
    const std::int64_t top = top_mode(engine.lattice(), a, b);
    const GradedVector av(a), bv(b);
    GaussRational binom(1);
    for (std::int64_t j = 0; p + j <= top; ++j) {
        if (j > 0) binom = binom * (e - GaussRational(static_cast<long>(j - 1))) / GaussRational(static_cast<long>(j));
        if (binom.is_zero()) break;
        out.axpy(binom, engine.mode(av, p + j, bv));
    }
    return out;
}

std::vector<BasisVector> ambient_basis(const ZhuContext &ctx, const Rational &max_weight)
{
    GaussVector shift = ctx.datum.h;
    for (auto &x : shift) x *= GaussRational(ctx.datum.sign);
    return enumerate_basis_shifted(ctx.lattice(), 0, shift, max_weight);
}

Membership certify(const OVSpan &span, const GradedVector &v)
{
    try {
        return span.membership(v);
    } catch (const WeightOutOfRange &) {
        return Membership::NotInSpanAtCutoff;
    }
}

std::vector<BasisVector> basis_upto(const ZhuContext &ctx, const Rational &w)
{
    return ambient_basis(ctx, w);
}

} // namespace

ZhuContext::ZhuContext(ModeEngine &e, ConformalDatum dat, Rational d_, Rational d_gen_)
    : engine(&e), datum(std::move(dat)), d(std::move(d_)), d_gen(std::move(d_gen_))
{
    if (!datum.is_cartan()) throw Unsatisfiable("Zhu algebra computations need a Cartan deformation vector");
    if (d_gen < d) throw ConfigError("d_gen must be at least d");
}

ZhuContext::ZhuContext(ModeEngine &e, ConformalDatum dat, Rational d_)
    : ZhuContext(e, std::move(dat), d_, d_ + 4)
{
}

std::int64_t ZhuContext::wt(const BasisVector &b) const { return to_int64(ceil_re(weight(b))); }

GaussRational ZhuContext::r_of(const BasisVector &b) const
{
    return weight(b) - GaussRational(static_cast<long>(wt(b)));
}

std::map<GaussRational, GradedVector> vr_split(const ZhuContext &ctx, const GradedVector &v)
{
    std::map<GaussRational, GradedVector> out;
    for (const auto &[b, c] : v.terms()) out[ctx.r_of(b)].add(b, c);
    return out;
}

GradedVector residue(const ZhuContext &ctx, const GradedVector &a, const GradedVector &b, const GaussRational &e,
                     std::int64_t p)
{
    GradedVector out;
    for (const auto &[ab, ac] : a.terms()) {
        for (const auto &[bb, bc] : b.terms()) out.axpy(ac * bc, residue_basis(*ctx.engine, ab, bb, e, p));
    }
    return out;
}

GradedVector residue_family(const ZhuContext &ctx, const GradedVector &a, const GradedVector &b, std::int64_t m,
                            std::int64_t n)
{
    GradedVector out;
    for (const auto &[ab, ac] : a.terms()) {
        const int delta = ctx.r_of(ab).is_zero() ? 1 : 0;
        const GaussRational e(static_cast<long>(ctx.wt(ab) + delta - 1 + n));
        for (const auto &[bb, bc] : b.terms()) {
            out.axpy(ac * bc, residue_basis(*ctx.engine, ab, bb, e, -1 - delta - m));
        }
    }
    return out;
}

GradedVector circle(const ZhuContext &ctx, const GradedVector &a, const GradedVector &b)
{
    return residue_family(ctx, a, b, 0, 0);
}

GradedVector star(const ZhuContext &ctx, const GradedVector &a, const GradedVector &b)
{
    GradedVector out;
    for (const auto &[ab, ac] : a.terms()) {
        if (!ctx.r_of(ab).is_zero()) continue;
        const GaussRational e = ctx.weight(ab);
        for (const auto &[bb, bc] : b.terms()) out.axpy(ac * bc, residue_basis(*ctx.engine, ab, bb, e, -1));
    }
    return out;
}

GradedVector t_plus_l(const ZhuContext &ctx, const GradedVector &a)
{
    GradedVector out = ctx.engine->translate(a);
    for (const auto &[b, c] : a.terms()) out.add(b, c * ctx.weight(b));
    return out;
}

std::string to_string(Membership m)
{
    return m == Membership::InSpan ? "InSpan" : "NotInSpanAtCutoff";
}

std::size_t OVSpan::rank() const
{
    std::size_t r = 0;
    for (const auto &[p, blk] : blocks_) r += blk.reducer.rank();
    return r;
}

SparseRow OVSpan::to_row(const Block &block, const GradedVector &v) const
{
    SparseRow row;
    for (const auto &[b, c] : v.terms()) {
        auto it = block.index.find(b);
        if (it == block.index.end()) throw WeightOutOfRange("vector has a term above the ambient weight");
        row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
    return row;
}

GradedVector OVSpan::from_row(const Block &block, const SparseRow &row) const
{
    GradedVector out;
    for (const auto &[col, c] : row) out.add(block.columns[static_cast<std::size_t>(col)], c);
    return out;
}

GradedVector OVSpan::reduce(const GradedVector &v) const
{
    std::map<LatticePoint, GradedVector> parts;
    for (const auto &[b, c] : v.terms()) {
        auto w = re_weight_.find(b);
        if (w == re_weight_.end()) throw WeightOutOfRange("vector has a term outside the ambient space");
        parts[b.point].add(b, c);
    }
    GradedVector out;
    for (const auto &[p, part] : parts) {
        const Block &blk = blocks_.at(p);
        out += from_row(blk, blk.reducer.reduce(to_row(blk, part)));
    }
    return out;
}

Membership OVSpan::membership(const GradedVector &v) const
{
    return reduce(v).is_zero() ? Membership::InSpan : Membership::NotInSpanAtCutoff;
}

std::vector<GradedVector> OVSpan::reduced_basis() const
{
    std::vector<GradedVector> out;
    for (const auto &[p, blk] : blocks_) {
        const auto &rows = blk.reducer.rows();
        const auto &piv = blk.reducer.pivots();
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (re_weight_.at(blk.columns[static_cast<std::size_t>(piv[r])]) <= d_) out.push_back(from_row(blk, rows[r]));
        }
    }
    return out;
}

OVSpan ov_span(const ZhuContext &ctx)
{
    OVSpan span;
    span.d_ = ctx.d;
    span.d_gen_ = ctx.d_gen;
    span.ambient_ = ctx.d_gen + 1;
    const auto basis = ambient_basis(ctx, span.ambient_);
    std::map<LatticePoint, std::vector<BasisVector>> by_point;
    for (const auto &b : basis) {
        span.re_weight_.emplace(b, ctx.weight(b).re());
        by_point[b.point].push_back(b);
    }
    for (auto &[p, cols] : by_point) {
        std::sort(cols.begin(), cols.end(), [&](const BasisVector &x, const BasisVector &y) {
            const GaussRational wx = ctx.weight(x), wy = ctx.weight(y);
            if (wx != wy) return wy < wx;
            return y < x;
        });
        OVSpan::Block blk;
        blk.columns = cols;
        for (std::size_t i = 0; i < cols.size(); ++i) blk.index.emplace(cols[i], static_cast<int>(i));
        blk.reducer = RowReducer(cols.size());
        span.blocks_.emplace(p, std::move(blk));
    }

    auto add_generator = [&](GradedVector g) {
        if (g.is_zero()) return;
        const LatticePoint p = g.terms().begin()->first.point;
        auto &blk = span.blocks_.at(p);
        blk.reducer.add(span.to_row(blk, g));
        span.generators_.push_back(std::move(g));
    };

    for (const auto &a : basis) {
        const Rational wa = span.re_weight_.at(a);
        if (wa > ctx.d_gen) continue;
        for (const auto &b : basis) {
            const Rational wb = span.re_weight_.at(b);
            if (wb > ctx.d_gen || wa + wb > ctx.d_gen) continue;
            add_generator(circle(ctx, GradedVector(a), GradedVector(b)));
        }
    }
    for (const auto &a : basis) {
        if (!ctx.r_of(a).is_zero()) add_generator(GradedVector(a));
    }

    for (const auto &[p, blk] : span.blocks_) {
        for (int c : blk.reducer.free_columns()) {
            const auto &b = blk.columns[static_cast<std::size_t>(c)];
            if (span.re_weight_.at(b) <= ctx.d && ctx.r_of(b).is_zero()) span.reps_.push_back(b);
        }
    }
    std::sort(span.reps_.begin(), span.reps_.end(), [&](const BasisVector &x, const BasisVector &y) {
        const GaussRational wx = ctx.weight(x), wy = ctx.weight(y);
        if (wx != wy) return wx < wy;
        return x < y;
    });
    return span;
}

std::vector<IdentityReport> congruence_suite(const ZhuContext &ctx, const OVSpan &span, const CongruenceBudget &budget)
{
    std::vector<IdentityReport> out;
    auto record = [](IdentityReport &rep, Membership m) {
        ++rep.instances_tested;
        if (m == Membership::InSpan) {
            ++rep.passes;
        } else {
            ++rep.cutoff_qualified;
        }
    };
    const Rational top = std::max({budget.tl_weight, budget.pair_weight, budget.triple_weight});
    const auto basis = basis_upto(ctx, top);
    auto re = [&](const BasisVector &b) { return ctx.weight(b).re(); };
    const GradedVector one(ctx.engine->vacuum());

    IdentityReport vr{"vr_in_ov"};
    for (const auto &a : basis) {
        if (ctx.r_of(a).is_zero()) continue;
        const GradedVector av(a);
        ++vr.instances_tested;
        if (circle(ctx, av, one) == av && certify(span, av) == Membership::InSpan) {
            ++vr.passes;
        } else {
            ++vr.cutoff_qualified;
        }
    }
    out.push_back(vr);

    IdentityReport tl{"t_plus_l"};
    for (const auto &a : basis) {
        if (re(a) <= budget.tl_weight) record(tl, certify(span, t_plus_l(ctx, GradedVector(a))));
    }
    out.push_back(tl);

    std::vector<std::pair<BasisVector, BasisVector>> pairs;
    for (const auto &a : basis)
        for (const auto &b : basis)
            if (re(a) + re(b) <= budget.pair_weight) pairs.emplace_back(a, b);

    IdentityReport fam{"residue_family"};
    for (const auto &[a, b] : pairs) {
        for (auto [m, n] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 1}}) {
            record(fam, certify(span, residue_family(ctx, GradedVector(a), GradedVector(b), m, n)));
        }
    }
    out.push_back(fam);

    IdentityReport skew{"skew_symmetry"};
    for (const auto &[a, b] : pairs) {
        const GradedVector av(a), bv(b);
        const GaussRational wsum = ctx.weight(a) + ctx.weight(b);
        const std::int64_t imax = top_mode(ctx.lattice(), b, a);
        for (std::int64_t p = -1; p <= 2; ++p) {
            GradedVector diff = ctx.engine->mode(av, -p - 1, bv);
            for (std::int64_t i = -p - 1; i <= imax; ++i) {
                const GaussRational sign((i + 1) % 2 == 0 ? 1 : -1);
                const GaussRational c = sign * gbinom(GaussRational(static_cast<long>(i + 1)) - wsum, p + i + 1);
                if (!c.is_zero()) diff.axpy(-c, ctx.engine->mode(bv, i, av));
            }
            record(skew, certify(span, diff));
        }
    }
    out.push_back(skew);

    IdentityReport c1{"comm1"}, c2{"comm2"};
    for (const auto &[a, b] : pairs) {
        if (!ctx.r_of(a).is_zero() || !ctx.r_of(b).is_zero()) continue;
        const GradedVector av(a), bv(b);
        const GradedVector ab = star(ctx, av, bv);
        GradedVector d1 = ab - residue(ctx, bv, av, GaussRational(static_cast<long>(ctx.wt(b) - 1)), -1);
        record(c1, certify(span, d1));
        GradedVector d2 = ab - star(ctx, bv, av);
        d2 -= residue(ctx, av, bv, GaussRational(static_cast<long>(ctx.wt(a) - 1)), 0);
        record(c2, certify(span, d2));
    }
    out.push_back(c1);
    out.push_back(c2);

    IdentityReport left{"left_ideal"}, right{"right_ideal"};
    for (const auto &a : basis) {
        for (const auto &b : basis) {
            if (re(a) + re(b) > budget.triple_weight) continue;
            for (const auto &c : basis) {
                if (re(a) + re(b) + re(c) > budget.triple_weight) continue;
                const GradedVector av(a), bv(b), cv(c);
                record(left, certify(span, star(ctx, av, circle(ctx, bv, cv))));
                record(right, certify(span, star(ctx, circle(ctx, av, bv), cv)));
            }
        }
    }
    out.push_back(left);
    out.push_back(right);
    return out;
}

ZhuQuotient zhu_quotient(const ZhuContext &ctx, const OVSpan &span, const Rational &assoc_weight)
{
    ZhuQuotient q;
    q.d = span.d();
    q.d_gen = span.d_gen();
    q.representatives = span.quotient_representatives();
    q.dim_upper_bound = q.representatives.size();
    std::map<BasisVector, std::size_t> rep_index;
    for (std::size_t i = 0; i < q.representatives.size(); ++i) rep_index.emplace(q.representatives[i], i);

    for (std::size_t i = 0; i < q.representatives.size(); ++i) {
        for (std::size_t j = 0; j < q.representatives.size(); ++j) {
            const GradedVector prod = star(ctx, GradedVector(q.representatives[i]), GradedVector(q.representatives[j]));
            GradedVector nf;
            try {
                nf = span.reduce(prod);
            } catch (const WeightOutOfRange &) {
                ++q.products_outside_cutoff;
                continue;
            }
            std::vector<GaussRational> coeffs(q.representatives.size());
            bool inside = true;
            for (const auto &[b, c] : nf.terms()) {
                auto it = rep_index.find(b);
                if (it == rep_index.end()) {
                    inside = false;
                    break;
                }
                coeffs[it->second] = c;
            }
            if (!inside) {
                ++q.products_outside_cutoff;
                continue;
            }
            q.structure.emplace(std::pair{i, j}, std::move(coeffs));
        }
    }

    const GradedVector one(ctx.engine->vacuum());
    q.unit_ok = true;
    for (const auto &r : q.representatives) {
        const GradedVector rv(r);
        if (certify(span, star(ctx, one, rv) - rv) != Membership::InSpan ||
            certify(span, star(ctx, rv, one) - rv) != Membership::InSpan) {
            q.unit_ok = false;
        }
    }

    std::vector<BasisVector> small;
    for (const auto &r : q.representatives) {
        if (ctx.weight(r).re() <= assoc_weight) small.push_back(r);
    }
    for (const auto &a : small) {
        for (const auto &b : small) {
            for (const auto &c : small) {
                const GradedVector av(a), bv(b), cv(c);
                GradedVector diff = star(ctx, star(ctx, av, bv), cv) - star(ctx, av, star(ctx, bv, cv));
                ++q.associativity_triples;
                if (certify(span, diff) == Membership::InSpan) ++q.associativity_passes;
            }
        }
    }
    return q;
}

std::vector<GradedVector> module_top(const ZhuContext &ctx, std::size_t coset)
{
    GaussVector shift = ctx.datum.h;
    for (auto &x : shift) x *= GaussRational(ctx.datum.sign);
    Rational n = 0;
    std::vector<BasisVector> basis;
    while ((basis = enumerate_basis_shifted(ctx.lattice(), coset, shift, n)).empty()) n += 1;
    Rational lowest = ctx.weight(basis.front()).re();
    std::vector<GradedVector> out;
    for (auto &space : lowest_weight_vectors(*ctx.engine, ctx.datum, coset, lowest)) {
        if (space.mu.re() != lowest) continue;
        for (auto &v : space.vectors) out.push_back(std::move(v));
    }
    return out;
}

std::vector<GaussRational> coordinates(const std::vector<GradedVector> &vecs, const GradedVector &v)
{
    std::map<BasisVector, std::size_t> rows;
    for (const auto &x : vecs)
        for (const auto &[b, c] : x.terms()) rows.try_emplace(b, rows.size());
    for (const auto &[b, c] : v.terms()) {
        if (rows.find(b) == rows.end()) throw Error("vector lies outside the given span");
    }
    Matrix m(rows.size(), vecs.size() + 1);
    for (std::size_t j = 0; j < vecs.size(); ++j)
        for (const auto &[b, c] : vecs[j].terms()) m(rows.at(b), j) = c;
    for (const auto &[b, c] : v.terms()) m(rows.at(b), vecs.size()) = c;
    const auto piv = rref(m);
    std::vector<GaussRational> x(vecs.size());
    for (std::size_t r = 0; r < piv.size(); ++r) {
        if (piv[r] == vecs.size()) throw Error("vector lies outside the given span");
        x[piv[r]] = m(r, vecs.size());
    }
    return x;
}

GradedVector zero_mode_apply(const ZhuContext &ctx, const GradedVector &a, const GradedVector &w)
{
    GradedVector out;
    for (const auto &[ab, ac] : a.terms()) out.axpy(ac, ctx.engine->mode(GradedVector(ab), ctx.wt(ab) - 1, w));
    return out;
}

Matrix zero_mode(const ZhuContext &ctx, const GradedVector &a, const std::vector<GradedVector> &top)
{
    Matrix m(top.size(), top.size());
    for (std::size_t j = 0; j < top.size(); ++j) {
        const auto x = coordinates(top, zero_mode_apply(ctx, a, top[j]));
        for (std::size_t i = 0; i < top.size(); ++i) m(i, j) = x[i];
    }
    return m;
}

TopRepReport top_rep_check(const ZhuContext &ctx, const OVSpan &span,
                           const std::vector<std::vector<GradedVector>> &tops, const Rational &pair_weight)
{
    TopRepReport rep;
    for (const auto &g : span.generators()) {
        ++rep.generators_tested;
        bool zero = true;
        for (const auto &top : tops)
            for (const auto &t : top)
                if (!zero_mode_apply(ctx, g, t).is_zero()) zero = false;
        if (!zero) ++rep.generator_failures;
    }
    const auto basis = basis_upto(ctx, pair_weight);
    for (const auto &a : basis) {
        for (const auto &b : basis) {
            ++rep.pairs_tested;
            const GradedVector av(a), bv(b);
            const GradedVector ab = star(ctx, av, bv);
            for (const auto &top : tops) {
                if (top.empty()) continue;
                if (!(zero_mode(ctx, ab, top) == zero_mode(ctx, av, top) * zero_mode(ctx, bv, top))) {
                    ++rep.product_failures;
                    break;
                }
            }
        }
    }
    return rep;
}

SemisimpleProbe semisimple_probe(const ZhuContext &ctx, const std::vector<std::vector<GradedVector>> &tops)
{
    SemisimpleProbe probe;
    std::size_t width = 0;
    for (const auto &t : tops) width += t.size() * t.size();
    probe.target_dim = width;
    RowReducer red(width);
    for (const auto &a : basis_upto(ctx, ctx.d)) {
        if (!ctx.r_of(a).is_zero()) continue;
        SparseRow row;
        std::size_t off = 0;
        for (const auto &t : tops) {
            const Matrix m = zero_mode(ctx, GradedVector(a), t);
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = 0; j < t.size(); ++j)
                    if (!m(i, j).is_zero()) row.emplace_back(static_cast<int>(off + i * t.size() + j), m(i, j));
            off += t.size() * t.size();
        }
        red.add(row);
    }
    probe.image_dim = red.rank();
    return probe;
}

} // namespace vertexflow
