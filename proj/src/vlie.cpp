#include <vertexflow/vlie.hpp>

#include <algorithm>
#include <random>

#include <vertexflow/errors.hpp>

namespace vertexflow {

namespace {

std::int64_t top_mode(const EvenLattice &lattice, const BasisVector &a, const BasisVector &b)
{
    return to_int64(floor_of(l0_weight(lattice, a) + l0_weight(lattice, b) - 1));
}

// binomial(n, i) for integer n (possibly negative), i >= 0
Integer int_binom(std::int64_t n, std::int64_t i)
{
    Integer c = 1;
    for (std::int64_t k = 0; k < i; ++k) c = c * Integer(static_cast<long>(n - k)) / Integer(static_cast<long>(k + 1));
    return c;
}

GaussRational scalar(std::int64_t n) { return GaussRational(Rational(static_cast<long>(n))); }

bool integral(const GaussRational &z) { return z.is_rational_integer(); }

} // namespace

LieElement LieElement::lift(const GradedVector &v, std::int64_t n)
{
    LieElement out;
    for (const auto &[b, c] : v.terms()) out.add(ModeSymbol{b, n}, c);
    return out;
}

void LieElement::add(const ModeSymbol &s, const GaussRational &c)
{
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

void LieElement::axpy(const GaussRational &c, const LieElement &o)
{
    if (c.is_zero()) return;
    for (const auto &[s, x] : o.terms_) add(s, c * x);
}

std::string to_string(DegClass c)
{
    switch (c) {
    case DegClass::Plus: return "plus";
    case DegClass::Zero: return "zero";
    case DegClass::Minus: return "minus";
    }
    return "";
}

DegClass deg_classify(const GaussRational &deg)
{
    if (deg.re() > 0) return DegClass::Plus;
    if (deg.re() < 0) return DegClass::Minus;
    return deg.im() == 0 ? DegClass::Zero : DegClass::Minus;
}

VLie::VLie(ModeEngine &engine, ConformalDatum datum, Rational d_gen)
    : engine_(&engine), datum_(std::move(datum)), d_gen_(std::move(d_gen))
{
    if (!datum_.is_cartan()) throw Unsatisfiable("V_Lie normal forms need a Cartan deformation vector");
    GaussVector shift = datum_.h;
    for (auto &x : shift) x *= GaussRational(datum_.sign);
    basis_ = enumerate_basis_shifted(engine.lattice(), 0, shift, d_gen_);
    for (const auto &b : basis_) weights_.emplace(b, lh_weight(engine.lattice(), datum_, b));
}

GaussRational VLie::weight(const BasisVector &b) const
{
    auto it = weights_.find(b);
    if (it != weights_.end()) return it->second;
    return lh_weight(engine_->lattice(), datum_, b);
}

GaussRational VLie::deg(const ModeSymbol &s) const { return weight(s.vector) - scalar(s.index + 1); }

std::optional<DegClass> VLie::classify(const LieElement &x) const
{
    if (x.is_zero()) return std::nullopt;
    const GaussRational d0 = deg(x.terms().begin()->first);
    for (const auto &[s, c] : x.terms()) {
        if (deg(s) != d0) return std::nullopt;
    }
    return deg_classify(d0);
}

std::vector<BasisVector> VLie::basis(const Rational &w) const
{
    std::vector<BasisVector> out;
    for (const auto &b : basis_) {
        if (weights_.at(b).re() <= w) out.push_back(b);
    }
    return out;
}

LieElement VLie::relation(const BasisVector &c, std::int64_t n) const
{
    LieElement r = LieElement::lift(engine_->translate(GradedVector(c)), n);
    r.add(ModeSymbol{c, n - 1}, scalar(n));
    return r;
}

const VLie::Block &VLie::block(const GaussRational &dg, const LatticePoint &p) const
{
    const auto key = std::make_pair(dg, p);
    auto it = blocks_.find(key);
    if (it != blocks_.end()) return it->second;

    Block blk;
    for (const auto &b : basis_) {
        if (b.point != p) continue;
        const GaussRational n = weights_.at(b) - dg - GaussRational(1);
        if (!integral(n)) continue;
        blk.columns.push_back(ModeSymbol{b, to_int64_exact(n.re())});
    }
    std::sort(blk.columns.begin(), blk.columns.end(), [&](const ModeSymbol &x, const ModeSymbol &y) {
        const GaussRational wx = weights_.at(x.vector), wy = weights_.at(y.vector);
        if (wx != wy) return wy < wx;
        return y.vector < x.vector;
    });
    for (std::size_t i = 0; i < blk.columns.size(); ++i) blk.index.emplace(blk.columns[i], static_cast<int>(i));
    blk.reducer = RowReducer(blk.columns.size());
    for (const auto &col : blk.columns) {
        if (weights_.at(col.vector).re() + 1 > d_gen_) continue;
        const LieElement rel = relation(col.vector, col.index + 1);
        SparseRow row;
        for (const auto &[s, c] : rel.terms()) row.emplace_back(blk.index.at(s), c);
        std::sort(row.begin(), row.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
        blk.reducer.add(row);
    }
    return blocks_.emplace(key, std::move(blk)).first->second;
}

LieElement VLie::canonical(const LieElement &x) const
{
    std::map<std::pair<GaussRational, LatticePoint>, std::vector<std::pair<ModeSymbol, GaussRational>>> parts;
    for (const auto &[s, c] : x.terms()) {
        if (weight(s.vector).re() > d_gen_) throw TruncationExceeded("mode symbol above the generator cutoff");
        parts[{deg(s), s.vector.point}].emplace_back(s, c);
    }
    LieElement out;
    for (const auto &[key, terms] : parts) {
        const Block &blk = block(key.first, key.second);
        SparseRow row;
        for (const auto &[s, c] : terms) row.emplace_back(blk.index.at(s), c);
        std::sort(row.begin(), row.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        for (const auto &[col, c] : blk.reducer.reduce(row)) out.add(blk.columns[static_cast<std::size_t>(col)], c);
    }
    return out;
}

LieElement VLie::bracket_raw(const LieElement &x, const LieElement &y) const
{
    LieElement out;
    const auto &lat = engine_->lattice();
    for (const auto &[sx, cx] : x.terms()) {
        for (const auto &[sy, cy] : y.terms()) {
            const GradedVector a(sx.vector), b(sy.vector);
            const std::int64_t top = top_mode(lat, sx.vector, sy.vector);
            for (std::int64_t i = 0; i <= top; ++i) {
                const Integer c = int_binom(sx.index, i);
                if (c == 0) break;
                const GradedVector ab = engine_->mode(a, i, b);
                out.axpy(cx * cy * GaussRational(Rational(c)), LieElement::lift(ab, sx.index + sy.index - i));
            }
        }
    }
    return out;
}

KernelReport kernel_check(const VLie &lie, const Rational &d)
{
    KernelReport rep;
    rep.d = d;
    std::vector<BasisVector> v0;
    for (const auto &b : lie.basis(d)) {
        if (integral(lie.weight(b))) v0.push_back(b);
    }
    std::map<BasisVector, int> col;
    for (std::size_t i = 0; i < v0.size(); ++i) col.emplace(v0[i], static_cast<int>(i));

    // images a -> a_{|a|-1} as columns of a matrix indexed by canonical symbols
    std::map<ModeSymbol, std::size_t> rows;
    std::vector<LieElement> images;
    for (const auto &a : v0) {
        images.push_back(lie.canonical(LieElement(ModeSymbol{a, to_int64_exact(lie.weight(a).re()) - 1})));
        for (const auto &[s, c] : images.back().terms()) rows.try_emplace(s, rows.size());
    }
    Matrix m(rows.size(), v0.size());
    for (std::size_t j = 0; j < v0.size(); ++j)
        for (const auto &[s, c] : images[j].terms()) m(rows.at(s), j) = c;
    const auto kernel = m.kernel();

    auto to_row = [&](const GradedVector &v) {
        SparseRow row;
        for (const auto &[b, c] : v.terms()) row.emplace_back(col.at(b), c);
        std::sort(row.begin(), row.end(), [](const auto &x, const auto &y) { return x.first < y.first; });
        return row;
    };
    RowReducer kred(v0.size()), ired(v0.size()), sred(v0.size());
    for (const auto &kv : kernel) {
        SparseRow row;
        for (std::size_t j = 0; j < kv.size(); ++j)
            if (!kv[j].is_zero()) row.emplace_back(static_cast<int>(j), kv[j]);
        kred.add(row);
        sred.add(row);
    }
    for (const auto &a : v0) {
        if (lie.weight(a).re() + 1 > d) continue;
        GradedVector tl = lie.engine().translate(GradedVector(a));
        tl.axpy(lie.weight(a), GradedVector(a));
        if (tl.is_zero()) continue;
        const SparseRow row = to_row(tl);
        ired.add(row);
        sred.add(row);
    }
    rep.kernel_dim = kred.rank();
    rep.image_dim = ired.rank();
    rep.sum_dim = sred.rank();
    return rep;
}

std::optional<NonClosureWitness> non_closure_witness(const VLie &lie, const Rational &max_weight)
{
    const auto basis = lie.basis(max_weight);
    for (const auto &a : basis) {
        if (!a.fock.empty() || a.point.is_zero()) continue;
        LatticePoint neg = a.point;
        for (auto &x : neg.num) x = -x;
        const BasisVector b{FockMonomial(), neg};
        if (lie.weight(b).re() > max_weight) continue;
        for (std::int64_t n = -1; n <= 1; ++n) {
            for (std::int64_t m = -1; m <= 1; ++m) {
                NonClosureWitness w;
                w.x = LieElement(ModeSymbol{a, n});
                w.y = LieElement(ModeSymbol{b, m});
                w.x_class = lie.classify(ModeSymbol{a, n});
                w.y_class = lie.classify(ModeSymbol{b, m});
                if (w.x_class != DegClass::Minus || w.y_class != DegClass::Minus) continue;
                w.bracket = lie.bracket(w.x, w.y);
                w.bracket_class = lie.classify(w.bracket);
                if (w.exhibits()) return w;
            }
        }
    }
    return std::nullopt;
}

std::vector<IdentityReport> phi_check(const VLie &lie, const ZhuContext &ctx, const OVSpan &span,
                                      const Rational &pair_weight)
{
    IdentityReport zero{"phi_zero_class"}, minus{"phi_minus_class"};
    const auto basis = lie.basis(pair_weight);
    auto record = [&](IdentityReport &rep, const GradedVector &v) {
        ++rep.instances_tested;
        Membership m = Membership::NotInSpanAtCutoff;
        try {
            m = span.membership(v);
        } catch (const WeightOutOfRange &) {
        }
        if (m == Membership::InSpan) {
            ++rep.passes;
        } else {
            ++rep.cutoff_qualified;
        }
    };
    // phi on deg-zero normal forms: c_{|c|-1} -> c
    auto phi = [&](const LieElement &x) {
        GradedVector out;
        for (const auto &[s, c] : x.terms()) out.add(s.vector, c);
        return out;
    };
    for (const auto &a : basis) {
        const GaussRational wa = lie.weight(a);
        for (const auto &b : basis) {
            const GaussRational wb = lie.weight(b);
            if (wa.re() + wb.re() > pair_weight) continue;
            const GradedVector av(a), bv(b);
            if (integral(wa) && integral(wb)) {
                const LieElement x(ModeSymbol{a, to_int64_exact(wa.re()) - 1});
                const LieElement y(ModeSymbol{b, to_int64_exact(wb.re()) - 1});
                GradedVector diff = phi(lie.bracket(x, y));
                diff -= star(ctx, av, bv);
                diff += star(ctx, bv, av);
                record(zero, diff);
                continue;
            }
            // wt a = wt b = Re|a| = Re|b| and |a| + |b| integral
            if (wa.im() == 0 || wa.re() != wb.re() || !is_integer(wa.re()) || !integral(wa + wb)) continue;
            const std::int64_t wt = to_int64_exact(wa.re());
            const ModeSymbol sx{a, wt - 1}, sy{b, wt - 1};
            if (lie.classify(sx) != DegClass::Minus || lie.classify(sy) != DegClass::Minus) continue;
            record(minus, residue(ctx, av, bv, scalar(wt - 1), 0));
        }
    }
    return {zero, minus};
}

LieSampleReport bracket_samples(const VLie &lie, std::size_t pairs, std::size_t triples, unsigned seed,
                                const Rational &pair_weight, const Rational &triple_weight)
{
    LieSampleReport rep;
    std::mt19937 rng(seed);
    auto pick = [&](const std::vector<BasisVector> &pool) {
        std::uniform_int_distribution<std::size_t> bi(0, pool.size() - 1);
        std::uniform_int_distribution<int> ni(-2, 2);
        return LieElement(ModeSymbol{pool[bi(rng)], ni(rng)});
    };
    const auto pool2 = lie.basis(pair_weight);
    for (std::size_t k = 0; k < pairs; ++k) {
        const LieElement x = pick(pool2), y = pick(pool2);
        const LieElement xy = lie.bracket(x, y);
        ++rep.antisymmetry_tested;
        if (xy + lie.bracket(y, x) == LieElement()) ++rep.antisymmetry_passes;
        const LieElement raw = lie.bracket_raw(x, y);
        ++rep.deg_tested;
        const GaussRational expect = lie.deg(x.terms().begin()->first) + lie.deg(y.terms().begin()->first);
        bool homogeneous = true;
        for (const auto &[s, c] : raw.terms()) homogeneous = homogeneous && lie.deg(s) == expect;
        if (homogeneous) ++rep.deg_passes;
    }
    const auto pool3 = lie.basis(triple_weight);
    for (std::size_t k = 0; k < triples; ++k) {
        const LieElement x = pick(pool3), y = pick(pool3), z = pick(pool3);
        LieElement j = lie.bracket(x, lie.bracket(y, z));
        j += lie.bracket(y, lie.bracket(z, x));
        j += lie.bracket(z, lie.bracket(x, y));
        ++rep.jacobi_tested;
        if (lie.canonical(j).is_zero()) ++rep.jacobi_passes;
    }
    return rep;
}

} // namespace vertexflow
