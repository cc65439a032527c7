#include <vertexflow/qseries.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace vertexflow {

QSeries::QSeries(Rational order, GaussRational offset) : order_(std::move(order)), offset_(std::move(offset)) {}

void QSeries::add_term(const GaussRational &exponent, const GaussRational &coeff)
{
    if (coeff.is_zero() || exponent.re() > order_) return;
    auto [it, inserted] = terms_.try_emplace(exponent, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

GaussRational QSeries::coeff(const GaussRational &exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? GaussRational{} : it->second;
}

QSeries QSeries::rebased(const GaussRational &new_offset) const
{
    const GaussRational shift = offset_ - new_offset;
    QSeries out(order_ + shift.re(), new_offset);
    for (const auto &[e, c] : terms_) out.terms_.emplace(e + shift, c);
    return out;
}

QSeries QSeries::truncated(const Rational &order) const
{
    QSeries out(std::min(order, order_), offset_);
    for (const auto &[e, c] : terms_) {
        if (e.re() <= out.order_) out.terms_.emplace(e, c);
    }
    return out;
}

std::string QSeries::to_string() const
{
    std::ostringstream os;
    if (!offset_.is_zero()) os << "q^(" << offset_ << ")*(";
    bool first = true;
    for (const auto &[e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")q^(" << e << ")";
    }
    if (first) os << "0";
    if (!offset_.is_zero()) os << ")";
    os << " + O(q^" << order_ << ")";
    return os.str();
}

namespace {

void require_same_offset(const QSeries &a, const QSeries &b)
{
    if (!(a.offset() == b.offset())) throw std::invalid_argument("q-series offsets differ; rebase first");
}

} // namespace

QSeries add(const QSeries &a, const QSeries &b)
{
    require_same_offset(a, b);
    QSeries out(std::min(a.order(), b.order()), a.offset());
    for (const auto &[e, c] : a.terms()) out.add_term(e, c);
    for (const auto &[e, c] : b.terms()) out.add_term(e, c);
    return out;
}

QSeries mul(const QSeries &a, const QSeries &b)
{
    QSeries out(std::min(a.order(), b.order()), a.offset() + b.offset());
    for (const auto &[ea, ca] : a.terms()) {
        for (const auto &[eb, cb] : b.terms()) {
            GaussRational e = ea + eb;
            if (e.re() > out.order()) continue;
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

QSeries truncate(const QSeries &a, const Rational &order) { return a.truncated(order); }

bool equal_up_to(const QSeries &a, const QSeries &b)
{
    require_same_offset(a, b);
    const Rational order = std::min(a.order(), b.order());
    return a.truncated(order).terms() == b.truncated(order).terms();
}

} // namespace vertexflow
