#pragma once

#include <map>
#include <string>

#include <vertexflow/gauss_rational.hpp>

namespace vertexflow {

// Finite formal sum  q^offset * sum_e c_e q^e  with Re(e) <= order for every stored e.
// Exponents are formal; no analytic meaning is attached to q^e for complex e.
class QSeries {
public:
    using TermMap = std::map<GaussRational, GaussRational>;

    explicit QSeries(Rational order = Rational(0), GaussRational offset = {});

    const Rational &order() const noexcept { return order_; }
    const GaussRational &offset() const noexcept { return offset_; }
    const TermMap &terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }

    // Adds c q^e; dropped silently when Re(e) > order.
    void add_term(const GaussRational &exponent, const GaussRational &coeff);
    GaussRational coeff(const GaussRational &exponent) const;

    // Moves the offset to new_offset, shifting stored exponents and order so the
    // represented series is unchanged.
    QSeries rebased(const GaussRational &new_offset) const;

    QSeries truncated(const Rational &order) const;

    std::string to_string() const;

private:
    Rational order_;
    GaussRational offset_;
    TermMap terms_;
};

// Operands must share an offset for add and equal_up_to (rebase first); mul adds offsets.
// All binary operations work at the minimum of the two orders.
QSeries add(const QSeries &a, const QSeries &b);
QSeries mul(const QSeries &a, const QSeries &b);
QSeries truncate(const QSeries &a, const Rational &order);
bool equal_up_to(const QSeries &a, const QSeries &b);

} // namespace vertexflow
