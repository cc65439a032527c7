#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <vertexflow/rational.hpp>

namespace vertexflow {

// Exact element re + im*i of Q(i).
class GaussRational {
public:
    GaussRational() = default;
    GaussRational(long v) : re_(v) {}
    GaussRational(int v) : re_(v) {}
    GaussRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }
    GaussRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im))
    {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussRational i() { return {Rational(0), Rational(1)}; }

    const Rational &re() const noexcept { return re_; }
    const Rational &im() const noexcept { return im_; }

    bool is_zero() const noexcept { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const noexcept { return sgn(im_) == 0; }
    bool is_rational_integer() const { return is_real() && re_.get_den() == 1; }

    GaussRational conj() const { return {re_, -im_}; }
    // |z|^2, exact.
    Rational norm() const { return re_ * re_ + im_ * im_; }
    // Throws std::domain_error on zero.
    GaussRational inverse() const;

    GaussRational operator-() const { return {-re_, -im_}; }

    GaussRational &operator+=(const GaussRational &o)
    {
        re_ += o.re_;
        if (sgn(o.im_) != 0) im_ += o.im_;
        return *this;
    }
    GaussRational &operator-=(const GaussRational &o)
    {
        re_ -= o.re_;
        if (sgn(o.im_) != 0) im_ -= o.im_;
        return *this;
    }
    GaussRational &operator*=(const GaussRational &o);
    GaussRational &operator/=(const GaussRational &o) { return *this *= o.inverse(); }

    friend GaussRational operator+(GaussRational a, const GaussRational &b) { return a += b; }
    friend GaussRational operator-(GaussRational a, const GaussRational &b) { return a -= b; }
    friend GaussRational operator*(GaussRational a, const GaussRational &b) { return a *= b; }
    friend GaussRational operator/(GaussRational a, const GaussRational &b) { return a /= b; }

    friend bool operator==(const GaussRational &a, const GaussRational &b)
    {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    // Lexicographic on (Re, Im). This is the exponent order used by QSeries.
    friend std::strong_ordering operator<=>(const GaussRational &a, const GaussRational &b)
    {
        if (int c = cmp(a.re_, b.re_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        int c = cmp(a.im_, b.im_);
        if (c == 0) return std::strong_ordering::equal;
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }

    std::string to_string() const;

private:
    Rational re_{0};
    Rational im_{0};
};

// "p/q", "p/q+r/s i", "p/q-r/s i", "r/s i", "i", "-i". Spaces are ignored.
GaussRational parse_gauss(std::string_view text);

std::ostream &operator<<(std::ostream &os, const GaussRational &z);

// mu (mu-1) ... (mu-j+1) / j!
GaussRational gbinom(const GaussRational &mu, std::int64_t j);

// Smallest integer n with n >= Re(mu).
Integer ceil_re(const GaussRational &mu);

} // namespace vertexflow
