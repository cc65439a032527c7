#include <vertexflow/gauss_rational.hpp>

#include <ostream>
#include <stdexcept>
#include <string>

#include <vertexflow/errors.hpp>

namespace vertexflow {

GaussRational &GaussRational::operator*=(const GaussRational &o)
{
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

GaussRational GaussRational::inverse() const
{
    if (is_zero()) throw std::domain_error("inverse of zero in Q(i)");
    if (sgn(im_) == 0) return GaussRational(Rational(1) / re_);
    Rational n = norm();
    return {re_ / n, -im_ / n};
}

std::string GaussRational::to_string() const
{
    if (sgn(im_) == 0) return to_pq_string(re_);
    std::string s = to_pq_string(re_);
    if (sgn(im_) < 0) {
        s += "-" + to_pq_string(-im_);
    } else {
        s += "+" + to_pq_string(im_);
    }
    return s + " i";
}

std::ostream &operator<<(std::ostream &os, const GaussRational &z) { return os << z.to_string(); }

GaussRational parse_gauss(std::string_view text)
{
    std::string s;
    for (char c : text) {
        if (c != ' ' && c != '\t') s.push_back(c);
    }
    if (s.empty()) throw ConfigError("empty complex rational");
    if (s.back() != 'i') return GaussRational(parse_rational(s));
    s.pop_back();
    // Split at the last sign that is not the leading character.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    std::string re_part = split == std::string::npos ? std::string("0") : s.substr(0, split);
    std::string im_part = split == std::string::npos ? s : s.substr(split);
    if (im_part.empty() || im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    if (im_part.back() == '*') im_part.pop_back();
    return {parse_rational(re_part), parse_rational(im_part)};
}

GaussRational gbinom(const GaussRational &mu, std::int64_t j)
{
    if (j < 0) throw std::domain_error("gbinom needs j >= 0");
    GaussRational acc(1);
    for (std::int64_t t = 0; t < j; ++t) {
        acc *= mu - GaussRational(static_cast<long>(t));
        acc *= GaussRational(Rational(1, static_cast<unsigned long>(t + 1)));
    }
    return acc;
}

Integer ceil_re(const GaussRational &mu) { return ceil_of(mu.re()); }

} // namespace vertexflow
