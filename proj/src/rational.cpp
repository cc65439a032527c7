#include <vertexflow/rational.hpp>

#include <cctype>
#include <limits>
#include <stdexcept>
#include <string>

#include <vertexflow/errors.hpp>

namespace vertexflow {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool valid_integer_text(std::string_view s)
{
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    text = trim(text);
    const auto slash = text.find('/');
    std::string_view num = trim(text.substr(0, slash));
    std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : trim(text.substr(slash + 1));
    if (!valid_integer_text(num) || !valid_integer_text(den)) {
        throw ConfigError("not a rational number: '" + std::string(text) + "'");
    }
    std::string n(num);
    if (!n.empty() && n.front() == '+') n.erase(0, 1);
    std::string d(den);
    if (!d.empty() && d.front() == '+') d.erase(0, 1);
    Integer p(n, 10);
    Integer q(d, 10);
    if (q == 0) throw ConfigError("zero denominator in '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_pq_string(const Rational &x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Integer floor_of(const Rational &x)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil_of(const Rational &x)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

std::int64_t to_int64(const Integer &x)
{
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in 64 bits: " + x.get_str());
    return x.get_si();
}

std::int64_t to_int64_exact(const Rational &x)
{
    if (x.get_den() != 1) throw std::domain_error("not an integer: " + x.get_str());
    return to_int64(x.get_num());
}

std::string to_string(LatticeError::Kind kind)
{
    switch (kind) {
    case LatticeError::Kind::NotSquare: return "NotSquare";
    case LatticeError::Kind::NotSymmetric: return "NotSymmetric";
    case LatticeError::Kind::NotEven: return "NotEven";
    case LatticeError::Kind::NotPositiveDefinite: return "NotPositiveDefinite";
    case LatticeError::Kind::NonIntegerVector: return "NonIntegerVector";
    }
    return "Unknown";
}

} // namespace vertexflow
