#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace vertexflow {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "p/q", "-p/q" (whitespace tolerated around the value).
Rational parse_rational(std::string_view text);

// Always "p/q", with q = 1 for integers.
std::string to_pq_string(const Rational &x);

Integer floor_of(const Rational &x);
Integer ceil_of(const Rational &x);

// Throws std::overflow_error when the value does not fit.
std::int64_t to_int64(const Integer &x);
std::int64_t to_int64_exact(const Rational &x);

inline bool is_integer(const Rational &x) { return x.get_den() == 1; }

} // namespace vertexflow
