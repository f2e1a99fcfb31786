#pragma once

// Exact rationals for every coordinate, radius and density value.
// mpq_class keeps values in lowest terms with a positive denominator, so
// equality of two Rationals is equality of their reduced fractions.

#include <gmpxx.h>

#include <cctype>
#include <string>
#include <string_view>

#include "error.hpp"

namespace pdens {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rational(long num, long den = 1) {
    if (den == 0) throw error(errc::invalid_argument, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational rational(const Integer& num, const Integer& den) {
    if (den == 0) throw error(errc::invalid_argument, "zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// x reduced into [0, period).
inline Rational mod(const Rational& x, const Rational& period) {
    Rational q = x / period;
    Rational r = x - Rational(floor(q)) * period;
    return r;
}

/// Reduced "p/q", or "n" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

namespace detail {

inline bool parse_integer(std::string_view s, Integer& out) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (s[0] == '-' || s[0] == '+') i = 1;
    if (i == s.size()) return false;
    for (std::size_t j = i; j < s.size(); ++j)
        if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    std::string digits(s.substr(s[0] == '+' ? 1 : 0));
    return out.set_str(digits, 10) == 0;
}

} // namespace detail

/// Parses "n", "p/q" (optionally signed). Decimal notation is rejected.
inline Rational parse_rational(std::string_view text) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
        while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
        return v;
    };
    std::string_view s = trim(text);
    Integer num, den = 1;
    auto slash = s.find('/');
    bool ok = slash == std::string_view::npos
                  ? detail::parse_integer(s, num)
                  : detail::parse_integer(trim(s.substr(0, slash)), num)
                        && detail::parse_integer(trim(s.substr(slash + 1)), den);
    if (!ok) throw error(errc::parse_error, "not a rational: '" + std::string(text) + "'");
    if (den == 0) throw error(errc::parse_error, "zero denominator: '" + std::string(text) + "'");
    return rational(num, den);
}

} // namespace pdens
