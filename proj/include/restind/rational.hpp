#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <string>
#include <string_view>

#include "restind/error.hpp"

namespace restind {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical "p/q" text form; q is always present, so integers print as "n/1".
inline std::string to_pq(const Rational& r) {
  Rational c = r;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rational parse_rational(std::string_view s) {
  std::string text(s);
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0 || r.get_den() == 0)
    fail(ErrorCode::ParseError, "malformed rational '" + text + "'");
  r.canonicalize();
  return r;
}

/// a/b in canonical form (mpq_class(a, b) alone does not canonicalize).
inline Rational ratio(const Integer& a, const Integer& b) {
  if (b == 0) fail(ErrorCode::DomainError, "zero denominator");
  Rational r(a, b);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer from_i128(__int128 v) {
  if (v >= LONG_MIN && v <= LONG_MAX) return Integer(static_cast<long>(v));
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

/// Small integer value of r, if r is an integer with |r| < 2^40.
inline bool small_integer(const Rational& r, std::int64_t& out) {
  if (r.get_den() != 1 || !r.get_num().fits_slong_p()) return false;
  const long v = r.get_num().get_si();
  if (v > (1L << 40) || v < -(1L << 40)) return false;
  out = v;
  return true;
}

}  // namespace restind
