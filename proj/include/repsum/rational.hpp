#pragma once

// Exact arithmetic helpers on top of GMP's C++ interface.
//
// Rational values are always canonical (lowest terms, positive denominator),
// which makes get_str() produce the "p/q" / "p" text form directly.

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "repsum/error.hpp"

namespace repsum {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw error(errc::domain, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Integer& v) { return v.get_str(); }
inline std::string to_string(const Rational& v) { return v.get_str(); }

/// Parses "p", "-p", "p/q" with q > 0. Result is reduced; "4/6" is accepted
/// and becomes 2/3.
inline Rational parse_rational(std::string_view text) {
  auto is_digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  auto fail = [&] { return error(errc::parse, "not a rational: '" + std::string(text) + "'"); };

  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view mag = num;
  if (!mag.empty() && (mag.front() == '-' || mag.front() == '+')) mag.remove_prefix(1);
  if (!is_digits(mag) || !is_digits(den)) throw fail();

  Integer n(std::string(num.front() == '+' ? num.substr(1) : num));
  Integer d{std::string(den)};
  if (d == 0) throw fail();
  return make_rational(n, d);
}

inline Integer parse_integer(std::string_view text) {
  Rational q = parse_rational(text);
  if (q.get_den() != 1 || text.find('/') != std::string_view::npos)
    throw error(errc::parse, "not an integer: '" + std::string(text) + "'");
  return q.get_num();
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& v) { return sgn(v); }

inline Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_square(const Integer& v) { return v >= 0 && mpz_perfect_square_p(v.get_mpz_t()) != 0; }

inline Integer isqrt(const Integer& v) {
  if (v < 0) throw error(errc::domain, "square root of a negative integer");
  Integer r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  return r;
}

/// Non-negative square root of q when q is the square of a rational.
inline std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q < 0 || !is_square(q.get_num()) || !is_square(q.get_den())) return std::nullopt;
  return make_rational(isqrt(q.get_num()), isqrt(q.get_den()));
}

inline Rational pow(const Rational& base, unsigned exp) {
  Rational r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline double to_double(const Rational& q) { return q.get_d(); }

// 128-bit helpers for the hot search loops.

using i128 = __int128;
using u128 = unsigned __int128;

/// floor(sqrt(v)) for v >= 0.
inline u128 isqrt_u128(u128 v) {
  if (v == 0) return 0;
  u128 r = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

inline std::optional<u128> exact_sqrt_u128(u128 v) {
  // Quadratic residues mod 64 reject most non-squares before the sqrt.
  constexpr std::uint64_t residues64 = 0x0202021202030213ULL;
  if (((residues64 >> static_cast<unsigned>(v & 63)) & 1) == 0) return std::nullopt;
  u128 r = isqrt_u128(v);
  if (r * r != v) return std::nullopt;
  return r;
}

inline Integer to_integer(i128 v) {
  bool neg = v < 0;
  u128 mag = neg ? static_cast<u128>(-(v + 1)) + 1 : static_cast<u128>(v);
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(mag >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(mag));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

}  // namespace repsum
