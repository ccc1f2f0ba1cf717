#pragma once

// The curve family E_{n,z}: Y^2 = X (X^2 + A X + B) with
//   A = nz(nz - 2z^2 - 8z - 2) + (z^2 - 1)^2,
//   B = 16 n z^3 (z + 1)^2,
// and its chord-tangent group law written directly for this shape.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "repsum/rational.hpp"

namespace repsum {

/// 256(z+1)^4 z^6 (z^2n^2 - 2z(z^2+6z+1)n + (z-1)^4)(nz-(z+1)^2)^2 n^2.
inline Rational discriminant(const Integer& n_int, const Rational& z) {
  if (z <= 0) throw error(errc::domain, "z must be positive");
  const Rational n(n_int);
  const Rational zp1 = z + 1;
  const Rational zm1 = z - 1;
  const Rational quad = z * z * n * n - 2 * z * (z * z + 6 * z + 1) * n + pow(zm1, 4);
  const Rational hyp = n * z - zp1 * zp1;
  return 256 * pow(zp1, 4) * pow(z, 6) * quad * hyp * hyp * n * n;
}

/// (n, z) together with the Weierstrass coefficients A and B.
class CurveParams {
 public:
  CurveParams(Integer n, Rational z) : n_(std::move(n)), z_(std::move(z)) {
    if (z_ <= 0) throw error(errc::domain, "z must be positive");
    const Rational n_q(n_);
    const Rational zz = z_ * z_;
    a_ = n_q * z_ * (n_q * z_ - 2 * zz - 8 * z_ - 2) + (zz - 1) * (zz - 1);
    b_ = 16 * n_q * zz * z_ * (z_ + 1) * (z_ + 1);
    singular_ = discriminant(n_, z_) == 0;
  }

  const Integer& n() const noexcept { return n_; }
  const Rational& z() const noexcept { return z_; }
  const Rational& A() const noexcept { return a_; }
  const Rational& B() const noexcept { return b_; }
  bool singular() const noexcept { return singular_; }

  /// nz - (z+1)^2, whose positivity is the hypothesis of the egg criterion.
  Rational hypothesis_margin() const { return Rational(n_) * z_ - (z_ + 1) * (z_ + 1); }

  /// X^3 + A X^2 + B X.
  Rational rhs(const Rational& x) const { return ((x + a_) * x + b_) * x; }

 private:
  Integer n_;
  Rational z_;
  Rational a_;
  Rational b_;
  bool singular_ = false;
};

inline CurveParams make_curve(const Integer& n, const Rational& z) { return CurveParams(n, z); }

/// Either the point at infinity or an affine point (X, Y).
class CurvePoint {
 public:
  static CurvePoint infinity() { return CurvePoint(); }

  CurvePoint(Rational x, Rational y) : x_(std::move(x)), y_(std::move(y)), infinite_(false) {}

  bool is_infinity() const noexcept { return infinite_; }
  const Rational& x() const noexcept { return x_; }
  const Rational& y() const noexcept { return y_; }

  friend bool operator==(const CurvePoint& p, const CurvePoint& q) {
    if (p.infinite_ || q.infinite_) return p.infinite_ == q.infinite_;
    return p.x_ == q.x_ && p.y_ == q.y_;
  }

 private:
  CurvePoint() = default;

  Rational x_;
  Rational y_;
  bool infinite_ = true;
};

inline bool is_on_curve(const CurvePoint& p, const CurveParams& c) {
  return p.is_infinity() || p.y() * p.y() == c.rhs(p.x());
}

namespace detail {

inline void require_group(const CurveParams& c) {
  if (c.singular()) throw error(errc::singular_curve, "group law is undefined on a singular curve");
}

inline void require_on_curve(const CurvePoint& p, const CurveParams& c) {
  if (!is_on_curve(p, c)) throw error(errc::not_on_curve, "point is not on E_{n,z}");
}

inline CurvePoint add_unchecked(const CurvePoint& p, const CurvePoint& q, const CurveParams& c) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  Rational slope;
  if (p.x() == q.x()) {
    if (p.y() != q.y() || p.y() == 0) return CurvePoint::infinity();
    slope = (3 * p.x() * p.x() + 2 * c.A() * p.x() + c.B()) / (2 * p.y());
  } else {
    slope = (q.y() - p.y()) / (q.x() - p.x());
  }
  Rational x3 = slope * slope - c.A() - p.x() - q.x();
  Rational y3 = -(p.y() + slope * (x3 - p.x()));
  return CurvePoint(std::move(x3), std::move(y3));
}

}  // namespace detail

inline CurvePoint neg(const CurvePoint& p) {
  return p.is_infinity() ? p : CurvePoint(p.x(), -p.y());
}

inline CurvePoint add(const CurvePoint& p, const CurvePoint& q, const CurveParams& c) {
  detail::require_group(c);
  detail::require_on_curve(p, c);
  detail::require_on_curve(q, c);
  return detail::add_unchecked(p, q, c);
}

inline CurvePoint dbl(const CurvePoint& p, const CurveParams& c) { return add(p, p, c); }

/// [k]P by left-to-right double-and-add over the non-adjacent form of k.
inline CurvePoint mul(std::int64_t k, const CurvePoint& p, const CurveParams& c) {
  detail::require_group(c);
  detail::require_on_curve(p, c);
  if (k == 0 || p.is_infinity()) return CurvePoint::infinity();

  std::vector<int> naf;  // least significant digit first
  Integer e = k;
  if (k < 0) e = -e;
  for (; e != 0; e >>= 1) {
    int digit = 0;
    if (mpz_odd_p(e.get_mpz_t())) {
      digit = 2 - static_cast<int>(mpz_fdiv_ui(e.get_mpz_t(), 4));
      e -= digit;
    }
    naf.push_back(digit);
  }

  const CurvePoint base = k < 0 ? neg(p) : p;
  const CurvePoint base_neg = neg(base);
  CurvePoint acc = CurvePoint::infinity();
  for (auto it = naf.rbegin(); it != naf.rend(); ++it) {
    acc = detail::add_unchecked(acc, acc, c);
    if (*it == 1) acc = detail::add_unchecked(acc, base, c);
    if (*it == -1) acc = detail::add_unchecked(acc, base_neg, c);
  }
  return acc;
}

/// P = (4z(1+z)^2, 4z(1+z)^2 (nz - (z+1)^2)).
inline CurvePoint base_point(const CurveParams& c) {
  const Rational& z = c.z();
  Rational x = 4 * z * (1 + z) * (1 + z);
  Rational y = x * c.hypothesis_margin();
  return CurvePoint(std::move(x), std::move(y));
}

/// [2]P = (4z^2, -4z^2(nz + z^2 + 1)).
inline CurvePoint closed_form_2P(const CurveParams& c) {
  const Rational n(c.n());
  const Rational& z = c.z();
  return CurvePoint(4 * z * z, -4 * z * z * (n * z + z * z + 1));
}

inline CurvePoint closed_form_4P(const CurveParams& c) {
  const Rational n(c.n());
  const Rational& z = c.z();
  const Rational zz = z * z;
  const Rational den = n * z + zz + 1;
  if (den == 0) throw error(errc::domain, "nz + z^2 + 1 vanishes");
  const Rational lin = n * (z + 1) * (z + 1) - z;
  Rational x = 4 * zz * lin * lin / (den * den);
  const Rational cubic = zz * (1 + z) * (1 + z) * n * n * n                 //
                         - zz * (4 * zz + 7 * z + 4) * n * n                 //
                         + (pow(z, 6) + 2 * pow(z, 5) + 9 * pow(z, 4) + 12 * pow(z, 3) + 9 * zz + 2 * z + 1) * n  //
                         + pow(z, 5) + z;
  Rational y = 4 * zz * lin / (den * den * den) * cubic;
  return CurvePoint(std::move(x), std::move(y));
}

/// Smallest k <= bound with [k]P = O, if any. With bound 12 an empty result
/// certifies infinite order (rational torsion never exceeds order 12).
inline std::optional<int> torsion_order(const CurvePoint& p, const CurveParams& c, int bound = 12) {
  detail::require_group(c);
  detail::require_on_curve(p, c);
  CurvePoint acc = CurvePoint::infinity();
  for (int k = 1; k <= bound; ++k) {
    acc = detail::add_unchecked(acc, p, c);
    if (acc.is_infinity()) return k;
  }
  return std::nullopt;
}

inline bool has_infinite_order(const CurvePoint& p, const CurveParams& c) {
  return !torsion_order(p, c, 12).has_value();
}

/// Result of dividing 4(4n-1)^2 by (n+2)^2, first as polynomials in n, then
/// as integers at the given n.
struct FourPRemainder {
  Integer remainder;  // the polynomial remainder evaluated at n
  bool divisible;     // whether (n+2)^2 divides 4(4n-1)^2 as integers
};

inline FourPRemainder four_p_remainder(const Integer& n) {
  // Coefficients highest degree first.
  std::vector<Integer> num = {64, -32, 4};  // 4(4n-1)^2
  const std::vector<Integer> den = {1, 4, 4};  // (n+2)^2, monic
  for (std::size_t i = 0; i + den.size() <= num.size(); ++i) {
    Integer q = num[i];
    for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= q * den[j];
  }
  Integer r = 0;
  for (std::size_t i = num.size() - (den.size() - 1); i < num.size(); ++i) r = r * n + num[i];

  const Integer value = 4 * (4 * n - 1) * (4 * n - 1);
  const Integer modulus = (n + 2) * (n + 2);
  const bool divisible = modulus != 0 && mpz_divisible_p(value.get_mpz_t(), modulus.get_mpz_t()) != 0;
  return {r, divisible};
}

struct RootBracket {
  Rational lo;
  Rational hi;
};

/// Isolates the two real roots r1 < r2 of x^2 + p x + q by exact bisection
/// until each bracket is narrower than tol. Empty when the roots are not real
/// and distinct.
inline std::optional<std::pair<RootBracket, RootBracket>> bracket_monic_quadratic(const Rational& p,
                                                                               const Rational& q,
                                                                               const Rational& tol) {
  if (tol <= 0) throw error(errc::domain, "tolerance must be positive");
  if (p * p - 4 * q <= 0) return std::nullopt;
  auto f = [&](const Rational& x) -> Rational { return (x + p) * x + q; };

  const Rational vertex = -p / 2;
  const Rational bound = 1 + (abs(p) > abs(q) ? Rational(abs(p)) : Rational(abs(q)));

  // f(outer) > 0 and f(vertex) < 0; narrow until the bracket is below tol.
  auto isolate = [&](Rational outer, Rational inner) {
    while (abs(inner - outer) >= tol) {
      Rational mid = (outer + inner) / 2;
      int s = sgn(f(mid));
      if (s == 0) return RootBracket{mid, mid};
      (s > 0 ? outer : inner) = std::move(mid);
    }
    return outer < inner ? RootBracket{outer, inner} : RootBracket{inner, outer};
  };
  return std::pair{isolate(-bound, vertex), isolate(bound, vertex)};
}

/// The X < 0 oval of E_{n,z}: brackets around the negative roots e1 < e2 of
/// X^2 + A X + B. lo <= e1 <= e2 <= hi.
struct EggInterval {
  bool exists = false;
  RootBracket e1;
  RootBracket e2;
  Rational lo;
  Rational hi;

  bool contains(const Rational& x) const { return exists && lo <= x && x <= hi; }
};

inline const Rational& default_egg_tolerance() {
  static const Rational tol(1, 1000000);
  return tol;
}

inline EggInterval egg_interval(const CurveParams& c, const Rational& tol = default_egg_tolerance()) {
  if (c.singular()) throw error(errc::singular_curve, "no egg on a singular curve");
  EggInterval egg;
  // Both roots are negative exactly when A > 0 and B > 0.
  if (c.A() <= 0 || c.B() <= 0) return egg;
  auto roots = bracket_monic_quadratic(c.A(), c.B(), tol);
  if (!roots) return egg;
  egg.exists = true;
  egg.e1 = roots->first;
  egg.e2 = roots->second;
  egg.lo = egg.e1.lo;
  egg.hi = egg.e2.hi;
  return egg;
}

/// Brackets for the roots of nz - (z+1)^2 = 0, i.e. z^2 - (n-2) z + 1 = 0.
/// For n > 4 the admissible z form the open interval between them.
inline std::optional<std::pair<RootBracket, RootBracket>> admissible_z_interval(const Integer& n,
                                                                             const Rational& tol) {
  return bracket_monic_quadratic(Rational(Integer(2 - n)), Rational(1), tol);
}

}  // namespace repsum
