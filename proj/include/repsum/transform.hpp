#pragma once

// Passage between the dehomogenized equation
//     n = (x + y + z + 1)(1/x + 1/y + 1/z + 1),
// its quartic model t^2 = disc_x(y), and the Weierstrass curve E_{n,z}.

#include <algorithm>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "repsum/curve.hpp"
#include "repsum/model.hpp"

namespace repsum {

struct QuarticPoint {
  Rational y;
  Rational t;

  friend bool operator==(const QuarticPoint&, const QuarticPoint&) = default;
};

enum class RegionCase { None, Case1, Case2, Case3, Case4 };

constexpr std::string_view to_string(RegionCase c) noexcept {
  switch (c) {
    case RegionCase::Case1: return "Case1";
    case RegionCase::Case2: return "Case2";
    case RegionCase::Case3: return "Case3";
    case RegionCase::Case4: return "Case4";
    case RegionCase::None: break;
  }
  return "None";
}

/// Coefficients of a x^2 + b x + c = 0, the equation in x obtained from the
/// dehomogenized form for fixed (y, n, z).
struct QuadraticInX {
  Rational a;
  Rational b;
  Rational c;

  Rational discriminant() const { return b * b - 4 * a * c; }
};

inline QuadraticInX quadratic_in_x(const Rational& y, const Integer& n_int, const Rational& z) {
  const Rational n(n_int);
  return {y * z + y + z,                                                  //
          (1 + z) * y * y + (z * z + 4 * z + 1 - n * z) * y + z * z + z,  //
          y * z * (y + z + 1)};
}

/// The quartic in y whose rational square roots give rational x.
inline Rational quartic_rhs(const Rational& y, const Integer& n_int, const Rational& z) {
  const Rational n(n_int);
  const Rational zp1 = z + 1;
  const Rational zp1_sq = zp1 * zp1;
  const Rational s = z * z + 4 * z + 1;
  const Rational c4 = zp1_sq;
  const Rational c3 = 2 * zp1 * (zp1_sq - n * z);
  const Rational c2 = z * z * n * n - 2 * z * s * n + s * zp1_sq;
  const Rational c1 = 2 * z * zp1 * (zp1_sq - n * z);
  const Rational c0 = z * z * zp1_sq;
  return (((c4 * y + c3) * y + c2) * y + c1) * y + c0;
}

struct QuadraticRoots {
  std::vector<Rational> roots;  // ascending, distinct
  bool degenerate = false;      // leading coefficient vanished
};

inline QuadraticRoots solve_x_quadratic(const Rational& y, const Integer& n, const Rational& z) {
  const QuadraticInX q = quadratic_in_x(y, n, z);
  QuadraticRoots out;
  if (q.a == 0) {
    out.degenerate = true;
    if (q.b == 0) throw error(errc::degenerate_quadratic, "both leading coefficients vanish");
    out.roots.push_back(-q.c / q.b);
    return out;
  }
  auto root = rational_sqrt(q.discriminant());
  if (!root) return out;
  Rational r1 = (-q.b - *root) / (2 * q.a);
  Rational r2 = (-q.b + *root) / (2 * q.a);
  if (r2 < r1) std::swap(r1, r2);
  out.roots.push_back(r1);
  if (r2 != r1) out.roots.push_back(std::move(r2));
  return out;
}

namespace detail {

inline void require_affine(const CurvePoint& p) {
  if (p.is_infinity()) throw error(errc::map_pole, "the point at infinity has no image");
}

/// 4nz^2, the X-coordinate where the maps have a pole.
inline Rational map_pole_x(const CurveParams& c) { return 4 * Rational(c.n()) * c.z() * c.z(); }

}  // namespace detail

/// Weierstrass -> quartic.
inline QuarticPoint curve_to_quartic(const CurvePoint& p, const CurveParams& c) {
  detail::require_affine(p);
  const Rational n(c.n());
  const Rational& z = c.z();
  const Rational& X = p.x();
  const Rational& Y = p.y();
  const Rational shift = X - detail::map_pole_x(c);
  if (shift == 0) throw error(errc::map_pole, "X = 4nz^2");

  const Rational zz = z * z;
  const Rational margin = c.hypothesis_margin();
  const Rational nz2 = n * zz;
  Rational y = (Y + X * margin) / (2 * (z + 1) * shift);
  Rational t = (8 * nz2 * margin * Y - X * X * X + 12 * nz2 * X * X +
                8 * nz2 * (n * z * (n * z - 2 * zz - 8 * z - 2) + (zz + 1) * (z + 1) * (z + 1)) * X +
                64 * n * n * pow(z, 5) * (z + 1) * (z + 1)) /
               (4 * (z + 1) * shift * shift);
  return {std::move(y), std::move(t)};
}

/// Quartic -> Weierstrass.
inline CurvePoint quartic_to_curve(const QuarticPoint& q, const CurveParams& c) {
  const Rational& y = q.y;
  const Rational& t = q.t;
  if (t * t != quartic_rhs(y, c.n(), c.z())) throw error(errc::not_on_quartic, "t^2 differs from the quartic");
  const Rational n(c.n());
  const Rational& z = c.z();
  const Rational zp1 = z + 1;
  const Rational margin = c.hypothesis_margin();
  const Rational tz = t - z * z - z;
  Rational X = -2 * zp1 * (-zp1 * y * y + margin * y + tz);
  Rational Y = 2 * zp1 *
               (2 * zp1 * zp1 * y * y * y - 3 * zp1 * margin * y * y +
                (n * z * (n * z - 2 * z * z - 8 * z - 2) + zp1 * (pow(z, 3) + 5 * z * z + 5 * z + 1 - 2 * t)) * y +
                tz * margin);
  return CurvePoint(std::move(X), std::move(Y));
}

namespace detail {

/// Numerators and denominators of the recovered x and y, up to the positive
/// factor 2(1+z):  x = -N1 / (2(1+z) D1),  y = N2 / (2(1+z) D2).
struct RecoveryTerms {
  Rational n1, d1, n2, d2;
};

inline RecoveryTerms recovery_terms(const CurvePoint& p, const CurveParams& c) {
  const Rational n(c.n());
  const Rational& z = c.z();
  const Rational& X = p.x();
  const Rational& Y = p.y();
  const Rational zp1 = z + 1;
  return {X * X - 2 * z * (n * z + zp1 * zp1) * X + 2 * z * Y,  //
          (n * z - z * z - 1) * X - 8 * n * z * z * z + Y,      //
          Y + X * c.hypothesis_margin(),                        //
          X - map_pole_x(c)};
}

}  // namespace detail

/// (x, y) solving the dehomogenized equation with the curve's z and w = 1.
inline std::pair<Rational, Rational> recover_xy(const CurvePoint& p, const CurveParams& c) {
  detail::require_affine(p);
  const auto terms = detail::recovery_terms(p, c);
  if (terms.d1 == 0 || terms.d2 == 0) throw error(errc::map_pole, "recovery map denominator vanishes");
  const Rational two_zp1 = 2 * (1 + c.z());
  return {-terms.n1 / (two_zp1 * terms.d1), terms.n2 / (two_zp1 * terms.d2)};
}

/// Which of the four sign systems certifying x > 0 and y > 0 holds at P.
inline RegionCase classify_region(const CurvePoint& p, const CurveParams& c) {
  if (p.is_infinity()) return RegionCase::None;
  const auto t = detail::recovery_terms(p, c);
  const int s1 = sgn(t.n1), s2 = sgn(t.d1), s3 = sgn(t.n2), s4 = sgn(t.d2);
  if (s1 > 0 && s2 < 0 && s3 > 0 && s4 > 0) return RegionCase::Case1;
  if (s1 > 0 && s2 < 0 && s3 < 0 && s4 < 0) return RegionCase::Case2;
  if (s1 < 0 && s2 > 0 && s3 > 0 && s4 > 0) return RegionCase::Case3;
  if (s1 < 0 && s2 > 0 && s3 < 0 && s4 < 0) return RegionCase::Case4;
  return RegionCase::None;
}

/// Exact bounds of the egg criterion at a given X: lower < Y < upper.
struct Condition15Bounds {
  Rational lower;
  Rational upper;
};

inline Condition15Bounds condition_1_5_bounds(const Rational& X, const CurveParams& c) {
  const Rational n(c.n());
  const Rational& z = c.z();
  return {-X * (X - 2 * z * (n * z + (z + 1) * (z + 1))) / (2 * z), -c.hypothesis_margin() * X};
}

/// X < 0 and -X(X - 2z(nz+(z+1)^2))/(2z) < Y < ((z+1)^2 - nz) X.
inline bool condition_1_5(const CurvePoint& p, const CurveParams& c) {
  if (c.hypothesis_margin() <= 0) throw error(errc::hypothesis, "requires nz - (z+1)^2 > 0");
  if (p.is_infinity() || p.x() >= 0) return false;
  const auto b = condition_1_5_bounds(p.x(), c);
  return b.lower < p.y() && p.y() < b.upper;
}

/// Positive integer 4-tuple from a curve point, when the point lies in one of
/// the positivity regions.
inline std::optional<Tuple> point_to_solution(const CurvePoint& p, const CurveParams& c) {
  if (p.is_infinity() || classify_region(p, c) == RegionCase::None) return std::nullopt;
  auto [x, y] = recover_xy(p, c);
  if (x <= 0 || y <= 0) return std::nullopt;
  return normalize(Tuple{x, y, c.z(), Rational(1)});
}

/// Normalized positive tuples (x, y, z, 1) for every positive rational root x
/// at the given y, smallest normalized tuple first.
inline std::vector<Tuple> tuples_from_y(const Rational& y, const CurveParams& c) {
  std::vector<Tuple> out;
  if (y <= 0) return out;
  QuadraticRoots roots;
  try {
    roots = solve_x_quadratic(y, c.n(), c.z());
  } catch (const error&) {
    return out;
  }
  for (const auto& x : roots.roots)
    if (x > 0) out.push_back(normalize(Tuple{x, y, c.z(), Rational(1)}));
  std::sort(out.begin(), out.end(), [](const Tuple& a, const Tuple& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  });
  return out;
}

}  // namespace repsum
