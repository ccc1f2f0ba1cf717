#pragma once

// Closed-form families of representations and the two symmetric-shape
// classifications (x,x,y,y) and (x,y,y,y).

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "repsum/model.hpp"

namespace repsum {

namespace detail {

/// u_k of u_{k+1} = u_k + u_{k-1} given u_1 and u_2.
inline Integer lucas_sequence(std::int64_t k, long u1, long u2) {
  if (k < 1) throw error(errc::domain, "sequence index must be at least 1");
  Integer prev = u2 - u1, cur = u1;  // u_0, u_1
  for (std::int64_t i = 1; i < k; ++i) {
    Integer next = prev + cur;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

inline Integer fib(std::int64_t k) { return detail::lucas_sequence(k, 1, 1); }
inline Integer lucas(std::int64_t k) { return detail::lucas_sequence(k, 1, 3); }

struct FamilyMember {
  Integer n;
  Tuple tuple;
};

/// n = 4 L_{4k} + 17 with (F_{2k-1}, F_{2k+1}, c, c), c = 2 F_{2k-1} L_{2k} F_{2k+1}.
inline FamilyMember fibonacci_family(std::int64_t k) {
  if (k < 1) throw error(errc::domain, "family index must be at least 1");
  const Integer a = fib(2 * k - 1);
  const Integer b = fib(2 * k + 1);
  const Integer c = 2 * a * lucas(2 * k) * b;
  const std::vector<Integer> entries{a, b, c, c};
  return {4 * lucas(4 * k) + 17, Tuple::from_integers(entries)};
}

/// (m^2+m+1, m(m+1)(n-1), (m+1)(n-1), -m(n-1)) represents n for any
/// admissible m; one entry is always negative.
inline Tuple parametric_family(const Integer& m, const Integer& n) {
  if (m == 0 || m == -1) throw error(errc::domain, "m must avoid 0 and -1");
  if (n == 1) throw error(errc::domain, "n = 1 gives zero entries");
  const Integer nm1 = n - 1;
  const std::vector<Integer> entries{m * m + m + 1, m * (m + 1) * nm1, (m + 1) * nm1, -m * nm1};
  return Tuple::from_integers(entries);
}

struct ShapeWitness {
  Integer n;
  Tuple witness;
};

namespace detail {

/// For a tuple made of `p` copies of x and `q` copies of y, the value is
///   p^2 + q^2 + pq (r + 1/r),  r = x / y,
/// so r solves pq r^2 + (p^2 + q^2 - n) r + pq = 0. A positive representation
/// exists iff the discriminant is a square (the roots are then positive
/// reciprocals of each other).
inline std::optional<Tuple> shape_witness(long p, long q, const Integer& n) {
  const Integer b = p * p + q * q - n;
  const Integer disc = b * b - 4 * p * q * p * q;
  if (b >= 0 || !is_square(disc)) return std::nullopt;
  // Smaller root, so x <= y.
  const Rational r = make_rational(-b - isqrt(disc), Integer(2 * p * q));
  std::vector<Integer> entries;
  for (long i = 0; i < p; ++i) entries.push_back(r.get_num());
  for (long i = 0; i < q; ++i) entries.push_back(r.get_den());
  return Tuple::from_integers(entries);
}

inline std::vector<ShapeWitness> classify_shape(long p, long q, const Integer& n_max) {
  std::vector<ShapeWitness> out;
  for (Integer n = 17; n <= n_max; ++n)
    if (auto w = shape_witness(p, q, n)) out.push_back({n, std::move(*w)});
  return out;
}

}  // namespace detail

/// All 16 < n <= n_max with a positive representation (x, x, y, y).
inline std::vector<ShapeWitness> double_pair_classify(const Integer& n_max) {
  if (n_max < 17) throw error(errc::domain, "n_max must be at least 17");
  return detail::classify_shape(2, 2, n_max);
}

/// All 16 < n <= n_max with a positive representation (x, y, y, y).
inline std::vector<ShapeWitness> triple_classify(const Integer& n_max) {
  if (n_max < 17) throw error(errc::domain, "n_max must be at least 17");
  return detail::classify_shape(1, 3, n_max);
}

/// Witness (x, x, y, y) for n, if one exists.
inline std::optional<Tuple> double_pair_witness(const Integer& n) { return detail::shape_witness(2, 2, n); }

/// Witness (x, y, y, y) for n, if one exists.
inline std::optional<Tuple> triple_witness(const Integer& n) { return detail::shape_witness(1, 3, n); }

/// k with 4 L_{4k} + 17 = n, if any.
inline std::optional<std::int64_t> fibonacci_family_index(const Integer& n) {
  for (std::int64_t k = 1;; ++k) {
    const Integer v = 4 * lucas(4 * k) + 17;
    if (v == n) return k;
    if (v > n) return std::nullopt;
  }
}

}  // namespace repsum
