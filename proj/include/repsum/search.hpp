#pragma once

// Solvers for positive representations:
//   * exhaustive sweeps that fix all but the last coordinate and solve the
//     remaining quadratic exactly,
//   * a curve search over E_{n,z} (subgroup multiples, then the egg),
//   * a strategy cascade and a table driver on top of both.
//
// Sweeps split the first coordinate into independent chunks. Chunks may run
// on several threads; results are merged by chunk index so the output does
// not depend on the worker count.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "repsum/curve.hpp"
#include "repsum/families.hpp"
#include "repsum/model.hpp"
#include "repsum/transform.hpp"

namespace repsum {

struct SearchBounds {
  std::int64_t x_max = 100;
  std::int64_t y_max = 300;
  std::int64_t z_max = 600;
  std::int64_t height = 200;          // curve search: |a| <= height and d <= height for X = a/d^2
  std::int64_t max_z_candidates = 16;  // curve search: number of z values tried by solve()

  /// The desk-scale sweep used by default.
  static SearchBounds desk() { return {}; }

  /// The full range 1 <= x <= 500, x <= y <= 3000, y <= z <= 6000.
  static SearchBounds full() {
    SearchBounds b;
    b.x_max = 500;
    b.y_max = 3000;
    b.z_max = 6000;
    return b;
  }

  void validate() const {
    if (x_max < 1 || height < 1 || max_z_candidates < 0)
      throw error(errc::domain, "search bounds must be positive");
    if (!(x_max <= y_max && y_max <= z_max)) throw error(errc::domain, "search bounds need x_max <= y_max <= z_max");
  }

  friend bool operator==(const SearchBounds&, const SearchBounds&) = default;
};

enum class Strategy { family, brute, curve };

constexpr std::string_view to_string(Strategy s) noexcept {
  switch (s) {
    case Strategy::family: return "family";
    case Strategy::brute: return "brute";
    case Strategy::curve: return "curve";
  }
  return "unknown";
}

struct Solution {
  Tuple tuple;  // nondecreasing positive integers
  Strategy strategy;
};

struct SolveReport {
  Integer n;
  int m = 4;
  std::vector<Solution> solutions;  // lexicographic, no permutation duplicates
  bool exhausted = false;           // every search phase covered its whole bounded space

  bool found() const noexcept { return !solutions.empty(); }

  /// Adds a solution in canonical order, dropping permutation duplicates.
  void add(const Tuple& t, Strategy s) {
    Tuple canon = t.sorted();
    auto less = [](const Solution& a, const Tuple& b) {
      return std::lexicographical_compare(a.tuple.begin(), a.tuple.end(), b.begin(), b.end());
    };
    auto it = std::lower_bound(solutions.begin(), solutions.end(), canon, less);
    if (it != solutions.end() && it->tuple == canon) return;
    solutions.insert(it, Solution{std::move(canon), s});
  }
};

/// Plain-text record of chunks that were swept completely without finding
/// anything, one chunk id per line. Chunks listed here are skipped on rerun.
class Checkpoint {
 public:
  explicit Checkpoint(std::string path) : path_(std::move(path)) {
    std::ifstream in(path_);
    for (std::string line; std::getline(in, line);)
      if (!line.empty()) done_.insert(line);
  }

  bool done(const std::string& id) const {
    std::lock_guard lock(mutex_);
    return done_.count(id) != 0;
  }

  void mark(const std::string& id) {
    std::lock_guard lock(mutex_);
    if (!done_.insert(id).second) return;
    std::ofstream out(path_, std::ios::app);
    out << id << '\n';
  }

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
  mutable std::mutex mutex_;
  std::set<std::string> done_;
};

struct SweepOptions {
  unsigned jobs = 1;
  bool find_all = false;
  Checkpoint* checkpoint = nullptr;
};

inline unsigned default_jobs() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {

using Coords = std::vector<std::int64_t>;

/// Positive integer roots w of r w^2 + (s r + l - n l) w + s l = 0, ascending.
/// This is (s + w)(r/l + 1/w) = n multiplied out, for a prefix with sum s and
/// reciprocal sum r/l.
inline void last_coordinate_mpz(const Integer& s, const Integer& r, const Integer& l, const Integer& n,
                                std::vector<Integer>& out) {
  const Integer b = s * r - (n - 1) * l;
  if (b >= 0) return;
  const Integer disc = b * b - 4 * r * s * l;
  if (!is_square(disc)) return;
  const Integer root = isqrt(disc);
  const Integer two_a = 2 * r;
  for (const Integer& num : {Integer(-b - root), Integer(-b + root)}) {
    if (num > 0 && mpz_divisible_p(num.get_mpz_t(), two_a.get_mpz_t())) {
      Integer w = num / two_a;
      if (out.empty() || out.back() != w) out.push_back(std::move(w));
    }
  }
}

/// Same as above in 128-bit arithmetic. Returns false on overflow so the
/// caller can redo the candidate with GMP.
inline bool last_coordinate_i128(i128 s, i128 r, i128 l, i128 n, std::vector<std::int64_t>& out) {
  i128 sr, nl, b, bb, rs, rsl, four_rsl, disc;
  if (__builtin_mul_overflow(s, r, &sr) || __builtin_mul_overflow(n - 1, l, &nl) ||
      __builtin_sub_overflow(sr, nl, &b))
    return false;
  if (b >= 0) return true;
  if (__builtin_mul_overflow(b, b, &bb) || __builtin_mul_overflow(r, s, &rs) ||
      __builtin_mul_overflow(rs, l, &rsl) || __builtin_mul_overflow(rsl, i128{4}, &four_rsl) ||
      __builtin_sub_overflow(bb, four_rsl, &disc))
    return false;
  if (disc < 0) return true;
  auto root = exact_sqrt_u128(static_cast<u128>(disc));
  if (!root) return true;
  const i128 two_a = 2 * r;
  const i128 rt = static_cast<i128>(*root);
  for (i128 num : {-b - rt, -b + rt}) {
    if (num > 0 && num % two_a == 0) {
      const i128 w = num / two_a;
      if (w > std::numeric_limits<std::int64_t>::max()) return false;
      if (out.empty() || out.back() != static_cast<std::int64_t>(w)) out.push_back(static_cast<std::int64_t>(w));
    }
  }
  return true;
}

inline void last_coordinate(const Coords& prefix, std::int64_t n, std::vector<std::int64_t>& out) {
  // sum s, lcm l and reciprocal numerator r = sum l / c_i
  i128 s = 0, l = 1;
  bool fits = true;
  for (auto c : prefix) {
    s += c;
    const i128 g = std::gcd(static_cast<std::int64_t>(l % c), c);
    if (__builtin_mul_overflow(l / g, static_cast<i128>(c), &l) || l > (i128{1} << 80)) {
      fits = false;
      break;
    }
  }
  if (fits) {
    i128 r = 0;
    for (auto c : prefix) r += l / c;
    if (last_coordinate_i128(s, r, l, n, out)) return;
    out.clear();
  }

  Integer sz = 0, lz = 1, rz = 0;
  for (auto c : prefix) {
    sz += c;
    lz = lcm(lz, Integer(c));
  }
  for (auto c : prefix) rz += lz / c;
  std::vector<Integer> big;
  last_coordinate_mpz(sz, rz, lz, Integer(n), big);
  for (const auto& w : big)
    if (w.fits_slong_p()) out.push_back(w.get_si());
}

/// Runs chunk_fn(i) for i in [0, chunk_count) over `jobs` threads. In
/// find-first mode chunks past the first productive one are skipped; the
/// merged result depends only on chunk order, never on scheduling.
inline std::vector<std::vector<Coords>> run_chunks(std::int64_t chunk_count,
                                                   const std::function<std::vector<Coords>(std::int64_t)>& chunk_fn,
                                                   const SweepOptions& opts,
                                                   const std::function<std::string(std::int64_t)>& chunk_id) {
  std::vector<std::vector<Coords>> results(static_cast<std::size_t>(std::max<std::int64_t>(chunk_count, 0)));
  std::atomic<std::int64_t> next{0};
  std::atomic<std::int64_t> first_hit{std::numeric_limits<std::int64_t>::max()};

  auto worker = [&] {
    for (;;) {
      const std::int64_t i = next.fetch_add(1);
      if (i >= chunk_count) return;
      if (!opts.find_all && i > first_hit.load()) continue;
      std::string id;
      if (opts.checkpoint) {
        id = chunk_id(i);
        if (opts.checkpoint->done(id)) continue;
      }
      auto found = chunk_fn(i);
      if (found.empty()) {
        if (opts.checkpoint) opts.checkpoint->mark(id);
        continue;
      }
      if (!opts.find_all) {
        std::int64_t cur = first_hit.load();
        while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
        }
      }
      results[static_cast<std::size_t>(i)] = std::move(found);
    }
  };

  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1 || chunk_count <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < std::min<std::int64_t>(jobs, chunk_count); ++j) pool.emplace_back(worker);
  }
  return results;
}

inline Tuple coords_tuple(const Coords& c) {
  std::vector<Integer> v(c.begin(), c.end());
  return Tuple::from_integers(v);
}

/// Merge chunk results into a report. Find-first keeps the first solution of
/// the first productive chunk.
inline void merge_chunks(const std::vector<std::vector<Coords>>& chunks, bool find_all, SolveReport& report) {
  for (const auto& chunk : chunks) {
    for (const auto& c : chunk) {
      report.add(coords_tuple(c), Strategy::brute);
      if (!find_all) return;
    }
  }
}

inline std::string bounds_id(int m, std::int64_t n, const SearchBounds& b) {
  return "m=" + std::to_string(m) + ";n=" + std::to_string(n) + ";bounds=" + std::to_string(b.x_max) + "," +
         std::to_string(b.y_max) + "," + std::to_string(b.z_max);
}

}  // namespace detail

/// Largest possible ratio between two entries of a positive m-tuple with
/// value n: every pair contributes (t + 1/t - 2) <= n - m^2.
inline std::int64_t max_entry_ratio(int m, std::int64_t n) { return n - std::int64_t{m} * m + 2; }

/// Sweeps 1 <= x <= y <= z within the bounds and solves for w >= z.
inline SolveReport brute_force_m4(std::int64_t n, const SearchBounds& bounds, bool find_all,
                                  SweepOptions opts = {}) {
  if (n <= 16) throw error(errc::domain, "the m = 4 sweep needs n > 16");
  bounds.validate();
  opts.find_all = find_all;
  const std::int64_t ratio = max_entry_ratio(4, n);

  auto chunk = [&](std::int64_t idx) {
    std::vector<detail::Coords> found;
    std::vector<std::int64_t> ws;
    const std::int64_t x = idx + 1;
    const std::int64_t cap = x * ratio;
    const std::int64_t y_lim = std::min(bounds.y_max, cap);
    const std::int64_t z_lim = std::min(bounds.z_max, cap);
    for (std::int64_t y = x; y <= y_lim; ++y) {
      for (std::int64_t z = y; z <= z_lim; ++z) {
        const i128 s = x + y + z;
        const i128 r = static_cast<i128>(x) * y + static_cast<i128>(y) * z + static_cast<i128>(z) * x;
        const i128 l = static_cast<i128>(x) * y * z;
        ws.clear();
        if (!detail::last_coordinate_i128(s, r, l, n, ws)) {
          ws.clear();
          detail::last_coordinate({x, y, z}, n, ws);
        }
        for (auto w : ws) {
          if (w < z) continue;
          found.push_back({x, y, z, w});
          if (!find_all) return found;
        }
      }
    }
    return found;
  };
  auto chunk_id = [&](std::int64_t idx) { return detail::bounds_id(4, n, bounds) + ";x=" + std::to_string(idx + 1); };

  SolveReport report;
  report.n = n;
  report.m = 4;
  auto chunks = detail::run_chunks(bounds.x_max, chunk, opts, chunk_id);
  detail::merge_chunks(chunks, find_all, report);
  report.exhausted = find_all || !report.found();
  return report;
}

/// General m >= 4: the first m-1 coordinates run nondecreasing, the first
/// bounded by x_max, the last of them by z_max and the others by y_max; the
/// final coordinate comes from the quadratic and must not be smaller.
inline SolveReport brute_force_m(int m, std::int64_t n, const SearchBounds& bounds, bool find_all = false,
                                 SweepOptions opts = {}) {
  if (m < 4) throw error(errc::domain, "m must be at least 4");
  if (n <= std::int64_t{m} * m) throw error(errc::domain, "n must exceed m^2");
  bounds.validate();
  opts.find_all = find_all;
  const std::int64_t ratio = max_entry_ratio(m, n);
  const std::size_t free_count = static_cast<std::size_t>(m - 1);

  auto chunk = [&](std::int64_t idx) {
    std::vector<detail::Coords> found;
    std::vector<std::int64_t> ws;
    detail::Coords prefix(free_count);
    prefix[0] = idx + 1;
    const std::int64_t cap = prefix[0] * ratio;
    bool stop = false;

    std::function<void(std::size_t)> descend = [&](std::size_t pos) {
      if (stop) return;
      if (pos == free_count) {
        ws.clear();
        detail::last_coordinate(prefix, n, ws);
        for (auto w : ws) {
          if (w < prefix.back()) continue;
          detail::Coords c = prefix;
          c.push_back(w);
          found.push_back(std::move(c));
          if (!find_all) {
            stop = true;
            return;
          }
        }
        return;
      }
      const std::int64_t limit = std::min(cap, pos + 1 == free_count ? bounds.z_max : bounds.y_max);
      for (std::int64_t v = prefix[pos - 1]; v <= limit && !stop; ++v) {
        prefix[pos] = v;
        descend(pos + 1);
      }
    };
    descend(1);
    return found;
  };
  auto chunk_id = [&](std::int64_t idx) { return detail::bounds_id(m, n, bounds) + ";x=" + std::to_string(idx + 1); };

  SolveReport report;
  report.n = n;
  report.m = m;
  auto chunks = detail::run_chunks(bounds.x_max, chunk, opts, chunk_id);
  detail::merge_chunks(chunks, find_all, report);
  report.exhausted = find_all || !report.found();
  return report;
}

/// A curve point that maps to a positive solution.
struct AcceptedPoint {
  CurvePoint point;
  RegionCase region;
  bool condition_1_5;
  Rational x;
  Rational y;
  Tuple tuple;  // normalized (x, y, z, 1), in that order
  std::string phase;
};

struct CurveSearchResult {
  SolveReport report;
  std::vector<AcceptedPoint> accepted;
  EggInterval egg;
  std::int64_t egg_points = 0;  // rational points met by the egg sweep, accepted or not
  std::int64_t candidates = 0;  // X values tested by the egg sweep
};

namespace detail {

inline void consider_point(const CurvePoint& p, const CurveParams& c, const std::string& phase,
                           CurveSearchResult& out) {
  if (p.is_infinity()) return;
  const RegionCase region = classify_region(p, c);
  if (region == RegionCase::None) return;
  auto tuple = point_to_solution(p, c);
  if (!tuple) return;
  auto [x, y] = recover_xy(p, c);
  for (const auto& a : out.accepted)
    if (a.point == p) return;
  out.report.add(*tuple, Strategy::curve);
  for (const auto& other : tuples_from_y(y, c)) out.report.add(other, Strategy::curve);
  out.accepted.push_back({p, region, condition_1_5(p, c), std::move(x), std::move(y), std::move(*tuple), phase});
}

}  // namespace detail

/// Subgroup multiples [k]P and [k]P + (0,0), then every X = a/d^2 on the egg
/// with |a| <= height, 1 <= d <= height, testing both signs of Y.
inline CurveSearchResult curve_search(std::int64_t n, const Rational& z, const SearchBounds& bounds) {
  if (n <= 16) throw error(errc::domain, "curve search needs n > 16");
  if (bounds.height < 1) throw error(errc::domain, "height must be positive");
  const CurveParams c(n, z);
  if (c.hypothesis_margin() <= 0) throw error(errc::hypothesis, "requires nz - (z+1)^2 > 0");

  CurveSearchResult out;
  out.report.n = n;
  out.report.m = 4;

  const CurvePoint base = base_point(c);
  const CurvePoint torsion(Rational(0), Rational(0));
  CurvePoint multiple = CurvePoint::infinity();
  for (int k = 1; k <= 12; ++k) {
    multiple = add(multiple, base, c);
    for (const CurvePoint& q : {multiple, add(multiple, torsion, c)}) {
      detail::consider_point(q, c, "subgroup", out);
      detail::consider_point(neg(q), c, "subgroup", out);
    }
  }

  out.egg = egg_interval(c);
  if (out.egg.exists) {
    // Clear denominators: A = A'/L, B = B'/L. Then
    //   rhs(a/d^2) * d^6 * L = a (L a^2 + A' a d^2 + B' d^4),
    // which is a rational square iff that value times L is an integer square.
    const Integer L = lcm(c.A().get_den(), c.B().get_den());
    const Integer a_coef = c.A().get_num() * (L / c.A().get_den());
    const Integer b_coef = c.B().get_num() * (L / c.B().get_den());
    Integer d2, d4, value;
    for (std::int64_t d = 1; d <= bounds.height; ++d) {
      d2 = Integer(d) * d;
      d4 = d2 * d2;
      Integer lo = ceil(out.egg.lo * d2);
      Integer hi = floor(out.egg.hi * d2);
      if (lo < -bounds.height) lo = -bounds.height;
      if (hi > -1) hi = -1;
      for (Integer a = lo; a <= hi; ++a) {
        if (gcd(a, Integer(d)) != 1) continue;
        ++out.candidates;
        value = a * (L * a * a + a_coef * a * d2 + b_coef * d4) * L;
        if (!is_square(value)) continue;
        const Rational X = make_rational(a, d2);
        const Rational Y = make_rational(isqrt(value), Integer(d2 * d * L));
        const CurvePoint p(X, Y);
        if (!is_on_curve(p, c)) throw error(errc::not_on_curve, "egg sweep produced an off-curve point");
        ++out.egg_points;
        detail::consider_point(p, c, "egg", out);
        if (Y != 0) detail::consider_point(neg(p), c, "egg", out);
      }
    }
  }
  out.report.exhausted = true;
  return out;
}

/// p/q with p, q <= limit inside the admissible interval nz > (z+1)^2,
/// ordered by q then p.
inline std::vector<Rational> z_candidates(std::int64_t n, std::int64_t max_count, std::int64_t limit = 8) {
  std::vector<Rational> out;
  for (std::int64_t q = 1; q <= limit; ++q)
    for (std::int64_t p = 1; p <= limit; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const Rational z(p, q);
      if (Rational(n) * z - (z + 1) * (z + 1) <= 0) continue;
      if (static_cast<std::int64_t>(out.size()) >= max_count) return out;
      out.push_back(z);
    }
  return out;
}

enum class SolveStrategy { automatic, families, brute, curve };

struct SolveOptions {
  SolveStrategy strategy = SolveStrategy::automatic;
  SweepOptions sweep;
};

inline SolveReport family_solutions(std::int64_t n) {
  SolveReport report;
  report.n = n;
  const Integer nz(n);
  if (auto w = double_pair_witness(nz)) report.add(*w, Strategy::family);
  if (auto w = triple_witness(nz)) report.add(*w, Strategy::family);
  if (auto k = fibonacci_family_index(nz)) report.add(fibonacci_family(*k).tuple, Strategy::family);
  report.exhausted = true;
  return report;
}

inline SolveReport curve_solutions(std::int64_t n, const SearchBounds& bounds) {
  SolveReport report;
  report.n = n;
  report.exhausted = true;
  for (const auto& z : z_candidates(n, bounds.max_z_candidates)) {
    auto result = curve_search(n, z, bounds);
    if (result.report.found()) {
      for (const auto& s : result.report.solutions) report.add(s.tuple, s.strategy);
      report.exhausted = false;
      break;
    }
  }
  return report;
}

/// Families first, then the exhaustive sweep, then curve points over a set
/// of small z. Stops at the first strategy that produces a solution.
inline SolveReport solve(std::int64_t n, const SearchBounds& bounds, const SolveOptions& opts = {}) {
  if (n <= 16) throw error(errc::domain, "solve needs n > 16");
  bounds.validate();
  const auto s = opts.strategy;
  const bool all = s == SolveStrategy::automatic;

  SolveReport report;
  report.n = n;
  report.exhausted = true;
  auto absorb = [&](const SolveReport& r) {
    for (const auto& sol : r.solutions) report.add(sol.tuple, sol.strategy);
    report.exhausted = report.exhausted && r.exhausted;
    return r.found();
  };

  if ((all || s == SolveStrategy::families) && absorb(family_solutions(n))) {
    report.exhausted = false;
    return report;
  }
  if ((all || s == SolveStrategy::brute) && absorb(brute_force_m4(n, bounds, opts.sweep.find_all, opts.sweep)))
    return report;
  if (all || s == SolveStrategy::curve) absorb(curve_solutions(n, bounds));
  return report;
}

/// solve() for every n in [n_from, n_to], delivered in order of n.
inline void table(std::int64_t n_from, std::int64_t n_to, const SearchBounds& bounds, const SolveOptions& opts,
                  const std::function<void(const SolveReport&)>& sink) {
  if (n_from <= 16 || n_from > n_to) throw error(errc::domain, "table needs 16 < from <= to");
  for (std::int64_t n = n_from; n <= n_to; ++n) sink(solve(n, bounds, opts));
}

inline std::vector<SolveReport> table(std::int64_t n_from, std::int64_t n_to, const SearchBounds& bounds,
                                      const SolveOptions& opts = {}) {
  std::vector<SolveReport> out;
  table(n_from, n_to, bounds, opts, [&](const SolveReport& r) { out.push_back(r); });
  return out;
}

}  // namespace repsum
