// Acceptance suite: one PASS/FAIL line per criterion. Every comparison is
// exact unless a tolerance is printed; time limits are wall-clock.

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "repsum/families.hpp"
#include "repsum/search.hpp"
#include "run_cli.hpp"
#include "test_data.hpp"

namespace {

using namespace repsum;
using nlohmann::json;
using tool::run_cli;
using oracle::Q;

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::vector<json> json_lines(const std::string& out) {
  std::vector<json> v;
  std::istringstream in(out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) v.push_back(json::parse(line));
  return v;
}

Tuple tuple_of(const json& arr) {
  std::vector<Rational> e;
  for (const auto& s : arr) e.push_back(parse_rational(s.get<std::string>()));
  return Tuple(std::move(e));
}

const std::vector<Rational> kSampleZ = {1, 2, 3, Q(1, 2), Q(5, 3)};

// 1. Every filled row of the published table re-verifies.
void table_rows(Outcome& o) {
  std::size_t good = 0;
  for (const auto& row : testdata::table1) {
    std::vector<Integer> e(row.tuple.begin(), row.tuple.end());
    const bool ok = verify(Tuple::from_integers(e), row.n) &&
                    oracle::represents(std::vector<std::int64_t>(row.tuple.begin(), row.tuple.end()), row.n);
    o.require(ok, "row " + std::to_string(row.n));
    good += ok;
  }
  o.require(testdata::table1.size() == 79 && good == 79, "expected 79 verified rows");
  o.require(verify(Tuple{76, 220, 285, 385}, 23) && verify(Tuple{24, 140, 561, 595}, 69), "named rows");
}

// 2. Desk-scale table through the tool.
void desk_table(Outcome& o) {
  auto r = run_cli("table 17 35 --bounds 100,300,600 --jobs 1");
  o.require(r.status == 0, "exit status " + std::to_string(r.status));
  auto rows = json_lines(r.out);
  o.require(rows.size() == 19, "expected 19 rows");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const long n = 17 + static_cast<long>(i);
    o.require(row["n"] == std::to_string(n), "row order");
    o.require(row["found"] == true && !row["solutions"].empty(), "no solution for " + std::to_string(n));
    for (const auto& s : row["solutions"]) {
      const Tuple t = tuple_of(s["tuple"]);
      o.require(t.all_positive() && verify(t, n), "solution for " + std::to_string(n) + " fails to verify");
    }
  }
}

// 3. The worked curve example, end to end through the tool.
void example_curve(Outcome& o) {
  auto r = run_cli("curve 17 1 --height 20");
  o.require(r.status == 0, "exit status");
  auto j = json_lines(r.out).at(0);
  o.require(j["z"] == "1", "z echo");
  bool minus = false, plus = false;
  for (const auto& a : j["search"]["accepted"]) {
    if (a["point"]["X"] != "-16") continue;
    const bool neg = a["point"]["Y"] == "-16";
    const bool pos = a["point"]["Y"] == "16";
    minus = minus || neg;
    plus = plus || pos;
    if (!neg) continue;
    o.require(a["region"] == "Case2", "region");
    o.require(a["condition_1_5"] == true, "sign criterion");
    o.require(a["condition_1_5_bounds"]["lower"] == "-464" && a["condition_1_5_bounds"]["upper"] == "208",
              "bounds -464 < Y < 208");
    o.require(a["x"] == "4/7" && a["y"] == "2/3", "recovered (x, y)");
    o.require(tuple_of(a["tuple"]) == Tuple{12, 14, 21, 21}, "normalized tuple");
  }
  o.require(minus, "(-16,-16) not located");
  o.require(plus, "(-16,16) not located");
}

// 4. Negative control: nothing accepted, exit 1, bounds stated.
void negative_control(Outcome& o) {
  auto r = run_cli("curve 17 3 --height 50");
  o.require(r.status == 1, "exit status " + std::to_string(r.status));
  auto j = json_lines(r.out).at(0);
  o.require(j["search"]["accepted"].empty(), "accepted points present");
  o.require(j["search"]["solutions"].empty(), "solutions present");
  o.require(j["search"]["height"] == 50, "height bound not reported");
  o.require(j["search"]["exhausted"] == true, "search not exhausted");
}

// 5. Closed-form multiples against the group law.
void closed_forms(Outcome& o) {
  oracle::RandomRationals gen(5);
  for (int i = 0; i < 20; ++i) {
    const long n = gen.integer(17, 100);
    const Rational z = kSampleZ[static_cast<std::size_t>(i % 5)];
    const CurveParams c(n, z);
    const CurvePoint p = base_point(c);
    o.require(is_on_curve(p, c), "base point off curve");
    o.require(closed_form_2P(c) == mul(2, p, c), "2P at n=" + std::to_string(n));
    o.require(closed_form_4P(c) == mul(4, p, c), "4P at n=" + std::to_string(n));
  }
}

// 6. Discriminant zeros and proportionality to the Weierstrass discriminant.
// The zeros in n are 0, (z+1)^2/z and (sqrt(z) +- 1)^4/z; they are the
// integers {0, 4, 16} at z = 1, while at the other sampled z the only integer
// zero is 0. Either way every n in [17, 1000] gives a nonsingular curve.
void discriminant_zeros(Outcome& o) {
  for (const auto& z : kSampleZ) {
    for (long n = -1000; n <= 1000; ++n) {
      const Rational d = discriminant(n, z);
      const bool expect_zero = n == 0 || (z == 1 && (n == 4 || n == 16));
      o.require((d == 0) == expect_zero, "zero pattern at n=" + std::to_string(n) + " z=" + to_string(z));
      const CurveParams c(n, z);
      const Rational w = oracle::weierstrass_discriminant(0, c.A(), 0, c.B(), 0);
      o.require(16 * d == w, "proportionality at n=" + std::to_string(n));
    }
  }
}

// 7. The integrality check on 4P.
void four_p(Outcome& o) {
  for (long n = 17; n <= 1000; ++n) {
    const auto r = four_p_remainder(n);
    const Integer modulus = (Integer(n) + 2) * (Integer(n) + 2);
    const Integer value = 4 * (4 * Integer(n) - 1) * (4 * Integer(n) - 1);
    const auto long_div = oracle::poly_remainder({64, -32, 4}, {1, 4, 4});
    const Integer oracle_r = long_div[0] * n + long_div[1];
    o.require(r.remainder == oracle_r, "remainder vs long division at n=" + std::to_string(n));
    if (n <= 284) {
      o.require(r.remainder == -288 * Integer(n) - 252, "remainder formula at n=" + std::to_string(n));
      o.require(!r.divisible && value % modulus != 0, "divisible at n=" + std::to_string(n));
    } else {
      o.require(abs(r.remainder) < modulus, "|r| >= (n+2)^2 at n=" + std::to_string(n));
    }
  }
}

// 8. Fibonacci family.
void fibonacci_rows(Outcome& o) {
  bool wide = false;
  for (std::int64_t k = 1; k <= 25; ++k) {
    const auto f = fibonacci_family(k);
    o.require(verify(f.tuple, f.n), "k=" + std::to_string(k));
    o.require(f.n == 4 * oracle::lucas(4 * k) + 17, "n formula at k=" + std::to_string(k));
    for (const auto& q : f.tuple) wide = wide || !q.get_num().fits_slong_p();
  }
  const auto f1 = fibonacci_family(1);
  o.require(f1.n == 45 && f1.tuple == Tuple{1, 2, 12, 12}, "k=1");
  o.require(wide, "entries never left 64-bit range");
}

// 9. Parametric family on random parameters.
void parametric(Outcome& o) {
  oracle::RandomRationals gen(9);
  int done = 0;
  while (done < 200) {
    const auto m = gen.integer(-10, 10);
    const auto n = gen.integer(-50, 50);
    if (m == 0 || m == -1 || n == 1) continue;
    o.require(eval_n(parametric_family(m, n)) == n, "m=" + std::to_string(m) + " n=" + std::to_string(n));
    ++done;
  }
}

// 10. Five-entry identities.
void five_entries(Outcome& o) {
  for (const auto& row : testdata::five_entry_identities) {
    std::vector<Integer> e(row.tuple.begin(), row.tuple.end());
    o.require(verify(Tuple::from_integers(e), row.n), "published tuple for " + std::to_string(row.n));
    const auto r = brute_force_m(5, row.n, SearchBounds::desk());
    o.require(r.found(), "no solution for " + std::to_string(row.n));
    for (const auto& s : r.solutions) o.require(verify(s.tuple, row.n), "found tuple fails to verify");
  }
}

// 11. Symmetric-shape classifications.
void shapes(Outcome& o) {
  auto values = [](const std::vector<ShapeWitness>& ws) {
    std::set<std::int64_t> s;
    for (const auto& w : ws) s.insert(w.n.get_si());
    return s;
  };
  o.require(values(double_pair_classify(10000)) == std::set<std::int64_t>{18, 25}, "(x,x,y,y) set");
  o.require(values(triple_classify(10000)) == std::set<std::int64_t>{20}, "(x,y,y,y) set");
  o.require(values(double_pair_classify(500)) == oracle::shape_scan(2, 2, 500, 500), "(x,x,y,y) vs scan");
  o.require(values(triple_classify(500)) == oracle::shape_scan(1, 3, 500, 500), "(x,y,y,y) vs scan");
  for (const auto& w : double_pair_classify(10000)) o.require(verify(w.witness, w.n), "witness");
  for (const auto& w : triple_classify(10000)) o.require(verify(w.witness, w.n), "witness");
}

// 12. Property suites with their minimum sample counts.
void properties(Outcome& o) {
  oracle::RandomRationals gen(12);

  int law_checks = 0;
  for (int s = 0; s < 10; ++s) {
    const long n = gen.integer(17, 100);
    const CurveParams c(n, kSampleZ[static_cast<std::size_t>(gen.integer(0, 4))]);
    const CurvePoint p = base_point(c), t(0, 0);
    std::vector<CurvePoint> pts;
    for (long k = -3; k <= 3; ++k) {
      pts.push_back(mul(k, p, c));
      pts.push_back(add(mul(k, p, c), t, c));
    }
    auto pick = [&]() -> const CurvePoint& {
      return pts[static_cast<std::size_t>(gen.integer(0, static_cast<std::int64_t>(pts.size()) - 1))];
    };
    for (int i = 0; i < 25; ++i, ++law_checks) {
      const CurvePoint &a = pick(), &b = pick(), &d = pick();
      const CurvePoint ab = add(a, b, c);
      o.require(is_on_curve(ab, c), "closure");
      o.require(ab == add(b, a, c), "commutativity");
      o.require(add(ab, d, c) == add(a, add(b, d, c), c), "associativity");
      o.require(add(a, CurvePoint::infinity(), c) == a, "identity");
      o.require(add(a, neg(a), c).is_infinity(), "inverse");
    }
  }
  o.require(law_checks >= 200, "too few group-law samples");

  int round_trips = 0;
  for (long n : {17, 29, 53, 88})
    for (const auto& z : kSampleZ) {
      const CurveParams c(n, z);
      const CurvePoint p = base_point(c), t(0, 0);
      for (long k = 1; k <= 3; ++k)
        for (const CurvePoint& q : {mul(k, p, c), add(mul(k, p, c), t, c)}) {
          if (q.is_infinity() || q.x() == 4 * Rational(n) * z * z) continue;
          const auto qq = curve_to_quartic(q, c);
          o.require(qq.t * qq.t == quartic_rhs(qq.y, n, z), "quartic invariant");
          o.require(quartic_to_curve(qq, c) == q, "round trip");
          ++round_trips;
        }
    }
  o.require(round_trips >= 50, "too few round trips");

  for (int i = 0; i < 25; ++i) {
    const Rational y = gen.nonzero(30, 11);
    const Integer n = gen.integer(-40, 150);
    const Rational z = gen.nonzero(15, 7, false);
    o.require(quartic_rhs(y, n, z) == oracle::quadratic_x_discriminant(y, n, z), "quartic vs discriminant");
  }

  bool saw_negative = false;
  for (int i = 0; i < 200; ++i) {
    Tuple t{gen.nonzero(60, 12), gen.nonzero(60, 12), gen.nonzero(60, 12), gen.nonzero(60, 12)};
    saw_negative = saw_negative || !t.all_positive();
    o.require(decompose_16(t) == eval_n(t), "decompose_16");
  }
  o.require(saw_negative, "no negative entries sampled");

  for (int i = 0; i < 200; ++i) {
    const Rational c = gen.nonzero(30, 7, false);
    const Tuple t = i % 4 == 0 ? Tuple{c, c, c, c}
                               : Tuple{gen.nonzero(30, 7, false), gen.nonzero(30, 7, false),
                                       gen.nonzero(30, 7, false), gen.nonzero(30, 7, false)};
    const bool equal = t[0] == t[1] && t[1] == t[2] && t[2] == t[3];
    const Rational n = eval_n(t);
    o.require(n >= 16 && ((n == 16) == equal), "lower bound");
  }
}

// 13. Output does not depend on the worker count.
void determinism(Outcome& o) {
  for (const char* fmt : {"json", "csv"}) {
    auto a = run_cli(std::string("table 17 35 --jobs 1 --format ") + fmt);
    auto b = run_cli(std::string("table 17 35 --jobs 8 --format ") + fmt);
    o.require(a.status == 0 && b.status == 0, "exit status");
    o.require(!a.out.empty() && a.out == b.out, std::string(fmt) + " output differs");
  }
}

struct Criterion {
  int id;
  const char* name;
  const char* tolerance;
  double limit_s;  // 0: no time limit
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "published table re-verifies", "exact", 1, table_rows},
      {2, "desk-scale table 17..35", "exact", 60, desk_table},
      {3, "worked curve example", "exact", 1, example_curve},
      {4, "negative control curve", "exact", 0, negative_control},
      {5, "closed-form 2P and 4P", "exact", 0, closed_forms},
      {6, "discriminant zeros (n=4,16 at z=1 only)", "exact", 0, discriminant_zeros},
      {7, "4P integrality check", "exact", 1, four_p},
      {8, "Fibonacci family", "exact", 0, fibonacci_rows},
      {9, "parametric family", "exact", 0, parametric},
      {10, "five-entry identities", "exact", 0, five_entries},
      {11, "symmetric classifications", "exact", 0, shapes},
      {12, "property suites", "exact", 0, properties},
      {13, "jobs 1 vs 8 byte-identical", "byte equality", 0, determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0) o.require(secs < c.limit_s, "over time limit");

    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3fs", secs);
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [tol=" << c.tolerance
              << ", time=" << timing;
    if (c.limit_s > 0) std::cout << " < " << c.limit_s << "s";
    std::cout << "]";
    if (!o.ok) std::cout << " -- " << o.detail;
    std::cout << '\n';
    failures += !o.ok;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
