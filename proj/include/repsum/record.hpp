#pragma once

// Machine-readable output records. JSON objects are emitted one per line;
// numbers that can exceed 64 bits are written as "p/q" / "p" strings.

#include <json.hpp>

#include <string>
#include <vector>

#include "repsum/search.hpp"

namespace repsum::record {

using json = nlohmann::ordered_json;

inline json tuple_json(const Tuple& t) {
  json arr = json::array();
  for (const auto& q : t) arr.push_back(to_string(q));
  return arr;
}

inline json bounds_json(const SearchBounds& b) {
  return {{"x_max", b.x_max},
          {"y_max", b.y_max},
          {"z_max", b.z_max},
          {"height", b.height},
          {"max_z_candidates", b.max_z_candidates}};
}

inline json point_json(const CurvePoint& p) {
  if (p.is_infinity()) return "infinity";
  return {{"X", to_string(p.x())}, {"Y", to_string(p.y())}};
}

inline json bracket_json(const RootBracket& r) { return json::array({to_string(r.lo), to_string(r.hi)}); }

inline json egg_json(const EggInterval& egg) {
  if (!egg.exists) return {{"exists", false}, {"lo", nullptr}, {"hi", nullptr}, {"e1", nullptr}, {"e2", nullptr}};
  return {{"exists", true},
          {"lo", to_string(egg.lo)},
          {"hi", to_string(egg.hi)},
          {"e1", bracket_json(egg.e1)},
          {"e2", bracket_json(egg.e2)}};
}

inline json report_json(const SolveReport& r, const SearchBounds& b) {
  json sols = json::array();
  for (const auto& s : r.solutions) sols.push_back({{"tuple", tuple_json(s.tuple)}, {"strategy", to_string(s.strategy)}});
  return {{"command", "solve"},
          {"n", to_string(r.n)},
          {"m", r.m},
          {"found", r.found()},
          {"exhausted", r.exhausted},
          {"bounds", bounds_json(b)},
          {"solutions", std::move(sols)}};
}

inline constexpr const char* csv_header = "n,m,found,exhausted,strategy,tuple,x_max,y_max,z_max,height";

/// One CSV row per report; the first solution only, entries joined by '+'.
inline std::string report_csv(const SolveReport& r, const SearchBounds& b) {
  std::string strategy, tuple;
  if (r.found()) {
    strategy = to_string(r.solutions.front().strategy);
    tuple = r.solutions.front().tuple.str('+');
  }
  return to_string(r.n) + "," + std::to_string(r.m) + "," + (r.found() ? "true" : "false") + "," +
         (r.exhausted ? "true" : "false") + "," + strategy + "," + tuple + "," + std::to_string(b.x_max) + "," +
         std::to_string(b.y_max) + "," + std::to_string(b.z_max) + "," + std::to_string(b.height);
}

inline json verify_json(const Tuple& t) {
  const Rational n = eval_n(t);
  json cross = nullptr;
  if (t.size() == 4) cross = to_string(decompose_16(t));
  return {{"command", "verify"},
          {"tuple", tuple_json(t)},
          {"m", t.size()},
          {"n", to_string(n)},
          {"n_is_integer", is_integer(n)},
          {"decompose_16", std::move(cross)},
          {"positive", t.all_positive()}};
}

inline json accepted_json(const AcceptedPoint& a, const CurveParams& c) {
  json bounds = nullptr;
  if (a.point.x() < 0 && c.hypothesis_margin() > 0) {
    auto b = condition_1_5_bounds(a.point.x(), c);
    bounds = {{"lower", to_string(b.lower)}, {"upper", to_string(b.upper)}};
  }
  return {{"point", point_json(a.point)},
          {"phase", a.phase},
          {"region", to_string(a.region)},
          {"condition_1_5", a.condition_1_5},
          {"condition_1_5_bounds", std::move(bounds)},
          {"x", to_string(a.x)},
          {"y", to_string(a.y)},
          {"tuple", tuple_json(a.tuple)},
          {"tuple_sorted", tuple_json(a.tuple.sorted())}};
}

inline json curve_search_json(const CurveSearchResult& r, const CurveParams& c, const SearchBounds& b) {
  json accepted = json::array();
  for (const auto& a : r.accepted) accepted.push_back(accepted_json(a, c));
  json sols = json::array();
  for (const auto& s : r.report.solutions) sols.push_back(tuple_json(s.tuple));
  return {{"height", b.height},
          {"candidates", r.candidates},
          {"egg_points", r.egg_points},
          {"exhausted", r.report.exhausted},
          {"accepted", std::move(accepted)},
          {"solutions", std::move(sols)}};
}

}  // namespace repsum::record
