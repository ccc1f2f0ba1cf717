// repsum: command-line front end.
//
// Exit codes: 0 result found, 1 clean run without a result, 2 usage or parse
// error, 3 verification mismatch (verify on a tuple whose value is not an
// integer).

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "repsum/record.hpp"

namespace {

using namespace repsum;
using record::json;

constexpr int kFound = 0;
constexpr int kNotFound = 1;
constexpr int kUsage = 2;
constexpr int kMismatch = 3;

void emit(const json& j) { std::cout << j.dump() << '\n'; }

SearchBounds parse_bounds(const std::string& text, SearchBounds b) {
  std::vector<std::int64_t> v;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    v.push_back(static_cast<std::int64_t>(parse_integer(text.substr(pos, comma - pos)).get_si()));
    pos = comma + 1;
  }
  if (v.size() != 3) throw error(errc::parse, "--bounds expects x_max,y_max,z_max");
  b.x_max = v[0];
  b.y_max = v[1];
  b.z_max = v[2];
  b.validate();
  return b;
}

unsigned resolve_jobs(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("REPSUM_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return default_jobs();
}

class Stopwatch {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct SearchFlags {
  std::string bounds;
  bool full_bounds = false;
  std::int64_t height = SearchBounds{}.height;
  std::int64_t max_z = SearchBounds{}.max_z_candidates;
  std::string strategy = "auto";
  unsigned jobs = 0;
  std::string checkpoint;
  bool all = false;
  bool timing = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--bounds", bounds, "x_max,y_max,z_max for the exhaustive sweep");
    cmd->add_flag("--full-bounds", full_bounds, "use the long-running range 500,3000,6000");
    cmd->add_option("--height", height, "curve search height bound")->check(CLI::PositiveNumber);
    cmd->add_option("--max-z", max_z, "number of z values tried by the curve strategy")->check(CLI::NonNegativeNumber);
    cmd->add_option("--strategy", strategy, "auto|families|brute|curve")
        ->check(CLI::IsMember({"auto", "families", "brute", "curve"}));
    cmd->add_option("--jobs", jobs, "worker threads (default: $REPSUM_JOBS or all cores)");
    cmd->add_option("--checkpoint", checkpoint, "file listing swept chunk ids; resumes long sweeps");
    cmd->add_flag("--all", all, "collect every solution within the sweep bounds");
    cmd->add_flag("--timing", timing, "add elapsed_ms to each record");
  }

  SearchBounds search_bounds() const {
    SearchBounds b = full_bounds ? SearchBounds::full() : SearchBounds::desk();
    b.height = height;
    b.max_z_candidates = max_z;
    if (!bounds.empty()) b = parse_bounds(bounds, b);
    b.validate();
    return b;
  }

  SolveStrategy solve_strategy() const {
    if (strategy == "families") return SolveStrategy::families;
    if (strategy == "brute") return SolveStrategy::brute;
    if (strategy == "curve") return SolveStrategy::curve;
    return SolveStrategy::automatic;
  }
};

int cmd_verify(const std::string& text) {
  const Tuple t = parse_tuple(text);
  json j = record::verify_json(t);
  emit(j);
  return j["n_is_integer"].get<bool>() ? kFound : kMismatch;
}

int cmd_solve(std::int64_t n, int m, const SearchFlags& flags) {
  const SearchBounds b = flags.search_bounds();
  std::optional<Checkpoint> checkpoint;
  if (!flags.checkpoint.empty()) checkpoint.emplace(flags.checkpoint);

  SolveOptions opts;
  opts.strategy = flags.solve_strategy();
  opts.sweep.jobs = resolve_jobs(flags.jobs);
  opts.sweep.find_all = flags.all;
  opts.sweep.checkpoint = checkpoint ? &*checkpoint : nullptr;

  Stopwatch clock;
  SolveReport r;
  if (m == 4) {
    r = solve(n, b, opts);
  } else {
    if (opts.strategy != SolveStrategy::automatic && opts.strategy != SolveStrategy::brute)
      throw error(errc::domain, "only the brute strategy is available for m != 4");
    r = brute_force_m(m, n, b, flags.all, opts.sweep);
  }
  json j = record::report_json(r, b);
  if (flags.timing) j["elapsed_ms"] = clock.ms();
  emit(j);
  return r.found() ? kFound : kNotFound;
}

int cmd_table(std::int64_t from, std::int64_t to, const std::string& format, const SearchFlags& flags) {
  const SearchBounds b = flags.search_bounds();
  if (from <= 16 || from > to) throw error(errc::domain, "table needs 16 < from <= to");
  std::optional<Checkpoint> checkpoint;
  if (!flags.checkpoint.empty()) checkpoint.emplace(flags.checkpoint);

  SolveOptions opts;
  opts.strategy = flags.solve_strategy();
  opts.sweep.jobs = resolve_jobs(flags.jobs);
  opts.sweep.find_all = flags.all;
  opts.sweep.checkpoint = checkpoint ? &*checkpoint : nullptr;

  const bool csv = format == "csv";
  if (csv) std::cout << record::csv_header << (flags.timing ? ",elapsed_ms" : "") << '\n';
  bool all_found = true;
  Stopwatch clock;
  table(from, to, b, opts, [&](const SolveReport& r) {
    all_found = all_found && r.found();
    if (csv) {
      std::cout << record::report_csv(r, b);
      if (flags.timing) std::cout << ',' << clock.ms();
      std::cout << '\n';
    } else {
      json j = record::report_json(r, b);
      j["command"] = "table";
      if (flags.timing) j["elapsed_ms"] = clock.ms();
      emit(j);
    }
    std::cout.flush();
  });
  return all_found ? kFound : kNotFound;
}

void emit_plot_data(const CurveParams& c) {
  std::printf("component,X,Y\n");
  auto sample = [&](const char* name, double lo, double hi) {
    constexpr int steps = 200;
    for (int i = 0; i <= steps; ++i) {
      double x = lo + (hi - lo) * i / steps;
      double rhs = x * (x * x + to_double(c.A()) * x + to_double(c.B()));
      if (rhs < 0) continue;
      double y = std::sqrt(rhs);
      std::printf("%s,%.12g,%.12g\n", name, x, y);
      if (y != 0) std::printf("%s,%.12g,%.12g\n", name, x, -y);
    }
  };
  double branch_hi = 4 * std::abs(to_double(base_point(c).x())) + 1;
  if (!c.singular()) {
    EggInterval egg = egg_interval(c);
    if (egg.exists) {
      sample("egg", to_double(egg.e1.hi), to_double(egg.e2.lo));
      branch_hi = std::max(branch_hi, 2 * std::abs(to_double(egg.lo)));
    }
  }
  sample("branch", 0.0, branch_hi);
}

int cmd_curve(std::int64_t n, const std::string& z_text, std::int64_t height, bool info_only, bool plot_data,
              bool timing) {
  const Rational z = parse_rational(z_text);
  if (z <= 0) throw error(errc::domain, "z must be positive");
  const CurveParams c(n, z);
  if (plot_data) {
    emit_plot_data(c);
    return kFound;
  }

  Stopwatch clock;
  json j;
  j["command"] = "curve";
  j["n"] = n;
  j["z"] = to_string(z);
  j["A"] = to_string(c.A());
  j["B"] = to_string(c.B());
  j["discriminant"] = to_string(discriminant(n, z));
  j["singular"] = c.singular();
  j["hypothesis_margin"] = to_string(c.hypothesis_margin());
  j["hypothesis"] = c.hypothesis_margin() > 0;
  const CurvePoint base = base_point(c);
  j["base_point"] = record::point_json(base);
  j["base_point_infinite_order"] = c.singular() ? json(nullptr) : json(has_infinite_order(base, c));
  j["closed_form_2P"] = record::point_json(closed_form_2P(c));
  j["egg"] = c.singular() ? json(nullptr) : record::egg_json(egg_interval(c));

  const Integer n_int(n);
  const Integer d = n_int * (n_int - 4);
  json adm = nullptr;
  if (auto roots = admissible_z_interval(n_int, Rational(1, 1000000000))) {
    const std::string sq = is_square(d) ? to_string(isqrt(d)) : "sqrt(" + to_string(d) + ")";
    const std::string mid = to_string(Integer(n_int - 2));
    adm = {{"exact", "(" + mid + " - " + sq + ")/2 < z < (" + mid + " + " + sq + ")/2"},
           {"lo", record::bracket_json(roots->first)},
           {"hi", record::bracket_json(roots->second)},
           {"lo_approx", to_double(roots->first.lo)},
           {"hi_approx", to_double(roots->second.hi)}};
  }
  j["admissible_z"] = std::move(adm);

  int code = kFound;
  j["search"] = nullptr;
  j["error"] = nullptr;
  if (!info_only) {
    SearchBounds b;
    b.height = height;
    try {
      auto result = curve_search(n, z, b);
      j["search"] = record::curve_search_json(result, c, b);
      code = result.report.found() ? kFound : kNotFound;
    } catch (const error& e) {
      if (e.code() != errc::hypothesis && e.code() != errc::domain && e.code() != errc::singular_curve) throw;
      j["error"] = e.what();
      code = kNotFound;
    }
  }
  if (timing) j["elapsed_ms"] = clock.ms();
  emit(j);
  return code;
}

int cmd_family_fib(std::int64_t k) {
  const auto member = fibonacci_family(k);
  emit({{"command", "family"},
        {"family", "fib"},
        {"k", k},
        {"n", to_string(member.n)},
        {"tuple", record::tuple_json(member.tuple)},
        {"verified", verify(member.tuple, member.n)},
        {"positive", member.tuple.all_positive()}});
  return kFound;
}

int cmd_family_param(std::int64_t m, std::int64_t n) {
  const Tuple t = parametric_family(m, n);
  emit({{"command", "family"},
        {"family", "param"},
        {"m", m},
        {"n", n},
        {"tuple", record::tuple_json(t)},
        {"verified", verify(t, n)},
        {"positive", t.all_positive()}});
  return kFound;
}

int cmd_family_classify(const std::string& shape, std::int64_t max) {
  const auto found = shape == "xxyy" ? double_pair_classify(max) : triple_classify(max);
  json values = json::array(), witnesses = json::array();
  for (const auto& w : found) {
    values.push_back(to_string(w.n));
    witnesses.push_back({{"n", to_string(w.n)}, {"tuple", record::tuple_json(w.witness)}});
  }
  emit({{"command", "family"},
        {"family", "classify"},
        {"shape", shape},
        {"max", max},
        {"values", std::move(values)},
        {"witnesses", std::move(witnesses)}});
  return found.empty() ? kNotFound : kFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Representations of n as (x1+...+xm)(1/x1+...+1/xm)"};
  app.require_subcommand(1);

  std::string tuple_text;
  auto* verify_cmd = app.add_subcommand("verify", "evaluate a tuple exactly");
  verify_cmd->add_option("tuple", tuple_text, "comma-separated rationals")->required();

  std::int64_t solve_n = 0;
  int solve_m = 4;
  SearchFlags solve_flags;
  auto* solve_cmd = app.add_subcommand("solve", "find a positive representation of n");
  solve_cmd->add_option("n", solve_n)->required();
  solve_cmd->add_option("--m", solve_m, "number of entries")->check(CLI::Range(4, 64));
  solve_flags.attach(solve_cmd);

  std::int64_t table_from = 0, table_to = 0;
  std::string table_format = "json";
  SearchFlags table_flags;
  auto* table_cmd = app.add_subcommand("table", "solve every n in a range");
  table_cmd->add_option("from", table_from)->required();
  table_cmd->add_option("to", table_to)->required();
  table_cmd->add_option("--format", table_format, "json (default) or csv")->check(CLI::IsMember({"json", "csv"}));
  table_flags.attach(table_cmd);

  std::int64_t curve_n = 0, curve_height = 20;
  std::string curve_z;
  bool info_only = false, plot_data = false, curve_timing = false;
  auto* curve_cmd = app.add_subcommand("curve", "inspect E_{n,z} and search its egg");
  curve_cmd->add_option("n", curve_n)->required();
  curve_cmd->add_option("z", curve_z, "positive rational")->required();
  curve_cmd->add_option("--height", curve_height, "bound on |a| and d for X = a/d^2 (default 20)")->check(CLI::PositiveNumber);
  curve_cmd->add_flag("--info-only", info_only, "curve data only, no search");
  curve_cmd->add_flag("--plot-data", plot_data, "emit CSV samples of the real locus");
  curve_cmd->add_flag("--timing", curve_timing, "add elapsed_ms to the record");

  auto* family_cmd = app.add_subcommand("family", "closed-form families and shape classifications");
  family_cmd->require_subcommand(1);
  std::int64_t fib_k = 1;
  auto* fib_cmd = family_cmd->add_subcommand("fib", "n = 4 L_{4k} + 17");
  fib_cmd->add_option("--k", fib_k)->required();
  std::int64_t param_m = 1, param_n = 0;
  auto* param_cmd = family_cmd->add_subcommand("param", "signed family for every n");
  param_cmd->add_option("--m", param_m)->required();
  param_cmd->add_option("--n", param_n)->required();
  std::string shape;
  std::int64_t classify_max = 100;
  auto* classify_cmd = family_cmd->add_subcommand("classify", "(x,x,y,y) or (x,y,y,y) shapes");
  classify_cmd->add_option("--shape", shape)->required()->check(CLI::IsMember({"xxyy", "xyyy"}));
  classify_cmd->add_option("--max", classify_max);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(tuple_text);
    if (*solve_cmd) return cmd_solve(solve_n, solve_m, solve_flags);
    if (*table_cmd) return cmd_table(table_from, table_to, table_format, table_flags);
    if (*curve_cmd) return cmd_curve(curve_n, curve_z, curve_height, info_only, plot_data, curve_timing);
    if (*fib_cmd) return cmd_family_fib(fib_k);
    if (*param_cmd) return cmd_family_param(param_m, param_n);
    if (*classify_cmd) return cmd_family_classify(shape, classify_max);
  } catch (const repsum::error& e) {
    std::cerr << "repsum: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "repsum: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
