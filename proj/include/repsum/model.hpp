#pragma once

// Representations n = (x_1 + ... + x_m)(1/x_1 + ... + 1/x_m).

#include <algorithm>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "repsum/rational.hpp"

namespace repsum {

/// An ordered list of m >= 2 nonzero exact rationals.
class Tuple {
 public:
  explicit Tuple(std::vector<Rational> entries) : entries_(std::move(entries)) { validate(); }

  Tuple(std::initializer_list<Rational> entries) : entries_(entries) { validate(); }

  static Tuple from_integers(std::span<const Integer> values) {
    std::vector<Rational> e;
    e.reserve(values.size());
    for (const auto& v : values) e.emplace_back(v);
    return Tuple(std::move(e));
  }

  std::size_t size() const noexcept { return entries_.size(); }
  const Rational& operator[](std::size_t i) const { return entries_[i]; }
  std::span<const Rational> entries() const noexcept { return entries_; }
  auto begin() const noexcept { return entries_.begin(); }
  auto end() const noexcept { return entries_.end(); }

  bool all_positive() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& q) { return q > 0; });
  }

  bool all_integer() const { return std::all_of(entries_.begin(), entries_.end(), is_integer); }

  /// c * T for nonzero c.
  Tuple scaled(const Rational& c) const {
    std::vector<Rational> e(entries_);
    for (auto& q : e) q *= c;
    return Tuple(std::move(e));
  }

  /// Entries in nondecreasing order.
  Tuple sorted() const {
    std::vector<Rational> e(entries_);
    std::sort(e.begin(), e.end());
    return Tuple(std::move(e));
  }

  std::string str(char sep = ',') const {
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) s += sep;
      s += to_string(entries_[i]);
    }
    return s;
  }

  friend bool operator==(const Tuple& a, const Tuple& b) { return a.entries_ == b.entries_; }

 private:
  void validate() const {
    if (entries_.size() < 2) throw error(errc::arity, "a tuple needs at least two entries");
    for (const auto& q : entries_)
      if (q == 0) throw error(errc::zero_entry, "tuple entries must be nonzero");
  }

  std::vector<Rational> entries_;
};

/// Comma-separated rationals, e.g. "12,14,21,21" or "4/7, 2/3, 1, 1".
inline Tuple parse_tuple(std::string_view text) {
  std::vector<Rational> entries;
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    auto field = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    entries.push_back(parse_rational(field));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Tuple(std::move(entries));
}

/// (sum of entries) * (sum of reciprocals).
inline Rational eval_n(const Tuple& t) {
  Rational sum = 0, recip = 0;
  for (const auto& q : t) {
    sum += q;
    recip += 1 / q;
  }
  return sum * recip;
}

/// 16 + sum_{i<j} (x_i - x_j)^2 / (x_i x_j). Agrees with eval_n identically.
inline Rational decompose_16(const Tuple& t) {
  if (t.size() != 4) throw error(errc::arity, "decompose_16 needs exactly four entries");
  Rational acc = 16;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      Rational d = t[i] - t[j];
      acc += d * d / (t[i] * t[j]);
    }
  return acc;
}

/// Rescales a tuple of positive rationals to coprime positive integers.
inline Tuple normalize(const Tuple& t) {
  if (!t.all_positive()) throw error(errc::domain, "normalize needs positive entries");
  Integer den_lcm = 1;
  for (const auto& q : t) den_lcm = lcm(den_lcm, q.get_den());
  std::vector<Integer> ints;
  ints.reserve(t.size());
  Integer g = 0;
  for (const auto& q : t) {
    Integer v = q.get_num() * (den_lcm / q.get_den());
    g = gcd(g, v);
    ints.push_back(std::move(v));
  }
  for (auto& v : ints) v /= g;
  return Tuple::from_integers(ints);
}

inline bool verify(const Tuple& t, const Integer& n) { return eval_n(t) == Rational(n); }

/// A tuple together with the value it represents.
struct Representation {
  Tuple tuple;
  Rational n;
  bool positive;

  explicit Representation(Tuple t) : tuple(std::move(t)), n(eval_n(tuple)), positive(tuple.all_positive()) {}
};

}  // namespace repsum
