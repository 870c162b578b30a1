// Copyright 2026 The nashset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include "nashset/rational.hpp"

#include <set>
#include <vector>

namespace nashset {

/// A finite set of payoff vectors, duplicate-free under exact equality,
/// optionally inflated by open Euclidean balls of radius `epsilon`.
template <typename Scalar>
class ValueSet {
 public:
  using Point = PayoffT<Scalar>;
  using Storage = std::set<Point, LexLess<Scalar>>;

  ValueSet() = default;
  explicit ValueSet(Scalar epsilon) : epsilon_(std::move(epsilon)) {}
  ValueSet(std::initializer_list<Point> points) {
    for (const auto& p : points) insert(p);
  }

  void insert(const Point& p) { points_.insert(p); }
  void merge(const ValueSet& other) { points_.insert(other.points_.begin(), other.points_.end()); }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  std::vector<Point> points() const { return {points_.begin(), points_.end()}; }

  const Scalar& epsilon() const { return epsilon_; }
  void set_epsilon(Scalar eps) { epsilon_ = std::move(eps); }

  /// Exact membership among the stored points.
  bool contains(const Point& y) const { return points_.count(y) > 0; }

  /// Membership in the inflated set: y is a point when epsilon is 0,
  /// otherwise |y - p| < epsilon for some point p.
  bool member(const Point& y) const {
    if (epsilon_ == Scalar(0)) return contains(y);
    const Scalar r2 = epsilon_ * epsilon_;
    for (const auto& p : points_)
      if (squared_distance(p, y) < r2) return true;
    return false;
  }

  static Scalar squared_distance(const Point& a, const Point& b) {
    Scalar out = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const Scalar d = a(i) - b(i);
      out += d * d;
    }
    return out;
  }

  friend bool operator==(const ValueSet& a, const ValueSet& b) {
    if (a.size() != b.size()) return false;
    auto it = b.points_.begin();
    for (const auto& p : a.points_)
      if (!exactly_equal(p, *it++)) return false;
    return true;
  }

  /// Points of this set missing from `other` (exact comparison).
  std::vector<Point> minus(const ValueSet& other) const {
    std::vector<Point> out;
    for (const auto& p : points_)
      if (!other.contains(p)) out.push_back(p);
    return out;
  }

  bool subset_of(const ValueSet& other) const { return minus(other).empty(); }

 private:
  Storage points_;
  Scalar epsilon_ = Scalar(0);
};

/// a <= b componentwise with a != b.
template <typename Scalar>
bool dominates(const PayoffT<Scalar>& a, const PayoffT<Scalar>& b) {
  bool strict = false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (b(i) < a(i)) return false;
    if (a(i) < b(i)) strict = true;
  }
  return strict;
}

template <typename Scalar>
ValueSet<Scalar> pareto_filter(const ValueSet<Scalar>& vs) {
  ValueSet<Scalar> out(vs.epsilon());
  for (const auto& y : vs) {
    bool dominated = false;
    for (const auto& z : vs)
      if (dominates(z, y)) {
        dominated = true;
        break;
      }
    if (!dominated) out.insert(y);
  }
  return out;
}

template <typename Scalar>
std::string format_value_set(const ValueSet<Scalar>& vs) {
  std::string out = "{";
  bool first = true;
  for (const auto& p : vs) {
    if (!first) out += ", ";
    first = false;
    out += format_payoff(p);
  }
  return out + "}";
}

}  // namespace nashset
