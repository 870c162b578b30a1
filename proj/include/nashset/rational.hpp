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

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

#include <string>
#include <string_view>

namespace nashset {

/// Exact rational scalar. Expression templates are off so the type plays
/// nicely with Eigen's own expression machinery.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// A payoff (cost) vector in Q^N or R^N.
template <typename Scalar>
using PayoffT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Payoff = PayoffT<Rational>;

/// Parses "p/q", "p" or a finite decimal such as "-0.25". Throws
/// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" (or "p" when the denominator is 1). parse_rational
/// inverts it exactly.
std::string format_rational(const Rational& value);

std::string format_payoff(const Payoff& p);
std::string format_payoff(const PayoffT<double>& p);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline PayoffT<double> to_double(const Payoff& p) {
  PayoffT<double> out(p.size());
  for (Eigen::Index i = 0; i < p.size(); ++i) out(i) = to_double(p(i));
  return out;
}

/// Lexicographic strict order. Used to keep sets of payoffs in a canonical
/// order; it is not the Pareto order.
template <typename Scalar>
struct LexLess {
  bool operator()(const PayoffT<Scalar>& a, const PayoffT<Scalar>& b) const {
    const Eigen::Index n = std::min(a.size(), b.size());
    for (Eigen::Index i = 0; i < n; ++i) {
      if (a(i) < b(i)) return true;
      if (b(i) < a(i)) return false;
    }
    return a.size() < b.size();
  }
};

template <typename Scalar>
bool exactly_equal(const PayoffT<Scalar>& a, const PayoffT<Scalar>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a(i) != b(i)) return false;
  return true;
}

}  // namespace nashset
