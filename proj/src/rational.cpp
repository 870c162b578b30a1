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

#include "nashset/rational.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace nashset {
namespace {

boost::multiprecision::mpz_int parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("empty integer in rational '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  if (i == s.size()) throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw std::invalid_argument("bad rational '" + std::string(whole) + "'");
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return boost::multiprecision::mpz_int(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(text.substr(0, slash), text);
    auto den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !int_part.empty() && int_part[0] == '-';
    std::string digits(int_part);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    for (char c : frac)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    auto whole = parse_integer(digits, text);
    boost::multiprecision::mpz_int scale = 1;
    boost::multiprecision::mpz_int frac_value = 0;
    for (char c : frac) {
      scale *= 10;
      frac_value = frac_value * 10 + (c - '0');
    }
    Rational r(whole);
    Rational f(frac_value, scale);
    return negative ? r - f : r + f;
  }
  return Rational(parse_integer(text, text));
}

std::string format_rational(const Rational& value) {
  auto num = boost::multiprecision::numerator(value);
  auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_payoff(const Payoff& p) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(p(i));
  }
  return out + ")";
}

std::string format_payoff(const PayoffT<double>& p) {
  std::ostringstream os;
  os.precision(10);
  os << "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) os << ", ";
    os << p(i);
  }
  os << ")";
  return os.str();
}

}  // namespace nashset
