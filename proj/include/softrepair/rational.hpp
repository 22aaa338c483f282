// Copyright 2026 The softrepair Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SOFTREPAIR_RATIONAL_HPP_
#define SOFTREPAIR_RATIONAL_HPP_

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace softrepair {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational number with arbitrary-precision numerator and denominator.
///
/// Always kept in lowest terms with a positive denominator. All weights and
/// costs in the library are Rationals; there is no floating point in any
/// comparison that decides an optimum.
class Rational {
 public:
  using Rep = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(std::int64_t value) : value_(value) {}  // NOLINT(runtime/explicit)
  Rational(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    value_ = Rep(num, den);
  }
  explicit Rational(Rep value) : value_(std::move(value)) {}

  /// Parses "p", "p/q", "-p/q" or a plain decimal such as "0.25".
  /// Decimals are converted exactly (0.1 becomes 1/10).
  static Rational parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(value_); }
  BigInt denominator() const {
    return boost::multiprecision::denominator(value_);
  }
  const Rep& rep() const { return value_; }

  bool is_zero() const { return value_ == 0; }
  bool is_negative() const { return value_ < 0; }

  double to_double() const { return value_.convert_to<double>(); }

  /// "p" when the denominator is 1, otherwise "p/q".
  std::string to_string() const {
    if (denominator() == 1) return numerator().str();
    return numerator().str() + "/" + denominator().str();
  }

  Rational& operator+=(const Rational& o) {
    value_ += o.value_;
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    value_ -= o.value_;
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    value_ *= o.value_;
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    value_ /= o.value_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(Rep(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  Rep value_{0};
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace detail

inline Rational Rational::parse(std::string_view text) {
  std::string_view s = detail::trim(text);
  const std::string original(text);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  BigInt num;
  BigInt den = 1;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const std::string_view n = detail::trim(s.substr(0, slash));
    const std::string_view d = detail::trim(s.substr(slash + 1));
    if (!detail::all_digits(n) || !detail::all_digits(d)) {
      throw std::invalid_argument("malformed rational '" + original + "'");
    }
    num = BigInt(std::string(n));
    den = BigInt(std::string(d));
    if (den == 0) {
      throw std::invalid_argument("zero denominator in '" + original + "'");
    }
  } else {
    const auto dot = s.find('.');
    std::string_view whole = s.substr(0, dot);
    std::string_view frac =
        dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
    if (whole.empty() && frac.empty()) {
      throw std::invalid_argument("malformed rational '" + original + "'");
    }
    if ((!whole.empty() && !detail::all_digits(whole)) ||
        (!frac.empty() && !detail::all_digits(frac)) ||
        (dot != std::string_view::npos && frac.empty() && whole.empty())) {
      throw std::invalid_argument("malformed rational '" + original + "'");
    }
    num = BigInt(std::string(whole.empty() ? "0" : whole) + std::string(frac));
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
  }
  if (negative) num = -num;
  return Rational(num, den);
}

}  // namespace softrepair

#endif  // SOFTREPAIR_RATIONAL_HPP_
