// Copyright 2026 The dynlg Authors
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

#include <string>
#include <utility>
#include <vector>

#include "dynlg/error.hpp"

namespace dynlg {

/// Univariate polynomial over Q in z; coefficients ascending, no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> coeffs);
  static QPoly constant(const Rational& c) { return QPoly({c}); }
  static QPoly z() { return QPoly({Rational(0), Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const { return c_.back(); }

  QPoly derivative() const;
  QPoly monic() const;
  Rational operator()(const Rational& x) const;
  double evaluate(double x) const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a) { return QPoly() - a; }
  friend bool operator==(const QPoly&, const QPoly&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; throws on division by zero.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Monic gcd (zero when both inputs are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly pow(const QPoly& a, unsigned e);

/// num/den with den nonzero. Not reduced automatically.
struct RationalFunction {
  QPoly num;
  QPoly den;
};

/// Parses a rational function of z: integers, z, + - * / ^, parentheses and
/// implicit multiplication ("2z", "z(z+1)"). Sums and products cancel only
/// the common factors that the combination itself introduces; an explicit
/// quotient is kept as written.
RationalFunction parse_rational_function(const std::string& text);

}  // namespace dynlg
