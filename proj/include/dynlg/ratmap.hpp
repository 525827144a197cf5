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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dynlg/numtheory.hpp"
#include "dynlg/polynomial.hpp"
#include "dynlg/projective.hpp"

namespace dynlg {

/// Homogeneous form sum c[i] X^i Y^(d-i) of degree d = c.size() - 1.
/// May be zero; primitive() gives the content-1 representative.
class BinaryForm {
 public:
  BinaryForm() : c_{Int(0)} {}
  explicit BinaryForm(std::vector<Int> coeffs);
  static BinaryForm zero(unsigned degree) { return BinaryForm(std::vector<Int>(degree + 1)); }

  unsigned degree() const { return static_cast<unsigned>(c_.size() - 1); }
  const std::vector<Int>& coefficients() const { return c_; }
  const Int& operator[](std::size_t i) const { return c_[i]; }
  bool is_zero() const;

  Int content() const;
  /// Divided by content; highest-index nonzero coefficient made positive.
  BinaryForm primitive() const;
  BinaryForm scaled(const Int& s) const;
  /// Multiplication by X (shifts indices up) and by Y (raises degree only).
  BinaryForm times_x() const;
  BinaryForm times_y() const;

  Int operator()(const Int& x, const Int& y) const;
  /// Value mod m, in [0, m).
  Int eval_mod(const Int& x, const Int& y, const Int& m) const;

  /// The dehomogenization F(z, 1).
  QPoly dehomogenize() const;

  std::string to_string() const;

  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend bool operator==(const BinaryForm&, const BinaryForm&) = default;

 private:
  std::vector<Int> c_;
};

BinaryForm pow(const BinaryForm& f, unsigned e);
/// F(A, B) for forms A, B of equal degree.
BinaryForm substitute(const BinaryForm& f, const BinaryForm& a, const BinaryForm& b);
/// a = lambda * b for some nonzero rational lambda.
bool proportional(const BinaryForm& a, const BinaryForm& b);
/// Exact quotient over Q, returned as a primitive integer form; empty when
/// den does not divide num.
std::optional<BinaryForm> divide_exact(const BinaryForm& num, const BinaryForm& den);

/// Sylvester determinant of two forms of equal degree, by fraction-free
/// elimination.
Int resultant(const BinaryForm& f, const BinaryForm& g);

/// A morphism [F : G] of P^1 over Q. F and G are jointly primitive with the
/// leading (highest-index nonzero) coefficient of G positive. Immutable.
class RationalMap {
 public:
  RationalMap(BinaryForm f, BinaryForm g, const nt::FactorOptions& opts = {});

  const BinaryForm& F() const { return f_; }
  const BinaryForm& G() const { return g_; }
  unsigned degree() const { return f_.degree(); }
  const Int& resultant() const { return res_; }

  /// p does not divide Res(F, G). Exact even if Res is not fully factored.
  bool has_good_reduction(const Int& p) const;
  bool bad_primes_known() const { return unfactored_ == 1; }
  /// Throws FactorizationBudgetExceeded if Res could not be factored.
  const std::vector<Int>& bad_primes() const;
  /// Cofactor of Res left unfactored (1 when bad primes are complete).
  const Int& unfactored() const { return unfactored_; }

  const std::vector<std::string>& warnings() const { return warnings_; }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

  /// Affine expression in z, e.g. "(z^2 + 1)/(2z)".
  std::string to_string() const;

  friend bool operator==(const RationalMap& a, const RationalMap& b) {
    return a.f_ == b.f_ && a.g_ == b.g_;
  }

 private:
  BinaryForm f_;
  BinaryForm g_;
  Int res_;
  std::vector<Int> bad_;
  Int unfactored_ = 1;
  std::vector<std::string> warnings_;
};

RationalMap parse_map(std::string_view expr, const nt::FactorOptions& opts = {});
RationalMap map_from_function(const RationalFunction& rf, const nt::FactorOptions& opts = {});

inline const std::vector<Int>& bad_primes(const RationalMap& phi) { return phi.bad_primes(); }

ProjectivePoint evaluate(const RationalMap& phi, const ProjectivePoint& x);
/// Throws BadReduction when p divides the resultant.
ResiduePoint evaluate_mod(const RationalMap& phi, const ResiduePoint& x);

inline constexpr std::uint64_t kDefaultHeightBits = std::uint64_t{1} << 20;

/// phi^n(x) by pointwise evaluation. Throws HeightBudgetExceeded when a
/// coordinate exceeds `height_bits`.
ProjectivePoint iterate_point(const RationalMap& phi, const ProjectivePoint& x, std::uint64_t n,
                              std::uint64_t height_bits = kDefaultHeightBits);

/// z - f/f'. A non-squarefree f is reduced by gcd(f, f') and flagged in the
/// map's warnings.
RationalMap newton_map(const QPoly& f);
RationalMap newton_map(std::string_view f);
/// Parses a polynomial (no denominators involving z).
QPoly parse_polynomial(std::string_view text);

/// Forms (F_n, G_n) of phi^n by composition, jointly primitive.
std::pair<BinaryForm, BinaryForm> iterate_forms(const RationalMap& phi, unsigned n);

struct DynatomicOptions {
  std::uint64_t max_degree = 4096;  // limit on deg(phi)^n
  nt::FactorOptions factor;
  std::uint64_t max_candidates = 1'000'000;
};

/// Smallest k <= k_max with gamma a totally ramified fixed point of phi^k.
std::optional<unsigned> is_polynomial_type(const RationalMap& phi, const ProjectivePoint& gamma,
                                           unsigned k_max = 2, const DynatomicOptions& opts = {});

struct DynatomicForm {
  unsigned n;
  BinaryForm form;
};

/// Y F_n - X G_n, the form whose roots are the fixed points of phi^n.
BinaryForm period_form(const RationalMap& phi, unsigned n);
std::uint64_t dynatomic_degree(std::uint64_t d, unsigned n);
DynatomicForm dynatomic(const RationalMap& phi, unsigned n, const DynatomicOptions& opts = {});

struct PeriodicPoint {
  ProjectivePoint point;
  unsigned exact_period;
  friend bool operator==(const PeriodicPoint&, const PeriodicPoint&) = default;
};

/// Rational roots of a binary form, ascending.
std::vector<ProjectivePoint> rational_roots(const BinaryForm& form, const DynatomicOptions& opts = {});
/// Points of P^1(Q) with exact period n, ascending.
std::vector<PeriodicPoint> rational_periodic_points(const RationalMap& phi, unsigned n,
                                                    const DynatomicOptions& opts = {});

/// Smallest m in [1, n_max] with phi^m(x) = x.
std::optional<unsigned> exact_period(const RationalMap& phi, const ProjectivePoint& x, unsigned n_max);

}  // namespace dynlg
