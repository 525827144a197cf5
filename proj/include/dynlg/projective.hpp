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

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "dynlg/error.hpp"

namespace dynlg {

/// A point [x1 : x2] of P^1(Q) with coprime integer coordinates and the last
/// nonzero coordinate positive.
class ProjectivePoint {
 public:
  /// Normalizes (a, b); throws on (0, 0).
  ProjectivePoint(Int a, Int b);
  explicit ProjectivePoint(const Rational& q) : ProjectivePoint(q.get_num(), q.get_den()) {}
  static ProjectivePoint infinity() { return ProjectivePoint(1, 0); }
  static ProjectivePoint affine(const Int& a) { return ProjectivePoint(a, 1); }

  const Int& x1() const { return x1_; }
  const Int& x2() const { return x2_; }
  bool is_infinity() const { return x2_ == 0; }
  /// x1/x2; throws at infinity.
  Rational as_rational() const;

  std::string to_string() const;
  std::size_t hash() const;

  friend bool operator==(const ProjectivePoint&, const ProjectivePoint&) = default;
  friend std::strong_ordering operator<=>(const ProjectivePoint& a, const ProjectivePoint& b);

 private:
  Int x1_;
  Int x2_;
};

/// Parses "a/b", an integer, "inf", or "[a:b]".
ProjectivePoint parse_point(std::string_view text);

/// A prime power p^k, k >= 1, with p^k and p^(k-1) cached. Copies share the
/// cached data.
class PrimePowerModulus {
 public:
  PrimePowerModulus(const Int& p, unsigned k);

  const Int& p() const { return data_->p; }
  unsigned k() const { return data_->k; }
  /// p^k
  const Int& value() const { return data_->pk; }
  /// |P^1(Z/p^k)| = p^k + p^(k-1)
  const Int& projective_size() const { return data_->size; }

  std::string to_string() const;

  friend bool operator==(const PrimePowerModulus& a, const PrimePowerModulus& b) {
    return a.k() == b.k() && a.p() == b.p();
  }
  friend std::strong_ordering operator<=>(const PrimePowerModulus& a, const PrimePowerModulus& b);

 private:
  struct Data {
    Int p;
    unsigned k;
    Int pk;
    Int size;
  };
  std::shared_ptr<const Data> data_;
};

/// A point of P^1(Z/p^k) in canonical form: [c : 1] when the second
/// coordinate is a unit, else [1 : c] with p | c.
class ResiduePoint {
 public:
  /// Canonicalizes (c1, c2); throws unless one coordinate is a unit mod p.
  ResiduePoint(PrimePowerModulus m, const Int& c1, const Int& c2);

  /// Wraps coordinates already in canonical form.
  static ResiduePoint from_canonical(PrimePowerModulus m, Int c1, Int c2);

  const PrimePowerModulus& modulus() const { return modulus_; }
  const Int& c1() const { return c1_; }
  const Int& c2() const { return c2_; }

  /// Dense index in [0, p^k + p^(k-1)): c1 for [c1 : 1], p^k + c2/p for [1 : c2].
  Int index() const;

  std::string to_string() const;

  friend bool operator==(const ResiduePoint& a, const ResiduePoint& b) {
    return a.c1_ == b.c1_ && a.c2_ == b.c2_ && a.modulus_ == b.modulus_;
  }

 private:
  ResiduePoint(PrimePowerModulus m, Int c1, Int c2, bool)
      : modulus_(std::move(m)), c1_(std::move(c1)), c2_(std::move(c2)) {}
  PrimePowerModulus modulus_;
  Int c1_;
  Int c2_;
};

/// Delta_p(x, y) = p^(-exponent); an empty exponent means Delta = 0.
struct ChordalValue {
  std::optional<std::uint64_t> exponent;

  bool is_zero() const { return !exponent.has_value(); }
  /// Delta(this) <= Delta(other)
  bool at_most(const ChordalValue& other) const;
  friend bool operator==(const ChordalValue&, const ChordalValue&) = default;
};

/// x1*y2 - x2*y1 of the normalized representatives.
Int cross(const ProjectivePoint& x, const ProjectivePoint& y);

ChordalValue chordal(const ProjectivePoint& x, const ProjectivePoint& y, const Int& p);

/// Delta_p(x, y) <= p^(-k).
bool congruent_mod(const ProjectivePoint& x, const ProjectivePoint& y, const PrimePowerModulus& m);

ResiduePoint reduce_mod(const ProjectivePoint& x, const PrimePowerModulus& m);

struct ProjectivePointHash {
  std::size_t operator()(const ProjectivePoint& x) const { return x.hash(); }
};

}  // namespace dynlg
