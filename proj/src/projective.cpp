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

#include "dynlg/projective.hpp"

#include <cctype>

#include "dynlg/numtheory.hpp"

namespace dynlg {

namespace {

std::size_t hash_int(const Int& v) {
  const std::size_t low = mpz_sgn(v.get_mpz_t()) == 0 ? 0 : mpz_getlimbn(v.get_mpz_t(), 0);
  const std::size_t size = static_cast<std::size_t>(mpz_size(v.get_mpz_t()));
  return low * 0x9E3779B97F4A7C15ull ^ (size + 0x632BE59BD9B4E019ull * mpz_sgn(v.get_mpz_t()));
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Int parse_int(std::string_view text, std::string_view whole) {
  text = trim(text);
  std::string s(text);
  if (!s.empty() && s[0] == '+') s.erase(0, 1);
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("not a point", std::string(whole));
  return v;
}

}  // namespace

ProjectivePoint::ProjectivePoint(Int a, Int b) : x1_(std::move(a)), x2_(std::move(b)) {
  if (x1_ == 0 && x2_ == 0) throw Error("not a projective point");
  const Int g = gcd(x1_, x2_);
  if (g != 1) {
    mpz_divexact(x1_.get_mpz_t(), x1_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(x2_.get_mpz_t(), x2_.get_mpz_t(), g.get_mpz_t());
  }
  const Int& last = x2_ != 0 ? x2_ : x1_;
  if (last < 0) {
    x1_ = -x1_;
    x2_ = -x2_;
  }
}

Rational ProjectivePoint::as_rational() const {
  if (is_infinity()) throw Error("point at infinity has no affine value");
  return Rational(x1_, x2_);
}

std::string ProjectivePoint::to_string() const {
  if (is_infinity()) return "inf";
  if (x2_ == 1) return x1_.get_str();
  return x1_.get_str() + "/" + x2_.get_str();
}

std::size_t ProjectivePoint::hash() const { return hash_int(x1_) * 31 ^ hash_int(x2_); }

std::strong_ordering operator<=>(const ProjectivePoint& a, const ProjectivePoint& b) {
  const int c2 = cmp(a.x2_, b.x2_);
  if (c2 != 0) return c2 < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  const int c1 = cmp(a.x1_, b.x1_);
  if (c1 != 0) return c1 < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ProjectivePoint parse_point(std::string_view text) {
  const std::string_view s = trim(text);
  if (s == "inf" || s == "infinity" || s == "oo") return ProjectivePoint::infinity();
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    const std::string_view body = s.substr(1, s.size() - 2);
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) throw ParseError("not a point", std::string(text));
    return ProjectivePoint(parse_int(body.substr(0, colon), text),
                           parse_int(body.substr(colon + 1), text));
  }
  const auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    Int den = parse_int(s.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator", std::string(text));
    return ProjectivePoint(parse_int(s.substr(0, slash), text), den);
  }
  return ProjectivePoint::affine(parse_int(s, text));
}

PrimePowerModulus::PrimePowerModulus(const Int& p, unsigned k) {
  if (k < 1) throw Error("prime power modulus needs k >= 1");
  if (!nt::is_prime(p)) throw Error("modulus base is not prime: " + p.get_str());
  Int pk, pk1;
  mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
  mpz_pow_ui(pk1.get_mpz_t(), p.get_mpz_t(), k - 1);
  data_ = std::make_shared<const Data>(Data{p, k, pk, pk + pk1});
}

std::string PrimePowerModulus::to_string() const {
  return k() == 1 ? p().get_str() : p().get_str() + "^" + std::to_string(k());
}

std::strong_ordering operator<=>(const PrimePowerModulus& a, const PrimePowerModulus& b) {
  const int c = cmp(a.p(), b.p());
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.k() <=> b.k();
}

ResiduePoint::ResiduePoint(PrimePowerModulus m, const Int& a, const Int& b)
    : modulus_(std::move(m)) {
  const Int& pk = modulus_.value();
  const Int& p = modulus_.p();
  Int u1 = nt::mod(a, pk), u2 = nt::mod(b, pk);
  if (!mpz_divisible_p(u2.get_mpz_t(), p.get_mpz_t())) {
    c1_ = nt::mod(u1 * nt::inverse_mod(u2, pk), pk);
    c2_ = 1;
  } else if (!mpz_divisible_p(u1.get_mpz_t(), p.get_mpz_t())) {
    c1_ = 1;
    c2_ = nt::mod(u2 * nt::inverse_mod(u1, pk), pk);
  } else {
    throw Error("residue point without a unit coordinate modulo " + p.get_str());
  }
}

ResiduePoint ResiduePoint::from_canonical(PrimePowerModulus m, Int c1, Int c2) {
  return ResiduePoint(std::move(m), std::move(c1), std::move(c2), true);
}

Int ResiduePoint::index() const {
  if (c2_ == 1) return c1_;
  return modulus_.value() + c2_ / modulus_.p();
}

std::string ResiduePoint::to_string() const {
  return "[" + c1_.get_str() + ":" + c2_.get_str() + "] mod " + modulus_.to_string();
}

bool ChordalValue::at_most(const ChordalValue& other) const {
  if (is_zero()) return true;
  if (other.is_zero()) return false;
  return *exponent >= *other.exponent;
}

Int cross(const ProjectivePoint& x, const ProjectivePoint& y) {
  return x.x1() * y.x2() - x.x2() * y.x1();
}

ChordalValue chordal(const ProjectivePoint& x, const ProjectivePoint& y, const Int& p) {
  const Int c = cross(x, y);
  if (c == 0) return {};
  return {nt::valuation(c, p)};
}

bool congruent_mod(const ProjectivePoint& x, const ProjectivePoint& y, const PrimePowerModulus& m) {
  const Int c = cross(x, y);
  return mpz_divisible_p(c.get_mpz_t(), m.value().get_mpz_t()) != 0;
}

ResiduePoint reduce_mod(const ProjectivePoint& x, const PrimePowerModulus& m) {
  return ResiduePoint(m, x.x1(), x.x2());
}

}  // namespace dynlg
