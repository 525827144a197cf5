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

#include "dynlg/polynomial.hpp"

#include <cctype>
#include <sstream>

namespace dynlg {

QPoly::QPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<unsigned long>(i));
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  std::vector<Rational> out = c_;
  const Rational lead = c_.back();
  for (auto& c : out) c /= lead;
  return QPoly(std::move(out));
}

Rational QPoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double QPoly::evaluate(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return QPoly(std::move(out));
}

QPoly operator-(const QPoly& a, const QPoly& b) {
  std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return QPoly(std::move(out));
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(out));
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = c_[i];
    if (c == 0) continue;
    Rational mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const bool unit = mag == 1;
    if (!unit || i == 0) {
      if (mag.get_den() != 1 && i > 0) os << "(" << mag.get_str() << ")";
      else os << mag.get_str();
    }
    if (i > 0) os << "z";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  const int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> quo(a.degree() - db + 1, Rational(0));
  const Rational& lead = b.leading();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i] == 0) continue;
    const Rational q = rem[i] / lead;
    quo[i - db] = q;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b.coefficients()[j];
  }
  rem.resize(db);
  return {QPoly(std::move(quo)), QPoly(std::move(rem))};
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

QPoly pow(const QPoly& a, unsigned e) {
  QPoly result = QPoly::constant(1), base = a;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

namespace {

QPoly exact_quotient(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

RationalFunction add(const RationalFunction& x, const RationalFunction& y, bool subtract) {
  // Common denominator via lcm so that no factor is introduced.
  const QPoly g = gcd(x.den, y.den);
  const QPoly xs = exact_quotient(y.den, g), ys = exact_quotient(x.den, g);
  QPoly num = subtract ? x.num * xs - y.num * ys : x.num * xs + y.num * ys;
  QPoly den = x.den * xs;
  if (num.is_zero()) return {QPoly(), QPoly::constant(1)};
  // The sum may still share a factor with g, which the sum created.
  const QPoly h = gcd(num, g);
  if (h.degree() > 0) {
    num = exact_quotient(num, h);
    den = exact_quotient(den, h);
  }
  return {num, den};
}

RationalFunction multiply(const RationalFunction& x, const RationalFunction& y) {
  if (x.num.is_zero() || y.num.is_zero()) return {QPoly(), QPoly::constant(1)};
  const QPoly g1 = gcd(x.num, y.den), g2 = gcd(y.num, x.den);
  auto cut = [](const QPoly& p, const QPoly& g) {
    return g.is_zero() || g.degree() <= 0 ? p : exact_quotient(p, g);
  };
  return {cut(x.num, g1) * cut(y.num, g2), cut(x.den, g2) * cut(y.den, g1)};
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  RationalFunction parse() {
    RationalFunction r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected token");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    std::size_t end = pos_;
    while (end < s_.size() && !std::isspace(static_cast<unsigned char>(s_[end]))) ++end;
    throw ParseError(what, pos_ < s_.size() ? s_.substr(pos_, std::max<std::size_t>(1, end - pos_))
                                            : std::string("<end>"));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' || c == 'x' || c == '(';
  }

  RationalFunction expr() {
    RationalFunction acc = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc = add(acc, term(), false);
      } else if (peek('-')) {
        ++pos_;
        acc = add(acc, term(), true);
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = multiply(acc, unary());
      } else if (peek('/')) {
        ++pos_;
        RationalFunction d = unary();
        if (d.num.is_zero()) fail("division by zero");
        acc = {acc.num * d.den, acc.den * d.num};
      } else if (starts_primary()) {
        acc = multiply(acc, power());
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (peek('-')) {
      ++pos_;
      RationalFunction r = unary();
      return {-r.num, r.den};
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      const unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      if (e > 4096) fail("exponent too large");
      return {pow(base.num, static_cast<unsigned>(e)), pow(base.den, static_cast<unsigned>(e))};
    }
    return base;
  }

  RationalFunction primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == 'z' || c == 'x') {
      ++pos_;
      return {QPoly::z(), QPoly::constant(1)};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return {QPoly::constant(Rational(Int(s_.substr(start, pos_ - start)))), QPoly::constant(1)};
    }
    fail("unexpected token");
  }

  std::string s_;
  std::size_t pos_ = 0;
};

}  // namespace

RationalFunction parse_rational_function(const std::string& text) { return Parser(text).parse(); }

}  // namespace dynlg
