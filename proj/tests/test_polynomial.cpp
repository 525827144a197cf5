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

#include <doctest.h>

#include "dynlg/polynomial.hpp"

using namespace dynlg;

namespace {

QPoly poly(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return QPoly(v);
}

}  // namespace

TEST_CASE("arithmetic and trimming") {
  CHECK(QPoly({Rational(1), Rational(0)}).degree() == 0);
  CHECK(QPoly().degree() == -1);
  CHECK((poly({1, 1}) * poly({-1, 1})) == poly({-1, 0, 1}));
  CHECK((poly({0, 1}) - poly({0, 1})).is_zero());
  CHECK(poly({-2, 0, 0, 1}).derivative() == poly({0, 0, 3}));
  CHECK(poly({2, 4}).monic() == QPoly({Rational(1, 2), Rational(1)}));
  CHECK(poly({-2, 0, 0, 1})(Rational(3)) == 25);
  CHECK(poly({-2, 0, 0, 1}).evaluate(2.0) == doctest::Approx(6.0));
  CHECK(pow(poly({1, 1}), 3) == poly({1, 3, 3, 1}));
}

TEST_CASE("division and gcd") {
  auto [q, r] = divmod(poly({-1, 0, 1}), poly({-1, 1}));
  CHECK(q == poly({1, 1}));
  CHECK(r.is_zero());
  auto [q2, r2] = divmod(poly({1, 0, 1}), poly({0, 2}));
  CHECK(q2 == QPoly({Rational(0), Rational(1, 2)}));
  CHECK(r2 == poly({1}));
  CHECK_THROWS_AS(divmod(poly({1}), QPoly()), Error);
  CHECK(gcd(poly({-1, 0, 1}), poly({2, 2})) == poly({1, 1}));
  CHECK(gcd(QPoly(), QPoly()).is_zero());
  CHECK(gcd(poly({1, 0, 1}), poly({0, 1})) == poly({1}));
}

TEST_CASE("to_string") {
  CHECK(poly({-1, 0, 1}).to_string() == "z^2 - 1");
  CHECK(QPoly().to_string() == "0");
  CHECK(poly({0, 2}).to_string() == "2z");
}

TEST_CASE("rational function parser") {
  auto a = parse_rational_function("z^2 - 1");
  CHECK(a.num == poly({-1, 0, 1}));
  CHECK(a.den == poly({1}));
  auto b = parse_rational_function("(z^2+1)/(2z)");
  CHECK(b.num == poly({1, 0, 1}));
  CHECK(b.den == poly({0, 2}));
  auto c = parse_rational_function("2z(z+1)");
  CHECK(c.num == poly({0, 2, 2}));
  auto d = parse_rational_function("x^2 + 1/3");
  CHECK(d.num(Rational(0)) / d.den(Rational(0)) == Rational(1, 3));
  // a quotient as written is kept unreduced
  auto e = parse_rational_function("(z^2-1)/(z-1)");
  CHECK(e.den == poly({-1, 1}));
  auto f = parse_rational_function("1/z + 1/z");
  CHECK(f.num(Rational(1)) / f.den(Rational(1)) == 2);
  CHECK(f.den.degree() == 1);
  auto g = parse_rational_function("-(z - 3)^2");
  CHECK(g.num == poly({-9, 6, -1}));
}

TEST_CASE("parser errors name the offending token") {
  CHECK_THROWS_AS(parse_rational_function("z^"), ParseError);
  CHECK_THROWS_AS(parse_rational_function("z + "), ParseError);
  CHECK_THROWS_AS(parse_rational_function("(z"), ParseError);
  CHECK_THROWS_AS(parse_rational_function("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational_function("1/(z - z)"), ParseError);
  CHECK_THROWS_AS(parse_rational_function("z^-1"), ParseError);
  CHECK_THROWS_AS(parse_rational_function(""), ParseError);
  try {
    parse_rational_function("z + y");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.token() == "y");
  }
}
