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

#include "dynlg/numtheory.hpp"
#include "dynlg/projective.hpp"
#include "gen.hpp"

using namespace dynlg;

namespace {

ProjectivePoint pt(long a, long b) { return ProjectivePoint(Int(a), Int(b)); }

}  // namespace

TEST_CASE("normalization") {
  CHECK(parse_point("3/6") == pt(1, 2));
  CHECK(ProjectivePoint::infinity() == pt(1, 0));
  CHECK(pt(-4, -6) == pt(2, 3));
  CHECK(pt(-4, 0) == ProjectivePoint::infinity());
  CHECK(pt(4, -6).x1() == -2);
  CHECK(pt(4, -6).x2() == 3);
  CHECK_THROWS_AS(pt(0, 0), Error);
}

TEST_CASE("point parsing") {
  CHECK(parse_point("inf").is_infinity());
  CHECK(parse_point(" infinity ").is_infinity());
  CHECK(parse_point("[2:4]") == pt(1, 2));
  CHECK(parse_point("-7") == pt(-7, 1));
  CHECK(parse_point("+7") == pt(7, 1));
  CHECK_THROWS_AS(parse_point("1/0"), ParseError);
  CHECK_THROWS_AS(parse_point("abc"), ParseError);
  CHECK_THROWS_AS(parse_point("[1 2]"), ParseError);
  CHECK_THROWS_AS(parse_point(""), ParseError);
  try {
    parse_point("3/x");
  } catch (const ParseError& e) {
    CHECK(e.token() == "3/x");
  }
  CHECK(pt(3, 1).to_string() == "3");
  CHECK(pt(-1, 2).to_string() == "-1/2");
  CHECK(ProjectivePoint::infinity().to_string() == "inf");
  CHECK_THROWS_AS(ProjectivePoint::infinity().as_rational(), Error);
}

TEST_CASE("prime power modulus") {
  PrimePowerModulus m(5, 2);
  CHECK(m.value() == 25);
  CHECK(m.projective_size() == 30);
  CHECK(m.to_string() == "5^2");
  CHECK(PrimePowerModulus(7, 1).to_string() == "7");
  CHECK_THROWS_AS(PrimePowerModulus(6, 1), Error);
  CHECK_THROWS_AS(PrimePowerModulus(5, 0), Error);
  CHECK(PrimePowerModulus(3, 2) < PrimePowerModulus(5, 1));
  CHECK(PrimePowerModulus(3, 1) < PrimePowerModulus(3, 2));
}

TEST_CASE("chordal examples") {
  CHECK(chordal(pt(3, 1), pt(1, 1), 2).exponent == std::uint64_t{1});
  CHECK(chordal(pt(3, 1), pt(1, 1), 5).exponent == std::uint64_t{0});
  CHECK(chordal(pt(3, 1), pt(3, 1), 7).is_zero());
  CHECK_THROWS_AS(chordal(pt(3, 1), pt(1, 1), 4), Error);
}

TEST_CASE("congruence examples") {
  CHECK(congruent_mod(pt(3, 1), pt(1, 1), PrimePowerModulus(2, 1)));
  CHECK_FALSE(congruent_mod(pt(3, 1), pt(1, 1), PrimePowerModulus(2, 2)));
  CHECK_FALSE(congruent_mod(pt(1, 0), pt(5, 1), PrimePowerModulus(5, 1)));
  CHECK(congruent_mod(pt(1, 0), pt(1, 5), PrimePowerModulus(5, 1)));
}

TEST_CASE("reduction examples") {
  const auto a = reduce_mod(pt(3, 1), PrimePowerModulus(5, 1));
  CHECK(a.c1() == 3);
  CHECK(a.c2() == 1);
  const auto b = reduce_mod(ProjectivePoint::infinity(), PrimePowerModulus(7, 1));
  CHECK(b.c1() == 1);
  CHECK(b.c2() == 0);
  const auto c = reduce_mod(pt(5, 3), PrimePowerModulus(5, 2));
  CHECK(c.c1() == 10);
  CHECK(c.c2() == 1);
  const auto d = reduce_mod(pt(1, 10), PrimePowerModulus(5, 2));
  CHECK(d.c1() == 1);
  CHECK(d.c2() == 10);
  CHECK(d.index() == 27);
  CHECK_THROWS_AS(ResiduePoint(PrimePowerModulus(5, 1), 5, 10), Error);
}

TEST_CASE("residue point dense index covers P^1(Z/p^k) bijectively") {
  for (auto [p, k] : std::vector<std::pair<int, unsigned>>{{2, 3}, {3, 2}, {5, 1}, {7, 2}}) {
    const PrimePowerModulus m(p, k);
    const long pk = m.value().get_si();
    std::set<long> seen;
    for (long a = 0; a < pk; ++a) {
      for (long b = 0; b < pk; ++b) {
        if (a % p == 0 && b % p == 0) continue;
        const long idx = ResiduePoint(m, a, b).index().get_si();
        CHECK(idx >= 0);
        CHECK(idx < m.projective_size().get_si());
        seen.insert(idx);
      }
    }
    CHECK(seen.size() == m.projective_size().get_ui());
  }
}

TEST_CASE("property: normalization idempotence and representative independence") {
  gen::Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const ProjectivePoint x = rng.point(1000);
    CHECK(ProjectivePoint(x.x1(), x.x2()) == x);
    const Int lambda = rng.nonzero(50);
    const ProjectivePoint y = rng.point(1000);
    const ProjectivePoint xs(lambda * x.x1(), lambda * x.x2());
    for (int p : {2, 3, 5, 7, 11}) CHECK(chordal(xs, y, p) == chordal(x, y, p));
  }
}

TEST_CASE("property: metric axioms") {
  gen::Rng rng(2);
  for (int i = 0; i < 1000; ++i) {
    const ProjectivePoint x = rng.point(200), y = rng.point(200), z = rng.point(200);
    for (int p : {2, 3, 5, 7, 11}) {
      const Int P(p);
      const auto xz = chordal(x, z, P), xy = chordal(x, y, P), yz = chordal(y, z, P);
      const ChordalValue mx = xy.at_most(yz) ? yz : xy;
      REQUIRE(xz.at_most(mx));
      REQUIRE(chordal(x, y, P) == chordal(y, x, P));
      REQUIRE(chordal(x, y, P).is_zero() == (x == y));
      REQUIRE(chordal(x, x, P).is_zero());
    }
  }
}

TEST_CASE("property: congruence matches equality of reductions") {
  for (auto [p, k] : std::vector<std::pair<int, unsigned>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}, {5, 2}}) {
    const PrimePowerModulus m(p, k);
    std::vector<ProjectivePoint> pts;
    for (int a = -10; a <= 10; ++a) {
      for (int b = -10; b <= 10; ++b) {
        if (a != 0 || b != 0) pts.emplace_back(Int(a), Int(b));
      }
    }
    for (const auto& x : pts) {
      const ResiduePoint rx = reduce_mod(x, m);
      for (const auto& y : pts) REQUIRE(congruent_mod(x, y, m) == (rx == reduce_mod(y, m)));
    }
  }
}
