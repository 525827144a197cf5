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

#include "dynlg/orbit.hpp"
#include "dynlg/ratmap.hpp"
#include "gen.hpp"

using namespace dynlg;

namespace {

ProjectivePoint pt(long a, long b = 1) { return ProjectivePoint(Int(a), Int(b)); }

BinaryForm form(std::initializer_list<long> c) {
  std::vector<Int> v;
  for (long x : c) v.emplace_back(x);
  return BinaryForm(v);
}

}  // namespace

TEST_CASE("map construction") {
  const RationalMap a = parse_map("z^2 - 1");
  CHECK(a.F() == form({-1, 0, 1}));
  CHECK(a.G() == form({1, 0, 0}));
  CHECK(a.degree() == 2);
  const RationalMap b = parse_map("(z^2+1)/(2z)");
  CHECK(b.F() == form({1, 0, 1}));
  CHECK(b.G() == form({0, 2, 0}));
  CHECK_THROWS_AS(parse_map("(z^2-1)/(z-1)"), Error);
  CHECK_THROWS_AS(parse_map("7"), Error);
  CHECK_THROWS_AS(parse_map("z +"), ParseError);
  CHECK_THROWS_AS(RationalMap(form({1, 1}), form({1, 0, 0})), Error);
  CHECK(parse_map("-z^2 + 1").G()[0] == 1);
  CHECK(parse_map("(z^2 + 1)/(-z)").G()[1] == 1);
}

TEST_CASE("resultants and bad primes") {
  CHECK(abs(resultant(form({-1, 0, 1}), form({1, 0, 0}))) == 1);
  CHECK(abs(resultant(form({1, 0, 1}), form({0, 2, 0}))) == 4);
  CHECK(resultant(form({1, 0, 1}), form({1, 0, 1})) == 0);
  CHECK(parse_map("z^2 - 1").bad_primes().empty());
  CHECK(parse_map("(z^2+1)/(2z)").bad_primes() == std::vector<Int>{2});
  CHECK(parse_map("z^2 + 1/3").bad_primes() == std::vector<Int>{3});
  CHECK(parse_map("z^2 + 1/3").has_good_reduction(5));
  CHECK_FALSE(parse_map("z^2 + 1/3").has_good_reduction(3));
}

TEST_CASE("incomplete bad-prime factorization is reported") {
  const Int p("1000000000000000003"), q("1000000000000000009");
  nt::FactorOptions tight;
  tight.rho_steps = 10;
  // Res(X^2 + n Y^2, XY) = n up to sign
  const RationalMap phi(BinaryForm({p * q, Int(0), Int(1)}), BinaryForm({Int(0), Int(1), Int(0)}), tight);
  CHECK_FALSE(phi.bad_primes_known());
  CHECK_THROWS_AS(phi.bad_primes(), FactorizationBudgetExceeded);
  CHECK_FALSE(phi.has_good_reduction(p));
  CHECK(phi.has_good_reduction(5));
}

TEST_CASE("evaluation") {
  const RationalMap a = parse_map("z^2 - 1");
  CHECK(evaluate(a, pt(3)) == pt(8));
  CHECK(evaluate(a, ProjectivePoint::infinity()).is_infinity());
  const RationalMap b = parse_map("(z^2+1)/(2z)");
  CHECK(evaluate(b, pt(1)) == pt(1));
  CHECK(evaluate(b, pt(0)).is_infinity());
  const auto r = evaluate_mod(a, reduce_mod(pt(3), PrimePowerModulus(5, 1)));
  CHECK(r.c1() == 3);
  CHECK(r.c2() == 1);
  const auto inf = evaluate_mod(a, reduce_mod(ProjectivePoint::infinity(), PrimePowerModulus(7, 1)));
  CHECK(inf.c2() == 0);
  CHECK_THROWS_AS(evaluate_mod(b, reduce_mod(pt(1), PrimePowerModulus(2, 1))), BadReduction);
}

TEST_CASE("iteration") {
  CHECK(iterate_point(parse_map("z^2 - 1"), pt(3), 2) == pt(63));
  CHECK(iterate_point(parse_map("z^2 - 7"), pt(5, 3), 0) == pt(5, 3));
  CHECK(iterate_point(parse_map("z^2"), pt(2), 3) == pt(256));
  try {
    iterate_point(parse_map("z^2"), pt(3), 40, 64);
    FAIL("expected HeightBudgetExceeded");
  } catch (const HeightBudgetExceeded& e) {
    CHECK(e.last_index() == 5);  // 3^32 fits in 64 bits, 3^64 does not
  }
}

TEST_CASE("Newton maps") {
  CHECK(newton_map("z^3 - 2") == parse_map("(2z^3 + 2)/(3z^2)"));
  CHECK(newton_map("z^2 - 1") == parse_map("(z^2 + 1)/(2z)"));
  CHECK_THROWS_AS(newton_map("5"), Error);
  CHECK_THROWS_AS(newton_map("2z + 1"), Error);
  CHECK_THROWS_AS(newton_map("1/z"), ParseError);
  const RationalMap sq = newton_map("(z - 1)^2 (z + 1)");
  CHECK(sq.degree() == 2);
  CHECK_FALSE(sq.warnings().empty());
}

TEST_CASE("composition forms match pointwise iteration") {
  gen::Rng rng(7);
  for (const auto& text : gen::test_maps()) {
    const RationalMap phi = parse_map(text);
    const auto [f3, g3] = iterate_forms(phi, 3);
    CHECK(f3.degree() == phi.degree() * phi.degree() * phi.degree());
    for (int i = 0; i < 10; ++i) {
      const ProjectivePoint x = rng.point(20);
      CHECK(ProjectivePoint(f3(x.x1(), x.x2()), g3(x.x1(), x.x2())) == iterate_point(phi, x, 3));
    }
  }
  const auto [f0, g0] = iterate_forms(parse_map("z^2"), 0);
  CHECK(f0 == form({0, 1}));
  CHECK(g0 == form({1, 0}));
}

TEST_CASE("polynomial type") {
  CHECK(is_polynomial_type(parse_map("z^2"), ProjectivePoint::infinity()) == 1u);
  CHECK(is_polynomial_type(parse_map("1/z^2"), ProjectivePoint::infinity()) == 2u);
  CHECK_FALSE(is_polynomial_type(parse_map("z^2"), pt(1)));
  CHECK(is_polynomial_type(parse_map("z^2"), pt(0)) == 1u);
  CHECK_FALSE(is_polynomial_type(parse_map("1/z^2"), ProjectivePoint::infinity(), 1));
  CHECK_FALSE(is_polynomial_type(parse_map("(z^2+1)/(2z)"), ProjectivePoint::infinity()));
}

TEST_CASE("property: polynomial-type points have orbit length at most 2") {
  for (const auto& text : gen::test_maps()) {
    const RationalMap phi = parse_map(text);
    std::vector<ProjectivePoint> candidates{ProjectivePoint::infinity()};
    for (long a = -5; a <= 5; ++a) candidates.push_back(pt(a));
    for (const auto& g : candidates) {
      if (!is_polynomial_type(phi, g, 2)) continue;
      const OrbitSummary o = orbit_rational(phi, g, 4);
      REQUIRE(o.preperiodic());
      CHECK(o.tail == 0);
      CHECK(o.cycle <= 2);
    }
  }
}

TEST_CASE("dynatomic forms") {
  const RationalMap a = parse_map("z^2 - 1");
  CHECK(proportional(dynatomic(a, 2).form, form({0, 1, 1})));
  CHECK(proportional(dynatomic(parse_map("z^2 - 2"), 2).form, form({-1, 1, 1})));
  // period-1 form Y F - X G = Y(X^2 - Y^2) - X Y^2
  const BinaryForm p1 = period_form(a, 1);
  CHECK(p1.degree() == 3);
  CHECK(proportional(p1, form({-1, -1, 1, 0})));
  CHECK(proportional(dynatomic(a, 1).form, p1));
  CHECK_THROWS_AS(dynatomic(a, 0), Error);
  DynatomicOptions small;
  small.max_degree = 16;
  CHECK_THROWS_AS(dynatomic(a, 5, small), Error);
  CHECK_THROWS_AS(dynatomic(parse_map("1/z"), 2), Error);
}

TEST_CASE("property: dynatomic degree identity") {
  for (const char* text : {"z^2 - 1", "z^2 + 1", "(z^2 + 1)/(2z)", "z^3 - z + 1", "(2z^3 + 2)/(3z^2)"}) {
    const RationalMap phi = parse_map(text);
    for (unsigned n = 1; n <= 6; ++n) {
      std::int64_t expected = 0;
      for (auto d : nt::divisors(n)) {
        std::int64_t pw = 1;
        for (std::uint64_t i = 0; i < d; ++i) pw *= phi.degree();
        expected += nt::mobius(n / d) * (pw + 1);
      }
      CHECK(static_cast<std::int64_t>(dynatomic_degree(phi.degree(), n)) == expected);
      CHECK(dynatomic(phi, n).form.degree() == expected);
    }
  }
}

TEST_CASE("rational roots and periodic points") {
  CHECK(rational_roots(form({0, 1, 1})) == std::vector<ProjectivePoint>{pt(-1), pt(0)});
  CHECK(rational_roots(form({0, 0, 1})) == std::vector<ProjectivePoint>{pt(0)});
  CHECK(rational_roots(form({1, 0})) == std::vector<ProjectivePoint>{ProjectivePoint::infinity()});
  CHECK(rational_roots(form({-2, 0, 1})).empty());
  CHECK(rational_roots(form({-1, 0, 4})) == std::vector<ProjectivePoint>{pt(-1, 2), pt(1, 2)});
  CHECK_THROWS_AS(rational_roots(BinaryForm::zero(2)), Error);

  const RationalMap a = parse_map("z^2 - 1");
  const auto p2 = rational_periodic_points(a, 2);
  REQUIRE(p2.size() == 2);
  CHECK(p2[0] == PeriodicPoint{pt(-1), 2});
  CHECK(p2[1] == PeriodicPoint{pt(0), 2});
  const auto p1 = rational_periodic_points(a, 1);
  REQUIRE(p1.size() == 1);
  CHECK(p1[0].point.is_infinity());
  CHECK(rational_periodic_points(parse_map("z^2 - 2"), 2).empty());
  CHECK(exact_period(a, pt(0), 5) == 2u);
  CHECK_FALSE(exact_period(a, pt(3), 5));
}

TEST_CASE("property: periodic points match exhaustive search") {
  for (const char* text : {"z^2 - 1", "z^2 - 2", "z^2"}) {
    const RationalMap phi = parse_map(text);
    for (unsigned n = 1; n <= 3; ++n) {
      const auto found = rational_periodic_points(phi, n);
      for (const auto& pp : found) {
        CHECK(pp.exact_period == n);
        CHECK(exact_period(phi, pp.point, n) == n);
      }
      std::set<ProjectivePoint> brute;
      std::vector<ProjectivePoint> cands{ProjectivePoint::infinity()};
      for (long b = 1; b <= 100; ++b) {
        for (long a = -100; a <= 100; ++a) {
          if (std::gcd(a, b) == 1) cands.push_back(pt(a, b));
        }
      }
      for (const auto& x : cands) {
        if (exact_period(phi, x, n) == n) brute.insert(x);
      }
      std::set<ProjectivePoint> got;
      for (const auto& pp : found) got.insert(pp.point);
      for (const auto& x : brute) CHECK(got.count(x) == 1);
    }
  }
}

TEST_CASE("property: reduction functoriality") {
  gen::Rng rng(11);
  int checked = 0;
  while (checked < 1000) {
    const RationalMap phi = parse_map(rng.pick(gen::test_maps()));
    const Int p = rng.prime_below(1000);
    if (!phi.has_good_reduction(p)) continue;
    const ProjectivePoint x = rng.point(10000);
    const unsigned k = 1 + static_cast<unsigned>(rng.below(3));
    const PrimePowerModulus m(p, k);
    REQUIRE(reduce_mod(evaluate(phi, x), m) == evaluate_mod(phi, reduce_mod(x, m)));
    ++checked;
  }
}

TEST_CASE("property: congruence propagates under good reduction") {
  gen::Rng rng(12);
  int checked = 0;
  while (checked < 1000) {
    const RationalMap phi = parse_map(rng.pick(gen::test_maps()));
    const Int p = rng.prime_below(50);
    if (!phi.has_good_reduction(p)) continue;
    const unsigned k = 1 + static_cast<unsigned>(rng.below(3));
    const PrimePowerModulus m(p, k);
    const ProjectivePoint x = rng.point(1000);
    // y = x + t p^k (or the analogous shift of the other coordinate)
    const Int t = rng.integer(-20, 20);
    const ProjectivePoint y = rng.coin() ? ProjectivePoint(x.x1() + t * m.value() * x.x2(), x.x2())
                                         : ProjectivePoint(x.x1(), x.x2() + t * m.value() * x.x1());
    REQUIRE(congruent_mod(x, y, m));
    REQUIRE(congruent_mod(evaluate(phi, x), evaluate(phi, y), m));
    ++checked;
  }
}
