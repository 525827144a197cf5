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
#include "gen.hpp"

using namespace dynlg;

namespace {

ProjectivePoint pt(long a, long b = 1) { return ProjectivePoint(Int(a), Int(b)); }

// First-repeat search by direct comparison with every earlier term.
std::pair<std::uint64_t, std::uint64_t> brute_tail_cycle(const RationalMap& phi, const ProjectivePoint& x,
                                                         const PrimePowerModulus& m) {
  std::vector<ResiduePoint> seq{reduce_mod(x, m)};
  while (true) {
    ResiduePoint next = evaluate_mod(phi, seq.back());
    for (std::size_t i = 0; i < seq.size(); ++i) {
      if (seq[i] == next) return {i, seq.size() - i};
    }
    seq.push_back(std::move(next));
  }
}

}  // namespace

TEST_CASE("rational orbits") {
  const RationalMap a = parse_map("z^2 - 1");
  const OrbitSummary o = orbit_rational(a, pt(0), 10);
  CHECK(o.preperiodic());
  CHECK(o.tail == 0);
  CHECK(o.cycle == 2);
  CHECK(o.points.size() == 3);
  const OrbitSummary t = orbit_rational(a, pt(3), 5);
  CHECK_FALSE(t.preperiodic());
  CHECK(t.steps_done == 5);
  CHECK(t.points[3] == pt(3968));
  const OrbitSummary f = orbit_rational(parse_map("z^2"), ProjectivePoint::infinity(), 10);
  CHECK(f.preperiodic());
  CHECK(f.tail == 0);
  CHECK(f.cycle == 1);
  const OrbitSummary h = orbit_rational(a, pt(3), 100, 256);
  CHECK(h.height_exhausted);
  CHECK_FALSE(h.preperiodic());
  const OrbitSummary z = orbit_rational(a, pt(3), 0);
  CHECK(z.points.size() == 1);
  const OrbitSummary pre = orbit_rational(parse_map("z^2 - 1"), pt(1), 10);
  CHECK(pre.tail == 1);
  CHECK(pre.cycle == 2);
}

TEST_CASE("modular orbits") {
  const RationalMap a = parse_map("z^2 - 1");
  const ModOrbit o5 = orbit_mod(a, pt(3), PrimePowerModulus(5, 1));
  CHECK(o5.tail == 0);
  CHECK(o5.cycle == 1);
  REQUIRE(o5.sequence.size() == 1);
  CHECK(o5.sequence[0].c1() == 3);
  const ModOrbit o7 = orbit_mod(a, pt(3), PrimePowerModulus(7, 1));
  CHECK(o7.tail == 2);
  CHECK(o7.cycle == 2);
  CHECK(o7.at(2).c1() == 0);
  CHECK(o7.at(3).c1() == 6);
  CHECK(o7.at(1001).c1() == 6);
  CHECK_THROWS_AS(orbit_mod(parse_map("(z^2+1)/(2z)"), pt(1), PrimePowerModulus(2, 1)), BadReduction);
  OrbitModOptions tiny;
  tiny.max_points = 10;
  CHECK_THROWS_AS(orbit_mod(a, pt(3), PrimePowerModulus(11, 1), tiny), Error);
}

TEST_CASE("hit sets") {
  const RationalMap a = parse_map("z^2 - 1");
  const std::vector<ProjectivePoint> zero{pt(0)}, t63{pt(63)};
  const HitSet h5 = hit_set(orbit_mod(a, pt(3), PrimePowerModulus(5, 1)), zero);
  CHECK(h5.is_empty());
  CHECK_FALSE(h5.first());
  const HitSet all = hit_set(orbit_mod(a, pt(3), PrimePowerModulus(5, 1)), t63);
  CHECK(all == HitSet::everything());
  const HitSet h7 = hit_set(orbit_mod(a, pt(3), PrimePowerModulus(7, 1)), zero);
  CHECK(h7.threshold() == 2);
  CHECK(h7.exceptional().empty());
  CHECK(h7.cycle_length() == 2);
  CHECK(h7.residues().residues() == std::vector<std::uint64_t>{0});
  for (std::uint64_t n = 0; n < 20; ++n) CHECK(h7.contains(n) == (n >= 2 && n % 2 == 0));
  CHECK(h7.first() == std::uint64_t{2});
  CHECK_THROWS_AS(HitSet(2, {2}, nt::ResidueClassSet(1, {})), Error);
  const HitSet ex(3, {1}, nt::ResidueClassSet(4, {1}));
  CHECK(ex.first() == std::uint64_t{1});
  const HitSet late(3, {}, nt::ResidueClassSet(4, {1}));
  CHECK(late.first() == std::uint64_t{5});
}

TEST_CASE("property: orbit_mod agrees with brute force for p^k <= 125") {
  gen::Rng rng(3);
  for (const auto& text : gen::test_maps()) {
    const RationalMap phi = parse_map(text);
    for (long p = 2; p <= 125; ++p) {
      if (!nt::is_prime(std::uint64_t(p))) continue;
      long pk = p;
      for (unsigned depth = 1; pk <= 125; ++depth, pk *= p) {
        const PrimePowerModulus m(Int(p), depth);
        if (!phi.has_good_reduction(m.p())) continue;
        for (int trial = 0; trial < 3; ++trial) {
          const ProjectivePoint x = rng.point(50);
          const ModOrbit o = orbit_mod(phi, x, m);
          const auto [tail, cycle] = brute_tail_cycle(phi, x, m);
          REQUIRE(o.tail == tail);
          REQUIRE(o.cycle == cycle);
          const std::vector<ProjectivePoint> targets{rng.point(50), rng.point(50)};
          const HitSet h = hit_set(o, targets);
          ResiduePoint cur = reduce_mod(x, m);
          for (std::uint64_t n = 0; n <= 3 * (tail + cycle); ++n) {
            bool direct = false;
            for (const auto& z : targets) direct = direct || reduce_mod(z, m) == cur;
            REQUIRE(h.contains(n) == direct);
            REQUIRE(o.at(n) == cur);
            cur = evaluate_mod(phi, cur);
          }
        }
      }
    }
  }
}

TEST_CASE("property: native and bignum orbit paths agree") {
  gen::Rng rng(4);
  OrbitModOptions big;
  big.force_bignum = true;
  for (int i = 0; i < 200; ++i) {
    const RationalMap phi = parse_map(rng.pick(gen::test_maps()));
    const Int p = rng.prime_below(60);
    if (!phi.has_good_reduction(p)) continue;
    const PrimePowerModulus m(p, 1 + static_cast<unsigned>(rng.below(3)));
    const ProjectivePoint x = rng.point(1000);
    REQUIRE(orbit_mod(phi, x, m) == orbit_mod(phi, x, m, big));
  }
}

TEST_CASE("property: preperiodic replay and reduction of rational cycles") {
  gen::Rng rng(5);
  const std::vector<std::pair<std::string, long>> cases{
      {"z^2 - 1", 0}, {"z^2 - 1", 1}, {"z^2", 1}, {"z^2", -1}, {"1/z^2", -1}, {"(z^2+1)/(2z)", 1}, {"z^2 - 2", 2}};
  for (const auto& [text, start] : cases) {
    const RationalMap phi = parse_map(text);
    const OrbitSummary o = orbit_rational(phi, pt(start), 50);
    REQUIRE(o.preperiodic());
    ProjectivePoint x = o.points[o.tail];
    for (std::uint64_t i = 0; i < 5 * o.cycle; ++i) {
      REQUIRE(x == o.points[o.tail + i % o.cycle]);
      x = evaluate(phi, x);
    }
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
      if (!phi.has_good_reduction(Int(p))) continue;
      for (unsigned k = 1; k <= 2; ++k) {
        const ModOrbit m = orbit_mod(phi, pt(start), PrimePowerModulus(Int(p), k));
        CHECK(o.cycle % m.cycle == 0);
        CHECK(m.tail <= o.tail);
      }
    }
  }
}
