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

#include <algorithm>

#include "dynlg/orbit.hpp"
#include "dynlg/zsigmondy.hpp"

using namespace dynlg;

namespace {

ProjectivePoint pt(long a, long b = 1) { return ProjectivePoint(Int(a), Int(b)); }

bool has_warning(const ZsigmondyResult& z, const std::string& w) {
  return std::find(z.warnings.begin(), z.warnings.end(), w) != z.warnings.end();
}

}  // namespace

TEST_CASE("difference supports") {
  const auto s2 = difference_support(parse_map("z^2"), pt(2), pt(1), 2);
  REQUIRE(s2.size() == 2);
  CHECK(s2[0] == nt::PrimePower{3, 1});
  CHECK(s2[1] == nt::PrimePower{5, 1});
  CHECK(difference_support(parse_map("z^2"), pt(2), pt(1), 3).size() == 3);
  const auto s = difference_support(parse_map("z^2 - 1"), pt(3), pt(0), 1);
  REQUIRE(s.size() == 1);
  CHECK(s[0] == nt::PrimePower{2, 3});
  CHECK_THROWS_AS(difference_support(parse_map("z^2 - 1"), pt(3), pt(63), 2), Error);
}

TEST_CASE("Fermat primitive divisors") {
  const ZsigmondyResult z = primitive_divisors(parse_map("z^2"), pt(2), pt(1), 5, {});
  REQUIRE(z.rows.size() == 5);
  const std::vector<long> expect{3, 5, 17, 257, 65537};
  for (std::size_t i = 0; i < 5; ++i) {
    REQUIRE(z.rows[i].primitive.size() == 1);
    CHECK(z.rows[i].primitive[0] == expect[i]);
    // the order of 2 modulo q is 2^m
    const Int q(expect[i]);
    Int o = 1, x = 2;
    while (x != 1) {
      x = x * 2 % q;
      ++o;
    }
    CHECK(o == (Int(1) << (i + 1)));
  }
  CHECK(z.empirical_threshold == 1);
  CHECK(z.warnings.empty());
}

TEST_CASE("exclusions and warnings") {
  const ZsigmondyResult z = primitive_divisors(parse_map("z^2"), pt(2), pt(1), 2, {5});
  CHECK(z.rows[1].primitive.empty());
  CHECK(z.rows[1].support.size() == 1);
  CHECK(z.empirical_threshold == 3);
  const ZsigmondyResult w = primitive_divisors(parse_map("z^2"), pt(2), pt(0), 4, {});
  CHECK(has_warning(w, "polynomial type at gamma"));
  for (std::size_t i = 1; i < w.rows.size(); ++i) CHECK(w.rows[i].primitive.empty());
  const ZsigmondyResult b = primitive_divisors(parse_map("z^2 - 1"), pt(1), pt(3), 3, {});
  CHECK(has_warning(b, "beta is preperiodic"));
  CHECK(has_warning(b, "gamma not detected as preperiodic within 64 steps"));
  CHECK_THROWS_AS(primitive_divisors(parse_map("z^2 - 1"), pt(3), pt(63), 4, {}), Error);
}

TEST_CASE("property: primitive primes are sound and agree with hit sets") {
  for (const auto& [text, beta, gamma] : std::vector<std::tuple<std::string, long, long>>{
           {"z^2", 2, 1}, {"z^2 + 1", 1, 0}, {"z^2 - 2", 3, 2}, {"z^2 + 3", 1, -1}, {"(z^2 + 1)/(2z)", 3, 1}}) {
    const RationalMap phi = parse_map(text);
    const ZsigmondyResult z = primitive_divisors(phi, pt(beta), pt(gamma), 5, {});
    const ZsigmondyResult s = primitive_divisors_serial(phi, pt(beta), pt(gamma), 5, {});
    REQUIRE(z.rows.size() == s.rows.size());
    for (const auto& row : z.rows) {
      for (const auto& q : row.primitive) {
        const PrimePowerModulus m(q, 1);
        CHECK(congruent_mod(iterate_point(phi, pt(beta), row.m), pt(gamma), m));
        for (std::uint64_t j = 0; j < row.m; ++j) {
          CHECK_FALSE(congruent_mod(iterate_point(phi, pt(beta), j), pt(gamma), m));
        }
      }
      for (long q = 2; q < 60; ++q) {
        if (!nt::is_prime(std::uint64_t(q)) || !phi.has_good_reduction(Int(q))) continue;
        const bool in_support = std::any_of(row.support.begin(), row.support.end(),
                                            [&](const nt::PrimePower& pe) { return pe.prime == q; });
        const std::vector<ProjectivePoint> target{pt(gamma)};
        const HitSet h = hit_set(orbit_mod(phi, pt(beta), PrimePowerModulus(Int(q), 1)), target);
        CHECK(h.contains(row.m) == in_support);
      }
    }
    for (std::size_t i = 0; i < z.rows.size(); ++i) {
      CHECK(z.rows[i].primitive == s.rows[i].primitive);
      CHECK(z.rows[i].support == s.rows[i].support);
    }
  }
}
