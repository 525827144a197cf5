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

#include "dynlg/orbit.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace dynlg {

OrbitSummary orbit_rational(const RationalMap& phi, const ProjectivePoint& start,
                            std::uint64_t max_steps, std::uint64_t height_bits) {
  OrbitSummary out{start, OrbitSummary::Status::truncated, 0, 0, 0, {}, false};
  out.points.push_back(start);
  std::unordered_map<ProjectivePoint, std::uint64_t, ProjectivePointHash> seen{{start, 0}};
  for (std::uint64_t i = 0; i < max_steps; ++i) {
    ProjectivePoint next = evaluate(phi, out.points.back());
    const std::uint64_t bits = std::max(mpz_sizeinbase(next.x1().get_mpz_t(), 2),
                                        mpz_sizeinbase(next.x2().get_mpz_t(), 2));
    if (bits > height_bits) {
      out.height_exhausted = true;
      return out;
    }
    out.steps_done = i + 1;
    auto [it, fresh] = seen.emplace(next, i + 1);
    out.points.push_back(std::move(next));
    if (!fresh) {
      out.status = OrbitSummary::Status::preperiodic;
      out.tail = it->second;
      out.cycle = i + 1 - it->second;
      return out;
    }
  }
  return out;
}

const ResiduePoint& ModOrbit::at(std::uint64_t n) const {
  if (n < tail) return sequence[n];
  return sequence[tail + (n - tail) % cycle];
}

namespace {

constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();

std::int64_t inverse_u64(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, new_t = 1, r = m, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return t < 0 ? t + m : t;
}

// Orbit over Z/p^k with p^k < 2^31; every product stays below 2^63.
ModOrbit orbit_mod_native(const RationalMap& phi, const ProjectivePoint& start,
                          const PrimePowerModulus& m, std::uint64_t table_size) {
  const std::uint64_t pk = nt::to_u64(m.value());
  const std::uint64_t p = nt::to_u64(m.p());
  auto reduce_coeffs = [&](const BinaryForm& f) {
    std::vector<std::uint64_t> out;
    for (const auto& c : f.coefficients()) out.push_back(nt::to_u64(nt::mod(c, m.value())));
    return out;
  };
  const std::vector<std::uint64_t> fc = reduce_coeffs(phi.F()), gc = reduce_coeffs(phi.G());
  auto eval = [pk](const std::vector<std::uint64_t>& c, std::uint64_t x, std::uint64_t y) {
    std::uint64_t acc = c.back(), ypow = 1;
    for (std::size_t i = c.size() - 1; i-- > 0;) {
      ypow = ypow * y % pk;
      acc = (acc * x + c[i] * ypow) % pk;
    }
    return acc;
  };
  struct Point {
    std::uint64_t c1, c2;
  };
  auto canonical = [&](std::uint64_t u1, std::uint64_t u2) -> Point {
    if (u2 % p != 0) {
      const auto inv = static_cast<std::uint64_t>(inverse_u64(static_cast<std::int64_t>(u2),
                                                              static_cast<std::int64_t>(pk)));
      return {u1 * inv % pk, 1};
    }
    const auto inv = static_cast<std::uint64_t>(inverse_u64(static_cast<std::int64_t>(u1),
                                                            static_cast<std::int64_t>(pk)));
    return {1, u2 * inv % pk};
  };
  auto index = [&](const Point& q) { return q.c2 == 1 ? q.c1 : pk + q.c2 / p; };

  std::vector<std::uint32_t> seen(table_size, kUnseen);
  std::vector<Point> seq;
  Point cur = canonical(nt::to_u64(nt::mod(start.x1(), m.value())),
                        nt::to_u64(nt::mod(start.x2(), m.value())));
  while (true) {
    std::uint32_t& slot = seen[index(cur)];
    if (slot != kUnseen) {
      ModOrbit out{m, slot, seq.size() - slot, {}};
      out.sequence.reserve(seq.size());
      for (const auto& q : seq) {
        out.sequence.push_back(ResiduePoint::from_canonical(m, nt::from_u64(q.c1), nt::from_u64(q.c2)));
      }
      return out;
    }
    slot = static_cast<std::uint32_t>(seq.size());
    seq.push_back(cur);
    cur = canonical(eval(fc, cur.c1, cur.c2), eval(gc, cur.c1, cur.c2));
  }
}

ModOrbit orbit_mod_bignum(const RationalMap& phi, const ProjectivePoint& start,
                          const PrimePowerModulus& m) {
  std::unordered_map<Int, std::uint64_t, nt::IntHash> seen;
  std::vector<ResiduePoint> seq;
  ResiduePoint cur = reduce_mod(start, m);
  while (true) {
    auto [it, fresh] = seen.emplace(cur.index(), seq.size());
    if (!fresh) {
      const std::uint64_t tail = it->second;
      return ModOrbit{m, tail, seq.size() - tail, std::move(seq)};
    }
    ResiduePoint next = evaluate_mod(phi, cur);
    seq.push_back(std::move(cur));
    cur = std::move(next);
  }
}

}  // namespace

ModOrbit orbit_mod(const RationalMap& phi, const ProjectivePoint& start,
                   const PrimePowerModulus& m, const OrbitModOptions& opts) {
  if (!phi.has_good_reduction(m.p())) throw BadReduction(m.p());
  if (m.projective_size() > nt::from_u64(opts.max_points)) {
    throw Error("modulus " + m.to_string() + " exceeds the orbit table limit");
  }
  const std::uint64_t size = nt::to_u64(m.projective_size());
  if (!opts.force_bignum && m.value() < (Int(1) << 31)) return orbit_mod_native(phi, start, m, size);
  return orbit_mod_bignum(phi, start, m);
}

HitSet::HitSet(std::uint64_t threshold, std::vector<std::uint64_t> exceptional,
               nt::ResidueClassSet residues)
    : threshold_(threshold), exceptional_(std::move(exceptional)), residues_(std::move(residues)) {
  std::sort(exceptional_.begin(), exceptional_.end());
  exceptional_.erase(std::unique(exceptional_.begin(), exceptional_.end()), exceptional_.end());
  if (!exceptional_.empty() && exceptional_.back() >= threshold_) {
    throw Error("exceptional hit index at or above the threshold");
  }
}

bool HitSet::contains(std::uint64_t n) const {
  if (n < threshold_) return std::binary_search(exceptional_.begin(), exceptional_.end(), n);
  return residues_.contains_class_of(n);
}

std::optional<std::uint64_t> HitSet::first() const {
  if (!exceptional_.empty()) return exceptional_.front();
  if (residues_.empty()) return std::nullopt;
  const std::uint64_t c = cycle_length(), base = threshold_ % c;
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t r : residues_.residues()) best = std::min(best, (r + c - base) % c);
  return threshold_ + best;
}

HitSet hit_set(const ModOrbit& orb, std::span<const ProjectivePoint> targets) {
  std::unordered_set<Int, nt::IntHash> wanted;
  for (const auto& z : targets) wanted.insert(reduce_mod(z, orb.modulus).index());
  std::vector<std::uint64_t> exceptional, residues;
  for (std::uint64_t j = 0; j < orb.sequence.size(); ++j) {
    if (!wanted.count(orb.sequence[j].index())) continue;
    if (j < orb.tail) exceptional.push_back(j);
    else residues.push_back(j % orb.cycle);
  }
  return HitSet(orb.tail, std::move(exceptional),
                nt::ResidueClassSet(orb.cycle, std::move(residues)));
}

}  // namespace dynlg
