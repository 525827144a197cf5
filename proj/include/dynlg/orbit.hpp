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
#include <span>
#include <string>
#include <vector>

#include "dynlg/numtheory.hpp"
#include "dynlg/projective.hpp"
#include "dynlg/ratmap.hpp"

namespace dynlg {

struct OrbitSummary {
  enum class Status { preperiodic, truncated };

  ProjectivePoint start;
  Status status = Status::truncated;
  std::uint64_t tail = 0;   // preperiodic only
  std::uint64_t cycle = 0;  // preperiodic only
  std::uint64_t steps_done = 0;
  /// points[i] = phi^i(start), i = 0..steps_done. When preperiodic,
  /// points[tail + cycle] == points[tail].
  std::vector<ProjectivePoint> points;
  bool height_exhausted = false;

  bool preperiodic() const { return status == Status::preperiodic; }
};

/// Iterates until the first exact repeat or until max_steps evaluations (or
/// the height budget) are used.
OrbitSummary orbit_rational(const RationalMap& phi, const ProjectivePoint& start,
                            std::uint64_t max_steps,
                            std::uint64_t height_bits = kDefaultHeightBits);

/// Tail/cycle decomposition of an orbit in P^1(Z/p^k).
struct ModOrbit {
  PrimePowerModulus modulus;
  std::uint64_t tail = 0;
  std::uint64_t cycle = 1;
  std::vector<ResiduePoint> sequence;  // length tail + cycle, all distinct

  /// phi^n(P) mod p^k for any n.
  const ResiduePoint& at(std::uint64_t n) const;
  friend bool operator==(const ModOrbit&, const ModOrbit&) = default;
};

struct OrbitModOptions {
  /// Refuse moduli with |P^1(Z/p^k)| above this.
  std::uint64_t max_points = std::uint64_t{1} << 22;
  /// Skip the native-width path (exact either way; used to cross-check).
  bool force_bignum = false;
};

/// Throws BadReduction at a bad prime.
ModOrbit orbit_mod(const RationalMap& phi, const ProjectivePoint& start,
                   const PrimePowerModulus& m, const OrbitModOptions& opts = {});

/// Eventually periodic set of iteration indices: below `threshold` exactly
/// the listed exceptional indices, from `threshold` on the indices whose
/// class modulo the cycle length is listed.
class HitSet {
 public:
  HitSet(std::uint64_t threshold, std::vector<std::uint64_t> exceptional,
         nt::ResidueClassSet residues);
  static HitSet everything() { return HitSet(0, {}, nt::ResidueClassSet(1, {0})); }
  static HitSet nothing() { return HitSet(0, {}, nt::ResidueClassSet(1, {})); }

  std::uint64_t threshold() const { return threshold_; }
  const std::vector<std::uint64_t>& exceptional() const { return exceptional_; }
  std::uint64_t cycle_length() const { return residues_.modulus(); }
  const nt::ResidueClassSet& residues() const { return residues_; }

  bool contains(std::uint64_t n) const;
  bool is_empty() const { return exceptional_.empty() && residues_.empty(); }
  /// Smallest member, if any.
  std::optional<std::uint64_t> first() const;

  friend bool operator==(const HitSet&, const HitSet&) = default;

 private:
  std::uint64_t threshold_;
  std::vector<std::uint64_t> exceptional_;
  nt::ResidueClassSet residues_;
};

/// {n : phi^n(P) = z mod p^k for some z in targets}.
HitSet hit_set(const ModOrbit& orb, std::span<const ProjectivePoint> targets);

}  // namespace dynlg
