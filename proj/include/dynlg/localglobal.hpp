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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "dynlg/numtheory.hpp"
#include "dynlg/orbit.hpp"
#include "dynlg/polynomial.hpp"
#include "dynlg/projective.hpp"
#include "dynlg/ratmap.hpp"

namespace dynlg {

struct Budgets {
  std::uint64_t day_steps = 4096;
  std::uint64_t night_stages = 12;
  std::uint64_t height_bits = kDefaultHeightBits;
  std::uint64_t factor_steps = 4'000'000;
};

/// Does the orbit of `point` meet `targets`? Moduli over primes in
/// `excluded` or of bad reduction are never used.
struct DecisionProblem {
  RationalMap phi;
  ProjectivePoint point;
  std::vector<ProjectivePoint> targets;  // sorted, distinct, nonempty
  std::set<Int> excluded;
  Budgets budgets;

  DecisionProblem(RationalMap phi, ProjectivePoint point, std::vector<ProjectivePoint> targets,
                  std::set<Int> excluded = {}, Budgets budgets = {});

  /// p outside `excluded` and of good reduction.
  bool usable_prime(const Int& p) const;
};

struct EngineOptions {
  std::uint64_t day_batch = 32;  // exact iterates per night stage
  std::uint64_t lcm_cap = std::uint64_t{1} << 32;
  std::uint64_t residue_cap = std::uint64_t{1} << 22;
  std::uint64_t max_points = std::uint64_t{1} << 22;
  unsigned compaction_primes = 16;
  int jobs = 0;
  bool parallel = true;
};

struct IntersectCaps {
  std::uint64_t lcm_cap = std::uint64_t{1} << 32;
  std::uint64_t residue_cap = std::uint64_t{1} << 22;
};

/// Exact intersection. Throws CycleBlowup past the caps.
HitSet intersect(const HitSet& a, const HitSet& b, const IntersectCaps& caps = {});
HitSet intersect_hit_sets(std::span<const HitSet> sets, const IntersectCaps& caps = {});

/// Moduli p_i^k with i + k = s + 1 over the usable primes p_1 < p_2 < ...,
/// ascending by prime.
std::vector<PrimePowerModulus> night_stage_moduli(std::span<const Int> primes, std::uint64_t s);

struct ModulusOutcome {
  PrimePowerModulus modulus;
  std::optional<ModOrbit> orbit;
  std::optional<HitSet> hits;
  std::string error;  // set when the modulus could not be processed
};

/// Orbit and hit set at each modulus, in parallel.
std::vector<ModulusOutcome> compute_moduli(const DecisionProblem& prob,
                                           std::span<const PrimePowerModulus> moduli,
                                           const EngineOptions& opts = {});
/// Single-threaded reference for compute_moduli.
std::vector<ModulusOutcome> compute_moduli_serial(const DecisionProblem& prob,
                                                  std::span<const PrimePowerModulus> moduli,
                                                  const EngineOptions& opts = {});

struct SkippedModulus {
  PrimePowerModulus modulus;
  std::string reason;
};

struct CertificateMetadata {
  std::uint64_t day_steps_done = 0;
  bool day_height_exhausted = false;
  std::uint64_t night_stages_done = 0;
  std::vector<PrimePowerModulus> examined;  // moduli folded or attempted, in order
  bool compacted = false;
  std::vector<SkippedModulus> skipped;
  std::vector<std::string> caveats;
};

struct WitnessBody {
  std::uint64_t index = 0;
};

/// Either a finite orbit that misses every target, or moduli whose hit sets
/// have empty intersection.
struct EmptyBody {
  bool finite_orbit = false;
  std::uint64_t orbit_tail = 0;
  std::uint64_t orbit_cycle = 0;
  std::vector<ModOrbit> orbits;
  std::vector<HitSet> hit_sets;
};

struct ExhaustedBody {
  std::uint64_t day_steps_done = 0;
  std::uint64_t night_stages_done = 0;
};

struct Certificate {
  std::variant<WitnessBody, EmptyBody, ExhaustedBody> body;
  CertificateMetadata meta;

  bool is_witness() const { return std::holds_alternative<WitnessBody>(body); }
  bool is_empty() const { return std::holds_alternative<EmptyBody>(body); }
  bool is_exhausted() const { return std::holds_alternative<ExhaustedBody>(body); }
  std::string kind() const;
};

Certificate decide(const DecisionProblem& prob, const EngineOptions& opts = {});

struct VerifyResult {
  bool ok = false;
  std::string reason;
};

/// Independent exact recheck. Exhausted never verifies.
VerifyResult verify_certificate(const DecisionProblem& prob, const Certificate& cert);

struct DegreeOneRow {
  Int p;
  unsigned k = 0;
  std::uint64_t min_factorial = 0;  // least n with p^k | n!
  /// false when p^k exceeds the orbit table limit; the hit fields are then unset
  bool orbit_computed = false;
  std::uint64_t first_hit = 0;      // least n with phi^n(1) = 0 mod p^k
  bool hit_set_nonempty = false;
  /// phi^(N! - 1)(1) = N! = 0 mod p^k for N = min_factorial
  bool factorial_index_hits = false;
};

/// phi(z) = z + 1, P = 1, Z = {0}: every p^k sees a hit although the global
/// orbit never reaches 0.
std::vector<DegreeOneRow> degree_one_demo(std::uint64_t bound_prime, unsigned bound_depth,
                                           std::uint64_t max_points = std::uint64_t{1} << 22);

enum class NewtonVerdict { converges, diverges, undecided };
std::string to_string(NewtonVerdict v);

inline constexpr std::int64_t kRootValuation = INT64_MAX;   // f(x) = 0
inline constexpr std::int64_t kPoleValuation = INT64_MIN;   // x = infinity

struct PlaceReport {
  std::optional<Int> prime;  // empty for the real place
  NewtonVerdict verdict = NewtonVerdict::undecided;
  std::uint64_t iterations = 0;
  // real place
  double last_value = 0;
  double last_residual = 0;
  // p-adic places: v_p(f(x_j)) and the chordal exponent between x_j and x_{j+1}
  std::vector<std::int64_t> valuations;
  std::vector<std::optional<std::uint64_t>> step_exponents;
  bool height_exhausted = false;
  std::string note;
};

struct NewtonOptions {
  std::uint64_t real_iters = 100;
  std::uint64_t p_iters = 12;
  std::uint64_t height_bits = kDefaultHeightBits;
};

/// v_p(f(x)) for x in P^1(Q); kRootValuation at a root, kPoleValuation at infinity.
std::int64_t value_valuation(const QPoly& f, const ProjectivePoint& x, const Int& p);

/// Newton iteration of f from alpha at the real place and at each prime.
std::vector<PlaceReport> newton_place_report(const QPoly& f, const Rational& alpha,
                                             std::span<const Int> primes,
                                             const NewtonOptions& opts = {});

}  // namespace dynlg
