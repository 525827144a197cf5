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
#include <vector>

#include "dynlg/error.hpp"

namespace dynlg::nt {

enum class Primality {
  composite,
  proven,    // deterministic strong-pseudoprime bases cover the range
  probable,  // 40 seeded random rounds; above 3.3e24
};

Primality primality(const Int& n);
inline bool is_prime(const Int& n) { return primality(n) != Primality::composite; }
bool is_prime(std::uint64_t n);

/// Largest e with p^e | n. Throws on n == 0 or composite p.
std::uint64_t valuation(const Int& n, const Int& p);
/// Same as valuation() without the primality check; p must be prime.
std::uint64_t valuation_unchecked(const Int& n, const Int& p);

/// v_p(n!) by Legendre's sum.
std::uint64_t factorial_valuation(std::uint64_t n, const Int& p);

int mobius(std::uint64_t n);
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// Sorted distinct residues in [0, modulus).
class ResidueClassSet {
 public:
  ResidueClassSet() : modulus_(1) {}
  ResidueClassSet(std::uint64_t modulus, std::vector<std::uint64_t> residues);

  std::uint64_t modulus() const { return modulus_; }
  const std::vector<std::uint64_t>& residues() const { return residues_; }
  bool empty() const { return residues_.empty(); }
  bool contains_class_of(std::uint64_t n) const;

  friend bool operator==(const ResidueClassSet&, const ResidueClassSet&) = default;

 private:
  std::uint64_t modulus_;
  std::vector<std::uint64_t> residues_;
};

struct IntHash {
  std::size_t operator()(const Int& v) const;
};

struct Congruence {
  Int residue;
  Int modulus;
  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Solves x = r1 (mod m1), x = r2 (mod m2). Empty when incompatible.
std::optional<Congruence> crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2);

struct PrimePower {
  Int prime;
  unsigned exponent = 0;
  Primality certainty = Primality::proven;
  friend bool operator==(const PrimePower& a, const PrimePower& b) {
    return a.prime == b.prime && a.exponent == b.exponent;
  }
};

struct Factorization {
  Int value;
  std::vector<PrimePower> factors;  // ascending primes

  Int product() const;
  bool all_proven() const;
};

struct FactorOptions {
  std::uint64_t trial_bound = 1'000'000;
  std::uint64_t rho_steps = 4'000'000;  // total Brent-rho iterations across all splits
};

/// Complete factorization of n >= 1. Throws FactorizationBudgetExceeded.
Factorization factorize(const Int& n, const FactorOptions& opts = {});

/// Primes below `bound`, sieved once per process and cached.
const std::vector<std::uint32_t>& small_primes(std::uint32_t bound = 1'000'000);

/// Ascending primes greater than `start_after`, skipping `excluded`.
class PrimeStream {
 public:
  PrimeStream(std::set<Int> excluded, Int start_after);
  Int next();

 private:
  std::set<Int> excluded_;
  Int current_;
};

inline PrimeStream good_primes(std::set<Int> excluded, Int start_after = 0) {
  return PrimeStream(std::move(excluded), std::move(start_after));
}

/// Inverse of a modulo m; a must be a unit.
Int inverse_mod(const Int& a, const Int& m);
/// Nonnegative remainder.
Int mod(const Int& a, const Int& m);

std::uint64_t to_u64(const Int& n);
Int from_u64(std::uint64_t n);

// Checked index arithmetic for hit-set cycle lengths.
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::optional<std::uint64_t> lcm_u64(std::uint64_t a, std::uint64_t b);

}  // namespace dynlg::nt
