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

#include "dynlg/numtheory.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <random>

namespace dynlg::nt {

namespace {

constexpr std::array<unsigned, 13> kDeterministicBases = {2,  3,  5,  7,  11, 13, 17,
                                                          19, 23, 29, 31, 37, 41};

// Jaeschke / Sorenson-Webster: the first 13 prime bases are exact below this.
const Int& deterministic_limit() {
  static const Int limit("3317044064679887385961981");
  return limit;
}

bool strong_probable_prime(const Int& n, const Int& d, unsigned s, const Int& base) {
  Int x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Int nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace

const std::vector<std::uint32_t>& small_primes(std::uint32_t bound) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(bound);
  if (it != cache.end()) return it->second;
  std::vector<bool> composite(bound + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i < bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j < bound; j += i) composite[j] = true;
  }
  return cache.emplace(bound, std::move(primes)).first->second;
}

Primality primality(const Int& n) {
  if (n < 2) return Primality::composite;
  for (unsigned p : kDeterministicBases) {
    if (n == p) return Primality::proven;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;
  }
  Int d = n - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  if (n < deterministic_limit()) {
    for (unsigned b : kDeterministicBases) {
      if (!strong_probable_prime(n, d, s, Int(b))) return Primality::composite;
    }
    return Primality::proven;
  }
  // Seed from n so repeated calls agree.
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(n);
  for (int round = 0; round < 40; ++round) {
    Int base = rng.get_z_range(n - 3) + 2;
    if (!strong_probable_prime(n, d, s, base)) return Primality::composite;
  }
  return Primality::probable;
}

bool is_prime(std::uint64_t n) { return is_prime(from_u64(n)); }

std::uint64_t valuation_unchecked(const Int& n, const Int& p) {
  if (n == 0) throw Error("valuation of zero undefined");
  Int m = abs(n);
  if (p == 2) return mpz_scan1(m.get_mpz_t(), 0);
  Int rest;
  return mpz_remove(rest.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
}

std::uint64_t valuation(const Int& n, const Int& p) {
  if (n == 0) throw Error("valuation of zero undefined");
  if (!is_prime(p)) throw Error("valuation requires a prime, got " + p.get_str());
  return valuation_unchecked(n, p);
}

std::uint64_t factorial_valuation(std::uint64_t n, const Int& p) {
  if (!is_prime(p)) throw Error("factorial_valuation requires a prime, got " + p.get_str());
  std::uint64_t total = 0;
  Int q = n / p;
  while (q > 0) {
    total += to_u64(q);
    q /= p;
  }
  return total;
}

int mobius(std::uint64_t n) {
  if (n == 0) throw Error("mobius(0) undefined");
  int sign = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> lo, hi;
  for (std::uint64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    lo.push_back(d);
    if (d * d != n) hi.push_back(n / d);
  }
  lo.insert(lo.end(), hi.rbegin(), hi.rend());
  return lo;
}

Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int inverse_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(a.get_str() + " is not invertible modulo " + m.get_str());
  }
  return r;
}

std::optional<Congruence> crt_pair(const Int& r1, const Int& m1, const Int& r2, const Int& m2) {
  if (m1 < 1 || m2 < 1) throw Error("crt_pair requires positive moduli");
  Int g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  const Int diff = r2 - r1;
  if (!mpz_divisible_p(diff.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
  const Int l = m1 / g * m2;
  // s*m1 = g (mod m2), so x = r1 + m1 * s * diff/g.
  const Int step = mod(s * (diff / g), m2 / g);
  return Congruence{mod(r1 + m1 * step, l), l};
}

Int Factorization::product() const {
  Int acc = 1;
  for (const auto& f : factors) {
    Int pe;
    mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
    acc *= pe;
  }
  return acc;
}

bool Factorization::all_proven() const {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimePower& f) { return f.certainty == Primality::proven; });
}

namespace {

// Brent's variant of Pollard rho. Returns a nontrivial factor or 0 when the
// budget is spent.
Int brent_rho(const Int& n, std::uint64_t& budget) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; budget > 0; ++c) {
    Int y = 2, x, q = 1, g = 1, ys;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](const Int& v) -> Int { return (v * v + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        const std::uint64_t lim = std::min(m, r - k);
        for (std::uint64_t i = 0; i < lim; ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        budget = budget > lim ? budget - lim : 0;
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1 && budget > 0);
      r *= 2;
    } while (g == 1 && budget > 0);
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(abs(x - ys), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void split(const Int& n, std::uint64_t& budget, std::map<Int, unsigned>& out,
           std::map<Int, Primality>& cert) {
  if (n == 1) return;
  const Primality pr = primality(n);
  if (pr != Primality::composite) {
    out[n] += 1;
    cert[n] = pr;
    return;
  }
  Int s;
  if (mpz_perfect_square_p(n.get_mpz_t())) {
    mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  } else {
    s = brent_rho(n, budget);
    if (s == 0) throw FactorizationBudgetExceeded(n);
  }
  split(s, budget, out, cert);
  split(n / s, budget, out, cert);
}

}  // namespace

Factorization factorize(const Int& n, const FactorOptions& opts) {
  if (n < 1) throw Error("factorize requires a positive integer");
  Factorization result{n, {}};
  Int rest = n;
  const auto bound = static_cast<std::uint32_t>(std::min<std::uint64_t>(opts.trial_bound, 1u << 31));
  const auto& primes = small_primes(std::max<std::uint32_t>(bound, 3));

  auto push = [&](std::uint64_t p, unsigned e) {
    result.factors.push_back({from_u64(p), e, Primality::proven});
  };
  // Trial division; a 64-bit cofactor uses native remainders, which cannot
  // change the answer.
  for (std::uint32_t p : primes) {
    if (rest == 1) break;
    if (mpz_fits_ulong_p(rest.get_mpz_t())) {
      unsigned long r = rest.get_ui();
      if (static_cast<std::uint64_t>(p) * p > r) break;
      if (r % p) continue;
      unsigned e = 0;
      while (r % p == 0) {
        r /= p;
        ++e;
      }
      push(p, e);
      rest = r;
      continue;
    }
    if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    push(p, e);
  }
  if (rest > 1) {
    std::map<Int, unsigned> big;
    std::map<Int, Primality> cert;
    std::uint64_t budget = opts.rho_steps;
    split(rest, budget, big, cert);
    for (const auto& [p, e] : big) result.factors.push_back({p, e, cert[p]});
  }
  std::sort(result.factors.begin(), result.factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  return result;
}

PrimeStream::PrimeStream(std::set<Int> excluded, Int start_after)
    : excluded_(std::move(excluded)), current_(std::move(start_after)) {}

Int PrimeStream::next() {
  while (true) {
    if (current_ < 2) {
      current_ = 2;
    } else if (current_ == 2) {
      current_ = 3;
    } else {
      current_ += mpz_odd_p(current_.get_mpz_t()) ? 2 : 1;
      while (!is_prime(current_)) current_ += 2;
    }
    if (!excluded_.count(current_)) return current_;
  }
}

std::uint64_t to_u64(const Int& n) {
  if (n < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) {
    throw Error("integer does not fit in 64 bits: " + n.get_str());
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Int from_u64(std::uint64_t n) {
  Int out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(n), 0, 0, &n);
  return out;
}

ResidueClassSet::ResidueClassSet(std::uint64_t modulus, std::vector<std::uint64_t> residues)
    : modulus_(modulus), residues_(std::move(residues)) {
  if (modulus_ == 0) throw Error("residue class set needs a positive modulus");
  std::sort(residues_.begin(), residues_.end());
  residues_.erase(std::unique(residues_.begin(), residues_.end()), residues_.end());
  if (!residues_.empty() && residues_.back() >= modulus_) {
    throw Error("residue out of range for modulus " + std::to_string(modulus_));
  }
}

bool ResidueClassSet::contains_class_of(std::uint64_t n) const {
  return std::binary_search(residues_.begin(), residues_.end(), n % modulus_);
}

std::size_t IntHash::operator()(const Int& v) const {
  const std::size_t low = mpz_sgn(v.get_mpz_t()) == 0 ? 0 : mpz_getlimbn(v.get_mpz_t(), 0);
  return low * 0x9E3779B97F4A7C15ull ^ mpz_size(v.get_mpz_t());
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::optional<std::uint64_t> lcm_u64(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t q = a / gcd_u64(a, b);
  unsigned __int128 wide = static_cast<unsigned __int128>(q) * b;
  if (wide > UINT64_MAX) return std::nullopt;
  return static_cast<std::uint64_t>(wide);
}

}  // namespace dynlg::nt
