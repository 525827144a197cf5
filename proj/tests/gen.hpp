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
#include <random>
#include <string>
#include <vector>

#include "dynlg/projective.hpp"
#include "dynlg/ratmap.hpp"

namespace gen {

using dynlg::Int;
using dynlg::ProjectivePoint;

// Seeded generators; every stream is reproducible from its seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(eng_); }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(eng_);
  }
  bool coin() { return below(2) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

  Int integer(std::int64_t lo, std::int64_t hi) { return Int(std::to_string(range(lo, hi))); }

  Int nonzero(std::int64_t bound) {
    std::int64_t v = 0;
    while (v == 0) v = range(-bound, bound);
    return Int(std::to_string(v));
  }

  ProjectivePoint point(std::int64_t bound) {
    while (true) {
      const std::int64_t a = range(-bound, bound), b = range(0, bound);
      if (a != 0 || b != 0) return ProjectivePoint(Int(std::to_string(a)), Int(std::to_string(b)));
    }
  }

  Int prime_below(std::uint64_t bound) {
    while (true) {
      const std::uint64_t c = 2 + below(bound - 2);
      if (dynlg::nt::is_prime(c)) return dynlg::nt::from_u64(c);
    }
  }

 private:
  std::mt19937_64 eng_;
};

inline const std::vector<std::string>& test_maps() {
  static const std::vector<std::string> maps{
      "z^2 - 1", "z^2 - 2", "z^2", "z^2 + 1", "(z^2 + 1)/(2z)", "1/z^2", "z^3 - z + 1",
      "(2z^3 + 2)/(3z^2)", "(z^2 - 3)/(z + 5)", "z^2 + 1/3", "3z^3 + z^2 - 7", "(z - 2)/(z^2 + 1)"};
  return maps;
}

}  // namespace gen
