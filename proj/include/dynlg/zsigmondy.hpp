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
#include <set>
#include <string>
#include <vector>

#include "dynlg/numtheory.hpp"
#include "dynlg/projective.hpp"
#include "dynlg/ratmap.hpp"

namespace dynlg {

struct ZsigmondyOptions {
  std::uint64_t height_bits = kDefaultHeightBits;
  nt::FactorOptions factor;
  int jobs = 0;  // OpenMP thread cap; 0 = runtime default
};

/// Support of phi^m(beta) - gamma at index m, with S removed.
struct SupportReport {
  std::uint64_t m = 0;
  std::uint64_t term_bits = 0;  // bit length of the cross-product term
  std::vector<nt::PrimePower> support;
  std::vector<Int> primitive;
};

struct ZsigmondyResult {
  std::vector<SupportReport> rows;  // m = 1..m_max
  std::vector<std::string> warnings;
  /// Largest m <= m_max with no primitive prime, plus one. Empirical only.
  std::uint64_t empirical_threshold = 1;
};

/// Factorization of |x1*g2 - x2*g1| for x = phi^m(beta). Throws when
/// phi^m(beta) = gamma.
std::vector<nt::PrimePower> difference_support(const RationalMap& phi, const ProjectivePoint& beta,
                                               const ProjectivePoint& gamma, std::uint64_t m,
                                               const ZsigmondyOptions& opts = {});

/// Primitive prime divisors of phi^m(beta) - gamma for m = 1..m_max, with
/// supports factored in parallel and primitivity decided in index order.
/// Index 0 counts as an earlier term.
ZsigmondyResult primitive_divisors(const RationalMap& phi, const ProjectivePoint& beta,
                                   const ProjectivePoint& gamma, std::uint64_t m_max,
                                   const std::set<Int>& excluded,
                                   const ZsigmondyOptions& opts = {});

/// Single-threaded reference for primitive_divisors.
ZsigmondyResult primitive_divisors_serial(const RationalMap& phi, const ProjectivePoint& beta,
                                          const ProjectivePoint& gamma, std::uint64_t m_max,
                                          const std::set<Int>& excluded,
                                          const ZsigmondyOptions& opts = {});

}  // namespace dynlg
