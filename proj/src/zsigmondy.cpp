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

#include "dynlg/zsigmondy.hpp"

#include <exception>

#include "dynlg/orbit.hpp"
#include "dynlg/parallel.hpp"

namespace dynlg {

namespace {

std::vector<Int> cross_terms(const RationalMap& phi, const ProjectivePoint& beta,
                             const ProjectivePoint& gamma, std::uint64_t m_max,
                             const ZsigmondyOptions& opts) {
  std::vector<Int> terms;
  terms.reserve(m_max + 1);
  ProjectivePoint x = beta;
  for (std::uint64_t m = 0; m <= m_max; ++m) {
    if (m > 0) x = iterate_point(phi, x, 1, opts.height_bits);
    Int c = abs(cross(x, gamma));
    if (c == 0) throw Error("orbit hits target exactly at m = " + std::to_string(m));
    terms.push_back(std::move(c));
  }
  return terms;
}

std::vector<std::string> theorem_warnings(const RationalMap& phi, const ProjectivePoint& beta,
                                          const ProjectivePoint& gamma) {
  std::vector<std::string> w;
  if (phi.degree() < 2) w.push_back("degree 1 map: no primitive-divisor guarantee");
  if (is_polynomial_type(phi, gamma, 2)) w.push_back("polynomial type at gamma");
  const OrbitSummary g = orbit_rational(phi, gamma, 64);
  if (!g.preperiodic()) w.push_back("gamma not detected as preperiodic within 64 steps");
  const OrbitSummary b = orbit_rational(phi, beta, 64);
  if (b.preperiodic()) w.push_back("beta is preperiodic");
  return w;
}

ZsigmondyResult assemble(std::vector<Int> terms, std::vector<nt::Factorization> facs,
                         const std::set<Int>& excluded, std::vector<std::string> warnings) {
  ZsigmondyResult out;
  out.warnings = std::move(warnings);
  std::set<Int> seen;
  for (const auto& pe : facs[0].factors) seen.insert(pe.prime);
  std::uint64_t last_empty = 0;
  for (std::size_t m = 1; m < terms.size(); ++m) {
    SupportReport row;
    row.m = m;
    row.term_bits = mpz_sizeinbase(terms[m].get_mpz_t(), 2);
    for (const auto& pe : facs[m].factors) {
      if (excluded.count(pe.prime)) continue;
      row.support.push_back(pe);
      if (!seen.count(pe.prime)) row.primitive.push_back(pe.prime);
    }
    for (const auto& pe : facs[m].factors) seen.insert(pe.prime);
    if (row.primitive.empty()) last_empty = m;
    out.rows.push_back(std::move(row));
  }
  out.empirical_threshold = last_empty + 1;
  return out;
}

}  // namespace

std::vector<nt::PrimePower> difference_support(const RationalMap& phi, const ProjectivePoint& beta,
                                               const ProjectivePoint& gamma, std::uint64_t m,
                                               const ZsigmondyOptions& opts) {
  const ProjectivePoint x = iterate_point(phi, beta, m, opts.height_bits);
  const Int c = abs(cross(x, gamma));
  if (c == 0) throw Error("orbit hits target exactly");
  return nt::factorize(c, opts.factor).factors;
}

ZsigmondyResult primitive_divisors(const RationalMap& phi, const ProjectivePoint& beta,
                                   const ProjectivePoint& gamma, std::uint64_t m_max,
                                   const std::set<Int>& excluded, const ZsigmondyOptions& opts) {
  std::vector<Int> terms = cross_terms(phi, beta, gamma, m_max, opts);
  std::vector<nt::Factorization> facs(terms.size());
  std::vector<std::exception_ptr> errors(terms.size());
  const auto n = static_cast<std::int64_t>(terms.size());
#pragma omp parallel for schedule(dynamic) num_threads(par::threads(opts.jobs))
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      facs[i] = nt::factorize(terms[i], opts.factor);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return assemble(std::move(terms), std::move(facs), excluded, theorem_warnings(phi, beta, gamma));
}

ZsigmondyResult primitive_divisors_serial(const RationalMap& phi, const ProjectivePoint& beta,
                                          const ProjectivePoint& gamma, std::uint64_t m_max,
                                          const std::set<Int>& excluded,
                                          const ZsigmondyOptions& opts) {
  std::vector<Int> terms = cross_terms(phi, beta, gamma, m_max, opts);
  std::vector<nt::Factorization> facs;
  facs.reserve(terms.size());
  for (const auto& t : terms) facs.push_back(nt::factorize(t, opts.factor));
  return assemble(std::move(terms), std::move(facs), excluded, theorem_warnings(phi, beta, gamma));
}

}  // namespace dynlg
