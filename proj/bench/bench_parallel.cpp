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

#include <benchmark/benchmark.h>

#include "dynlg/localglobal.hpp"
#include "dynlg/zsigmondy.hpp"

using namespace dynlg;

namespace {

const DecisionProblem& problem() {
  static const DecisionProblem p(parse_map("z^2 + 1"), ProjectivePoint::affine(2),
                                 {ProjectivePoint::affine(0), ProjectivePoint::affine(-7)});
  return p;
}

std::vector<PrimePowerModulus> moduli(std::size_t count, unsigned k) {
  std::vector<PrimePowerModulus> out;
  nt::PrimeStream primes({}, 100);
  while (out.size() < count) out.emplace_back(primes.next(), k);
  return out;
}

template <auto Kernel>
void night_stage(benchmark::State& state) {
  const auto mods = moduli(static_cast<std::size_t>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(problem(), mods, EngineOptions{}));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <auto Kernel>
void zsigmondy(benchmark::State& state) {
  const RationalMap phi = parse_map("z^2 + 1");
  const auto m = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Kernel(phi, ProjectivePoint::affine(1), ProjectivePoint::affine(0), m, {}, ZsigmondyOptions{}));
  }
}

}  // namespace

BENCHMARK(night_stage<compute_moduli_serial>)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(night_stage<compute_moduli>)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(zsigmondy<primitive_divisors_serial>)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);
BENCHMARK(zsigmondy<primitive_divisors>)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
