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

#include "dynlg/localglobal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "dynlg/parallel.hpp"

namespace dynlg {

DecisionProblem::DecisionProblem(RationalMap phi_, ProjectivePoint point_,
                                 std::vector<ProjectivePoint> targets_, std::set<Int> excluded_,
                                 Budgets budgets_)
    : phi(std::move(phi_)),
      point(std::move(point_)),
      targets(std::move(targets_)),
      excluded(std::move(excluded_)),
      budgets(budgets_) {
  if (targets.empty()) throw Error("target set is empty");
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
  for (const auto& p : excluded) {
    if (p < 2 || !nt::is_prime(p)) throw Error("excluded entry is not a prime: " + p.get_str());
  }
}

bool DecisionProblem::usable_prime(const Int& p) const {
  return !excluded.count(p) && phi.has_good_reduction(p);
}

HitSet intersect(const HitSet& a, const HitSet& b, const IntersectCaps& caps) {
  if (a.is_empty() || b.is_empty()) return HitSet::nothing();
  const std::uint64_t t = std::max(a.threshold(), b.threshold());
  std::vector<std::uint64_t> exceptional;
  for (std::uint64_t n = 0; n < t; ++n) {
    if (a.contains(n) && b.contains(n)) exceptional.push_back(n);
  }
  if (a.residues().empty() || b.residues().empty()) {
    return HitSet(t, std::move(exceptional), nt::ResidueClassSet(1, {}));
  }
  const std::uint64_t ca = a.cycle_length(), cb = b.cycle_length();
  const auto l = nt::lcm_u64(ca, cb);
  if (!l || *l > caps.lcm_cap) {
    throw CycleBlowup("cycle length lcm(" + std::to_string(ca) + ", " + std::to_string(cb) +
                      ") exceeds the cap");
  }
  const std::uint64_t g = nt::gcd_u64(ca, cb), mb = cb / g;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> by_class;
  for (std::uint64_t rb : b.residues().residues()) by_class[rb % g].push_back(rb);
  std::uint64_t count = 0;
  for (std::uint64_t ra : a.residues().residues()) {
    auto it = by_class.find(ra % g);
    if (it != by_class.end()) count += it->second.size();
  }
  if (count > caps.residue_cap) {
    throw CycleBlowup("intersection has " + std::to_string(count) + " residue classes");
  }
  const std::uint64_t inv =
      mb == 1 ? 0 : nt::to_u64(nt::inverse_mod(nt::from_u64((ca / g) % mb), nt::from_u64(mb)));
  std::vector<std::uint64_t> residues;
  residues.reserve(count);
  for (std::uint64_t ra : a.residues().residues()) {
    auto it = by_class.find(ra % g);
    if (it == by_class.end()) continue;
    for (std::uint64_t rb : it->second) {
      const __int128 d = (static_cast<__int128>(rb) - static_cast<__int128>(ra)) / g;
      __int128 s = d % static_cast<__int128>(mb);
      if (s < 0) s += mb;
      s = s * inv % mb;
      residues.push_back(static_cast<std::uint64_t>(ra + static_cast<__int128>(ca) * s));
    }
  }
  return HitSet(t, std::move(exceptional), nt::ResidueClassSet(*l, std::move(residues)));
}

HitSet intersect_hit_sets(std::span<const HitSet> sets, const IntersectCaps& caps) {
  HitSet acc = HitSet::everything();
  for (const auto& h : sets) {
    acc = intersect(acc, h, caps);
    if (acc.is_empty()) break;
  }
  return acc;
}

std::vector<PrimePowerModulus> night_stage_moduli(std::span<const Int> primes, std::uint64_t s) {
  std::vector<PrimePowerModulus> out;
  for (std::uint64_t i = 1; i <= s && i <= primes.size(); ++i) {
    out.emplace_back(primes[i - 1], static_cast<unsigned>(s + 1 - i));
  }
  return out;
}

namespace {

void fill_outcome(const DecisionProblem& prob, ModulusOutcome& o, const OrbitModOptions& mo) {
  try {
    if (prob.excluded.count(o.modulus.p())) throw Error("prime is excluded");
    o.orbit = orbit_mod(prob.phi, prob.point, o.modulus, mo);
    o.hits = hit_set(*o.orbit, prob.targets);
  } catch (const std::exception& e) {
    o.orbit.reset();
    o.hits.reset();
    o.error = e.what();
  }
}

std::vector<ModulusOutcome> blank_outcomes(std::span<const PrimePowerModulus> moduli) {
  std::vector<ModulusOutcome> out;
  out.reserve(moduli.size());
  for (const auto& m : moduli) out.push_back(ModulusOutcome{m, {}, {}, {}});
  return out;
}

}  // namespace

std::vector<ModulusOutcome> compute_moduli(const DecisionProblem& prob,
                                           std::span<const PrimePowerModulus> moduli,
                                           const EngineOptions& opts) {
  std::vector<ModulusOutcome> out = blank_outcomes(moduli);
  const OrbitModOptions mo{opts.max_points};
  const auto n = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(dynamic) num_threads(par::threads(opts.jobs))
  for (std::int64_t i = 0; i < n; ++i) fill_outcome(prob, out[i], mo);
  return out;
}

std::vector<ModulusOutcome> compute_moduli_serial(const DecisionProblem& prob,
                                                  std::span<const PrimePowerModulus> moduli,
                                                  const EngineOptions& opts) {
  std::vector<ModulusOutcome> out = blank_outcomes(moduli);
  const OrbitModOptions mo{opts.max_points};
  for (auto& o : out) fill_outcome(prob, o, mo);
  return out;
}

std::string Certificate::kind() const {
  if (is_witness()) return "witness";
  if (is_empty()) return "empty";
  return "exhausted";
}

namespace {

std::uint64_t height_of(const ProjectivePoint& x) {
  return std::max(mpz_sizeinbase(x.x1().get_mpz_t(), 2), mpz_sizeinbase(x.x2().get_mpz_t(), 2));
}

class Engine {
 public:
  Engine(const DecisionProblem& prob, const EngineOptions& opts)
      : prob_(prob),
        opts_(opts),
        caps_{opts.lcm_cap, opts.residue_cap},
        wanted_(prob.targets.begin(), prob.targets.end()),
        stream_(prob.excluded, 0),
        cur_(prob.point) {
    seen_.emplace(prob.point, 0);
  }

  Certificate run() {
    Certificate cert;
    if (prob_.phi.degree() == 1) cert.meta.caveats.push_back("no termination guarantee (degree 1)");
    if (!prob_.phi.bad_primes_known()) {
      cert.meta.caveats.push_back("resultant not fully factored; good reduction tested by divisibility");
    }
    if (wanted_.count(prob_.point)) return finish(std::move(cert), WitnessBody{0});

    HitSet acc = HitSet::everything();
    for (std::uint64_t s = 1; s <= prob_.budgets.night_stages; ++s) {
      if (auto body = day(opts_.day_batch)) return finish(std::move(cert), std::move(*body));
      ensure_primes(s);
      const auto moduli = night_stage_moduli(std::span(primes_).first(s), s);
      auto outcomes = opts_.parallel ? compute_moduli(prob_, moduli, opts_)
                                     : compute_moduli_serial(prob_, moduli, opts_);
      for (auto& o : outcomes) {
        cert.meta.examined.push_back(o.modulus);
        if (!o.error.empty()) {
          cert.meta.skipped.push_back({o.modulus, o.error});
          continue;
        }
        if (o.modulus.k() == 1) depth_one_.emplace(o.modulus.p(), *o.hits);
        try {
          acc = intersect(acc, *o.hits, caps_);
        } catch (const CycleBlowup& e) {
          cert.meta.skipped.push_back({o.modulus, e.what()});
          continue;
        }
        used_.push_back(std::move(o));
        if (acc.is_empty()) {
          cert.meta.night_stages_done = s;
          EmptyBody body = empty_body(cert.meta);
          return finish(std::move(cert), std::move(body));
        }
      }
      cert.meta.night_stages_done = s;
    }
    if (auto body = day(prob_.budgets.day_steps)) return finish(std::move(cert), std::move(*body));
    return finish(std::move(cert), ExhaustedBody{steps_, cert.meta.night_stages_done});
  }

 private:
  using Body = std::variant<WitnessBody, EmptyBody, ExhaustedBody>;

  Certificate finish(Certificate cert, Body body) {
    cert.body = std::move(body);
    cert.meta.day_steps_done = steps_;
    cert.meta.day_height_exhausted = height_stop_;
    return cert;
  }

  // Up to `batch` further exact iterates. Returns a body on a hit or a repeat.
  std::optional<Body> day(std::uint64_t batch) {
    for (std::uint64_t b = 0; b < batch; ++b) {
      if (height_stop_ || steps_ >= prob_.budgets.day_steps) return std::nullopt;
      ProjectivePoint next = evaluate(prob_.phi, cur_);
      if (height_of(next) > prob_.budgets.height_bits) {
        height_stop_ = true;
        return std::nullopt;
      }
      ++steps_;
      if (wanted_.count(next)) return WitnessBody{steps_};
      auto [it, fresh] = seen_.emplace(next, steps_);
      if (!fresh) {
        EmptyBody e;
        e.finite_orbit = true;
        e.orbit_tail = it->second;
        e.orbit_cycle = steps_ - it->second;
        return e;
      }
      cur_ = std::move(next);
    }
    return std::nullopt;
  }

  void ensure_primes(std::size_t count) {
    while (primes_.size() < count) {
      Int p = stream_.next();
      if (prob_.phi.has_good_reduction(p)) primes_.push_back(std::move(p));
    }
  }

  bool empty_intersection(const std::vector<std::size_t>& idx) const {
    HitSet acc = HitSet::everything();
    try {
      for (std::size_t i : idx) {
        acc = intersect(acc, *used_[i].hits, caps_);
        if (acc.is_empty()) return true;
      }
    } catch (const CycleBlowup&) {
      return false;
    }
    return acc.is_empty();
  }

  EmptyBody empty_body(CertificateMetadata& meta) {
    std::vector<std::size_t> keep(used_.size());
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
    for (std::size_t i = 0; i < used_.size() && keep.size() > 1; ++i) {
      std::vector<std::size_t> trial;
      for (std::size_t j : keep) {
        if (j != i) trial.push_back(j);
      }
      if (empty_intersection(trial)) keep = std::move(trial);
    }
    EmptyBody e;
    if (keep.size() > 1) {
      if (auto single = standalone_empty()) {
        meta.compacted = true;
        e.orbits.push_back(std::move(single->orbit.value()));
        e.hit_sets.push_back(std::move(single->hits.value()));
        return e;
      }
    }
    for (std::size_t i : keep) {
      e.orbits.push_back(*used_[i].orbit);
      e.hit_sets.push_back(*used_[i].hits);
    }
    return e;
  }

  // A depth-one modulus among the first few usable primes whose hit set is
  // empty on its own.
  std::optional<ModulusOutcome> standalone_empty() {
    ensure_primes(opts_.compaction_primes);
    for (std::size_t i = 0; i < opts_.compaction_primes; ++i) {
      auto known = depth_one_.find(primes_[i]);
      if (known != depth_one_.end() && !known->second.is_empty()) continue;
      ModulusOutcome o{PrimePowerModulus(primes_[i], 1), {}, {}, {}};
      fill_outcome(prob_, o, OrbitModOptions{opts_.max_points});
      if (o.error.empty() && o.hits->is_empty()) return o;
    }
    return std::nullopt;
  }

  const DecisionProblem& prob_;
  const EngineOptions& opts_;
  IntersectCaps caps_;
  std::unordered_set<ProjectivePoint, ProjectivePointHash> wanted_;
  nt::PrimeStream stream_;
  std::vector<Int> primes_;
  std::map<Int, HitSet> depth_one_;
  std::vector<ModulusOutcome> used_;

  ProjectivePoint cur_;
  std::unordered_map<ProjectivePoint, std::uint64_t, ProjectivePointHash> seen_;
  std::uint64_t steps_ = 0;
  bool height_stop_ = false;
};

}  // namespace

Certificate decide(const DecisionProblem& prob, const EngineOptions& opts) {
  return Engine(prob, opts).run();
}

namespace {

constexpr std::uint64_t kVerifyMaxPoints = std::uint64_t{1} << 26;

VerifyResult fail(std::string why) { return {false, std::move(why)}; }

bool is_target(const DecisionProblem& prob, const ProjectivePoint& x) {
  return std::binary_search(prob.targets.begin(), prob.targets.end(), x);
}

VerifyResult verify_witness(const DecisionProblem& prob, const WitnessBody& w) {
  const ProjectivePoint x = iterate_point(prob.phi, prob.point, w.index, prob.budgets.height_bits);
  if (!is_target(prob, x)) return fail("iterate " + std::to_string(w.index) + " is not a target");
  return {true, ""};
}

VerifyResult verify_empty(const DecisionProblem& prob, const EmptyBody& e) {
  if (e.finite_orbit) {
    if (e.orbit_cycle == 0) return fail("finite orbit with zero cycle length");
    const OrbitSummary o =
        orbit_rational(prob.phi, prob.point, e.orbit_tail + e.orbit_cycle, prob.budgets.height_bits);
    if (!o.preperiodic() || o.tail != e.orbit_tail || o.cycle != e.orbit_cycle) {
      return fail("orbit does not have the stated tail and cycle");
    }
    for (const auto& x : o.points) {
      if (is_target(prob, x)) return fail("finite orbit meets a target");
    }
    return {true, ""};
  }
  if (e.orbits.empty()) return fail("no moduli listed");
  if (e.orbits.size() != e.hit_sets.size()) return fail("orbit and hit-set counts differ");
  std::set<PrimePowerModulus> distinct;
  for (std::size_t i = 0; i < e.orbits.size(); ++i) {
    const PrimePowerModulus& m = e.orbits[i].modulus;
    if (!distinct.insert(m).second) return fail("modulus " + m.to_string() + " listed twice");
    if (prob.excluded.count(m.p())) return fail("modulus " + m.to_string() + " uses an excluded prime");
    if (!prob.phi.has_good_reduction(m.p())) return fail("bad reduction at " + m.p().get_str());
    const ModOrbit recomputed = orbit_mod(prob.phi, prob.point, m, OrbitModOptions{kVerifyMaxPoints});
    if (!(recomputed == e.orbits[i])) return fail("orbit mod " + m.to_string() + " does not match");
    if (!(hit_set(recomputed, prob.targets) == e.hit_sets[i])) {
      return fail("hit set mod " + m.to_string() + " does not match");
    }
  }
  if (!intersect_hit_sets(e.hit_sets, IntersectCaps{std::uint64_t{1} << 40, std::uint64_t{1} << 26})
           .is_empty()) {
    return fail("hit sets have nonempty intersection");
  }
  return {true, ""};
}

}  // namespace

VerifyResult verify_certificate(const DecisionProblem& prob, const Certificate& cert) {
  try {
    if (const auto* w = std::get_if<WitnessBody>(&cert.body)) return verify_witness(prob, *w);
    if (const auto* e = std::get_if<EmptyBody>(&cert.body)) return verify_empty(prob, *e);
    return fail("exhausted result carries no certificate");
  } catch (const std::exception& ex) {
    return fail(ex.what());
  }
}

std::vector<DegreeOneRow> degree_one_demo(std::uint64_t bound_prime, unsigned bound_depth,
                                           std::uint64_t max_points) {
  const RationalMap phi = parse_map("z + 1");
  const ProjectivePoint one = ProjectivePoint::affine(1);
  const std::vector<ProjectivePoint> zero{ProjectivePoint::affine(0)};
  std::vector<DegreeOneRow> rows;
  for (std::uint64_t p = 2; p <= bound_prime; ++p) {
    if (!nt::is_prime(p)) continue;
    const Int pz = nt::from_u64(p);
    for (unsigned k = 1; k <= bound_depth; ++k) {
      DegreeOneRow row;
      row.p = pz;
      row.k = k;
      std::uint64_t n = p;
      while (nt::factorial_valuation(n, pz) < k) n += p;
      row.min_factorial = n;
      const PrimePowerModulus m(pz, k);
      if (m.value() + m.value() / pz > nt::from_u64(max_points)) {
        rows.push_back(std::move(row));
        continue;
      }
      OrbitModOptions oo;
      oo.max_points = max_points;
      const ModOrbit orb = orbit_mod(phi, one, m, oo);
      row.orbit_computed = true;
      const HitSet hits = hit_set(orb, zero);
      row.hit_set_nonempty = !hits.is_empty();
      row.first_hit = hits.first().value_or(0);
      Int fact;
      mpz_fac_ui(fact.get_mpz_t(), n);
      const Int idx = fact - 1;
      if (idx < nt::from_u64(hits.threshold())) {
        row.factorial_index_hits = hits.contains(nt::to_u64(idx));
      } else {
        row.factorial_index_hits = hits.residues().contains_class_of(
            nt::to_u64(nt::mod(idx, nt::from_u64(hits.cycle_length()))));
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string to_string(NewtonVerdict v) {
  switch (v) {
    case NewtonVerdict::converges: return "converges";
    case NewtonVerdict::diverges: return "diverges";
    case NewtonVerdict::undecided: return "undecided";
  }
  return "undecided";
}

std::int64_t value_valuation(const QPoly& f, const ProjectivePoint& x, const Int& p) {
  if (x.is_infinity()) return f.degree() > 0 ? kPoleValuation : kRootValuation;
  const Rational v = f(x.as_rational());
  if (v == 0) return kRootValuation;
  return static_cast<std::int64_t>(nt::valuation_unchecked(v.get_num(), p)) -
         static_cast<std::int64_t>(nt::valuation_unchecked(v.get_den(), p));
}

namespace {

PlaceReport real_place(const QPoly& f, const Rational& alpha, const NewtonOptions& opts) {
  PlaceReport r;
  const QPoly df = f.derivative();
  double x = alpha.get_d();
  r.last_value = x;
  r.last_residual = std::fabs(f.evaluate(x));
  for (std::uint64_t j = 0; j < opts.real_iters; ++j) {
    if (r.last_residual < 1e-12) break;
    const double d = df.evaluate(x);
    if (d == 0) {
      r.note = "derivative vanished";
      break;
    }
    x -= f.evaluate(x) / d;
    r.iterations = j + 1;
    r.last_value = x;
    if (!std::isfinite(x)) {
      r.verdict = NewtonVerdict::diverges;
      r.note = "iterate is not finite";
      return r;
    }
    r.last_residual = std::fabs(f.evaluate(x));
  }
  if (r.last_residual < 1e-12) r.verdict = NewtonVerdict::converges;
  return r;
}

bool strictly_increasing_tail(const std::vector<std::int64_t>& v, std::size_t len) {
  if (v.size() < len) return false;
  for (std::size_t i = v.size() - len + 1; i < v.size(); ++i) {
    if (v[i] == kPoleValuation || v[i] <= v[i - 1]) return false;
  }
  return true;
}

PlaceReport padic_place(const QPoly& f, const RationalMap& newton, const Rational& alpha,
                        const Int& p, const NewtonOptions& opts) {
  PlaceReport r;
  r.prime = p;
  ProjectivePoint x(alpha);
  r.valuations.push_back(value_valuation(f, x, p));
  for (std::uint64_t j = 0; j < opts.p_iters && r.valuations.back() != kRootValuation; ++j) {
    ProjectivePoint next = x;
    try {
      next = iterate_point(newton, x, 1, opts.height_bits);
    } catch (const HeightBudgetExceeded&) {
      r.height_exhausted = true;
      break;
    }
    r.step_exponents.push_back(chordal(x, next, p).exponent);
    x = std::move(next);
    r.valuations.push_back(value_valuation(f, x, p));
    r.iterations = j + 1;
  }
  if (r.valuations.back() == kRootValuation) {
    r.verdict = NewtonVerdict::converges;
    r.note = "exact root reached";
    return r;
  }
  const std::size_t w = std::max<std::uint64_t>(3, opts.p_iters / 2);
  std::vector<std::int64_t> steps;
  for (const auto& e : r.step_exponents) steps.push_back(e ? static_cast<std::int64_t>(*e) : kPoleValuation);
  if (strictly_increasing_tail(r.valuations, w + 1) && r.valuations.back() > 0 &&
      strictly_increasing_tail(steps, w)) {
    r.verdict = NewtonVerdict::converges;
    return r;
  }
  const auto& v = r.valuations;
  if (v.size() >= w + 1) {
    const std::size_t half = v.size() / 2;
    const auto first = *std::max_element(v.begin(), v.begin() + half);
    const auto second = *std::max_element(v.begin() + half, v.end());
    if (second <= first) r.verdict = NewtonVerdict::diverges;
  }
  return r;
}

}  // namespace

std::vector<PlaceReport> newton_place_report(const QPoly& f, const Rational& alpha,
                                             std::span<const Int> primes, const NewtonOptions& opts) {
  if (f.degree() < 2) throw Error("Newton explorer needs a polynomial of degree >= 2");
  if (f(alpha) == 0) throw Error("starting point is already a root");
  const RationalMap newton = newton_map(f);
  std::vector<PlaceReport> out;
  out.push_back(real_place(f, alpha, opts));
  for (const auto& p : primes) {
    if (!nt::is_prime(p)) throw Error("not a prime: " + p.get_str());
    out.push_back(padic_place(f, newton, alpha, p, opts));
  }
  for (const auto& w : newton.warnings()) {
    for (auto& r : out) r.note += (r.note.empty() ? "" : "; ") + w;
  }
  return out;
}

}  // namespace dynlg
