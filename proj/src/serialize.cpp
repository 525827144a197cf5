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

#include "dynlg/serialize.hpp"

#include <cstdio>

namespace dynlg {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(std::int64_t v) {
  if (v == kRootValuation) return "inf";
  if (v == kPoleValuation) return "-inf";
  return std::to_string(v);
}
std::string str(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError("missing field", key);
  return j.at(key);
}

Int as_int(const Json& j) {
  if (!j.is_string()) throw ParseError("expected a decimal string", j.dump());
  Int v;
  if (v.set_str(j.get<std::string>(), 10) != 0) throw ParseError("bad integer", j.get<std::string>());
  return v;
}

std::uint64_t as_u64(const Json& j) {
  const Int v = as_int(j);
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw ParseError("out of range", v.get_str());
  return nt::to_u64(v);
}

bool as_bool(const Json& j) {
  if (!j.is_boolean()) throw ParseError("expected a boolean", j.dump());
  return j.get<bool>();
}

const Json& as_array(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array", j.dump());
  return j;
}

Json int_array(const std::vector<Int>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json u64_array(const std::vector<std::uint64_t>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(str(x));
  return a;
}

std::vector<std::uint64_t> u64_vector(const Json& j) {
  std::vector<std::uint64_t> out;
  for (const auto& e : as_array(j)) out.push_back(as_u64(e));
  return out;
}

BinaryForm form_from_json(const Json& j) {
  std::vector<Int> c;
  for (const auto& e : as_array(j)) c.push_back(as_int(e));
  if (c.empty()) throw ParseError("empty form", j.dump());
  return BinaryForm(std::move(c));
}

const char* primality_name(nt::Primality p) {
  switch (p) {
    case nt::Primality::proven: return "proven";
    case nt::Primality::probable: return "probable";
    case nt::Primality::composite: return "composite";
  }
  return "composite";
}

}  // namespace

Json to_json(const ProjectivePoint& x) { return Json::array({x.x1().get_str(), x.x2().get_str()}); }

ProjectivePoint point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected [x1, x2]", j.dump());
  return ProjectivePoint(as_int(j[0]), as_int(j[1]));
}

Json to_json(const PrimePowerModulus& m) {
  return Json{{"p", m.p().get_str()}, {"k", str(std::uint64_t{m.k()})}};
}

PrimePowerModulus modulus_from_json(const Json& j) {
  const std::uint64_t k = as_u64(field(j, "k"));
  if (k == 0 || k > 1024) throw ParseError("bad exponent", std::to_string(k));
  return PrimePowerModulus(as_int(field(j, "p")), static_cast<unsigned>(k));
}

Json to_json(const RationalMap& phi) {
  Json f = Json::array(), g = Json::array();
  for (const auto& c : phi.F().coefficients()) f.push_back(c.get_str());
  for (const auto& c : phi.G().coefficients()) g.push_back(c.get_str());
  Json j{{"F", f},
         {"G", g},
         {"degree", str(std::uint64_t{phi.degree()})},
         {"expression", phi.to_string()},
         {"resultant", phi.resultant().get_str()},
         {"bad_primes_complete", phi.bad_primes_known()}};
  if (phi.bad_primes_known()) j["bad_primes"] = int_array(phi.bad_primes());
  else j["unfactored"] = phi.unfactored().get_str();
  return j;
}

RationalMap map_from_json(const Json& j) {
  return RationalMap(form_from_json(field(j, "F")), form_from_json(field(j, "G")));
}

Json to_json(const ModOrbit& o) {
  Json seq = Json::array();
  for (const auto& r : o.sequence) seq.push_back(Json::array({r.c1().get_str(), r.c2().get_str()}));
  return Json{{"modulus", to_json(o.modulus)},
              {"tail", str(o.tail)},
              {"cycle", str(o.cycle)},
              {"sequence", seq}};
}

ModOrbit mod_orbit_from_json(const Json& j) {
  ModOrbit o{modulus_from_json(field(j, "modulus")), as_u64(field(j, "tail")),
             as_u64(field(j, "cycle")), {}};
  for (const auto& e : as_array(field(j, "sequence"))) {
    if (!e.is_array() || e.size() != 2) throw ParseError("expected [c1, c2]", e.dump());
    o.sequence.emplace_back(o.modulus, as_int(e[0]), as_int(e[1]));
  }
  if (o.cycle == 0 || o.sequence.size() != o.tail + o.cycle) {
    throw ParseError("sequence length differs from tail + cycle", std::to_string(o.sequence.size()));
  }
  return o;
}

Json to_json(const HitSet& h) {
  return Json{{"threshold", str(h.threshold())},
              {"exceptional", u64_array(h.exceptional())},
              {"cycle_length", str(h.cycle_length())},
              {"residues", u64_array(h.residues().residues())}};
}

HitSet hit_set_from_json(const Json& j) {
  return HitSet(as_u64(field(j, "threshold")), u64_vector(field(j, "exceptional")),
                nt::ResidueClassSet(as_u64(field(j, "cycle_length")), u64_vector(field(j, "residues"))));
}

Json to_json(const OrbitSummary& o) {
  Json pts = Json::array();
  for (const auto& x : o.points) pts.push_back(to_json(x));
  Json j{{"start", to_json(o.start)},
         {"status", o.preperiodic() ? "preperiodic" : "truncated"},
         {"steps_done", str(o.steps_done)},
         {"height_exhausted", o.height_exhausted},
         {"points", pts}};
  if (o.preperiodic()) {
    j["tail"] = str(o.tail);
    j["cycle"] = str(o.cycle);
  }
  return j;
}

Json to_json(const nt::Factorization& f) {
  Json fs = Json::array();
  for (const auto& pe : f.factors) {
    fs.push_back(Json{{"prime", pe.prime.get_str()},
                      {"exponent", str(std::uint64_t{pe.exponent})},
                      {"certainty", primality_name(pe.certainty)}});
  }
  return Json{{"value", f.value.get_str()}, {"factors", fs}};
}

Json to_json(const ZsigmondyResult& z) {
  Json rows = Json::array();
  for (const auto& r : z.rows) {
    Json sup = Json::array();
    for (const auto& pe : r.support) {
      sup.push_back(Json{{"prime", pe.prime.get_str()}, {"exponent", str(std::uint64_t{pe.exponent})}});
    }
    rows.push_back(Json{{"m", str(r.m)},
                        {"term_bits", str(r.term_bits)},
                        {"support", sup},
                        {"primitive", int_array(r.primitive)}});
  }
  return Json{{"rows", rows},
              {"warnings", z.warnings},
              {"empirical_threshold", str(z.empirical_threshold)}};
}

Json to_json(const PlaceReport& r) {
  Json j{{"place", r.prime ? r.prime->get_str() : "real"},
         {"verdict", to_string(r.verdict)},
         {"iterations", str(r.iterations)},
         {"note", r.note}};
  if (r.prime) {
    Json v = Json::array(), s = Json::array();
    for (auto x : r.valuations) {
      v.push_back(x == kRootValuation ? "root" : x == kPoleValuation ? "pole" : str(x));
    }
    for (const auto& e : r.step_exponents) s.push_back(e ? str(*e) : "inf");
    j["valuations"] = v;
    j["step_exponents"] = s;
    j["height_exhausted"] = r.height_exhausted;
  } else {
    j["last_value"] = str(r.last_value);
    j["last_residual"] = str(r.last_residual);
  }
  return j;
}

Json to_json(const DegreeOneRow& r) {
  Json j{{"p", r.p.get_str()},
         {"k", str(std::uint64_t{r.k})},
         {"min_factorial", str(r.min_factorial)},
         {"orbit_computed", r.orbit_computed}};
  if (r.orbit_computed) {
    j["first_hit"] = str(r.first_hit);
    j["hit_set_nonempty"] = r.hit_set_nonempty;
    j["factorial_index_hits"] = r.factorial_index_hits;
  }
  return j;
}

namespace {

Json effective_excluded(const DecisionProblem& prob) {
  if (!prob.phi.bad_primes_known()) return Json("unknown");
  std::set<Int> all = prob.excluded;
  all.insert(prob.phi.bad_primes().begin(), prob.phi.bad_primes().end());
  return int_array({all.begin(), all.end()});
}

}  // namespace

Json to_json(const DecisionProblem& prob) {
  Json targets = Json::array();
  for (const auto& z : prob.targets) targets.push_back(to_json(z));
  return Json{{"map", to_json(prob.phi)},
              {"point", to_json(prob.point)},
              {"targets", targets},
              {"exclude_primes", int_array({prob.excluded.begin(), prob.excluded.end()})},
              {"effective_excluded", effective_excluded(prob)},
              {"budgets",
               Json{{"day_steps", str(prob.budgets.day_steps)},
                    {"night_stages", str(prob.budgets.night_stages)},
                    {"height_bits", str(prob.budgets.height_bits)},
                    {"factor_steps", str(prob.budgets.factor_steps)}}}};
}

DecisionProblem problem_from_json(const Json& j) {
  std::vector<ProjectivePoint> targets;
  for (const auto& z : as_array(field(j, "targets"))) targets.push_back(point_from_json(z));
  std::set<Int> excluded;
  for (const auto& p : as_array(field(j, "exclude_primes"))) excluded.insert(as_int(p));
  const Json& b = field(j, "budgets");
  Budgets budgets{as_u64(field(b, "day_steps")), as_u64(field(b, "night_stages")),
                  as_u64(field(b, "height_bits")), as_u64(field(b, "factor_steps"))};
  nt::FactorOptions fo;
  fo.rho_steps = budgets.factor_steps;
  const Json& m = field(j, "map");
  RationalMap phi(form_from_json(field(m, "F")), form_from_json(field(m, "G")), fo);
  return DecisionProblem(std::move(phi), point_from_json(field(j, "point")), std::move(targets),
                         std::move(excluded), budgets);
}

Json certificate_document(const DecisionProblem& prob, const Certificate& cert) {
  Json doc{{"schema", kCertificateSchema},
           {"schema_version", kSchemaVersion},
           {"problem", to_json(prob)},
           {"result", cert.kind()}};
  if (const auto* w = std::get_if<WitnessBody>(&cert.body)) {
    doc["witness"] = Json{{"index", str(w->index)}};
  } else if (const auto* e = std::get_if<EmptyBody>(&cert.body)) {
    Json body{{"finite_orbit", e->finite_orbit}};
    if (e->finite_orbit) {
      body["orbit_tail"] = str(e->orbit_tail);
      body["orbit_cycle"] = str(e->orbit_cycle);
    } else {
      Json mods = Json::array();
      for (std::size_t i = 0; i < e->orbits.size(); ++i) {
        mods.push_back(Json{{"orbit", to_json(e->orbits[i])}, {"hit_set", to_json(e->hit_sets[i])}});
      }
      body["moduli"] = mods;
    }
    doc["empty"] = body;
  } else {
    const auto& x = std::get<ExhaustedBody>(cert.body);
    doc["exhausted"] = Json{{"day_steps_done", str(x.day_steps_done)},
                            {"night_stages_done", str(x.night_stages_done)}};
  }
  Json examined = Json::array(), skipped = Json::array();
  for (const auto& m : cert.meta.examined) examined.push_back(m.to_string());
  for (const auto& s : cert.meta.skipped) {
    skipped.push_back(Json{{"modulus", s.modulus.to_string()}, {"reason", s.reason}});
  }
  doc["metadata"] = Json{{"day_steps_done", str(cert.meta.day_steps_done)},
                         {"day_height_exhausted", cert.meta.day_height_exhausted},
                         {"night_stages_done", str(cert.meta.night_stages_done)},
                         {"examined", examined},
                         {"compacted", cert.meta.compacted},
                         {"skipped", skipped},
                         {"caveats", cert.meta.caveats}};
  return doc;
}

CertificateDocument certificate_from_json(const Json& j) {
  if (!j.is_object() || j.value("schema", "") != kCertificateSchema) {
    throw ParseError("not a certificate document", j.is_object() ? j.value("schema", "") : "");
  }
  if (j.value("schema_version", "") != kSchemaVersion) {
    throw ParseError("unsupported schema version", j.value("schema_version", ""));
  }
  DecisionProblem prob = problem_from_json(field(j, "problem"));
  Certificate cert;
  const std::string kind = field(j, "result").get<std::string>();
  if (kind == "witness") {
    cert.body = WitnessBody{as_u64(field(field(j, "witness"), "index"))};
  } else if (kind == "empty") {
    const Json& e = field(j, "empty");
    EmptyBody body;
    body.finite_orbit = as_bool(field(e, "finite_orbit"));
    if (body.finite_orbit) {
      body.orbit_tail = as_u64(field(e, "orbit_tail"));
      body.orbit_cycle = as_u64(field(e, "orbit_cycle"));
    } else {
      for (const auto& m : as_array(field(e, "moduli"))) {
        body.orbits.push_back(mod_orbit_from_json(field(m, "orbit")));
        body.hit_sets.push_back(hit_set_from_json(field(m, "hit_set")));
      }
    }
    cert.body = std::move(body);
  } else if (kind == "exhausted") {
    const Json& x = field(j, "exhausted");
    cert.body = ExhaustedBody{as_u64(field(x, "day_steps_done")), as_u64(field(x, "night_stages_done"))};
  } else {
    throw ParseError("unknown result kind", kind);
  }
  if (j.contains("metadata")) {
    const Json& m = j.at("metadata");
    cert.meta.day_steps_done = as_u64(field(m, "day_steps_done"));
    cert.meta.day_height_exhausted = as_bool(field(m, "day_height_exhausted"));
    cert.meta.night_stages_done = as_u64(field(m, "night_stages_done"));
    cert.meta.compacted = as_bool(field(m, "compacted"));
    for (const auto& c : as_array(field(m, "caveats"))) cert.meta.caveats.push_back(c.get<std::string>());
  }
  return {std::move(prob), std::move(cert)};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace dynlg
