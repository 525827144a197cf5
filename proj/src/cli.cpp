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

#include "dynlg/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "dynlg/localglobal.hpp"
#include "dynlg/serialize.hpp"
#include "dynlg/zsigmondy.hpp"

namespace dynlg::cli {

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, ',')) {
    cur.erase(0, cur.find_first_not_of(" \t"));
    cur.erase(cur.find_last_not_of(" \t") + 1);
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

Int parse_int(const std::string& s) {
  Int v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("not an integer", s);
  return v;
}

std::set<Int> parse_primes(const std::string& s) {
  std::set<Int> out;
  for (const auto& t : split(s)) {
    Int p = parse_int(t);
    if (p < 2 || !nt::is_prime(p)) throw ParseError("not a prime", t);
    out.insert(std::move(p));
  }
  return out;
}

PrimePowerModulus parse_modulus(const std::string& s) {
  const auto caret = s.find('^');
  const Int p = parse_int(s.substr(0, caret));
  unsigned k = 1;
  if (caret != std::string::npos) {
    const Int e = parse_int(s.substr(caret + 1));
    if (e < 1 || e > 1024) throw ParseError("bad modulus exponent", s);
    k = static_cast<unsigned>(e.get_ui());
  }
  if (p < 2 || !nt::is_prime(p)) throw ParseError("modulus base is not prime", s);
  return PrimePowerModulus(p, k);
}

Json header(const std::string& kind) {
  return Json{{"schema", "dynlg." + kind}, {"schema_version", kSchemaVersion}};
}

// Left-aligned ASCII columns separated by two spaces.
void table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()));
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << line << "\n";
  }
}

std::string join(const std::vector<std::string>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string join_ints(const std::vector<Int>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.get_str());
  return join(s);
}

struct Options {
  std::string format;
  std::string map, point, targets, exclude, modulus, beta, gamma, poly, alpha, primes, cert;
  std::uint64_t day_steps = 4096, night_stages = 12, height_bits = kDefaultHeightBits;
  std::uint64_t factor_steps = 4'000'000, max_steps = 64, mmax = 10;
  std::uint64_t real_iters = 100, p_iters = 12, bound_prime = 50;
  unsigned period = 1, kmax = 2, bound_depth = 5;
  int jobs = 0;
};

nt::FactorOptions factor_opts(const Options& o) {
  nt::FactorOptions f;
  f.rho_steps = o.factor_steps;
  return f;
}

int cmd_orbit(const Options& o, bool json, std::ostream& out) {
  const RationalMap phi = parse_map(o.map, factor_opts(o));
  const ProjectivePoint x = parse_point(o.point);
  if (!o.modulus.empty()) {
    const ModOrbit orb = orbit_mod(phi, x, parse_modulus(o.modulus));
    if (json) {
      Json doc = header("orbit");
      doc["orbit_mod"] = to_json(orb);
      out << dump(doc);
    } else {
      out << "modulus " << orb.modulus.to_string() << "  tail " << orb.tail << "  cycle " << orb.cycle << "\n";
      std::vector<std::vector<std::string>> rows{{"n", "point"}};
      for (std::size_t i = 0; i < orb.sequence.size(); ++i) {
        rows.push_back({std::to_string(i), orb.sequence[i].to_string()});
      }
      table(out, rows);
    }
    return 0;
  }
  const OrbitSummary s = orbit_rational(phi, x, o.max_steps, o.height_bits);
  if (json) {
    Json doc = header("orbit");
    doc["orbit"] = to_json(s);
    out << dump(doc);
  } else {
    out << "status " << (s.preperiodic() ? "preperiodic" : "truncated");
    if (s.preperiodic()) out << "  tail " << s.tail << "  cycle " << s.cycle;
    if (s.height_exhausted) out << "  (height budget reached)";
    out << "\n";
    std::vector<std::vector<std::string>> rows{{"n", "point"}};
    for (std::size_t i = 0; i < s.points.size(); ++i) rows.push_back({std::to_string(i), s.points[i].to_string()});
    table(out, rows);
  }
  return 0;
}

int cmd_badprimes(const Options& o, bool json, std::ostream& out) {
  const RationalMap phi = parse_map(o.map, factor_opts(o));
  if (json) {
    Json doc = header("badprimes");
    doc["map"] = to_json(phi);
    out << dump(doc);
  } else {
    out << "map        " << phi.to_string() << "\n";
    out << "resultant  " << phi.resultant().get_str() << "\n";
    if (phi.bad_primes_known()) out << "bad primes " << (phi.bad_primes().empty() ? "none" : join_ints(phi.bad_primes())) << "\n";
    else out << "bad primes incomplete; unfactored " << phi.unfactored().get_str() << "\n";
  }
  return 0;
}

int cmd_periodic(const Options& o, bool json, std::ostream& out) {
  const RationalMap phi = parse_map(o.map, factor_opts(o));
  DynatomicOptions dopt;
  dopt.factor = factor_opts(o);
  const DynatomicForm dyn = dynatomic(phi, o.period, dopt);
  const auto pts = rational_periodic_points(phi, o.period, dopt);
  if (json) {
    Json doc = header("periodic");
    Json list = Json::array();
    for (const auto& p : pts) {
      list.push_back(Json{{"point", to_json(p.point)}, {"exact_period", std::to_string(p.exact_period)}});
    }
    doc["period"] = std::to_string(o.period);
    doc["dynatomic"] = dyn.form.to_string();
    doc["dynatomic_degree"] = std::to_string(dyn.form.degree());
    doc["points"] = list;
    out << dump(doc);
  } else {
    out << "dynatomic form  " << dyn.form.to_string() << "\n";
    std::vector<std::vector<std::string>> rows{{"point", "exact period"}};
    for (const auto& p : pts) rows.push_back({p.point.to_string(), std::to_string(p.exact_period)});
    table(out, rows);
  }
  return 0;
}

int cmd_poltype(const Options& o, bool json, std::ostream& out) {
  const RationalMap phi = parse_map(o.map, factor_opts(o));
  const ProjectivePoint g = parse_point(o.gamma);
  const auto k = is_polynomial_type(phi, g, o.kmax);
  if (json) {
    Json doc = header("poltype");
    doc["gamma"] = to_json(g);
    doc["polynomial_type"] = k.has_value();
    if (k) doc["k"] = std::to_string(*k);
    out << dump(doc);
  } else {
    out << "gamma " << g.to_string() << ": " << (k ? "polynomial type, k = " + std::to_string(*k) : "not polynomial type") << "\n";
  }
  return 0;
}

int cmd_zsigmondy(const Options& o, bool json, std::ostream& out) {
  const RationalMap phi = parse_map(o.map, factor_opts(o));
  ZsigmondyOptions zo;
  zo.height_bits = o.height_bits;
  zo.factor = factor_opts(o);
  zo.jobs = o.jobs;
  const ZsigmondyResult z = primitive_divisors(phi, parse_point(o.beta), parse_point(o.gamma), o.mmax,
                                               parse_primes(o.exclude), zo);
  if (json) {
    Json doc = header("zsigmondy");
    doc["result"] = to_json(z);
    out << dump(doc);
    return 0;
  }
  std::vector<std::vector<std::string>> rows{{"m", "bits", "support", "primitive"}};
  for (const auto& r : z.rows) {
    std::vector<std::string> sup;
    for (const auto& pe : r.support) sup.push_back(pe.prime.get_str() + (pe.exponent > 1 ? "^" + std::to_string(pe.exponent) : ""));
    rows.push_back({std::to_string(r.m), std::to_string(r.term_bits), sup.empty() ? "-" : join(sup),
                    r.primitive.empty() ? "-" : "{" + join_ints(r.primitive) + "}"});
  }
  table(out, rows);
  for (const auto& w : z.warnings) out << "warning: " << w << "\n";
  out << "empirical threshold " << z.empirical_threshold << "\n";
  return 0;
}

int cmd_decide(const Options& o, bool json, std::ostream& out) {
  Budgets b{o.day_steps, o.night_stages, o.height_bits, o.factor_steps};
  std::vector<ProjectivePoint> targets;
  for (const auto& t : split(o.targets)) targets.push_back(parse_point(t));
  if (targets.empty()) throw ParseError("no targets given", o.targets);
  const DecisionProblem prob(parse_map(o.map, factor_opts(o)), parse_point(o.point), std::move(targets),
                             parse_primes(o.exclude), b);
  EngineOptions eo;
  eo.jobs = o.jobs;
  const Certificate cert = decide(prob, eo);
  if (json) {
    out << dump(certificate_document(prob, cert));
  } else {
    out << "result " << cert.kind() << "\n";
    if (const auto* w = std::get_if<WitnessBody>(&cert.body)) out << "witness index " << w->index << "\n";
    if (const auto* e = std::get_if<EmptyBody>(&cert.body)) {
      if (e->finite_orbit) {
        out << "finite orbit  tail " << e->orbit_tail << "  cycle " << e->orbit_cycle << "\n";
      } else {
        std::vector<std::vector<std::string>> rows{{"modulus", "tail", "cycle", "hit set"}};
        for (std::size_t i = 0; i < e->orbits.size(); ++i) {
          rows.push_back({e->orbits[i].modulus.to_string(), std::to_string(e->orbits[i].tail),
                          std::to_string(e->orbits[i].cycle), e->hit_sets[i].is_empty() ? "empty" : "nonempty"});
        }
        table(out, rows);
      }
    }
    out << "day steps " << cert.meta.day_steps_done << "  night stages " << cert.meta.night_stages_done
        << "  moduli examined " << cert.meta.examined.size() << "  skipped " << cert.meta.skipped.size() << "\n";
    for (const auto& c : cert.meta.caveats) out << "caveat: " << c << "\n";
  }
  return cert.is_exhausted() ? 2 : 0;
}

int cmd_verify(const Options& o, bool json, std::ostream& out) {
  std::string text;
  if (o.cert == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(o.cert);
    if (!in) throw ParseError("cannot read certificate file", o.cert);
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  VerifyResult v;
  std::string kind = "unknown";
  try {
    const CertificateDocument doc = certificate_from_json(Json::parse(text));
    kind = doc.certificate.kind();
    v = verify_certificate(doc.problem, doc.certificate);
  } catch (const std::exception& e) {
    v = {false, std::string("malformed certificate: ") + e.what()};
  }
  if (json) {
    Json doc = header("verify");
    doc["verdict"] = v.ok;
    doc["result"] = kind;
    doc["reason"] = v.reason;
    out << dump(doc);
  } else {
    out << "verdict " << (v.ok ? "accepted" : "rejected") << "  (" << kind << ")\n";
    if (!v.reason.empty()) out << "reason  " << v.reason << "\n";
  }
  return v.ok ? 0 : 1;
}

int cmd_newton(const Options& o, bool json, std::ostream& out) {
  const QPoly f = parse_polynomial(o.poly);
  const ProjectivePoint a = parse_point(o.alpha);
  if (a.is_infinity()) throw ParseError("starting point must be finite", o.alpha);
  const std::set<Int> ps = parse_primes(o.primes);
  const std::vector<Int> primes(ps.begin(), ps.end());
  NewtonOptions no;
  no.real_iters = o.real_iters;
  no.p_iters = o.p_iters;
  no.height_bits = o.height_bits;
  const auto reports = newton_place_report(f, a.as_rational(), primes, no);
  if (json) {
    Json doc = header("newton");
    doc["polynomial"] = f.to_string();
    doc["alpha"] = to_json(a);
    Json places = Json::array();
    for (const auto& r : reports) places.push_back(to_json(r));
    doc["places"] = places;
    out << dump(doc);
    return 0;
  }
  std::vector<std::vector<std::string>> rows{{"place", "verdict", "iterations", "evidence"}};
  for (const auto& r : reports) {
    std::string ev;
    if (!r.prime) {
      std::ostringstream s;
      s.imbue(std::locale::classic());
      s << "|f(x)| = " << r.last_residual << " at x = " << r.last_value;
      ev = s.str();
    } else {
      std::vector<std::string> v;
      for (auto x : r.valuations) {
        v.push_back(x == kRootValuation ? "inf" : x == kPoleValuation ? "-inf" : std::to_string(x));
      }
      ev = "v(f(x_j)) = " + join(v, " ");
    }
    if (!r.note.empty()) ev += "  [" + r.note + "]";
    rows.push_back({r.prime ? r.prime->get_str() : "real", to_string(r.verdict), std::to_string(r.iterations), ev});
  }
  table(out, rows);
  return 0;
}

int cmd_demo(const Options& o, bool json, std::ostream& out) {
  const auto rows = degree_one_demo(o.bound_prime, o.bound_depth);
  if (json) {
    Json doc = header("demo-degree-one");
    doc["map"] = "z + 1";
    doc["point"] = "1";
    doc["targets"] = Json::array({"0"});
    Json list = Json::array();
    for (const auto& r : rows) list.push_back(to_json(r));
    doc["rows"] = list;
    out << dump(doc);
    return 0;
  }
  out << "phi(z) = z + 1, P = 1, Z = {0}; the orbit never reaches 0 over Q\n";
  std::vector<std::vector<std::string>> t{{"p", "k", "min n: p^k | n!", "first hit", "hit set", "n!-1 hits"}};
  for (const auto& r : rows) {
    t.push_back({r.p.get_str(), std::to_string(r.k), std::to_string(r.min_factorial), r.orbit_computed ? std::to_string(r.first_hit) : "-",
                 !r.orbit_computed ? "-" : r.hit_set_nonempty ? "nonempty" : "empty",
                 !r.orbit_computed ? "-" : r.factorial_index_hits ? "yes" : "no"});
  }
  table(out, t);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Orbit intersection over Q: witnesses, modular certificates and supporting computations"};
  app.require_subcommand(1);
  Options o;
  auto fmt = [&](CLI::App* s) { s->add_option("--format", o.format, "json or table")->check(CLI::IsMember({"json", "table"})); };
  auto budgets = [&](CLI::App* s) {
    s->add_option("--height-bits", o.height_bits)->check(CLI::PositiveNumber);
    s->add_option("--factor-steps", o.factor_steps)->check(CLI::PositiveNumber);
  };

  auto* orbit = app.add_subcommand("orbit", "Exact orbit, or orbit modulo a prime power");
  orbit->add_option("--map", o.map)->required();
  orbit->add_option("--point", o.point)->required();
  orbit->add_option("--modulus", o.modulus, "p or p^k");
  orbit->add_option("--max-steps", o.max_steps)->check(CLI::PositiveNumber);
  budgets(orbit);
  fmt(orbit);

  auto* bad = app.add_subcommand("badprimes", "Resultant and primes of bad reduction");
  bad->add_option("--map", o.map)->required();
  budgets(bad);
  fmt(bad);

  auto* periodic = app.add_subcommand("periodic", "Dynatomic form and rational points of exact period n");
  periodic->add_option("--map", o.map)->required();
  periodic->add_option("--period", o.period)->required()->check(CLI::PositiveNumber);
  budgets(periodic);
  fmt(periodic);

  auto* poltype = app.add_subcommand("poltype", "Totally ramified fixed point test for phi^k");
  poltype->add_option("--map", o.map)->required();
  poltype->add_option("--gamma", o.gamma)->required();
  poltype->add_option("--kmax", o.kmax)->check(CLI::PositiveNumber);
  budgets(poltype);
  fmt(poltype);

  auto* zsig = app.add_subcommand("zsigmondy", "Primitive prime divisors of phi^m(beta) - gamma");
  zsig->add_option("--map", o.map)->required();
  zsig->add_option("--beta", o.beta)->required();
  zsig->add_option("--gamma", o.gamma)->required();
  zsig->add_option("--mmax", o.mmax)->required()->check(CLI::PositiveNumber);
  zsig->add_option("--exclude-primes", o.exclude, "comma-separated primes");
  zsig->add_option("--jobs", o.jobs)->check(CLI::NonNegativeNumber);
  budgets(zsig);
  fmt(zsig);

  auto* dec = app.add_subcommand("decide", "Decide whether the orbit of a point meets a target set");
  dec->add_option("--map", o.map)->required();
  dec->add_option("--point", o.point)->required();
  dec->add_option("--targets", o.targets, "comma-separated points")->required();
  dec->add_option("--exclude-primes", o.exclude, "comma-separated primes");
  dec->add_option("--day-steps", o.day_steps)->check(CLI::PositiveNumber);
  dec->add_option("--night-stages", o.night_stages)->check(CLI::PositiveNumber);
  dec->add_option("--jobs", o.jobs)->check(CLI::NonNegativeNumber);
  budgets(dec);
  fmt(dec);

  auto* ver = app.add_subcommand("verify", "Recheck a certificate document");
  ver->add_option("--cert", o.cert, "path, or - for standard input")->required();
  fmt(ver);

  auto* newton = app.add_subcommand("newton", "Newton iteration place by place");
  newton->add_option("--poly", o.poly)->required();
  newton->add_option("--alpha", o.alpha)->required();
  newton->add_option("--primes", o.primes, "comma-separated primes");
  newton->add_option("--real-iters", o.real_iters)->check(CLI::PositiveNumber);
  newton->add_option("--p-iters", o.p_iters)->check(CLI::PositiveNumber);
  newton->add_option("--height-bits", o.height_bits)->check(CLI::PositiveNumber);
  fmt(newton);

  auto* demo = app.add_subcommand("demo-degree-one", "Local hits without a global hit for z + 1");
  demo->add_option("--bound-prime", o.bound_prime)->check(CLI::PositiveNumber);
  demo->add_option("--bound-depth", o.bound_depth)->check(CLI::PositiveNumber);
  fmt(demo);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  const bool json_default = name == "decide" || name == "verify";
  const bool json = o.format.empty() ? json_default : o.format == "json";
  try {
    if (sub == orbit) return cmd_orbit(o, json, out);
    if (sub == bad) return cmd_badprimes(o, json, out);
    if (sub == periodic) return cmd_periodic(o, json, out);
    if (sub == poltype) return cmd_poltype(o, json, out);
    if (sub == zsig) return cmd_zsigmondy(o, json, out);
    if (sub == dec) return cmd_decide(o, json, out);
    if (sub == ver) return cmd_verify(o, json, out);
    if (sub == newton) return cmd_newton(o, json, out);
    return cmd_demo(o, json, out);
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (json) {
      Json doc = header("error");
      doc["error"] = e.what();
      doc["token"] = e.token();
      out << dump(doc);
    }
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    if (json) {
      Json doc = header("error");
      doc["error"] = e.what();
      out << dump(doc);
    }
    return 1;
  }
}

}  // namespace dynlg::cli
