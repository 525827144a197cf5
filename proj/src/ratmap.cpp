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

#include "dynlg/ratmap.hpp"

#include <algorithm>
#include <sstream>

namespace dynlg {

// ---------------------------------------------------------------------------
// BinaryForm

BinaryForm::BinaryForm(std::vector<Int> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw Error("binary form needs at least one coefficient");
}

bool BinaryForm::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](const Int& c) { return c == 0; });
}

Int BinaryForm::content() const {
  Int g = 0;
  for (const auto& c : c_) g = gcd(g, c);
  return g;
}

BinaryForm BinaryForm::primitive() const {
  const Int g = content();
  if (g == 0) return *this;
  std::vector<Int> out = c_;
  for (auto& c : out) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  auto lead = std::find_if(out.rbegin(), out.rend(), [](const Int& c) { return c != 0; });
  if (*lead < 0) {
    for (auto& c : out) c = -c;
  }
  return BinaryForm(std::move(out));
}

BinaryForm BinaryForm::scaled(const Int& s) const {
  std::vector<Int> out = c_;
  for (auto& c : out) c *= s;
  return BinaryForm(std::move(out));
}

BinaryForm BinaryForm::times_x() const {
  std::vector<Int> out;
  out.reserve(c_.size() + 1);
  out.push_back(0);
  out.insert(out.end(), c_.begin(), c_.end());
  return BinaryForm(std::move(out));
}

BinaryForm BinaryForm::times_y() const {
  std::vector<Int> out = c_;
  out.push_back(0);
  return BinaryForm(std::move(out));
}

Int BinaryForm::operator()(const Int& x, const Int& y) const {
  // Homogeneous Horner: r <- r*x + c_i*y^(d-i).
  Int acc = c_.back(), ypow = 1;
  for (std::size_t i = c_.size() - 1; i-- > 0;) {
    ypow *= y;
    acc = acc * x + c_[i] * ypow;
  }
  return acc;
}

Int BinaryForm::eval_mod(const Int& x, const Int& y, const Int& m) const {
  Int acc = nt::mod(c_.back(), m), ypow = 1;
  for (std::size_t i = c_.size() - 1; i-- > 0;) {
    ypow = ypow * y % m;
    acc = (acc * x + c_[i] * ypow) % m;
  }
  return nt::mod(acc, m);
}

QPoly BinaryForm::dehomogenize() const {
  std::vector<Rational> q;
  q.reserve(c_.size());
  for (const auto& c : c_) q.emplace_back(c);
  return QPoly(std::move(q));
}

std::string BinaryForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  const unsigned d = degree();
  for (unsigned i = d + 1; i-- > 0;) {
    const Int& c = c_[i];
    if (c == 0) continue;
    const Int mag = abs(c);
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    const bool has_var = d > 0;
    if (mag != 1 || !has_var) os << mag.get_str();
    if (i > 0) os << "X" << (i > 1 ? "^" + std::to_string(i) : "");
    if (d - i > 0) os << "Y" << (d - i > 1 ? "^" + std::to_string(d - i) : "");
  }
  return first ? "0" : os.str();
}

BinaryForm operator+(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree() != b.degree()) throw Error("adding forms of different degree");
  std::vector<Int> out = a.c_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b.c_[i];
  return BinaryForm(std::move(out));
}

BinaryForm operator-(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree() != b.degree()) throw Error("subtracting forms of different degree");
  std::vector<Int> out = a.c_;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.c_[i];
  return BinaryForm(std::move(out));
}

BinaryForm operator*(const BinaryForm& a, const BinaryForm& b) {
  std::vector<Int> out(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] != 0) out[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return BinaryForm(std::move(out));
}

BinaryForm pow(const BinaryForm& f, unsigned e) {
  BinaryForm result(std::vector<Int>{Int(1)}), base = f;
  while (e) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

BinaryForm substitute(const BinaryForm& f, const BinaryForm& a, const BinaryForm& b) {
  if (a.degree() != b.degree()) throw Error("substitution needs forms of equal degree");
  const unsigned d = f.degree();
  std::vector<BinaryForm> apow{BinaryForm(std::vector<Int>{Int(1)})}, bpow = apow;
  for (unsigned i = 1; i <= d; ++i) {
    apow.push_back(apow.back() * a);
    bpow.push_back(bpow.back() * b);
  }
  BinaryForm acc = BinaryForm::zero(d * a.degree());
  for (unsigned i = 0; i <= d; ++i) {
    if (f[i] == 0) continue;
    acc = acc + (apow[i] * bpow[d - i]).scaled(f[i]);
  }
  return acc;
}

bool proportional(const BinaryForm& a, const BinaryForm& b) {
  if (a.degree() != b.degree() || a.is_zero() || b.is_zero()) return false;
  std::size_t i = 0;
  while (a[i] == 0) ++i;
  if (b[i] == 0) return false;
  for (std::size_t j = 0; j <= a.degree(); ++j) {
    if (a[j] * b[i] != b[j] * a[i]) return false;
  }
  return true;
}

namespace {

BinaryForm form_from_rationals(const std::vector<Rational>& q, std::size_t size) {
  Int l = 1;
  for (const auto& c : q) l = lcm(l, c.get_den());
  std::vector<Int> out(size);
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = q[i].get_num() * (l / q[i].get_den());
  return BinaryForm(std::move(out));
}

}  // namespace

std::optional<BinaryForm> divide_exact(const BinaryForm& num, const BinaryForm& den) {
  if (den.is_zero()) throw Error("division by the zero form");
  if (num.degree() < den.degree()) return std::nullopt;
  const auto [q, r] = divmod(num.dehomogenize(), den.dehomogenize());
  const unsigned qdeg = num.degree() - den.degree();
  if (!r.is_zero() || q.degree() > static_cast<int>(qdeg)) return std::nullopt;
  if (q.is_zero()) return num.is_zero() ? std::optional(BinaryForm::zero(qdeg)) : std::nullopt;
  return form_from_rationals(q.coefficients(), qdeg + 1).primitive();
}

Int resultant(const BinaryForm& f, const BinaryForm& g) {
  if (f.degree() != g.degree()) throw Error("resultant needs forms of equal degree");
  const std::size_t d = f.degree();
  if (d == 0) return 1;
  const std::size_t n = 2 * d;
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n, Int(0)));
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t j = 0; j <= d; ++j) {
      m[r][r + j] = f[d - j];
      m[d + r][r + j] = g[d - j];
    }
  }
  // Bareiss elimination.
  int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// RationalMap

RationalMap::RationalMap(BinaryForm f, BinaryForm g, const nt::FactorOptions& opts)
    : f_(std::move(f)), g_(std::move(g)) {
  if (f_.degree() != g_.degree()) throw Error("map forms must have equal degree");
  if (f_.degree() < 1) throw Error("map must have degree at least 1");
  const Int content = gcd(f_.content(), g_.content());
  if (content == 0) throw Error("degenerate map");
  // Joint scaling: divide by the common content, then fix the sign of G.
  Int scale = content;
  if (!g_.is_zero()) {
    auto lead = std::find_if(g_.coefficients().rbegin(), g_.coefficients().rend(),
                             [](const Int& c) { return c != 0; });
    if (*lead < 0) scale = -scale;
  }
  std::vector<Int> fc = f_.coefficients(), gc = g_.coefficients();
  for (auto& c : fc) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());
  for (auto& c : gc) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), scale.get_mpz_t());
  f_ = BinaryForm(std::move(fc));
  g_ = BinaryForm(std::move(gc));

  res_ = dynlg::resultant(f_, g_);
  if (res_ == 0) throw Error("degenerate map: F and G share a common factor");
  try {
    for (const auto& pe : nt::factorize(abs(res_), opts).factors) bad_.push_back(pe.prime);
  } catch (const FactorizationBudgetExceeded&) {
    bad_.clear();
    unfactored_ = abs(res_);
  }
}

bool RationalMap::has_good_reduction(const Int& p) const {
  return !mpz_divisible_p(res_.get_mpz_t(), p.get_mpz_t());
}

const std::vector<Int>& RationalMap::bad_primes() const {
  if (!bad_primes_known()) throw FactorizationBudgetExceeded(unfactored_);
  return bad_;
}

std::string RationalMap::to_string() const {
  const QPoly num = f_.dehomogenize(), den = g_.dehomogenize();
  if (den == QPoly::constant(1)) return num.to_string();
  std::string n = num.to_string(), d = den.to_string();
  if (n.find(' ') != std::string::npos) n = "(" + n + ")";
  const bool atom = d.find_first_not_of("0123456789") == std::string::npos ||
                    (d[0] == 'z' && d.find(' ') == std::string::npos);
  if (!atom) d = "(" + d + ")";
  return n + "/" + d;
}

RationalMap map_from_function(const RationalFunction& rf, const nt::FactorOptions& opts) {
  const int d = std::max(rf.num.degree(), rf.den.degree());
  if (d <= 0) throw Error("not a rational map: expression is constant");
  Int l = 1;
  for (const auto& c : rf.num.coefficients()) l = lcm(l, c.get_den());
  for (const auto& c : rf.den.coefficients()) l = lcm(l, c.get_den());
  std::vector<Int> fc(d + 1), gc(d + 1);
  for (std::size_t i = 0; i < rf.num.coefficients().size(); ++i) {
    const Rational& c = rf.num.coefficients()[i];
    fc[i] = c.get_num() * (l / c.get_den());
  }
  for (std::size_t i = 0; i < rf.den.coefficients().size(); ++i) {
    const Rational& c = rf.den.coefficients()[i];
    gc[i] = c.get_num() * (l / c.get_den());
  }
  return RationalMap(BinaryForm(std::move(fc)), BinaryForm(std::move(gc)), opts);
}

RationalMap parse_map(std::string_view expr, const nt::FactorOptions& opts) {
  return map_from_function(parse_rational_function(std::string(expr)), opts);
}

ProjectivePoint evaluate(const RationalMap& phi, const ProjectivePoint& x) {
  return ProjectivePoint(phi.F()(x.x1(), x.x2()), phi.G()(x.x1(), x.x2()));
}

ResiduePoint evaluate_mod(const RationalMap& phi, const ResiduePoint& x) {
  const PrimePowerModulus& m = x.modulus();
  if (!phi.has_good_reduction(m.p())) throw BadReduction(m.p());
  return ResiduePoint(m, phi.F().eval_mod(x.c1(), x.c2(), m.value()),
                      phi.G().eval_mod(x.c1(), x.c2(), m.value()));
}

ProjectivePoint iterate_point(const RationalMap& phi, const ProjectivePoint& x, std::uint64_t n,
                              std::uint64_t height_bits) {
  ProjectivePoint cur = x;
  for (std::uint64_t i = 0; i < n; ++i) {
    ProjectivePoint next = evaluate(phi, cur);
    const std::uint64_t bits = std::max(mpz_sizeinbase(next.x1().get_mpz_t(), 2),
                                        mpz_sizeinbase(next.x2().get_mpz_t(), 2));
    if (bits > height_bits) throw HeightBudgetExceeded(i, bits);
    cur = std::move(next);
  }
  return cur;
}

QPoly parse_polynomial(std::string_view text) {
  const RationalFunction rf = parse_rational_function(std::string(text));
  if (rf.den.degree() != 0) throw ParseError("not a polynomial", std::string(text));
  const Rational inv = 1 / rf.den.coefficients()[0];
  return rf.num * QPoly::constant(inv);
}

RationalMap newton_map(const QPoly& f) {
  if (f.degree() < 1) throw Error("Newton map of a constant polynomial is undefined");
  if (f.degree() == 1) throw Error("Newton map of a linear polynomial is constant");
  const QPoly df = f.derivative();
  QPoly num = QPoly::z() * df - f, den = df;
  const QPoly g = gcd(f, df);
  const bool squarefree = g.degree() == 0;
  if (!squarefree) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  RationalMap phi = map_from_function({num, den});
  if (!squarefree) {
    phi.add_warning("f is not squarefree; common factor " + g.to_string() + " removed");
  }
  return phi;
}

RationalMap newton_map(std::string_view f) { return newton_map(parse_polynomial(f)); }

namespace {

// phi composed with (fp : gp), jointly primitive.
std::pair<BinaryForm, BinaryForm> compose_step(const RationalMap& phi, const BinaryForm& fp,
                                               const BinaryForm& gp) {
  std::vector<Int> a = substitute(phi.F(), fp, gp).coefficients();
  std::vector<Int> b = substitute(phi.G(), fp, gp).coefficients();
  Int c = 0;
  for (const auto& v : a) c = gcd(c, v);
  for (const auto& v : b) c = gcd(c, v);
  if (c > 1) {
    for (auto& v : a) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    for (auto& v : b) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
  }
  return {BinaryForm(std::move(a)), BinaryForm(std::move(b))};
}

}  // namespace

std::pair<BinaryForm, BinaryForm> iterate_forms(const RationalMap& phi, unsigned n) {
  std::pair<BinaryForm, BinaryForm> forms{BinaryForm(std::vector<Int>{Int(0), Int(1)}),
                                          BinaryForm(std::vector<Int>{Int(1), Int(0)})};
  for (unsigned i = 0; i < n; ++i) forms = compose_step(phi, forms.first, forms.second);
  return forms;
}

namespace {

void check_work(const RationalMap& phi, unsigned n, const DynatomicOptions& opts) {
  Int dn;
  mpz_ui_pow_ui(dn.get_mpz_t(), phi.degree(), n);
  if (dn > nt::from_u64(opts.max_degree)) {
    throw Error("work limit: deg^n = " + dn.get_str() + " exceeds " +
                std::to_string(opts.max_degree));
  }
}

BinaryForm period_form_of(const std::pair<BinaryForm, BinaryForm>& forms) {
  return forms.first.times_y() - forms.second.times_x();
}

}  // namespace

std::optional<unsigned> is_polynomial_type(const RationalMap& phi, const ProjectivePoint& gamma,
                                           unsigned k_max, const DynatomicOptions& opts) {
  std::pair<BinaryForm, BinaryForm> forms{phi.F(), phi.G()};
  ProjectivePoint image = gamma;
  std::uint64_t dk = 1;
  for (unsigned k = 1; k <= k_max; ++k) {
    dk *= phi.degree();
    if (dk > opts.max_degree) break;
    if (k > 1) forms = compose_step(phi, forms.first, forms.second);
    image = evaluate(phi, image);
    if (image != gamma) continue;
    // Fiber of phi^k over gamma: g2*F_k - g1*G_k must be a multiple of
    // (g2 X - g1 Y)^(d^k).
    const BinaryForm fiber = forms.first.scaled(gamma.x2()) - forms.second.scaled(gamma.x1());
    const BinaryForm line(std::vector<Int>{-gamma.x1(), gamma.x2()});
    if (proportional(fiber, pow(line, static_cast<unsigned>(dk)))) return k;
  }
  return std::nullopt;
}

BinaryForm period_form(const RationalMap& phi, unsigned n) {
  return period_form_of(iterate_forms(phi, n));
}

std::uint64_t dynatomic_degree(std::uint64_t d, unsigned n) {
  std::int64_t total = n == 1 ? 1 : 0;
  for (std::uint64_t e : nt::divisors(n)) {
    std::int64_t de = 1;
    for (std::uint64_t i = 0; i < e; ++i) de *= static_cast<std::int64_t>(d);
    total += nt::mobius(n / e) * de;
  }
  return static_cast<std::uint64_t>(total);
}

DynatomicForm dynatomic(const RationalMap& phi, unsigned n, const DynatomicOptions& opts) {
  if (n < 1) throw Error("dynatomic needs n >= 1");
  check_work(phi, n, opts);
  std::vector<std::pair<BinaryForm, BinaryForm>> iterates;
  iterates.reserve(n + 1);
  iterates.push_back(iterate_forms(phi, 0));
  for (unsigned i = 1; i <= n; ++i) {
    iterates.push_back(compose_step(phi, iterates.back().first, iterates.back().second));
  }
  BinaryForm num(std::vector<Int>{Int(1)}), den(std::vector<Int>{Int(1)});
  for (std::uint64_t e : nt::divisors(n)) {
    const int mu = nt::mobius(n / e);
    if (mu == 0) continue;
    const BinaryForm pe = period_form_of(iterates[e]);
    if (pe.is_zero()) {
      throw Error("period form vanishes: phi^" + std::to_string(e) + " is the identity");
    }
    (mu > 0 ? num : den) = (mu > 0 ? num : den) * pe.primitive();
  }
  auto q = divide_exact(num, den);
  if (!q) throw Error("dynatomic division failed");
  if (q->degree() != dynatomic_degree(phi.degree(), n)) throw Error("dynatomic division failed");
  return {n, *q};
}

namespace {

std::vector<Int> all_divisors(const Int& n, const DynatomicOptions& opts) {
  const nt::Factorization fac = nt::factorize(abs(n), opts.factor);
  std::vector<Int> out{Int(1)};
  for (const auto& pe : fac.factors) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (unsigned e = 1; e <= pe.exponent; ++e) {
      pk *= pe.prime;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
      if (out.size() > opts.max_candidates) throw Error("rational root search: too many divisors");
    }
  }
  return out;
}

}  // namespace

std::vector<ProjectivePoint> rational_roots(const BinaryForm& form, const DynatomicOptions& opts) {
  if (form.is_zero()) throw Error("every point is a root of the zero form");
  const unsigned d = form.degree();
  std::vector<ProjectivePoint> roots;
  unsigned lo = 0, hi = d;
  while (form[lo] == 0) ++lo;
  while (form[hi] == 0) --hi;
  if (lo > 0) roots.push_back(ProjectivePoint::affine(0));
  if (hi < d) roots.push_back(ProjectivePoint::infinity());
  if (hi > lo) {
    const std::vector<Int> nums = all_divisors(form[lo], opts);
    const std::vector<Int> dens = all_divisors(form[hi], opts);
    if (static_cast<double>(nums.size()) * dens.size() > static_cast<double>(opts.max_candidates)) {
      throw Error("rational root search: too many candidates");
    }
    for (const Int& b : dens) {
      for (const Int& a : nums) {
        if (gcd(a, b) != 1) continue;
        for (int s : {1, -1}) {
          const Int num = s * a;
          if (form(num, b) == 0) roots.emplace_back(num, b);
        }
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::optional<unsigned> exact_period(const RationalMap& phi, const ProjectivePoint& x,
                                     unsigned n_max) {
  ProjectivePoint cur = x;
  for (unsigned m = 1; m <= n_max; ++m) {
    cur = evaluate(phi, cur);
    if (cur == x) return m;
  }
  return std::nullopt;
}

std::vector<PeriodicPoint> rational_periodic_points(const RationalMap& phi, unsigned n,
                                                    const DynatomicOptions& opts) {
  const DynatomicForm dyn = dynatomic(phi, n, opts);
  std::vector<PeriodicPoint> out;
  for (const auto& root : rational_roots(dyn.form, opts)) {
    if (exact_period(phi, root, n) == n) out.push_back({root, n});
  }
  return out;
}

}  // namespace dynlg
