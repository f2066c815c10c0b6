#include "aflt/unitgrp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "aflt/classgrp.hpp"
#include "aflt/geometry.hpp"

namespace aflt {

namespace {

constexpr long double kDependTol = 1e-8L;

long double wdot(const std::vector<long double>& a, const std::vector<long double>& b, int r1) {
  long double s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += (static_cast<int>(j) < r1 ? 1 : 2) * a[j] * b[j];
  return s;
}

FieldElement power_product(const NumberField& k, const std::vector<FieldElement>& g, const std::vector<long>& e) {
  FieldElement num = k.one(), den = k.one();
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (e[i] > 0) num *= g[i].pow(e[i]);
    else if (e[i] < 0) den *= g[i].pow(-e[i]);
  }
  return den.is_one() ? num : num / den;
}

// Solves the symmetric positive definite system G c = b by Gaussian elimination.
std::vector<long double> solve_spd(RealMatrix g, std::vector<long double> b) {
  std::size_t n = b.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t piv = i;
    for (std::size_t r = i + 1; r < n; ++r)
      if (std::fabs(g[r][i]) > std::fabs(g[piv][i])) piv = r;
    std::swap(g[i], g[piv]);
    std::swap(b[i], b[piv]);
    for (std::size_t r = i + 1; r < n; ++r) {
      long double f = g[r][i] / g[i][i];
      for (std::size_t c = i; c < n; ++c) g[r][c] -= f * g[i][c];
      b[r] -= f * b[i];
    }
  }
  std::vector<long double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    long double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= g[i][c] * x[c];
    x[i] = s / g[i][i];
  }
  return x;
}

long double gram_det(RealMatrix g) {
  std::size_t n = g.size();
  long double d = 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t r = i + 1; r < n; ++r) {
      long double f = g[r][i] / g[i][i];
      for (std::size_t c = i; c < n; ++c) g[r][c] -= f * g[i][c];
    }
    d *= g[i][i];
  }
  return d;
}

// Sublattice of the log-unit lattice spanned by exact units, grown one unit
// at a time. Adding a unit that is a rational combination of the current
// basis enlarges the lattice prime by prime.
class UnitLattice {
 public:
  UnitLattice(NumberField k, int rank) : k_(std::move(k)), rank_(rank), r1_(k_.r1()) {}

  std::size_t size() const { return basis_.size(); }
  const std::vector<FieldElement>& basis() const { return basis_; }
  const std::vector<std::vector<long double>>& logs() const { return logs_; }

  // Returns true when the lattice grew.
  bool add(const FieldElement& u) {
    bool grew = false;
    for (int guard = 0; guard < 64; ++guard) {
      auto lv = u.log_embeddings();
      long double len = std::sqrt(wdot(lv, lv, r1_));
      if (len < 1e-9L) return grew;
      std::size_t k = basis_.size();
      std::vector<long double> c = coords(lv);
      std::vector<long double> res = lv;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < res.size(); ++j) res[j] -= c[i] * logs_[i][j];
      long double rl = std::sqrt(wdot(res, res, r1_));
      if (rl > kDependTol * (1 + len) * 1e3L) {
        if (static_cast<int>(k) >= rank_) return grew;
        push(u);
        reduce();
        return true;
      }
      long d = 0;
      for (long t = 1; t <= 4096 && d == 0; ++t) {
        bool ok = true;
        for (auto ci : c) {
          long double v = ci * t;
          if (std::fabs(v - std::round(v)) > 1e-6L * (1 + std::fabs(v))) {
            ok = false;
            break;
          }
        }
        if (ok) d = t;
      }
      if (d <= 1) return grew;
      long l = 2;
      while (d % l != 0) ++l;
      std::vector<long> m(k);
      for (std::size_t i = 0; i < k; ++i) m[i] = static_cast<long>(std::llround(c[i] * d));
      // w = u^(d/l) * prod b^-q has coordinates t/l with t in [0, l).
      std::vector<long> t(k), q(k);
      for (std::size_t i = 0; i < k; ++i) {
        t[i] = ((m[i] % l) + l) % l;
        q[i] = (m[i] - t[i]) / l;
      }
      std::size_t i0 = k;
      for (std::size_t i = 0; i < k; ++i)
        if (t[i] != 0) {
          i0 = i;
          break;
        }
      if (i0 == k) return grew;
      std::vector<long> neg(k);
      for (std::size_t i = 0; i < k; ++i) neg[i] = -q[i];
      FieldElement w = u.pow(d / l) * power_product(k_, basis_, neg);
      long s = static_cast<long>(invmod(static_cast<std::uint64_t>(t[i0]), static_cast<std::uint64_t>(l)));
      for (std::size_t i = 0; i < k; ++i) neg[i] = -((s * t[i]) / l);
      FieldElement w2 = w.pow(s) * power_product(k_, basis_, neg);
      basis_[i0] = w2;
      logs_[i0] = w2.log_embeddings();
      reduce();
      grew = true;
    }
    return grew;
  }

  // Coordinates of a log vector in the current basis (least squares).
  std::vector<long double> coords(const std::vector<long double>& lv) const {
    std::size_t k = basis_.size();
    if (k == 0) return {};
    RealMatrix g = gram();
    std::vector<long double> b(k);
    for (std::size_t i = 0; i < k; ++i) b[i] = wdot(logs_[i], lv, r1_);
    return solve_spd(g, b);
  }

  RealMatrix gram() const {
    std::size_t k = basis_.size();
    RealMatrix g(k, std::vector<long double>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j <= i; ++j) g[i][j] = g[j][i] = wdot(logs_[i], logs_[j], r1_);
    return g;
  }

  long double det() const { return basis_.empty() ? 1.0L : std::sqrt(gram_det(gram())); }

  long double max_length() const {
    long double m = 0;
    for (auto& l : logs_) m = std::max(m, std::sqrt(wdot(l, l, r1_)));
    return m;
  }

  void reduce() {
    if (basis_.size() < 2) return;
    RealMatrix g = gram();
    IntMatrix t = lll_gram(g);
    std::size_t k = basis_.size();
    bool identity = true;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (t[i][j] != (i == j ? 1 : 0)) identity = false;
    if (identity) return;
    std::vector<FieldElement> nb;
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<long> e(k);
      for (std::size_t j = 0; j < k; ++j) e[j] = t[i][j].get_si();
      nb.push_back(power_product(k_, basis_, e));
    }
    basis_.clear();
    logs_.clear();
    for (auto& b : nb) push(b);
  }

 private:
  void push(const FieldElement& u) {
    basis_.push_back(u);
    logs_.push_back(u.log_embeddings());
  }

  NumberField k_;
  int rank_;
  int r1_;
  std::vector<FieldElement> basis_;
  std::vector<std::vector<long double>> logs_;
};

long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  if (m > 1) r -= r / m;
  return r;
}

Poly cyclotomic(long m) {
  Poly f = Poly::monomial(static_cast<int>(m)) - Poly::constant(1);
  for (long d = 1; d < m; ++d)
    if (m % d == 0) f = f / cyclotomic(d);
  return f;
}

// Necessary condition for mu_m in K: m | N(P) - 1 for unramified P not above m.
bool may_contain_roots(const NumberField& k, long m) {
  int checked = 0;
  for (long p : primes_up_to(400)) {
    if (m % p == 0 || k.disc() % p == 0) continue;
    for (auto& P : factor_prime(k, p))
      if ((P->norm() - 1) % m != 0) return false;
    if (++checked >= 12) break;
  }
  return true;
}

void torsion(const NumberField& k, FieldElement& zeta, int& w) {
  zeta = -k.one();
  w = 2;
  if (k.r1() > 0) return;
  long n = k.degree();
  for (long m = 2 * n * n + 2; m > 2; --m) {
    if (m % 2 != 0 || n % euler_phi(m) != 0) continue;
    if (!may_contain_roots(k, m)) continue;
    auto roots = roots_in_field(FieldPoly::from_rational(k, cyclotomic(m)));
    if (roots.empty()) continue;
    zeta = roots.front();
    w = static_cast<int>(m);
    return;
  }
}

// Canonical representative of u up to torsion and inversion: first log
// embedding nonnegative, then the torsion multiple with the smallest
// coordinates (positive first embedding for real fields).
FieldElement normalize_unit(const FieldElement& u, const FieldElement& zeta, int w) {
  FieldElement v = u;
  auto lv = v.log_embeddings();
  if (lv[0] < 0) v = v.inverse();
  NumberField k = u.field();
  if (k.r1() > 0) return v.signs()[0] < 0 ? -v : v;
  FieldElement best = v;
  Integer best_h = -1;
  FieldElement z = k.one();
  for (int t = 0; t < w; ++t) {
    FieldElement c = z * v;
    Integer h = 0;
    for (auto& x : c.integral_coords()) h += abs(x);
    if (best_h < 0 || h < best_h || (h == best_h && c < best)) {
      best = c;
      best_h = h;
    }
    z *= zeta;
  }
  return best;
}

void first_nontrivial_root(const ResidueField& F, std::uint64_t l, FpPoly& z) {
  Integer e = (F.size() - 1) / l;
  for (std::uint64_t c = 2; c < 200; ++c) {
    for (int lin = 0; lin < 2; ++lin) {
      if (lin == 1 && F.f == 1) continue;
      FpPoly g = lin ? FpPoly{c % F.p, 1} : FpPoly{c % F.p};
      fp::trim(g);
      if (g.empty()) continue;
      FpPoly v = F.pow(g, e);
      if (v != FpPoly{1}) {
        z = v;
        return;
      }
    }
  }
  throw InvalidInput("no character generator found");
}

int residue_log(const ResidueField& F, const FpPoly& v, const FpPoly& z, int l) {
  FpPoly acc{1};
  for (int t = 0; t < l; ++t) {
    if (acc == v) return t;
    acc = F.mul(acc, z);
  }
  throw InvalidInput("power residue symbol outside mu_l");
}

struct Character {
  Prime P;
  FpPoly z;
};

std::vector<Character> character_primes(const NumberField& k, int l, const std::vector<Integer>& avoid,
                                        long start, std::size_t count) {
  std::vector<Character> out;
  long step = l == 2 ? 2 : 2L * l;
  long p = std::max(start, 3L);
  p += ((1 - p) % step + step) % step;
  for (; out.size() < count && p < 200000000; p += step) {
    if (!is_prime(p)) continue;
    bool skip = false;
    for (auto& a : avoid)
      if (a % p == 0) skip = true;
    if (skip) continue;
    for (auto& P : factor_prime(k, p)) {
      if (P->f != 1) continue;
      Character c{P, {}};
      first_nontrivial_root(P->residue, static_cast<std::uint64_t>(l), c.z);
      out.push_back(c);
      if (out.size() >= count) break;
    }
  }
  return out;
}

int character_value(const FieldElement& x, const Character& c, int l) {
  const ResidueField& F = c.P->residue;
  FpPoly v = F.pow(c.P->reduce(x), (F.size() - 1) / l);
  return residue_log(F, v, c.z, l);
}

void saturate(UnitLattice& L, const FieldElement& zeta, int w, int l, const NumberField& k) {
  for (int round = 0; round < 32; ++round) {
    std::vector<FieldElement> gens;
    bool with_zeta = w % l == 0;
    if (with_zeta) gens.push_back(zeta);
    for (auto& b : L.basis()) gens.push_back(b);
    if (L.size() == 0) return;
    std::vector<long> e;
    FieldElement root;
    if (!find_power_relation(k, gens, l, {}, e, root)) return;
    bool unit_part = false;
    for (std::size_t i = with_zeta ? 1 : 0; i < e.size(); ++i)
      if (e[i] % l != 0) unit_part = true;
    if (!unit_part) return;
    L.add(root);
  }
}

SUnitGroup finish(const NumberField& k, const FieldElement& zeta, int w, const std::vector<FieldElement>& units) {
  SUnitGroup G;
  G.field = k;
  G.torsion_gen = zeta;
  G.torsion_order = w;
  for (auto& u : units) G.fundamental_units.push_back(normalize_unit(u, zeta, w));
  return G;
}

SUnitGroup real_quadratic_units(const NumberField& k) {
  FieldElement zeta;
  int w;
  torsion(k, zeta, w);
  Integer D = k.disc();
  auto roots = roots_in_field(FieldPoly::from_rational(k, Poly::from_integers({-D, 0, 1})));
  FieldElement s = roots.at(0);
  if (s.signs()[0] < 0) s = -s;
  Integer b0 = D % 2 == 0 ? 0 : 1;
  FieldElement xibar = (s * Rational(-1) + Rational(b0)) * Rational(1, 2);
  // Continued fraction of xi = (P + sqrt D)/Q.
  Integer P = b0, Q = 2, sq;
  mpz_sqrt(sq.get_mpz_t(), D.get_mpz_t());
  Integer p1 = 1, p2 = 0, q1 = 0, q2 = 1;
  for (long it = 0; it < 10000000; ++it) {
    Integer a = fdiv(P + sq, Q);
    Integer p = a * p1 + p2, q = a * q1 + q2;
    p2 = p1;
    p1 = p;
    q2 = q1;
    q1 = q;
    Integer nm = p * p - p * q * b0 + q * q * (b0 * b0 - D) / 4;
    if (nm == 1 || nm == -1) {
      FieldElement eps = k.from_integer(p) - xibar * Rational(q);
      SUnitGroup G = finish(k, zeta, w, {eps});
      G.units_certified = true;
      G.method = "continued fraction";
      G.saturated = {2, 3};
      return G;
    }
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  throw RankNotReached("continued fraction did not close");
}

bool is_cm_extension(const NumberField& k) {
  if (!k.is_extension() || k.r1() != 0) return false;
  NumberField b = k.base();
  if (!b.totally_real()) return false;
  if (k.kind() == ExtensionKind::omega) return true;
  if (k.kind() != ExtensionKind::sqrt) return false;
  for (int s : k.radicand().signs())
    if (s > 0) return false;
  return true;
}

SUnitGroup cm_units(const NumberField& k) {
  FieldElement zeta;
  int w;
  torsion(k, zeta, w);
  SUnitGroup base = unit_group(k.base());
  std::vector<FieldElement> units;
  for (auto& u : base.fundamental_units) units.push_back(k.embed(u));
  std::vector<FieldElement> gens{zeta};
  for (auto& u : units) gens.push_back(u);
  std::vector<long> e;
  FieldElement y;
  if (!units.empty() && find_power_relation(k, gens, 2, {}, e, y)) {
    for (std::size_t i = 1; i < e.size(); ++i)
      if (e[i] % 2 != 0) {
        units[i - 1] = y;
        break;
      }
  }
  SUnitGroup G = finish(k, zeta, w, units);
  G.units_certified = base.units_certified;
  G.method = "cm";
  if (G.units_certified) {
    G.saturated = {2, 3};
  } else {
    UnitLattice L(k, static_cast<int>(units.size()));
    for (auto& u : units) L.add(u);
    for (int l : {2, 3}) saturate(L, zeta, w, l, k);
    G = finish(k, zeta, w, L.basis());
    G.method = "cm";
    G.saturated = {2, 3};
  }
  return G;
}

// Hermite constants gamma_r^r for r <= 8.
long double hermite_power(int r) {
  static const long double g[] = {1, 1, 4.0L / 3, 2, 4, 8, 64.0L / 3, 64, 256};
  if (r <= 8) return g[r];
  return std::pow(1 + r / 4.0L, static_cast<long double>(r));
}

long double ball_count(int n, long double t2, const Integer& disc) {
  long double vol = std::pow(static_cast<long double>(M_PI), n / 2.0L) / std::tgamma(n / 2.0L + 1);
  return vol * std::pow(t2, n / 2.0L) / std::sqrt(std::fabs(to_ld(disc)));
}

constexpr long double kCertifyPoints = 4e6L;
constexpr long double kMaxSaturationPrime = 20000;

SUnitGroup generic_units(const NumberField& k) {
  FieldElement zeta;
  int w;
  torsion(k, zeta, w);
  int n = k.degree();
  int r = k.r1() + k.r2() - 1;
  UnitLattice L(k, r);
  std::vector<IntVector> id(static_cast<std::size_t>(n), IntVector(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) id[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;

  auto unit_check = [&](const IntVector& c) {
    long double an = approx_abs_norm(k, c);
    if (std::fabs(an - 1) > 1e-6L) return;
    FieldElement x = k.from_basis(c);
    if (abs(x.norm()) == 1) L.add(x);
  };

  std::map<long, std::vector<FieldElement>> buckets;
  long double prev = 0, C = n * 2.0L;
  while (static_cast<int>(L.size()) < r) {
    if (C > 1e12L) throw RankNotReached("unit rank not reached for " + k.str());
    enumerate_short(
        k, id, C,
        [&](const IntVector& c, long double val) {
          if (val <= prev) return true;
          long double an = approx_abs_norm(k, c);
          long double rn = std::round(an);
          if (rn < 1 || std::fabs(an - rn) > 1e-6L * an + 1e-4L) return true;
          if (rn == 1) {
            unit_check(c);
          } else if (rn < 1e6L) {
            FieldElement x = k.from_basis(c);
            auto& b = buckets[static_cast<long>(rn)];
            for (auto& y : b) {
              FieldElement q = x / y;
              if (q.is_integral() && abs(q.norm()) == 1) L.add(q);
            }
            if (b.size() < 24) b.push_back(x);
          }
          return static_cast<int>(L.size()) < r;
        },
        4000000);
    prev = C;
    C *= 2;
  }

  for (int l : {2, 3}) saturate(L, zeta, w, l, k);
  SUnitGroup G;
  G.method = "enumeration";
  bool certified = false;
  // All units with T2 <= B are enumerated; every unit of log-length below
  // rho_B has T2 <= B, so the minima found below rho_B are exact and the
  // others are at least rho_B. Minkowski's second theorem then bounds the
  // index of our lattice, and saturation removes every prime up to it.
  long double B = std::pow(kCertifyPoints / ball_count(n, 1, k.disc()), 2.0L / n);
  long double rho_full = L.max_length() * (1 + 1e-9L);
  B = std::min(B, n * std::exp(2 * rho_full * std::sqrt((n - 1.0L) / n)) * 1.0001L);
  long double rho_b = std::log(B / n) / 2 / std::sqrt((n - 1.0L) / n) * (1 - 1e-9L);
  std::vector<std::vector<long double>> found;
  bool complete = B > n && enumerate_short(
      k, id, B,
      [&](const IntVector& c, long double) {
        long double an = approx_abs_norm(k, c);
        if (std::fabs(an - 1) > 1e-6L) return true;
        FieldElement x = k.from_basis(c);
        if (abs(x.norm()) != 1) return true;
        L.add(x);
        found.push_back(x.log_embeddings());
        return true;
      },
      static_cast<std::size_t>(kCertifyPoints * 20));
  if (complete) {
    std::sort(found.begin(), found.end(), [&](auto& a, auto& b) { return wdot(a, a, k.r1()) < wdot(b, b, k.r1()); });
    std::vector<std::vector<long double>> chosen;
    std::vector<long double> minima;
    for (auto& v : found) {
      long double len = std::sqrt(wdot(v, v, k.r1()));
      if (len < 1e-9L) continue;
      if (len >= rho_b || static_cast<int>(chosen.size()) == r) break;
      auto trial = chosen;
      trial.push_back(v);
      RealMatrix g(trial.size(), std::vector<long double>(trial.size()));
      for (std::size_t i = 0; i < trial.size(); ++i)
        for (std::size_t j = 0; j < trial.size(); ++j) g[i][j] = wdot(trial[i], trial[j], k.r1());
      long double scale = 1;
      for (auto& t : trial) scale *= wdot(t, t, k.r1());
      if (gram_det(g) > 1e-12L * scale) {
        chosen = trial;
        minima.push_back(len);
      }
    }
    while (static_cast<int>(minima.size()) < r) minima.push_back(rho_b);
    long double prod = 1;
    for (auto m : minima) prod *= m;
    long double bound = L.det() * std::sqrt(hermite_power(r)) / prod * (1 + 1e-6L);
    if (bound < kMaxSaturationPrime) {
      for (long l : primes_up_to(static_cast<long>(std::floor(bound))))
        if (l > 3) saturate(L, zeta, w, static_cast<int>(l), k);
      certified = true;
    }
  }
  G = finish(k, zeta, w, L.basis());
  G.method = "enumeration";
  G.units_certified = certified;
  G.saturated = {2, 3};
  return G;
}

SUnitGroup compute_units(const NumberField& k) {
  int r = k.r1() + k.r2() - 1;
  if (r == 0) {
    FieldElement zeta;
    int w;
    torsion(k, zeta, w);
    SUnitGroup G = finish(k, zeta, w, {});
    G.units_certified = true;
    G.method = "trivial";
    G.saturated = {2, 3};
    return G;
  }
  if (k.degree() == 2) return real_quadratic_units(k);
  if (is_cm_extension(k)) return cm_units(k);
  return generic_units(k);
}

// Integer solution e of e * V = a for V with independent rows.
bool solve_rows(const IntMatrix& V, const std::vector<int>& a, std::vector<long>& e) {
  std::size_t s = V.size();
  e.assign(s, 0);
  if (s == 0) {
    for (int x : a)
      if (x != 0) return false;
    return true;
  }
  std::size_t m = a.size();
  RatMatrix g(s, RatVector(s, 0));
  RatVector b(s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t j = 0; j < s; ++j)
      for (std::size_t c = 0; c < m; ++c) g[i][j] += V[i][c] * V[j][c];
    for (std::size_t c = 0; c < m; ++c) b[i] += V[i][c] * a[c];
  }
  RatVector x = mat_vec(inverse(g), b);
  for (std::size_t i = 0; i < s; ++i) {
    x[i].canonicalize();
    if (x[i].get_den() != 1) return false;
    e[i] = x[i].get_num().get_si();
  }
  for (std::size_t c = 0; c < m; ++c) {
    Integer t = 0;
    for (std::size_t i = 0; i < s; ++i) t += V[i][c] * e[i];
    if (t != a[c]) return false;
  }
  return true;
}

// Divides g by the nearest unit combination so it is balanced in the log space.
FieldElement balance(const SUnitGroup& U, const FieldElement& g) {
  if (U.fundamental_units.empty()) return g;
  NumberField k = g.field();
  int n = k.degree();
  UnitLattice L(k, static_cast<int>(U.fundamental_units.size()));
  for (auto& u : U.fundamental_units) L.add(u);
  auto lv = g.log_embeddings();
  long double mean = std::log(std::fabs(to_ld(g.norm()))) / n;
  for (auto& x : lv) x -= mean;
  auto c = L.coords(lv);
  std::vector<long> e(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) e[i] = -static_cast<long>(std::llround(c[i]));
  return g * power_product(k, L.basis(), e);
}

FieldElement sign_normalize(const FieldElement& x) {
  for (auto& c : x.basis_coords())
    if (c != 0) return c < 0 ? -x : x;
  return x;
}

}  // namespace

bool SUnitGroup::saturated_at(int l) const {
  return units_certified || std::find(saturated.begin(), saturated.end(), l) != saturated.end();
}

std::vector<FieldElement> SUnitGroup::free_generators() const {
  std::vector<FieldElement> g = fundamental_units;
  g.insert(g.end(), s_generators.begin(), s_generators.end());
  return g;
}

int power_residue_symbol(const FieldElement& x, const PrimeIdeal& P, int l) {
  if ((P.norm() - 1) % l != 0) throw InvalidInput("N(P) is not 1 mod l");
  FpPoly z;
  first_nontrivial_root(P.residue, static_cast<std::uint64_t>(l), z);
  FpPoly r = P.reduce(x);
  if (r.empty()) throw InvalidInput("element is not a unit at P");
  return residue_log(P.residue, P.residue.pow(r, (P.residue.size() - 1) / l), z, l);
}

bool find_power_relation(const NumberField& k, const std::vector<FieldElement>& gens, int l,
                         const std::vector<Integer>& avoid, std::vector<long>& exps, FieldElement& root) {
  std::size_t g = gens.size();
  if (g == 0) return false;
  std::vector<Integer> av = avoid;
  for (auto& x : gens) {
    av.push_back(x.denominator());
    Rational nm = x.norm();
    av.push_back(abs(nm.get_num()));
  }
  // Character matrix: rows are generators, columns are primes.
  FpMatrix rows;
  FpMatrix kernel;
  std::size_t dim = g, stable = 0;
  long start = 2;
  auto chars = character_primes(k, l, av, start, g + 12);
  std::size_t used = 0;
  auto recompute = [&] {
    FpMatrix a(used, FpVector(g));
    for (std::size_t c = 0; c < used; ++c)
      for (std::size_t i = 0; i < g; ++i)
        a[c][i] = static_cast<std::uint64_t>(character_value(gens[i], chars[c], l));
    kernel = fp_kernel(a, static_cast<std::uint64_t>(l));
  };
  while (used < chars.size()) {
    ++used;
    recompute();
    if (kernel.size() < dim) {
      dim = kernel.size();
      stable = 0;
    } else if (++stable >= 10) {
      break;
    }
    if (dim == 0) return false;
    if (used == chars.size() && stable < 10 && chars.size() < g + 80) {
      auto more = character_primes(k, l, av, chars.back().P->p.get_si() + 1, 8);
      chars.insert(chars.end(), more.begin(), more.end());
    }
  }
  if (kernel.empty()) return false;
  std::size_t kd = kernel.size();
  if (kd > 10) throw Uncertified("power relation search too large");
  // Enumerate combinations with first nonzero coefficient 1.
  std::vector<long> coef(kd, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < kd; ++i) total *= static_cast<std::size_t>(l);
  for (std::size_t idx = 1; idx < total; ++idx) {
    std::size_t t = idx;
    for (std::size_t i = 0; i < kd; ++i) {
      coef[i] = static_cast<long>(t % static_cast<std::size_t>(l));
      t /= static_cast<std::size_t>(l);
    }
    std::size_t first = 0;
    while (coef[first] == 0) ++first;
    if (coef[first] != 1) continue;
    std::vector<long> e(g, 0);
    for (std::size_t i = 0; i < kd; ++i)
      for (std::size_t j = 0; j < g; ++j) e[j] = (e[j] + coef[i] * static_cast<long>(kernel[i][j])) % l;
    FieldElement x = power_product(k, gens, e);
    FieldElement y;
    if (is_power(x, l, &y)) {
      exps = e;
      root = y;
      return true;
    }
  }
  return false;
}

SUnitGroup unit_group(const NumberField& k) {
  auto p = k.cached<SUnitGroup>("units", [&] { return std::make_shared<SUnitGroup>(compute_units(k)); });
  return *p;
}

SUnitGroup s_unit_group(const NumberField& k, const std::vector<Prime>& S_in) {
  SUnitGroup G = unit_group(k);
  std::vector<Prime> S = S_in;
  std::sort(S.begin(), S.end(), prime_less);
  S.erase(std::unique(S.begin(), S.end(), same_prime), S.end());
  G.S = S;
  if (S.empty()) return G;
  std::vector<FieldElement> gens;
  for (auto& P : S) {
    auto g = find_generator(P->ideal, 1e5L * k.degree(), 200000);
    if (!g) break;
    gens.push_back(*g);
  }
  if (gens.size() == S.size()) {
    G.s_certified = true;
  } else {
    gens.clear();
    ClassGroup cl = class_group(k);
    std::size_t c = cl.invariants.size();
    std::size_t s = S.size();
    IntMatrix M(s + c, IntVector(c, 0));
    for (std::size_t i = 0; i < s; ++i) {
      auto d = cl.dlog(S[i]->ideal);
      for (std::size_t j = 0; j < c; ++j) M[i][j] = d[j];
    }
    for (std::size_t j = 0; j < c; ++j) M[s + j][j] = cl.invariants[j];
    IntMatrix ker = integer_left_kernel(M);
    IntMatrix a;
    for (auto& row : ker) a.emplace_back(row.begin(), row.begin() + static_cast<long>(s));
    IntMatrix h = hnf_rows(a);
    for (auto& row : h) {
      bool zero = std::all_of(row.begin(), row.end(), [](const Integer& x) { return x == 0; });
      if (zero) continue;
      Ideal I = Ideal::unit(k);
      for (std::size_t j = 0; j < s; ++j) I = I * S[j]->ideal.pow(row[j].get_si());
      auto g = cl.generator(I);
      if (!g) throw UncertifiedGenerators("no generator found for a principal S-ideal");
      gens.push_back(*g);
    }
    G.s_certified = cl.certified;
  }
  for (auto& g : gens) G.s_generators.push_back(sign_normalize(balance(G, g)));
  for (auto& g : G.s_generators) {
    IntVector row;
    for (auto& P : S) row.emplace_back(valuation(g, *P));
    G.valuation_matrix.push_back(row);
  }
  return G;
}

SUnitExponents s_unit_exponents(const SUnitGroup& G, const FieldElement& x) {
  if (x.is_zero()) throw ZeroElement();
  if (!is_s_unit(x, G.S)) throw NotAUnit("element is not an S-unit");
  NumberField k = G.field;
  std::vector<int> a;
  for (auto& P : G.S) a.push_back(valuation(x, *P));
  std::vector<long> es;
  if (!solve_rows(G.valuation_matrix, a, es)) throw NotAUnit("valuations outside the S-generator lattice");
  FieldElement u = x / power_product(k, G.s_generators, es);
  std::vector<long> eu(G.fundamental_units.size(), 0);
  if (!G.fundamental_units.empty()) {
    UnitLattice L(k, static_cast<int>(G.fundamental_units.size()));
    // Coordinates in the (fixed) fundamental unit basis.
    std::vector<std::vector<long double>> logs;
    for (auto& f : G.fundamental_units) logs.push_back(f.log_embeddings());
    std::size_t r = logs.size();
    RealMatrix g(r, std::vector<long double>(r));
    std::vector<long double> b(r);
    auto lv = u.log_embeddings();
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) g[i][j] = wdot(logs[i], logs[j], k.r1());
      b[i] = wdot(logs[i], lv, k.r1());
    }
    auto c = solve_spd(g, b);
    for (std::size_t i = 0; i < r; ++i) eu[i] = static_cast<long>(std::llround(c[i]));
  }
  FieldElement z = u / power_product(k, G.fundamental_units, eu);
  FieldElement t = k.one();
  for (int i = 0; i < G.torsion_order; ++i) {
    if (t == z) {
      SUnitExponents out;
      out.torsion = i;
      out.free = eu;
      out.free.insert(out.free.end(), es.begin(), es.end());
      return out;
    }
    t *= G.torsion_gen;
  }
  throw NotAUnit("unit outside the computed unit group");
}

FieldElement s_unit_from_exponents(const SUnitGroup& G, int torsion_exp, const std::vector<long>& free) {
  int t = ((torsion_exp % G.torsion_order) + G.torsion_order) % G.torsion_order;
  return G.torsion_gen.pow(t) * power_product(G.field, G.free_generators(), free);
}

std::vector<FieldElement> power_class_reps(const SUnitGroup& G, int i) {
  if (i < 1) throw InvalidInput("exponent must be positive");
  int tz = std::gcd(G.torsion_order, i);
  std::size_t m = static_cast<std::size_t>(G.rank());
  std::vector<FieldElement> out;
  std::vector<long> e(m, 0);
  auto gens = G.free_generators();
  for (int t = 0; t < tz; ++t) {
    std::fill(e.begin(), e.end(), 0);
    for (;;) {
      out.push_back(s_unit_from_exponents(G, t, e));
      std::size_t j = m;
      while (j > 0) {
        --j;
        if (++e[j] < i) break;
        e[j] = 0;
        if (j == 0) {
          j = m + 1;
          break;
        }
      }
      if (m == 0 || j == m + 1) break;
    }
  }
  return out;
}

std::size_t power_class_index(const SUnitGroup& G, const FieldElement& x, int i) {
  auto ex = s_unit_exponents(G, x);
  int tz = std::gcd(G.torsion_order, i);
  std::size_t idx = static_cast<std::size_t>(((ex.torsion % tz) + tz) % tz);
  for (long e : ex.free) idx = idx * static_cast<std::size_t>(i) + static_cast<std::size_t>(((e % i) + i) % i);
  return idx;
}

bool is_totally_positive(const FieldElement& x) { return x.is_totally_positive(); }

}  // namespace aflt
