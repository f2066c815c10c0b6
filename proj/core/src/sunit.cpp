#include "aflt/sunit.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace aflt {

namespace {

using cd = std::complex<double>;

struct Polar {
  std::vector<long double> log, arg;
};

Polar polar(const FieldElement& x) {
  Polar p;
  x.polar_embeddings(&p.log, &p.arg);
  return p;
}

// Rational primes lying below Sy; the numeric sieve needs at most one.
std::vector<Integer> below(const std::vector<Prime>& Sy) { return primes_below(Sy); }

class Sieve {
 public:
  Sieve(const SUnitGroup& G, const FieldElement& a, const FieldElement& b, const std::vector<Prime>& Sy)
      : k_(G.field) {
    m_ = static_cast<std::size_t>(k_.r1() + k_.r2());
    r1_ = static_cast<std::size_t>(k_.r1());
    gens_ = G.free_generators();
    for (auto& g : gens_) gp_.push_back(polar(g));
    zeta_ = polar(G.torsion_gen);
    a_ = polar(a);
    auto lb = b.log_embeddings();
    for (std::size_t j = 0; j < m_; ++j) lognb_ += static_cast<double>((j < r1_ ? 1 : 2) * lb[j]);
    auto qs = below(Sy);
    usable_ = qs.size() <= 1;
    if (qs.size() == 1) logp_ = std::log(qs[0].get_d());
  }

  bool usable() const { return usable_; }

  // Starting value a * zeta^t * prod g_j^e_j at every embedding, plus the
  // relative error bound attached to it.
  void start(int t, const std::vector<long>& e, std::vector<cd>& z, std::vector<double>& rel, bool& ok) const {
    ok = true;
    z.resize(m_);
    rel.resize(m_);
    for (std::size_t k = 0; k < m_; ++k) {
      long double L = a_.log[k], th = a_.arg[k] + t * zeta_.arg[k];
      long double mag = std::fabs(a_.log[k]) + std::fabs(a_.arg[k]) + 1;
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        L += e[j] * gp_[j].log[k];
        th += e[j] * gp_[j].arg[k];
        mag += std::labs(e[j]) * (std::fabs(gp_[j].log[k]) + std::fabs(gp_[j].arg[k]));
      }
      if (std::fabs(L) > 600) ok = false;
      th = std::remainder(th, 2 * 3.14159265358979323846264338327950288L);
      z[k] = std::polar(std::exp(static_cast<double>(L)), static_cast<double>(th));
      rel[k] = 4e-16 * (1 + static_cast<double>(mag));
    }
  }

  std::vector<cd> step(std::size_t j) const {
    std::vector<cd> c(m_);
    for (std::size_t k = 0; k < m_; ++k)
      c[k] = std::polar(std::exp(static_cast<double>(gp_[j].log[k])), static_cast<double>(gp_[j].arg[k]));
    return c;
  }

  // False only when 1 - z cannot have the norm of b times an Sy-unit.
  bool may_pass(const std::vector<cd>& z, const std::vector<double>& rel) const {
    if (!usable_) return true;
    double logn = 0, prod = 1, err = 0;
    for (std::size_t k = 0; k < m_; ++k) {
      double re = 1 - z[k].real(), im = -z[k].imag();
      double d2 = re * re + im * im;
      double az = std::abs(z[k]);
      if (!(d2 > 0) || !std::isfinite(d2)) return true;
      double d = std::sqrt(d2);
      double w = k < r1_ ? 1 : 2;
      err += w * (az * rel[k] + 1e-15) / d;
      prod *= k < r1_ ? d2 : d2 * d2;
      if (prod > 1e100 || prod < 1e-100) {
        logn += std::log(prod);
        prod = 1;
      }
    }
    if (err > 0.2) return true;
    logn = 0.5 * (logn + std::log(prod)) - lognb_;
    double dist;
    if (logp_ == 0) {
      dist = std::fabs(logn);
    } else {
      double q = logn / logp_;
      dist = std::fabs(q - std::round(q)) * logp_;
    }
    return dist <= err + 1e-9 * (1 + std::fabs(logn));
  }

 private:
  NumberField k_;
  std::size_t m_ = 0, r1_ = 0;
  std::vector<FieldElement> gens_;
  std::vector<Polar> gp_;
  Polar zeta_, a_;
  double lognb_ = 0, logp_ = 0;
  bool usable_ = true;
};

}  // namespace

UnitEquationResult solve_unit_equation(const SUnitGroup& Gx, const FieldElement& a, const FieldElement& b,
                                       const std::vector<Prime>& Sy, long bound) {
  if (bound < 0) throw InvalidInput("bound must be nonnegative");
  if (a.is_zero() || b.is_zero()) throw ZeroElement("unit equation coefficients must be nonzero");
  if (!Gx.certified()) throw UncertifiedGenerators("S-unit group is not certified");
  NumberField k = Gx.field;
  UnitEquationResult res;
  res.bound = bound;
  Sieve sieve(Gx, a, b, Sy);
  std::size_t r = static_cast<std::size_t>(Gx.rank());
  std::size_t width = static_cast<std::size_t>(2 * bound + 1);
  std::vector<cd> inc = r > 0 ? sieve.step(r - 1) : std::vector<cd>{};
  bool have_gy = false;
  SUnitGroup Gy;

  auto exact = [&](int t, const std::vector<long>& e) {
    FieldElement x = s_unit_from_exponents(Gx, t, e);
    FieldElement y = (k.one() - a * x) / b;
    if (y.is_zero() || !is_s_unit(y, Sy)) return;
    if (!have_gy) {
      Gy = Sy.size() == Gx.S.size() ? Gx : s_unit_group(k, Sy);
      have_gy = true;
    }
    UnitEquationSolution s;
    s.x = x;
    s.y = y;
    s.x_exponents.torsion = t;
    s.x_exponents.free = e;
    s.y_exponents = s_unit_exponents(Gy, y);
    res.solutions.push_back(std::move(s));
  };

  std::vector<long> e(r, -bound);
  std::vector<cd> z;
  std::vector<double> rel;
  for (int t = 0; t < Gx.torsion_order; ++t) {
    std::fill(e.begin(), e.end(), -bound);
    for (;;) {
      // innermost coordinate runs by repeated multiplication
      bool ok;
      sieve.start(t, e, z, rel, ok);
      std::size_t run = r > 0 ? width : 1;
      for (std::size_t s = 0; s < run; ++s) {
        ++res.candidates;
        if (!ok || sieve.may_pass(z, rel)) exact(t, e);
        if (r > 0) {
          for (std::size_t kk = 0; kk < z.size(); ++kk) {
            z[kk] *= inc[kk];
            rel[kk] += 1e-15;
          }
          ++e[r - 1];
        }
      }
      if (r == 0) break;
      e[r - 1] = -bound;
      std::size_t j = r - 1;
      bool done = true;
      while (j > 0) {
        --j;
        if (++e[j] <= bound) {
          done = false;
          break;
        }
        e[j] = -bound;
      }
      if (done) break;
    }
  }
  std::sort(res.solutions.begin(), res.solutions.end(),
            [](const UnitEquationSolution& p, const UnitEquationSolution& q) { return p.x < q.x; });
  return res;
}

double search_size(const SUnitGroup& G, long bound) {
  return G.torsion_order * std::pow(2.0 * static_cast<double>(bound) + 1, G.rank());
}

UnitEquationResult solve_unit_equation(const NumberField& k, const std::vector<Prime>& S, const FieldElement& a,
                                       const FieldElement& b, long bound) {
  SUnitGroup G = s_unit_group(k, S);
  return solve_unit_equation(G, a, b, G.S, bound);
}

FieldElement lift_to(const NumberField& L, const FieldElement& x) {
  if (x.field() == L) return x;
  if (!L.is_extension()) throw FieldMismatch("element is not in a subfield of the tower");
  return L.embed(lift_to(L.base(), x));
}

bool descend_to(const NumberField& K, const FieldElement& x, FieldElement& out) {
  FieldElement y = x;
  while (y.field() != K) {
    NumberField L = y.field();
    if (!L.is_extension()) throw FieldMismatch("field is not above the target in the tower");
    auto c = L.relative_coords(y);
    for (std::size_t j = 1; j < c.size(); ++j)
      if (!c[j].is_zero()) return false;
    y = c[0];
  }
  out = y;
  return true;
}

std::vector<Prime> primes_above(const NumberField& L, const std::vector<Prime>& S) {
  std::vector<Prime> out;
  for (auto& P : S) {
    if (P->field == L) {
      out.push_back(P);
      continue;
    }
    FieldElement pi = lift_to(L, P->pi);
    for (auto& Q : factor_prime(L, P->p))
      if (valuation(pi, *Q) > 0) out.push_back(Q);
  }
  std::sort(out.begin(), out.end(), prime_less);
  out.erase(std::unique(out.begin(), out.end(), same_prime), out.end());
  return out;
}

namespace {

// Minimal representative of the class of (alpha, beta, gamma) under the
// roots of unity e with e^i = 1 (the only scalings fixing beta).
PowerEquationSolution canonical_form(const PowerEquationSolution& s, const SUnitGroup& G) {
  PowerEquationSolution best = s;
  FieldElement z = G.torsion_gen;
  FieldElement e = G.field.one();
  for (int t = 0; t < G.torsion_order; ++t, e *= z) {
    if (!e.pow(s.i).is_one()) continue;
    FieldElement g = s.gamma * e;
    if (g < best.gamma) best.gamma = g;
  }
  return best;
}

void solve_for_beta(const NumberField& K, const SUnitGroup& G, int i, const FieldElement& beta,
                    const PowerEquationOptions& opt, std::vector<PowerEquationSolution>& out) {
  NumberField L;
  FieldElement root, omega;
  if (i == 2) {
    Extension ext = extend_field(K, ExtensionKind::sqrt, beta);
    L = ext.field;
    if (!ext.trivial && L.degree() > opt.max_extension_degree)
      throw ExtensionBudgetExceeded("K(sqrt beta) has degree " + std::to_string(L.degree()));
    root = ext.trivial ? ext.root : L.adjoined();
  } else {
    auto cubes = roots_in_field(FieldPoly(std::vector<FieldElement>{-beta, K.zero(), K.zero(), K.one()}));
    int want = 2 * K.degree();
    Extension w;
    if (cubes.empty()) want *= 3;
    if (want > opt.max_extension_degree && !(cubes.size() && K.degree() * 2 <= opt.max_extension_degree))
      throw ExtensionBudgetExceeded("K(omega, cbrt beta) has degree " + std::to_string(want));
    w = extend_field(K, ExtensionKind::omega);
    NumberField L1 = w.field;
    omega = w.trivial ? w.root : L1.adjoined();
    if (!cubes.empty()) {
      L = L1;
      root = lift_to(L, cubes[0]);
    } else {
      Extension c = extend_field(L1, ExtensionKind::cbrt, lift_to(L1, beta));
      L = c.field;
      if (L.degree() > opt.max_extension_degree)
        throw ExtensionBudgetExceeded("K(omega, cbrt beta) has degree " + std::to_string(L.degree()));
      root = c.trivial ? c.root : L.adjoined();
    }
    omega = lift_to(L, omega);
  }
  std::vector<Prime> SL = primes_above(L, G.S);
  // The rank and a lower bound for the torsion are known before any units
  // are computed.
  int rank = L.r1() + L.r2() - 1 + static_cast<int>(SL.size());
  double least = (i == 3 ? 6 : 2) * std::pow(2.0 * static_cast<double>(opt.bound) + 1, rank);
  if (least > opt.max_candidates)
    throw BoundExceeded("unit equation over a degree " + std::to_string(L.degree()) + " field of S-rank " +
                        std::to_string(rank) + " exceeds the candidate budget");
  FieldElement coeff = i == 2 ? (root * Rational(2)).inverse() : ((omega - Rational(1)) * root).inverse();
  SUnitGroup GL = s_unit_group(L, SL);
  if (search_size(GL, opt.bound) > opt.max_candidates)
    throw BoundExceeded("unit equation over a degree " + std::to_string(L.degree()) + " field of S-rank " +
                        std::to_string(GL.rank()) + " exceeds the candidate budget");
  UnitEquationResult ue = solve_unit_equation(GL, coeff, -coeff, GL.S, opt.bound);
  for (auto& s : ue.solutions) {
    FieldElement gL, aL;
    if (i == 2) {
      gL = (s.x + s.y) * Rational(1, 2);
      aL = s.x * s.y;
    } else {
      gL = s.x + root;
      aL = s.x * s.y * (s.y - omega * (omega - Rational(1)) * root);
    }
    PowerEquationSolution p;
    p.i = i;
    p.beta = beta;
    p.S = G.S;
    if (!descend_to(K, gL, p.gamma) || !descend_to(K, aL, p.alpha)) continue;
    if (p.alpha.is_zero() || !is_s_unit(p.alpha, G.S) || !is_s_integer(p.gamma, G.S)) continue;
    if (p.alpha + p.beta != p.gamma.pow(i)) throw std::logic_error("power equation solution failed to verify");
    out.push_back(canonical_form(p, G));
  }
}

void finish(std::vector<PowerEquationSolution>& sols) {
  std::sort(sols.begin(), sols.end(), [](const PowerEquationSolution& a, const PowerEquationSolution& b) {
    if (a.beta != b.beta) return a.beta < b.beta;
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    return a.alpha < b.alpha;
  });
  sols.erase(std::unique(sols.begin(), sols.end(),
                         [](const PowerEquationSolution& a, const PowerEquationSolution& b) {
                           return a.beta == b.beta && a.gamma == b.gamma && a.alpha == b.alpha;
                         }),
             sols.end());
}

void check_exponent(int i) {
  if (i != 2 && i != 3) throw InvalidInput("exponent must be 2 or 3");
}

}  // namespace

PowerEquationResult solve_power_equation(const NumberField& k, const std::vector<Prime>& S, int i,
                                         const PowerEquationOptions& opt) {
  check_exponent(i);
  SUnitGroup G = s_unit_group(k, S);
  if (!G.certified()) throw UncertifiedGenerators("S-unit group is not certified");
  PowerEquationResult res;
  res.bound = opt.bound;
  res.betas = power_class_reps(G, i);
  std::vector<PowerEquationSolution> sols;
  for (auto& beta : res.betas) {
    std::vector<PowerEquationSolution> part;
    solve_for_beta(k, G, i, beta, opt, part);
    finish(part);
    sols.insert(sols.end(), part.begin(), part.end());
  }
  res.solutions = std::move(sols);
  return res;
}

PowerEquationResult solve_power_equation(const NumberField& k, const std::vector<Prime>& S, int i,
                                         const FieldElement& beta, const PowerEquationOptions& opt) {
  check_exponent(i);
  SUnitGroup G = s_unit_group(k, S);
  if (!G.certified()) throw UncertifiedGenerators("S-unit group is not certified");
  if (!is_s_unit(beta, G.S)) throw NotAUnit("beta must be an S-unit");
  PowerEquationResult res;
  res.bound = opt.bound;
  res.betas = {beta};
  solve_for_beta(k, G, i, beta, opt, res.solutions);
  finish(res.solutions);
  return res;
}

bool equivalent(const PowerEquationSolution& s1, const PowerEquationSolution& s2) {
  if (s1.i != s2.i) return false;
  if (s1.gamma.is_zero() != s2.gamma.is_zero()) return false;
  if (!s1.gamma.is_zero()) {
    FieldElement e = s2.gamma / s1.gamma;
    if (!is_s_unit(e, s1.S)) return false;
    FieldElement ei = e.pow(s1.i);
    return s2.alpha == ei * s1.alpha && s2.beta == ei * s1.beta;
  }
  FieldElement q = s2.beta / s1.beta;
  if (s2.alpha / s1.alpha != q) return false;
  return is_power(q, s1.i);
}

}  // namespace aflt
