#include "aflt/criteria.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "aflt/errors.hpp"

namespace aflt {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "holds";
    case Verdict::fails:
      return "fails";
    default:
      return "inconclusive";
  }
}

std::string to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::pass:
      return "pass";
    case HypothesisStatus::fail:
      return "fail";
    default:
      return "uncertified";
  }
}

namespace {

int prime_of(Signature sig) { return sig == Signature::pp2 ? 2 : 3; }
long slope_of(Signature sig) { return sig == Signature::pp2 ? 6 : 3; }

Hypothesis hyp(std::string name, bool ok, std::string witness = "") {
  return {std::move(name), ok ? HypothesisStatus::pass : HypothesisStatus::fail, std::move(witness)};
}

Hypothesis uncertain(std::string name, std::string witness) {
  return {std::move(name), HypothesisStatus::uncertified, std::move(witness)};
}

bool any_status(const CriterionReport& r, HypothesisStatus s) {
  return std::any_of(r.hypotheses.begin(), r.hypotheses.end(), [&](const Hypothesis& h) { return h.status == s; });
}

bool all_pass(const CriterionReport& r) { return !any_status(r, HypothesisStatus::fail) && !any_status(r, HypothesisStatus::uncertified); }

CriterionReport& finalize(CriterionReport& r, const CheckOptions& opt) {
  r.uncertified = any_status(r, HypothesisStatus::uncertified);
  if (any_status(r, HypothesisStatus::fail)) {
    r.verdict = Verdict::fails;
  } else if (r.uncertified) {
    r.verdict = Verdict::inconclusive;
  } else if (r.bounded && !opt.assume_complete) {
    r.verdict = Verdict::inconclusive;
    r.notes.push_back("no violation among solutions with exponents bounded by " + std::to_string(r.bound_used));
  } else {
    r.verdict = Verdict::holds;
    if (r.bounded) r.notes.push_back("bounded search treated as complete");
    r.notes.push_back("criterion satisfied: asymptotic Fermat holds for p > B_K (B_K is not computed)");
  }
  return r;
}

CriterionReport start(const std::string& id, const NumberField& k, const CheckOptions& opt) {
  CriterionReport r;
  r.theorem_id = id;
  r.field = k;
  r.bound_used = opt.bound;
  return r;
}

Hypothesis totally_real(const NumberField& k) {
  return hyp("K totally real", k.totally_real(), "signature (" + std::to_string(k.r1()) + "," + std::to_string(k.r2()) + ")");
}

Hypothesis inert(const NumberField& k, long l) {
  SplittingType t = splitting_type(k, l);
  return hyp(std::to_string(l) + " inert in K", t == SplittingType::inert, to_string(t));
}

Hypothesis totally_ramified(const NumberField& k, long q) {
  SplittingType t = splitting_type(k, q);
  return hyp(std::to_string(q) + " totally ramified in K", t == SplittingType::totally_ramified, to_string(t));
}

Hypothesis narrow_odd(const NumberField& k, const CheckOptions& opt) {
  const std::string name = "2 does not divide h+";
  try {
    NarrowClassNumber n = narrow_class_number(k, opt.class_options);
    std::string w = "h+ = " + n.h_plus.get_str();
    if (!n.certified) return uncertain(name, w + " (uncertified)");
    return hyp(name, !n.two_divides, w);
  } catch (const Uncertified& e) {
    return uncertain(name, e.what());
  }
}

Hypothesis class_number_prime_to(const std::string& name, const std::string& label, const NumberField& k, long l,
                                  const ClassGroupOptions& copt) {
  try {
    ClassGroup G = class_group(k, copt);
    std::string w = label + " = " + G.order.get_str();
    if (G.asserted) return uncertain(name, w + " (asserted, unverified)");
    if (!G.certified) return uncertain(name, "class group " + G.status);
    return hyp(name, G.order % l != 0, w);
  } catch (const Uncertified& e) {
    return uncertain(name, e.what());
  }
}

NumberField omega_field(const NumberField& k) { return extend_field(k, ExtensionKind::omega).field; }

std::vector<Hypothesis> pp3_class_hypotheses(const NumberField& k, const CheckOptions& opt) {
  std::vector<Hypothesis> out;
  out.push_back(class_number_prime_to("3 does not divide h_K", "h_K", k, 3, opt.class_options));
  ClassGroupOptions o = opt.class_options;
  o.asserted_order = opt.asserted_h_k_omega;
  out.push_back(class_number_prime_to("3 does not divide h_K(omega)", "h_K(omega)", omega_field(k), 3, o));
  return out;
}

PowerEquationOptions power_options(const CheckOptions& opt, long bound) {
  PowerEquationOptions p;
  p.bound = bound;
  p.max_extension_degree = opt.max_extension_degree;
  p.max_candidates = opt.max_candidates;
  return p;
}

std::string names(const std::vector<Prime>& S) {
  std::string s;
  for (auto& P : S) s += (s.empty() ? "" : ", ") + P->str();
  return s;
}

ExaminedSolution examined(const PowerEquationSolution& s) {
  ExaminedSolution e;
  e.elements = {{"alpha", s.alpha.str()}, {"beta", s.beta.str()}, {"gamma", s.gamma.str()}};
  return e;
}

// Replays the case analysis reducing alpha + beta = gamma^i to beta = 1:
// after swapping and scaling by l^(i k), v(beta) < i, and each case fixes
// v(alpha) or bounds it.
void cross_check_cases(CriterionReport& r, const NumberField& k, const Prime& P, int i, const CheckOptions& opt) {
  std::vector<Prime> S{P};
  PowerEquationResult all;
  try {
    PowerEquationOptions po = power_options(opt, opt.replay_bound);
    po.max_extension_degree = std::min(po.max_extension_degree, opt.replay_max_extension_degree);
    all = solve_power_equation(k, S, i, po);
  } catch (const Error& e) {
    r.notes.push_back(std::string("case split cross-check skipped: ") + e.what());
    return;
  }
  long cap = i == 2 ? 6 : 3;
  for (auto& s : all.solutions) {
    if (s.gamma.is_zero()) continue;
    long va = valuation(s.alpha, *P), vb = valuation(s.beta, *P);
    if (vb > va) std::swap(va, vb);
    long shift = vb - ((vb % i) + i) % i;
    va -= shift;
    vb -= shift;
    bool ok;
    if (vb > 0)
      ok = va == vb;
    else
      ok = va <= cap;
    if (!ok)
      r.consistency_errors.push_back("solution (" + s.alpha.str() + ", " + s.beta.str() + ", " + s.gamma.str() +
                                     ") contradicts the case with v(beta) = " + std::to_string(vb));
  }
  r.notes.push_back("case split cross-checked on " + std::to_string(all.solutions.size()) +
                    " solution classes with exponents bounded by " + std::to_string(opt.replay_bound));
}

// Mixed unit equation u + v = 1 over L = K(omega) with u an S_L-unit (S_L
// above 3) and v a unit. The argument shows 9 never divides u; with q given
// the residue of v modulo the primes above q is also checked.
void unit_obstruction(CriterionReport& r, const NumberField& k, std::optional<long> q, const CheckOptions& opt) {
  NumberField L = omega_field(k);
  std::vector<Prime> SL = primes_above(L, factor_prime(k, 3));
  FieldElement w = L.adjoined();
  Ideal pi = Ideal::principal(w - Rational(1));
  if (SL.size() != 1 || SL[0]->ideal != pi || Ideal::principal(L.from_integer(3)) != pi.pow(2)) {
    r.consistency_errors.push_back("(3) is not the square of (omega - 1) in K(omega)");
    return;
  }
  const Prime& p = SL[0];
  SUnitGroup G;
  try {
    G = s_unit_group(L, SL);
    if (!G.certified()) throw UncertifiedGenerators("S-unit group of K(omega) is not certified");
  } catch (const Error& e) {
    r.notes.push_back(std::string("unit equation replay skipped: ") + e.what());
    return;
  }
  long B = opt.replay_bound;
  while (B > 0 && search_size(G, B) > opt.max_candidates) --B;
  UnitEquationResult ue = solve_unit_equation(G, L.one(), L.one(), {}, B);
  NumberField F = omega_field(NumberField::rationals());
  int v9 = valuation(L.from_integer(9), *p);
  for (auto& s : ue.solutions) {
    ExaminedSolution e;
    e.elements = {{"u", s.x.str()}, {"v", s.y.str()}};
    long vu = valuation(s.x, *p);
    e.values.push_back({"v_p(u)", vu});
    if (vu >= v9) {
      e.ok = false;
      r.consistency_errors.push_back("u + v = 1 with 9 | u: u = " + s.x.str());
      if (!relative_norm_to_f(F, s.y).is_one())
        r.consistency_errors.push_back("Norm(v) != 1 for a solution with 9 | u");
    }
    if (q) {
      try {
        e.elements.push_back({"v mod q", unit_residue_class(L, s.y, *q)});
      } catch (const ResidueOutsideCyclic& ex) {
        e.ok = false;
        r.consistency_errors.push_back(ex.what());
      }
      if (!norm_congruence(L, s.y, *q).holds) {
        e.ok = false;
        r.consistency_errors.push_back("norm congruence fails for v = " + s.y.str());
      }
    }
    r.solutions_examined.push_back(std::move(e));
  }
  r.notes.push_back("unit equation u + v = 1 over K(omega) replayed with exponents bounded by " + std::to_string(B) +
                    ": " + std::to_string(ue.solutions.size()) + " solutions");
}

}  // namespace

CriterionReport check_main(const NumberField& k, Signature sig, const CheckOptions& opt) {
  int l = prime_of(sig);
  long m = slope_of(sig);
  CriterionReport r = start(to_string(sig) + "_main", k, opt);
  r.hypotheses.push_back(totally_real(k));
  std::vector<Prime> S = factor_prime(k, l);
  const std::string cl = "Cl_S(K)[" + std::to_string(l) + "] trivial";
  try {
    bool t = s_class_torsion_trivial(k, S, l, opt.class_options);
    r.hypotheses.push_back(hyp(cl, t, "S = {" + names(S) + "}"));
  } catch (const Uncertified& e) {
    r.hypotheses.push_back(uncertain(cl, e.what()));
  }
  if (any_status(r, HypothesisStatus::fail)) return finalize(r, opt);

  const std::string dp = "distinguished prime with |v(alpha/beta)| <= " + std::to_string(m) + " v(" + std::to_string(l) + ")";
  PowerEquationResult res;
  try {
    res = solve_power_equation(k, S, l, power_options(opt, opt.bound));
  } catch (const Error& e) {
    r.hypotheses.push_back(uncertain(dp, e.what()));
    return finalize(r, opt);
  }
  r.bounded = true;
  std::vector<std::string> violations;
  for (auto& P : S) {
    r.primes_tried.push_back(P);
    const PowerEquationSolution* bad = nullptr;
    for (auto& s : res.solutions) {
      long v = valuation(s.alpha, *P) - valuation(s.beta, *P);
      if (std::labs(v) > m * P->e) {
        bad = &s;
        break;
      }
    }
    if (!bad) {
      r.distinguished_prime = P;
      break;
    }
    violations.push_back(P->str() + ": (" + bad->alpha.str() + ", " + bad->beta.str() + ", " + bad->gamma.str() + ")");
  }
  for (auto& s : res.solutions) {
    ExaminedSolution e = examined(s);
    for (auto& P : S) e.values.push_back({"v_" + P->str() + "(alpha/beta)", valuation(s.alpha, *P) - valuation(s.beta, *P)});
    if (r.distinguished_prime) {
      const Prime& P = *r.distinguished_prime;
      e.ok = std::labs(valuation(s.alpha, *P) - valuation(s.beta, *P)) <= m * P->e;
    } else {
      e.ok = false;
    }
    r.solutions_examined.push_back(std::move(e));
  }
  if (r.distinguished_prime) {
    r.hypotheses.push_back(hyp(dp, true, (*r.distinguished_prime)->str()));
  } else {
    std::string w;
    for (auto& v : violations) w += (w.empty() ? "" : "; ") + v;
    r.hypotheses.push_back(hyp(dp, false, S.empty() ? "S is empty" : w));
  }
  r.notes.push_back(std::to_string(res.betas.size()) + " classes of beta examined");
  return finalize(r, opt);
}

CriterionReport check_inert(const NumberField& k, Signature sig, const CheckOptions& opt) {
  int l = prime_of(sig);
  CriterionReport r = start(to_string(sig) + "_inert", k, opt);
  r.hypotheses.push_back(totally_real(k));
  r.hypotheses.push_back(inert(k, l));
  if (sig == Signature::pp2) {
    r.hypotheses.push_back(narrow_odd(k, opt));
  } else {
    for (auto& h : pp3_class_hypotheses(k, opt)) r.hypotheses.push_back(h);
  }
  if (any_status(r, HypothesisStatus::fail)) return finalize(r, opt);

  long cap = sig == Signature::pp2 ? 6 : 3;
  Prime P = factor_prime(k, l).at(0);
  r.primes_tried.push_back(P);
  const std::string name = "v(alpha) <= " + std::to_string(cap) + " on alpha + 1 = gamma^" + std::to_string(l);
  PowerEquationResult res;
  try {
    res = solve_power_equation(k, {P}, l, k.one(), power_options(opt, opt.bound));
  } catch (const Error& e) {
    r.hypotheses.push_back(uncertain(name, e.what()));
    return finalize(r, opt);
  }
  r.bounded = true;
  std::string bad;
  for (auto& s : res.solutions) {
    long v = valuation(s.alpha, *P);
    if (v < 0) continue;
    ExaminedSolution e = examined(s);
    e.values.push_back({"v(alpha)", v});
    e.ok = v <= cap;
    if (!e.ok && bad.empty()) bad = "alpha = " + s.alpha.str() + " with v(alpha) = " + std::to_string(v);
    r.solutions_examined.push_back(std::move(e));
  }
  r.hypotheses.push_back(hyp(name, bad.empty(), bad.empty() ? std::to_string(r.solutions_examined.size()) + " solutions" : bad));
  if (bad.empty()) r.distinguished_prime = P;
  if (all_pass(r)) cross_check_cases(r, k, P, l, opt);
  return finalize(r, opt);
}

CriterionReport check_quad(long d, Signature sig, const CheckOptions& opt) {
  if (d <= 0) throw InvalidInput("d must be positive");
  Integer D(d);
  bool square = mpz_perfect_square_p(D.get_mpz_t()) != 0;
  NumberField k = square ? NumberField::rationals() : NumberField::quadratic(d);
  CriterionReport r = start(to_string(sig) + "_quad", k, opt);
  if (square) r.notes.push_back("d is a square, so Q(sqrt d) = Q");
  if (sig == Signature::pp2) {
    r.hypotheses.push_back(hyp("d prime", is_prime(d), std::to_string(d)));
    r.hypotheses.push_back(hyp("d = 5 mod 8", d % 8 == 5, std::to_string(d % 8)));
    r.hypotheses.push_back(hyp("d > 5", d > 5, std::to_string(d)));
    if (all_pass(r))
      r.notes.push_back("2 is inert and h+ is odd; x + y = 1 over S = {(2)} has only the solutions (-1, 2), (1/2, 1/2), (2, -1)");
    return finalize(r, opt);
  }
  r.hypotheses.push_back(hyp("d squarefree and d > 1", d > 1 && is_squarefree(D), std::to_string(d)));
  r.hypotheses.push_back(hyp("d = 2 mod 3", d % 3 == 2, std::to_string(d % 3)));
  if (any_status(r, HypothesisStatus::fail)) return finalize(r, opt);
  for (auto& h : pp3_class_hypotheses(k, opt)) r.hypotheses.push_back(h);
  unit_obstruction(r, k, std::nullopt, opt);
  return finalize(r, opt);
}

CriterionReport check_local(const NumberField& k, long q, Signature sig, const CheckOptions& opt) {
  if (q < 5 || !is_prime(q)) throw InvalidInput("q must be a prime >= 5");
  int l = prime_of(sig);
  long n = k.degree();
  CriterionReport r = start(to_string(sig) + "_local", k, opt);
  r.hypotheses.push_back(totally_real(k));
  if (sig == Signature::pp2) {
    r.hypotheses.push_back(narrow_odd(k, opt));
    r.hypotheses.push_back(hyp("gcd(n, q - 1) = 1", std::gcd(n, q - 1) == 1, "gcd = " + std::to_string(std::gcd(n, q - 1))));
  } else {
    for (auto& h : pp3_class_hypotheses(k, opt)) r.hypotheses.push_back(h);
    r.hypotheses.push_back(
        hyp("gcd(n, q^2 - 1) = 1", std::gcd(n, q * q - 1) == 1, "gcd = " + std::to_string(std::gcd(n, q * q - 1))));
  }
  r.hypotheses.push_back(inert(k, l));
  r.hypotheses.push_back(totally_ramified(k, q));
  if (any_status(r, HypothesisStatus::fail)) return finalize(r, opt);

  if (sig == Signature::pp2) {
    // Known bound max(v(x), v(y)) < 2 v(2) for x + y = 1 over S = {P}; checked
    // on the solutions found, together with v(alpha) = 2 + v(x) + v(y) < 6.
    Prime P = factor_prime(k, 2).at(0);
    SUnitGroup G;
    try {
      G = s_unit_group(k, {P});
      if (!G.certified()) throw UncertifiedGenerators("S-unit group is not certified");
    } catch (const Error& e) {
      r.notes.push_back(std::string("unit equation replay skipped: ") + e.what());
      return finalize(r, opt);
    }
    long B = opt.replay_bound;
    while (B > 0 && search_size(G, B) > opt.max_candidates) --B;
    UnitEquationResult ue = solve_unit_equation(G, k.one(), k.one(), G.S, B);
    for (auto& s : ue.solutions) {
      ExaminedSolution e;
      FieldElement alpha = s.x * s.y * Rational(-4);
      e.elements = {{"x", s.x.str()}, {"y", s.y.str()}, {"alpha", alpha.str()}};
      long vx = valuation(s.x, *P), vy = valuation(s.y, *P), va = valuation(alpha, *P);
      e.values = {{"v(x)", vx}, {"v(y)", vy}, {"v(alpha)", va}};
      e.ok = std::max(vx, vy) < 2 && va < 6;
      if (!e.ok) r.consistency_errors.push_back("x + y = 1 with x = " + s.x.str() + " exceeds max(v(x), v(y)) < 2");
      r.solutions_examined.push_back(std::move(e));
    }
    r.notes.push_back("unit equation x + y = 1 replayed with exponents bounded by " + std::to_string(B) + ": " +
                      std::to_string(ue.solutions.size()) + " solutions");
  } else {
    unit_obstruction(r, k, q, opt);
  }
  return finalize(r, opt);
}

CriterionReport check_iko(const NumberField& k, const CheckOptions& opt) {
  CriterionReport r = start("pp2_iko", k, opt);
  r.hypotheses.push_back(totally_real(k));
  {
    const std::string name = "h+ = 1";
    try {
      NarrowClassNumber n = narrow_class_number(k, opt.class_options);
      if (!n.certified)
        r.hypotheses.push_back(uncertain(name, "h+ = " + n.h_plus.get_str() + " (uncertified)"));
      else
        r.hypotheses.push_back(hyp(name, n.h_plus == 1, "h+ = " + n.h_plus.get_str()));
    } catch (const Uncertified& e) {
      r.hypotheses.push_back(uncertain(name, e.what()));
    }
  }
  if (any_status(r, HypothesisStatus::fail)) return finalize(r, opt);
  PrimeSets ps = prime_sets(k, 2);
  const std::string a = "(A) some P in T_K with max(|v(x)|, |v(y)|) <= 4 v_P(2)";
  SUnitGroup G;
  try {
    G = s_unit_group(k, ps.S);
    if (!G.certified()) throw UncertifiedGenerators("S-unit group is not certified");
    if (search_size(G, opt.bound) > opt.max_candidates) throw BoundExceeded("unit equation exceeds the candidate budget");
  } catch (const Error& e) {
    r.hypotheses.push_back(uncertain(a, e.what()));
    return finalize(r, opt);
  }
  r.bounded = true;
  r.primes_tried = ps.T;
  UnitEquationResult ue = solve_unit_equation(G, k.one(), k.one(), G.S, opt.bound);
  std::string bad;
  for (auto& s : ue.solutions) {
    ExaminedSolution e;
    e.elements = {{"x", s.x.str()}, {"y", s.y.str()}};
    bool ok = false;
    for (auto& P : ps.T) {
      long m = std::max(std::labs(valuation(s.x, *P)), std::labs(valuation(s.y, *P)));
      e.values.push_back({"max |v_" + P->str() + "|", m});
      ok = ok || m <= 4L * P->e;
    }
    e.ok = ok;
    if (!ok && bad.empty()) bad = "(" + s.x.str() + ", " + s.y.str() + ")";
    r.solutions_examined.push_back(std::move(e));
  }
  r.hypotheses.push_back(hyp(a, bad.empty(), bad.empty() ? names(ps.T) : bad));
  r.hypotheses.push_back(uncertain("(B) the same over every K(sqrt a)", "not evaluated"));
  return finalize(r, opt);
}

FieldElement relative_norm_to_f(const NumberField& F, const FieldElement& x) {
  NumberField L = x.field();
  if (!L.is_extension() || L.kind() != ExtensionKind::omega) throw TowerMismatch("element is not in K(omega)");
  if (!F.is_extension() || F.kind() != ExtensionKind::omega || F.base().degree() != 1)
    throw TowerMismatch("F must be Q(omega)");
  NumberField K = L.base();
  int n = K.degree();
  auto c = L.relative_coords(x);
  c.resize(2, K.zero());
  FieldElement w = F.adjoined();
  std::vector<std::vector<FieldElement>> M(static_cast<std::size_t>(n), std::vector<FieldElement>(static_cast<std::size_t>(n), F.zero()));
  FieldElement t = K.one();
  for (int j = 0; j < n; ++j, t *= K.gen()) {
    RatVector a = (c[0] * t).power_coords(), b = (c[1] * t).power_coords();
    for (int i = 0; i < n; ++i) {
      auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      Rational ai = ui < a.size() ? a[ui] : Rational(0), bi = ui < b.size() ? b[ui] : Rational(0);
      M[ui][uj] = F.from_rational(ai) + w * bi;
    }
  }
  return determinant(M);
}

namespace {

struct OmegaTower {
  NumberField K, F;
  Prime Q;
  int n = 0;
};

OmegaTower omega_tower(const NumberField& L, long q) {
  if (!L.is_extension() || L.kind() != ExtensionKind::omega) throw TowerMismatch("L must be K(omega)");
  OmegaTower t;
  t.K = L.base();
  t.n = t.K.degree();
  auto ps = factor_prime(t.K, q);
  if (ps.size() != 1 || ps[0]->e != t.n) throw TowerMismatch(std::to_string(q) + " is not totally ramified in K");
  t.Q = ps[0];
  t.F = omega_field(NumberField::rationals());
  return t;
}

long residue_integer(const PrimeIdeal& Q, const FieldElement& c) {
  FpPoly r = Q.reduce(c);
  return r.empty() ? 0 : static_cast<long>(r[0]);
}

// Coordinates of x in Q(omega) on the basis 1, omega.
std::pair<Rational, Rational> omega_coords(const NumberField& F, const FieldElement& x) {
  auto c = F.relative_coords(x);
  c.resize(2, F.base().zero());
  return {c[0].rational_value(), c[1].rational_value()};
}

bool divisible(const Rational& r, long q) { return r.get_num() % q == 0 && r.get_den() % q != 0; }

long mod(const Rational& r, long q) {
  Integer num = r.get_num() % q, den = r.get_den() % q;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(q).get_mpz_t());
  Integer v = (num * inv) % q;
  if (v < 0) v += q;
  return v.get_si();
}

}  // namespace

NormCongruence norm_congruence(const NumberField& L, const FieldElement& lambda, long q) {
  if (lambda.field() != L) throw FieldMismatch("lambda is not in L");
  if (!lambda.is_integral()) throw InvalidInput("lambda must be integral");
  OmegaTower t = omega_tower(L, q);
  auto c = L.relative_coords(lambda);
  c.resize(2, t.K.zero());
  long r0 = residue_integer(*t.Q, c[0]), r1 = residue_integer(*t.Q, c[1]);
  NormCongruence out;
  out.F = t.F;
  out.b = t.F.from_integer(r0) + t.F.adjoined() * Rational(r1);
  out.norm = relative_norm_to_f(t.F, lambda);
  auto d = omega_coords(t.F, out.norm - out.b.pow(t.n));
  out.holds = divisible(d.first, q) && divisible(d.second, q);
  return out;
}

std::string unit_residue_class(const NumberField& L, const FieldElement& v, long q) {
  OmegaTower t = omega_tower(L, q);
  if (std::gcd(static_cast<long>(t.n), q * q - 1) != 1) throw InvalidInput("gcd(n, q^2 - 1) must be 1");
  if (v.is_zero() || !v.is_integral() || abs(v.norm()) != 1) throw NotAUnit("v is not a unit");
  NormCongruence nc = norm_congruence(L, v, q);
  auto b = omega_coords(nc.F, nc.b);
  long b0 = mod(b.first, q), b1 = mod(b.second, q);
  const std::vector<std::pair<std::string, std::pair<long, long>>> classes = {
      {"1", {1, 0}}, {"-1", {q - 1, 0}}, {"omega+1", {1, 1}}, {"-(omega+1)", {q - 1, q - 1}}, {"omega", {0, 1}}, {"-omega", {0, q - 1}}};
  for (auto& [name, rc] : classes)
    if (rc.first == b0 && rc.second == b1) return name;
  throw ResidueOutsideCyclic("unit is " + std::to_string(b0) + " + " + std::to_string(b1) +
                             " omega mod q, outside <omega + 1>");
}

}  // namespace aflt
