#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "aflt/criteria.hpp"
#include "aflt/errors.hpp"

using namespace aflt;

namespace {

const Hypothesis& find(const CriterionReport& r, const std::string& name) {
  for (auto& h : r.hypotheses)
    if (h.name == name) return h;
  FAIL("missing hypothesis " << name);
  return r.hypotheses.front();
}

bool trial_prime(long d) {
  if (d < 2) return false;
  for (long t = 2; t * t <= d; ++t)
    if (d % t == 0) return false;
  return true;
}

CheckOptions small(long bound) {
  CheckOptions o;
  o.bound = bound;
  o.replay_bound = std::min(bound, 6L);
  return o;
}

FieldElement random_integral(const NumberField& L, SplitMix64& rng, long m) {
  FieldElement x = L.zero();
  for (int i = 0; i < L.degree(); ++i) x += L.basis_element(i) * Rational(rng.range(-m, m));
  return x;
}

}  // namespace

TEST_CASE("quadratic pp2 criterion matches integer arithmetic below 500") {
  for (long d = 1; d < 500; ++d) {
    bool expect = trial_prime(d) && d % 8 == 5 && d > 5;
    CriterionReport r = check_quad(d, Signature::pp2);
    CHECK_MESSAGE((r.verdict == Verdict::holds) == expect, d);
    CHECK((r.verdict == Verdict::fails) == !expect);
    CHECK(r.theorem_id == "pp2_quad");
  }
  CHECK(check_quad(13, Signature::pp2).verdict == Verdict::holds);
  CHECK(check_quad(17, Signature::pp2).verdict == Verdict::fails);
  CriterionReport twelve = check_quad(12, Signature::pp2);
  CHECK(find(twelve, "d prime").status == HypothesisStatus::fail);
  CHECK_THROWS_AS(check_quad(0, Signature::pp2), InvalidInput);
}

TEST_CASE("quadratic pp3 criterion on d = 5") {
  CriterionReport r = check_quad(5, Signature::pp3, small(6));
  CHECK(find(r, "d = 2 mod 3").status == HypothesisStatus::pass);
  CHECK(find(r, "3 does not divide h_K").witness == "h_K = 1");
  CHECK(find(r, "3 does not divide h_K(omega)").status == HypothesisStatus::pass);
  CHECK(r.consistency_errors.empty());
  CHECK(r.verdict == Verdict::holds);

  CHECK(check_quad(7, Signature::pp3).verdict == Verdict::fails);
  CHECK(find(check_quad(20, Signature::pp3), "d squarefree and d > 1").status == HypothesisStatus::fail);
}

TEST_CASE("main pp2 criterion over Q(sqrt 13)") {
  NumberField k = NumberField::quadratic(13);
  CriterionReport r = check_main(k, Signature::pp2, small(8));
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK(r.bounded);
  CHECK(r.bound_used == 8);
  REQUIRE(r.distinguished_prime);
  CHECK((*r.distinguished_prime)->p == 2);
  CHECK(!r.solutions_examined.empty());
  for (auto& e : r.solutions_examined) {
    CHECK(e.ok);
    for (auto& [name, v] : e.values) CHECK(std::labs(v) <= 6);
  }
  CriterionReport done = check_main(k, Signature::pp2, [] {
    CheckOptions o = small(8);
    o.assume_complete = true;
    return o;
  }());
  CHECK(done.verdict == Verdict::holds);
}

TEST_CASE("main pp3 criterion over Q: class hypothesis is trivial") {
  CriterionReport r = check_main(NumberField::rationals(), Signature::pp3, small(4));
  CHECK(find(r, "Cl_S(K)[3] trivial").status == HypothesisStatus::pass);
  CHECK(r.verdict != Verdict::fails);
}

TEST_CASE("Cl_S[2] over Q(sqrt 10) against the class group") {
  NumberField k = NumberField::quadratic(10);
  ClassGroup G = class_group(k);
  auto S = factor_prime(k, 2);
  REQUIRE(S.size() == 1);
  CHECK(G.order == 2);
  // The prime above 2 is not principal, so it generates Cl and Cl_S = 1.
  CHECK(!G.is_principal(S[0]->ideal));
  CHECK(s_class_torsion_trivial(k, S, 2));
}

TEST_CASE("inert criteria") {
  CriterionReport r13 = check_inert(NumberField::quadratic(13), Signature::pp2, small(10));
  CHECK(r13.verdict == Verdict::inconclusive);
  CHECK(r13.consistency_errors.empty());
  std::set<std::string> alphas;
  for (auto& e : r13.solutions_examined) {
    alphas.insert(e.elements[0].second);
    CHECK(e.values[0].second <= 6);
  }
  CHECK(alphas == std::set<std::string>{"-1", "8"});

  CriterionReport r7 = check_inert(NumberField::quadratic(7), Signature::pp2, small(10));
  CHECK(r7.verdict == Verdict::fails);
  CHECK(find(r7, "2 inert in K").status == HypothesisStatus::fail);

  CriterionReport r5 = check_inert(NumberField::quadratic(5), Signature::pp3, small(6));
  CHECK(find(r5, "3 inert in K").status == HypothesisStatus::pass);
  CHECK(find(r5, "3 does not divide h_K(omega)").status == HypothesisStatus::pass);
  CHECK(r5.verdict != Verdict::fails);
}

TEST_CASE("fails stays fails under a larger bound") {
  NumberField k7 = NumberField::quadratic(7);
  CHECK(check_inert(k7, Signature::pp2, small(2)).verdict == Verdict::fails);
  CHECK(check_inert(k7, Signature::pp2, small(4)).verdict == Verdict::fails);
  CHECK(check_quad(17, Signature::pp2, small(2)).verdict == Verdict::fails);
  CHECK(check_quad(17, Signature::pp2, small(24)).verdict == Verdict::fails);
  NumberField k13 = NumberField::quadratic(13);
  CHECK(check_iko(k13, small(4)).verdict == Verdict::fails);
  CHECK(check_iko(k13, small(8)).verdict == Verdict::fails);
}

TEST_CASE("|v(alpha/beta)| is invariant under scaling by S-units") {
  SplitMix64 rng(7);
  struct Case {
    NumberField k;
    std::vector<long> ps;
    int i;
    long bound;
  };
  std::vector<Case> cases = {{NumberField::quadratic(13), {2}, 2, 6},
                             {NumberField::rationals(), {2, 3}, 2, 5},
                             {NumberField::rationals(), {3}, 3, 6}};
  int checked = 0;
  for (auto& c : cases) {
    std::vector<Prime> S;
    for (long p : c.ps)
      for (auto& P : factor_prime(c.k, p)) S.push_back(P);
    PowerEquationOptions po;
    po.bound = c.bound;
    auto res = solve_power_equation(c.k, S, c.i, po);
    SUnitGroup G = s_unit_group(c.k, S);
    REQUIRE(!res.solutions.empty());
    for (auto& s : res.solutions)
      for (int trial = 0; trial < 4; ++trial) {
        std::vector<long> ex(static_cast<std::size_t>(G.rank()));
        for (auto& e : ex) e = rng.range(-3, 3);
        FieldElement eps = s_unit_from_exponents(G, static_cast<int>(rng.range(0, G.torsion_order - 1)), ex);
        PowerEquationSolution t = s;
        t.alpha = s.alpha * eps.pow(c.i);
        t.beta = s.beta * eps.pow(c.i);
        t.gamma = s.gamma * eps;
        t.canonical = false;
        REQUIRE(t.alpha + t.beta == t.gamma.pow(c.i));
        CHECK(equivalent(s, t));
        for (auto& P : S) {
          long v0 = valuation(s.alpha, *P) - valuation(s.beta, *P);
          long v1 = valuation(t.alpha, *P) - valuation(t.beta, *P);
          CHECK(std::labs(v0) == std::labs(v1));
        }
        ++checked;
      }
  }
  CHECK(checked > 20);
}

TEST_CASE("norm congruence: trivial elements") {
  NumberField L = extend_field(NumberField::make(std::vector<long>{-7, -7, 0, 1}), ExtensionKind::omega).field;
  NormCongruence five = norm_congruence(L, L.from_integer(5), 7);
  CHECK(five.b == five.F.from_integer(5));
  CHECK(five.norm == five.F.from_integer(125));
  CHECK(five.holds);

  NormCongruence w = norm_congruence(L, L.adjoined(), 7);
  CHECK(w.b == w.F.adjoined());
  CHECK(w.norm == w.F.adjoined().pow(3));
  CHECK(w.holds);

  CHECK_THROWS_AS(norm_congruence(L, L.from_integer(5), 11), TowerMismatch);
  NumberField k7 = NumberField::quadratic(7);
  CHECK_THROWS_AS(norm_congruence(k7, k7.one(), 7), TowerMismatch);
  CHECK_THROWS_AS(norm_congruence(L, L.one() * Rational(1, 2), 7), InvalidInput);
}

TEST_CASE("norm congruence on random integral elements") {
  SplitMix64 rng(11);
  // x^3 - q x - q is Eisenstein at q and totally real for q = 7, 11.
  for (long q : {7L, 11L}) {
    NumberField K = NumberField::make(std::vector<long>{-q, -q, 0, 1});
    REQUIRE(K.totally_real());
    NumberField L = extend_field(K, ExtensionKind::omega).field;
    for (int t = 0; t < 100; ++t) {
      FieldElement x = random_integral(L, rng, 20);
      if (x.is_zero()) continue;
      NormCongruence nc = norm_congruence(L, x, q);
      CHECK_MESSAGE(nc.holds, x.str());
      CHECK(nc.norm.norm() == x.norm());
    }
  }
}

TEST_CASE("unit residue classes") {
  NumberField F = extend_field(NumberField::rationals(), ExtensionKind::omega).field;
  FieldElement w = F.adjoined();
  CHECK(unit_residue_class(F, F.from_integer(-1), 5) == "-1");
  CHECK(unit_residue_class(F, F.one(), 5) == "1");
  CHECK(unit_residue_class(F, w + Rational(1), 5) == "omega+1");
  CHECK(unit_residue_class(F, -(w + Rational(1)), 5) == "-(omega+1)");
  CHECK(unit_residue_class(F, w, 11) == "omega");
  CHECK(unit_residue_class(F, -w, 11) == "-omega");
  CHECK_THROWS_AS(unit_residue_class(F, F.from_integer(2), 5), NotAUnit);

  NumberField K3 = NumberField::make(std::vector<long>{-7, -7, 0, 1});
  NumberField L3 = extend_field(K3, ExtensionKind::omega).field;
  CHECK_THROWS_AS(unit_residue_class(L3, L3.one(), 7), InvalidInput);
}

TEST_CASE("unit residue classes of the units of a quintic tower") {
  NumberField K = NumberField::make(std::vector<long>{-20, 50, -10, -25, 0, 1});
  NumberField L = extend_field(K, ExtensionKind::omega).field;
  SUnitGroup G = unit_group(L);
  REQUIRE(G.unit_rank() == 4);
  SplitMix64 rng(5);
  std::vector<FieldElement> units = G.fundamental_units;
  for (int t = 0; t < 10; ++t) {
    std::vector<long> ex(4);
    for (auto& e : ex) e = rng.range(-1, 1);
    units.push_back(s_unit_from_exponents(G, static_cast<int>(rng.range(0, 5)), ex));
  }
  for (auto& u : units) {
    std::string c;
    CHECK_NOTHROW(c = unit_residue_class(L, u, 5));
    CHECK(!c.empty());
  }
}

TEST_CASE("local criteria") {
  CHECK_THROWS_AS(check_local(NumberField::quadratic(13), 4, Signature::pp2), InvalidInput);
  CHECK_THROWS_AS(check_local(NumberField::quadratic(13), 9, Signature::pp2), InvalidInput);

  NumberField k = NumberField::make(std::vector<long>{-85, -51, 0, 1});
  CriterionReport r = check_local(k, 17, Signature::pp2, small(6));
  for (auto& h : r.hypotheses) CHECK_MESSAGE(h.status == HypothesisStatus::pass, h.name);
  CHECK(r.verdict == Verdict::holds);
  CHECK(r.consistency_errors.empty());
  for (auto& e : r.solutions_examined) CHECK(e.ok);

  CriterionReport wrong_q = check_local(k, 5, Signature::pp2, small(6));
  CHECK(find(wrong_q, "5 totally ramified in K").status == HypothesisStatus::fail);
  CHECK(wrong_q.verdict == Verdict::fails);
}
