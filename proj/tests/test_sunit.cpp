#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <tuple>

#include "aflt/sunit.hpp"

using namespace aflt;

namespace {

// All +-prod p^e with |e| <= m.
std::vector<Rational> rational_s_units(const std::vector<long>& ps, long m) {
  std::vector<Rational> out{Rational(1)};
  for (long p : ps) {
    std::vector<Rational> next;
    for (auto& x : out)
      for (long e = -m; e <= m; ++e) {
        Rational y = x;
        for (long j = 0; j < std::labs(e); ++j) y = e > 0 ? Rational(y * p) : Rational(y / p);
        next.push_back(y);
      }
    out = next;
  }
  std::vector<Rational> all;
  for (auto& x : out) {
    all.push_back(x);
    all.push_back(-x);
  }
  return all;
}

bool is_rational_s_unit(Rational x, const std::vector<long>& ps) {
  if (x == 0) return false;
  Integer n = abs(x.get_num()), d = x.get_den();
  for (long p : ps) {
    while (n % p == 0) n /= p;
    while (d % p == 0) d /= p;
  }
  return n == 1 && d == 1;
}

std::set<std::pair<Rational, Rational>> rational_pairs(const UnitEquationResult& r) {
  std::set<std::pair<Rational, Rational>> s;
  for (auto& sol : r.solutions) s.insert({sol.x.rational_value(), sol.y.rational_value()});
  return s;
}

std::vector<Prime> primes_of(const NumberField& k, std::initializer_list<long> ps) {
  std::vector<Prime> S;
  for (long p : ps)
    for (auto& P : factor_prime(k, p)) S.push_back(P);
  return S;
}

// (alpha, beta, |gamma|) from alpha + beta = gamma^2 over Q with 2-power
// denominators, by direct search over alpha = +-2^a.
std::set<std::tuple<Rational, Rational, Rational>> squares_over_q2(const std::vector<Rational>& betas, long m) {
  std::set<std::tuple<Rational, Rational, Rational>> out;
  for (auto& beta : betas)
    for (auto& alpha : rational_s_units({2}, m)) {
      Rational t = alpha + beta;
      if (t < 0) continue;
      if (t == 0) {
        out.insert({alpha, beta, Rational(0)});
        continue;
      }
      if (!mpz_perfect_square_p(t.get_num_mpz_t()) || !mpz_perfect_square_p(t.get_den_mpz_t())) continue;
      Rational g(sqrt(t.get_num()), sqrt(t.get_den()));
      Integer den = g.get_den();
      while (den % 2 == 0) den /= 2;
      if (den == 1) out.insert({alpha, beta, g});
    }
  return out;
}

}  // namespace

TEST_CASE("unit equation over Q agrees with direct search") {
  NumberField q = NumberField::rationals();
  for (auto ps : std::vector<std::vector<long>>{{2}, {3}, {2, 3}, {2, 5}, {2, 3, 5}}) {
    std::vector<Prime> S;
    for (long p : ps)
      for (auto& P : factor_prime(q, p)) S.push_back(P);
    UnitEquationResult r = solve_unit_equation(q, S, q.one(), q.one(), 10);
    std::set<std::pair<Rational, Rational>> expected;
    for (auto& x : rational_s_units(ps, 10))
      if (is_rational_s_unit(1 - x, ps)) expected.insert({x, 1 - x});
    CHECK(rational_pairs(r) == expected);
    CHECK(r.completeness == "bounded");
    for (auto& s : r.solutions) {
      CHECK(s.x + s.y == q.one());
      CHECK(is_s_unit(s.x, S));
      CHECK(is_s_unit(s.y, S));
    }
  }
  // Without primes there is nothing.
  CHECK(solve_unit_equation(q, {}, q.one(), q.one(), 10).solutions.empty());
}

TEST_CASE("unit equation with coefficients") {
  NumberField q = NumberField::rationals();
  auto S = factor_prime(q, 3);
  // 3x - 2y = 1 with x, y 3-units: x = 1, y = 1; x = 3, y = 4 fails; x = 1/3, y = 0 excluded.
  UnitEquationResult r = solve_unit_equation(q, S, q.from_integer(3), q.from_integer(-2), 10);
  std::set<std::pair<Rational, Rational>> expected;
  for (auto& x : rational_s_units({3}, 10)) {
    Rational y = (1 - 3 * x) / -2;
    if (is_rational_s_unit(y, {3})) expected.insert({x, y});
  }
  CHECK(rational_pairs(r) == expected);
  CHECK_THROWS_AS(solve_unit_equation(q, S, q.zero(), q.one(), 3), ZeroElement);
}

TEST_CASE("irrelevant solutions over real quadratic fields with 2 inert") {
  for (long d : {13L, 29L, 37L}) {
    NumberField k = NumberField::quadratic(d);
    auto S = factor_prime(k, 2);
    REQUIRE(S.size() == 1);
    UnitEquationResult r = solve_unit_equation(k, S, k.one(), k.one(), 10);
    std::set<std::pair<Rational, Rational>> got;
    for (auto& s : r.solutions) {
      REQUIRE(s.x.is_rational());
      got.insert({s.x.rational_value(), s.y.rational_value()});
    }
    std::set<std::pair<Rational, Rational>> expected{{-1, 2}, {Rational(1, 2), Rational(1, 2)}, {2, -1}};
    CHECK_MESSAGE(got == expected, "d = " << d);
  }
}

TEST_CASE("unit equation over an imaginary quadratic field") {
  // Q(i) with S = {(1 + i)}: solutions of x + y = 1 by brute force over
  // i^t (1 + i)^e.
  NumberField k = NumberField::quadratic(-1);
  auto S = factor_prime(k, 2);
  UnitEquationResult r = solve_unit_equation(k, S, k.one(), k.one(), 12);
  FieldElement pi = S[0]->pi;
  std::vector<FieldElement> units;
  FieldElement i = k.gen();
  for (int t = 0; t < 4; ++t)
    for (long e = -12; e <= 12; ++e) units.push_back(i.pow(t) * pi.pow(e));
  std::set<std::string> expected, got;
  for (auto& x : units)
    if (!(k.one() - x).is_zero() && is_s_unit(k.one() - x, S)) expected.insert(x.str());
  for (auto& s : r.solutions) got.insert(s.x.str());
  CHECK(got == expected);
  CHECK(got.size() >= 3);
}

TEST_CASE("larger bounds only add solutions") {
  NumberField k = NumberField::quadratic(10);
  auto S = primes_of(k, {2, 3});
  auto small = solve_unit_equation(k, S, k.one(), k.one(), 3);
  auto big = solve_unit_equation(k, S, k.one(), k.one(), 6);
  std::set<std::string> a, b;
  for (auto& s : small.solutions) a.insert(s.x.str());
  for (auto& s : big.solutions) b.insert(s.x.str());
  for (auto& x : a) CHECK(b.count(x));
  CHECK(big.candidates > small.candidates);
  for (auto& s : big.solutions) {
    CHECK(s.x + s.y == k.one());
    CHECK(s_unit_from_exponents(s_unit_group(k, S), s.y_exponents.torsion, s.y_exponents.free) == s.y);
  }
}

TEST_CASE("power equation alpha + beta = gamma^2 over Q with S = {2}") {
  NumberField q = NumberField::rationals();
  auto S = factor_prime(q, 2);
  PowerEquationResult r = solve_power_equation(q, S, 2);
  std::vector<Rational> betas;
  for (auto& b : r.betas) betas.push_back(b.rational_value());
  CHECK(betas.size() == 4);
  std::set<std::tuple<Rational, Rational, Rational>> got;
  for (auto& s : r.solutions) {
    CHECK(s.alpha + s.beta == s.gamma.pow(2));
    got.insert({s.alpha.rational_value(), s.beta.rational_value(), abs(s.gamma.rational_value())});
  }
  CHECK(got == squares_over_q2(betas, 40));

  PowerEquationResult one = solve_power_equation(q, S, 2, q.one());
  std::set<Rational> alphas;
  for (auto& s : one.solutions) alphas.insert(s.alpha.rational_value());
  CHECK(alphas == std::set<Rational>{-1, 8});
}

TEST_CASE("cubes over Q without primes") {
  NumberField q = NumberField::rationals();
  PowerEquationResult r = solve_power_equation(q, {}, 3);
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.solutions[0].alpha == -q.one());
  CHECK(r.solutions[0].beta == q.one());
  CHECK(r.solutions[0].gamma.is_zero());
}

TEST_CASE("alpha + 1 = gamma^2 over Q(sqrt 13) with S above 2") {
  NumberField k = NumberField::quadratic(13);
  auto S = factor_prime(k, 2);
  PowerEquationResult r = solve_power_equation(k, S, 2, k.one());
  std::set<Rational> alphas;
  for (auto& s : r.solutions) {
    REQUIRE(s.alpha.is_rational());
    alphas.insert(s.alpha.rational_value());
    int v = valuation(s.alpha, *S[0]);
    CHECK((v == 0 || v == 3));
  }
  CHECK(alphas == std::set<Rational>{-1, 8});
}

TEST_CASE("equivalence of solutions") {
  NumberField q = NumberField::rationals();
  auto S = factor_prime(q, 2);
  PowerEquationSolution a{q.from_integer(8), q.one(), q.from_integer(3), 2, true, S};
  PowerEquationSolution b{q.from_integer(32), q.from_integer(4), q.from_integer(6), 2, true, S};
  PowerEquationSolution c{q.from_integer(-1), q.one(), q.zero(), 2, true, S};
  PowerEquationSolution d{q.from_integer(-4), q.from_integer(4), q.zero(), 2, true, S};
  PowerEquationSolution e{q.from_integer(-2), q.from_integer(2), q.zero(), 2, true, S};
  CHECK(equivalent(a, b));
  CHECK(equivalent(b, a));
  CHECK_FALSE(equivalent(a, c));
  CHECK(equivalent(c, d));
  CHECK_FALSE(equivalent(c, e));
  // 72 + 9 = 81 scales by 3, which is not a 2-unit.
  PowerEquationSolution f{q.from_integer(72), q.from_integer(9), q.from_integer(9), 2, true, S};
  CHECK_FALSE(equivalent(a, f));
}

TEST_CASE("tower helpers") {
  NumberField K = NumberField::quadratic(5);
  NumberField L = extend_field(K, ExtensionKind::omega).field;
  auto S = factor_prime(K, 2);
  auto SL = primes_above(L, S);
  int total = 0;
  for (auto& Q : SL) total += Q->e * Q->f;
  CHECK(total == 4);
  FieldElement x = K.gen() + Rational(1);
  FieldElement back;
  REQUIRE(descend_to(K, lift_to(L, x), back));
  CHECK(back == x);
  CHECK_FALSE(descend_to(K, L.adjoined(), back));
}

TEST_CASE("extension budget") {
  NumberField k = NumberField::make(std::vector<long>{-17, -17, 0, 1});
  PowerEquationOptions opt;
  opt.max_extension_degree = 4;
  CHECK_THROWS_AS(solve_power_equation(k, {}, 3, opt), ExtensionBudgetExceeded);
  CHECK_THROWS_AS(solve_power_equation(k, {}, 4, opt), InvalidInput);
}
