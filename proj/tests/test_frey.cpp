#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aflt/errors.hpp"
#include "aflt/frey.hpp"
#include "aflt/unitgrp.hpp"

using namespace aflt;

namespace {

void check_identities(const CurveModel& E) {
  CHECK(E.c4 * E.c4 * E.c4 - E.c6 * E.c6 == E.disc * Rational(1728));
  REQUIRE(E.j.has_value());
  CHECK(*E.j * E.disc == E.c4 * E.c4 * E.c4);
  // b8 is determined by the other b's.
  CHECK(E.b8 * Rational(4) == E.b2 * E.b6 - E.b4 * E.b4);
}

FieldElement random_element(const NumberField& k, SplitMix64& rng, long m) {
  std::vector<Integer> c;
  for (int i = 0; i < k.degree(); ++i) c.push_back(Integer(rng.range(-m, m)));
  return k.from_basis(IntVector(c));
}

FieldElement rat(const NumberField& k, long n, long d = 1) { return k.from_rational(Rational(n, d)); }

}  // namespace

TEST_CASE("Frey curve for (p,p,2)") {
  NumberField q = NumberField::rationals();
  CurveModel E = frey_pp2(rat(q, 2), rat(q, 1), rat(q, 3), 3);
  CHECK(E.disc == rat(q, 1 << 18));
  CHECK(E.c4 == rat(q, 768));
  CHECK(*E.j == rat(q, 1728));
  CHECK(E.a2 == rat(q, 12));
  CHECK(E.a4 == rat(q, 32));
  check_identities(E);
  CHECK_THROWS_AS(frey_pp2(rat(q, 1), rat(q, 0), rat(q, 1), 5), DegenerateTriple);
  CHECK_THROWS_AS(frey_pp2(rat(q, 2), rat(q, 1), rat(q, 4), 3), EquationNotSatisfied);
}

TEST_CASE("Frey curve for (p,p,3)") {
  NumberField q = NumberField::rationals();
  CurveModel E = frey_pp3(rat(q, 2), rat(q, 2), rat(q, 4), 5);
  CHECK(E.disc == rat(q, 27 << 20));
  CHECK(E.c4 == rat(q, 11520));
  CHECK(*E.j == rat(q, 54000));
  // 32^3 (12^3 - 27 * 32) from the model directly.
  CHECK(E.disc == rat(q, 32 * 32 * 32) * (rat(q, 1728) - rat(q, 27 * 32)));
  check_identities(E);
  CHECK_THROWS_AS(frey_pp3(rat(q, 1), rat(q, 0), rat(q, 1), 5), DegenerateTriple);
  CHECK_THROWS_AS(frey_pp3(rat(q, 1), rat(q, 1), rat(q, 1), 5), EquationNotSatisfied);
}

TEST_CASE("invariant identities on random Frey triples") {
  SplitMix64 rng(2024);
  std::vector<NumberField> fields = {NumberField::rationals(), NumberField::quadratic(2), NumberField::quadratic(13),
                                     NumberField::make(std::vector<long>{-17, -17, 0, 1})};
  int cases = 0;
  for (int n = 0; cases < 200; ++n) {
    const NumberField& k = fields[static_cast<std::size_t>(n) % fields.size()];
    FieldElement a = random_element(k, rng, 3), b = random_element(k, rng, 3);
    if (a.is_zero() || b.is_zero()) continue;
    long p = std::vector<long>{3, 5, 7, 11}[static_cast<std::size_t>(rng.range(0, 3))];
    FieldElement t = a.pow(static_cast<int>(p)) + b.pow(static_cast<int>(p));
    if (t.is_zero()) continue;
    if (n % 2 == 0) {
      // (at)^p + (bt)^p = t^(p+1).
      FieldElement c = t.pow(static_cast<int>((p + 1) / 2));
      CurveModel E = frey_pp2(a * t, b * t, c, static_cast<int>(p));
      check_identities(E);
      FieldElement A = a * t, B = b * t;
      CHECK(E.disc == (A * A * B).pow(static_cast<int>(p)) * Rational(4096));
      TorsionLambda tl = torsion_lambda(E, 2);
      CHECK(tl.j == *E.j);
    } else {
      if (p == 3) continue;
      int m = p % 3 == 2 ? 1 : 2;
      FieldElement tm = t.pow(m);
      FieldElement c = t.pow(static_cast<int>((m * p + 1) / 3));
      CurveModel E = frey_pp3(a * tm, b * tm, c, static_cast<int>(p));
      check_identities(E);
      FieldElement A = a * tm, B = b * tm;
      CHECK(E.disc == (A * A * A * B).pow(static_cast<int>(p)) * Rational(27));
      TorsionLambda tl = torsion_lambda(E, 3);
      CHECK(tl.j == *E.j);
    }
    ++cases;
  }
}

TEST_CASE("torsion models and lambda") {
  NumberField q = NumberField::rationals();
  FieldElement z = q.zero(), o = q.one();
  CurveModel E = CurveModel::from_coefficients(z, z, z, o, z);
  TorsionLambda t = torsion_lambda(E, 2);
  CHECK(t.lambda.is_zero());
  CHECK(t.mu == rat(q, -4));
  CHECK(t.j == rat(q, 1728));

  CurveModel F = CurveModel::from_coefficients(z, z, o, z, z);
  TorsionLambda u = torsion_lambda(F, 3);
  CHECK(u.mu == rat(q, -27));
  CHECK(u.j.is_zero());
  CHECK_THROWS_AS(torsion_lambda(F, 2), WrongShape);
  CHECK_THROWS_AS(torsion_lambda(E, 3), WrongShape);

  CurveModel G = frey_pp2(rat(q, 2), rat(q, 1), rat(q, 3), 3);
  TorsionLambda g = torsion_lambda(G, 2);
  CHECK(g.lambda == rat(q, 9, 2));
  CHECK(g.mu == rat(q, 1, 2));
  CHECK(g.j == rat(q, 1728));

  // lambda = 4 is singular: Y^2 = X^3 + 2X^2 + X.
  CurveModel H = CurveModel::from_coefficients(z, rat(q, 2), z, o, z);
  CHECK_FALSE(H.nonsingular());
  CHECK_THROWS_AS(torsion_lambda(H, 2), SingularLambda);
}

TEST_CASE("mu as an S-unit") {
  NumberField q = NumberField::rationals();
  FieldElement z = q.zero(), o = q.one();
  auto S2 = factor_prime(q, 2);
  auto S3 = factor_prime(q, 3);
  MuCheck m = mu_is_s_unit(CurveModel::from_coefficients(z, z, z, o, z), S2);
  CHECK(m.s_unit);
  CHECK(m.order == 2);
  MuCheck n = mu_is_s_unit(CurveModel::from_coefficients(z, rat(q, 5), z, o, z), S2);
  CHECK(n.mu == rat(q, 21));
  CHECK_FALSE(n.s_unit);
  MuCheck r = mu_is_s_unit(CurveModel::from_coefficients(z, z, o, z, z), S3);
  CHECK(r.s_unit);
  CHECK(r.order == 3);
  CHECK_THROWS_AS(mu_is_s_unit(CurveModel::from_coefficients(o, o, o, o, o), S2), WrongShape);
}

TEST_CASE("splitting (lambda) into I^i J") {
  NumberField q = NumberField::rationals();
  auto S = factor_prime(q, 2);
  LambdaSplit a = lambda_ideal_split(q, rat(q, 9, 2), S, 2);
  CHECK(a.I == Ideal::principal(rat(q, 3)));
  CHECK(a.J == Ideal::principal(rat(q, 1, 2)));
  CHECK(a.violations.empty());
  LambdaSplit b = lambda_ideal_split(q, rat(q, 8), S, 3);
  CHECK(b.I == Ideal::unit(q));
  CHECK(b.J == Ideal::principal(rat(q, 8)));
  LambdaSplit c = lambda_ideal_split(q, rat(q, 12), S, 2);
  REQUIRE(c.violations.size() == 1);
  CHECK(c.violations[0]->p == 3);
  CHECK(c.I.pow(2) * c.J == Ideal::principal(rat(q, 12)));
  CHECK_THROWS_AS(lambda_ideal_split(q, q.zero(), S, 2), ZeroElement);
}

// Curves Y^2 = X^3 + aX^2 + bX with a, b integral and discriminant
// 16 b^2 (a^2 - 4b) an S-unit have good reduction outside S; for them the
// exponents of lambda off S must all be even.
TEST_CASE("lambda of curves with good reduction outside S") {
  for (long d : {1L, 13L}) {
    NumberField k = d == 1 ? NumberField::rationals() : NumberField::quadratic(d);
    auto S = factor_prime(k, 2);
    std::vector<FieldElement> small;
    for (long x = -24; x <= 24; ++x)
      for (long y = (d == 1 ? 0 : -6); y <= (d == 1 ? 0 : 6); ++y)
        small.push_back(k.from_integer(x) + (d == 1 ? k.zero() : k.gen() * Rational(y)));
    int tested = 0;
    for (auto& a : small) {
      for (auto& b : small) {
        if (b.is_zero()) continue;
        FieldElement disc = b * b * (a * a - b * Rational(4)) * Rational(16);
        if (disc.is_zero() || !is_s_unit(disc, S)) continue;
        CurveModel E = CurveModel::from_coefficients(k.zero(), a, k.zero(), b, k.zero());
        if (E.a2.is_zero()) continue;
        MuCheck m = mu_is_s_unit(E, S);
        CHECK(m.s_unit);
        LambdaSplit sp = lambda_ideal_split(k, a * a / b, S, 2);
        CHECK_MESSAGE(sp.violations.empty(), "a = " << a.str() << ", b = " << b.str());
        ++tested;
      }
    }
    CHECK(tested > 10);
  }
}

TEST_CASE("inertia and valuations of j") {
  CHECK(inertia_p_divides(-5, 7));
  CHECK_FALSE(inertia_p_divides(-7, 7));
  CHECK_FALSE(inertia_p_divides(3, 7));
  CHECK_THROWS_AS(inertia_p_divides(-1, 3), InvalidInput);

  CHECK(frey_vj_at_S(Signature::pp2, 1, 1, 11) == -5);
  CHECK(frey_vj_at_S(Signature::pp2, 1, 2, 7) == -8);
  CHECK(inertia_p_divides(-8, 7));
  CHECK_THROWS_AS(frey_vj_at_S(Signature::pp2, 1, 1, 5), ThresholdNotMet);
  CHECK(frey_vj_at_S(Signature::pp3, 1, 1, 5) == -2);
  CHECK_THROWS_AS(frey_vj_at_S(Signature::pp3, 2, 1, 5), ThresholdNotMet);

  // Direct valuation of j of an actual Frey curve over Q: (2, 1, 3), p = 3
  // has b odd, so take (1, 2, 3): 1 + 8 = 9 and 2 | b with v(b) = 1.
  NumberField q = NumberField::rationals();
  auto P2 = factor_prime(q, 2).at(0);
  CurveModel E = frey_pp2(rat(q, 1), rat(q, 2), rat(q, 3), 3);
  CHECK(valuation(*E.j, *P2) == 6 - 3 * 1);
  // (p,p,3): 244^5 + 732^5 = (244^2)^3 with 244 = 1 + 3^5, and v_3(b) = 1.
  CurveModel F = frey_pp3(rat(q, 244), rat(q, 732), rat(q, 244 * 244), 5);
  auto P3 = factor_prime(q, 3).at(0);
  CHECK(valuation(*F.j, *P3) == frey_vj_at_S(Signature::pp3, 1, 1, 5));
}

TEST_CASE("conductor exponent bounds") {
  ConductorBounds a = conductor_exponent_bounds(Signature::pp2, NumberField::quadratic(13));
  REQUIRE(a.at_s.size() == 1);
  CHECK(a.at_s[0].bound == 8);
  ConductorBounds b = conductor_exponent_bounds(Signature::pp3, NumberField::quadratic(13));
  // 3 splits in Q(sqrt 13).
  REQUIRE(b.at_s.size() == 2);
  for (auto& x : b.at_s) CHECK(x.bound == 5);
  ConductorBounds c = conductor_exponent_bounds(Signature::pp2, NumberField::quadratic(7));
  REQUIRE(c.at_s.size() == 1);
  CHECK(c.at_s[0].bound == 14);
  CHECK(c.other == 1);
}
