#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "aflt/unitgrp.hpp"

using namespace aflt;

namespace {

// Smallest (x + y sqrt D)/2 > 1 with x^2 - D y^2 = +-4, by direct search on y.
FieldElement pell_unit(const NumberField& k, long D) {
  FieldElement s = roots_in_field(FieldPoly::from_rational(k, Poly::from_longs({-D, 0, 1}))).at(0);
  if (s.signs()[0] < 0) s = -s;
  for (long y = 1;; ++y) {
    for (long sign : {-4L, 4L}) {
      Integer t = Integer(D) * y * y + sign;
      if (t > 0 && mpz_perfect_square_p(t.get_mpz_t())) {
        Integer x = sqrt(t);
        return (k.from_integer(x) + s * Rational(y)) * Rational(1, 2);
      }
    }
  }
}

long double regulator(const std::vector<FieldElement>& units) {
  std::size_t r = units.size();
  std::vector<std::vector<long double>> m;
  for (auto& u : units) {
    auto l = u.log_embeddings();
    l.resize(r);
    m.push_back(l);
  }
  long double det = 1;
  for (std::size_t i = 0; i < r; ++i) {
    std::size_t piv = i;
    for (std::size_t j = i + 1; j < r; ++j)
      if (std::fabs(m[j][i]) > std::fabs(m[piv][i])) piv = j;
    std::swap(m[i], m[piv]);
    if (piv != i) det = -det;
    for (std::size_t j = i + 1; j < r; ++j) {
      long double f = m[j][i] / m[i][i];
      for (std::size_t c = i; c < r; ++c) m[j][c] -= f * m[i][c];
    }
    det *= m[i][i];
  }
  return std::fabs(det);
}

}  // namespace

TEST_CASE("real quadratic fundamental units match a Pell search") {
  NumberField k13 = NumberField::quadratic(13);
  SUnitGroup U = unit_group(k13);
  REQUIRE(U.fundamental_units.size() == 1);
  CHECK(U.fundamental_units[0].trace() == 3);
  CHECK(U.fundamental_units[0].norm() == -1);
  CHECK(U.units_certified);

  for (long d = 2; d <= 110; ++d) {
    if (!is_squarefree(Integer(d))) continue;
    NumberField k = NumberField::quadratic(d);
    long D = d % 4 == 1 ? d : 4 * d;
    SUnitGroup G = unit_group(k);
    REQUIRE(G.fundamental_units.size() == 1);
    CHECK_MESSAGE(G.fundamental_units[0] == pell_unit(k, D), "d = " << d);
    CHECK(G.torsion_order == 2);
  }
}

TEST_CASE("torsion subgroups") {
  NumberField w = extend_field(NumberField::rationals(), ExtensionKind::omega).field;
  SUnitGroup G = unit_group(w);
  CHECK(G.torsion_order == 6);
  CHECK(G.fundamental_units.empty());
  CHECK(G.torsion_gen.pow(6).is_one());
  CHECK_FALSE(G.torsion_gen.pow(3).is_one());
  CHECK_FALSE(G.torsion_gen.pow(2).is_one());

  CHECK(unit_group(NumberField::quadratic(-1)).torsion_order == 4);
  CHECK(unit_group(NumberField::quadratic(-5)).torsion_order == 2);
  NumberField z5 = NumberField::make(std::vector<long>{1, 1, 1, 1, 1});
  SUnitGroup G5 = unit_group(z5);
  CHECK(G5.torsion_order == 10);
  CHECK(G5.fundamental_units.size() == 1);
  // Q(sqrt 3, omega) = Q(zeta_12).
  NumberField z12 = extend_field(NumberField::quadratic(3), ExtensionKind::omega).field;
  CHECK(unit_group(z12).torsion_order == 12);
}

// Valid when a^2 + 3a + 9 is squarefree, so that Z[rho] is the maximal order.
TEST_CASE("simplest cubic fields have fundamental system rho, rho + 1") {
  for (long a : {-1L, 1L, 2L, 4L, 7L, 8L}) {
    NumberField k = NumberField::make(std::vector<long>{-1, -(a + 3), -a, 1});
    SUnitGroup G = unit_group(k);
    REQUIRE(G.fundamental_units.size() == 2);
    CHECK(G.units_certified);
    Poly f = Poly::from_longs({-1, -(a + 3), -a, 1});
    FieldElement rho = roots_in_field(FieldPoly::from_rational(k, f)).at(0);
    long double expected = regulator({rho, rho + Rational(1)});
    CHECK(regulator(G.fundamental_units) == doctest::Approx(static_cast<double>(expected)).epsilon(1e-9));
    for (auto& u : G.fundamental_units) {
      CHECK(u.is_integral());
      CHECK(abs(u.norm()) == 1);
    }
  }
}

TEST_CASE("CM unit index two for Q(zeta_12)") {
  NumberField K = NumberField::quadratic(3);
  NumberField L = extend_field(K, ExtensionKind::omega).field;
  SUnitGroup G = unit_group(L);
  REQUIRE(G.fundamental_units.size() == 1);
  CHECK(G.units_certified);
  // For a CM field |sigma(u)|^2 = sigma(u ubar) with u ubar a totally positive
  // unit of K; index 2 means this is 2 + sqrt 3 itself, not its square.
  long double eps = std::log(2 + std::sqrt(3.0L));
  CHECK(std::fabs(static_cast<double>(G.fundamental_units[0].log_embeddings()[0])) ==
        doctest::Approx(static_cast<double>(eps / 2)).epsilon(1e-12));
}

TEST_CASE("units of the cubic and quintic fields") {
  std::vector<std::vector<long>> polys = {
      {-85, -51, 0, 1}, {13, -40, -1, 1}, {-75, -38, -1, 1}, {-17, -17, 0, 1}, {-20, 50, -10, -25, 0, 1}};
  for (auto& p : polys) {
    NumberField k = NumberField::make(p);
    SUnitGroup G = unit_group(k);
    CHECK(static_cast<int>(G.fundamental_units.size()) == k.degree() - 1);
    CHECK(G.units_certified);
    CHECK(G.torsion_order == 2);
    for (auto& u : G.fundamental_units) {
      CHECK(u.is_integral());
      CHECK(abs(u.norm()) == 1);
    }
    CHECK(regulator(G.fundamental_units) > 0.1L);
  }
}

TEST_CASE("power class representatives") {
  NumberField q = NumberField::rationals();
  auto S = factor_prime(q, 2);
  SUnitGroup G = s_unit_group(q, S);
  auto r2 = power_class_reps(G, 2);
  std::set<Rational> got;
  for (auto& x : r2) got.insert(x.rational_value());
  CHECK(got == std::set<Rational>{1, -1, 2, -2});
  auto r3 = power_class_reps(G, 3);
  got.clear();
  for (auto& x : r3) got.insert(x.rational_value());
  CHECK(got == std::set<Rational>{1, 2, 4});

  NumberField k = NumberField::quadratic(13);
  SUnitGroup H = s_unit_group(k, factor_prime(k, 2));
  auto reps = power_class_reps(H, 2);
  CHECK(reps.size() == 8);
  for (std::size_t i = 0; i < reps.size(); ++i) CHECK(power_class_index(H, reps[i], 2) == i);
  // Multiplying by a square keeps the class.
  FieldElement sq = (k.gen() + Rational(3)) * Rational(1, 2) * k.from_integer(2);
  for (std::size_t i = 0; i < reps.size(); ++i) CHECK(power_class_index(H, reps[i] * sq * sq, 2) == i);
}

TEST_CASE("S-unit exponents round trip") {
  NumberField k = NumberField::quadratic(10);
  auto S = factor_prime(k, 3);
  auto S2 = factor_prime(k, 2);
  S.insert(S.end(), S2.begin(), S2.end());
  SUnitGroup G = s_unit_group(k, S);
  CHECK(G.s_generators.size() == 3);
  CHECK(G.valuation_matrix.size() == 3);
  SplitMix64 rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<long> e;
    for (int i = 0; i < G.rank(); ++i) e.push_back(rng.range(-3, 3));
    int tor = static_cast<int>(rng.range(0, 1));
    FieldElement x = s_unit_from_exponents(G, tor, e);
    CHECK(is_s_unit(x, G.S));
    auto ex = s_unit_exponents(G, x);
    CHECK(ex.torsion == tor);
    CHECK(ex.free == e);
  }
  CHECK_THROWS_AS(s_unit_exponents(G, k.from_integer(5)), NotAUnit);
}

TEST_CASE("S-unit groups over a field with class number two") {
  // In Q(sqrt 10) the prime above 2 is not principal, so the S-part is
  // generated by an element of valuation 2 (from the class group kernel).
  NumberField k = NumberField::quadratic(10);
  auto S = factor_prime(k, 2);
  SUnitGroup G = s_unit_group(k, S);
  REQUIRE(G.s_generators.size() == 1);
  CHECK(std::abs(G.valuation_matrix[0][0].get_si()) == 2);
  CHECK(G.certified());
}

TEST_CASE("total positivity") {
  NumberField k3 = NumberField::quadratic(3);
  CHECK(is_totally_positive(k3.gen() + Rational(2)));
  NumberField k13 = NumberField::quadratic(13);
  CHECK_FALSE(is_totally_positive((k13.gen() + Rational(3)) * Rational(1, 2)));
  CHECK_THROWS_AS(is_totally_positive(k13.zero()), ZeroElement);
}

TEST_CASE("power residue symbols are characters") {
  NumberField k = NumberField::make(std::vector<long>{-17, -17, 0, 1});
  SplitMix64 rng(11);
  for (long p : {7L, 13L, 19L, 31L}) {
    for (auto& P : factor_prime(k, p)) {
      if ((P->norm() - 1) % 3 != 0) continue;
      for (int t = 0; t < 5; ++t) {
        FieldElement x = k.from_basis(IntVector{Integer(rng.range(1, 40)), Integer(rng.range(-9, 9)), Integer(rng.range(-9, 9))});
        FieldElement y = k.from_basis(IntVector{Integer(rng.range(1, 40)), Integer(rng.range(-9, 9)), Integer(rng.range(-9, 9))});
        if (valuation(x, *P) != 0 || valuation(y, *P) != 0) continue;
        int a = power_residue_symbol(x, *P, 3), b = power_residue_symbol(y, *P, 3);
        CHECK(power_residue_symbol(x * y, *P, 3) == (a + b) % 3);
        CHECK(power_residue_symbol(x * x * x, *P, 3) == 0);
      }
    }
  }
}
