#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aflt/ideals.hpp"

using namespace aflt;

namespace {

FieldElement random_integral(const NumberField& k, SplitMix64& rng, long range = 30) {
  IntVector c;
  for (int i = 0; i < k.degree(); ++i) c.emplace_back(rng.range(-range, range));
  return k.from_basis(c);
}

std::vector<NumberField> sample_fields() {
  return {
      NumberField::quadratic(13),
      NumberField::quadratic(-5),
      NumberField::quadratic(10),
      NumberField::make(std::vector<long>{-85, -51, 0, 1}),
      NumberField::make(std::vector<long>{13, -40, -1, 1}),
      NumberField::make(std::vector<long>{-17, -17, 0, 1}),
      NumberField::make(std::vector<long>{-20, 50, -10, -25, 0, 1}),
      NumberField::make(std::vector<long>{4, 10, -15, -20, 0, 1}),
      NumberField::make(std::vector<long>{1, 0, 0, 0, 1}),
  };
}

Ideal product_of(const NumberField& k, const std::vector<std::pair<Prime, int>>& fac) {
  Ideal r = Ideal::unit(k);
  for (auto& [P, e] : fac) r = r * P->ideal.pow(e);
  return r;
}

}  // namespace

TEST_CASE("prime decomposition examples") {
  NumberField k = NumberField::quadratic(13);
  auto p2 = factor_prime(k, 2);
  REQUIRE(p2.size() == 1);
  CHECK(p2[0]->e == 1);
  CHECK(p2[0]->f == 2);
  CHECK(splitting_type(k, 2) == SplittingType::inert);
  auto p13 = factor_prime(k, 13);
  REQUIRE(p13.size() == 1);
  CHECK(p13[0]->e == 2);
  CHECK(p13[0]->f == 1);

  NumberField c = NumberField::make(std::vector<long>{-85, -51, 0, 1});
  auto p17 = factor_prime(c, 17);
  REQUIRE(p17.size() == 1);
  CHECK(p17[0]->e == 3);
  CHECK(p17[0]->f == 1);
  CHECK(splitting_type(c, 17) == SplittingType::totally_ramified);

  NumberField s7 = NumberField::quadratic(7);
  CHECK(splitting_type(s7, 3) == SplittingType::split);
  auto ps = prime_sets(s7, 2);
  REQUIRE(ps.S.size() == 1);
  CHECK(ps.S[0]->e == 2);
  CHECK(ps.T.size() == 1);

  auto q = prime_sets(NumberField::rationals(), 2);
  REQUIRE(q.S.size() == 1);
  CHECK(q.T.size() == 1);
  CHECK(q.S[0]->norm() == 2);

  auto t13 = prime_sets(k, 2);
  CHECK(t13.T.empty());
  auto t3 = prime_sets(k, 3);
  CHECK_FALSE(t3.t_defined);
  CHECK(t3.T.empty());
}

TEST_CASE("valuation examples") {
  NumberField k = NumberField::quadratic(13);
  Prime P = factor_prime(k, 2)[0];
  CHECK(valuation(k.from_integer(8), *P) == 3);
  CHECK(valuation(k.one(), *P) == 0);
  CHECK(valuation(k.from_rational(Rational(3, 4)), *P) == -2);
  CHECK_THROWS_AS(valuation(k.zero(), *P), ZeroElement);

  NumberField w = extend_field(NumberField::rationals(), ExtensionKind::omega).field;
  auto p3 = factor_prime(w, 3);
  REQUIRE(p3.size() == 1);
  FieldElement om = w.adjoined();
  CHECK(valuation(om - w.one(), *p3[0]) == 1);
  CHECK(valuation(w.from_integer(3), *p3[0]) == 2);
  CHECK(p3[0]->ideal == Ideal::principal(om - w.one()));

  auto f8 = factor_ideal(Ideal::principal(k.from_integer(8)));
  REQUIRE(f8.size() == 1);
  CHECK(f8[0].second == 3);
  NumberField q = NumberField::rationals();
  auto half = factor_ideal(Ideal::principal(q.from_rational(Rational(1, 2))));
  REQUIRE(half.size() == 1);
  CHECK(half[0].first->p == 2);
  CHECK(half[0].second == -1);
  FieldElement a = (k.gen() + Rational(1)) * Rational(1, 2);
  auto fa = factor_element(a);
  REQUIRE(fa.size() == 1);
  CHECK(fa[0].first->p == 3);
  CHECK(fa[0].first->f == 1);
  CHECK(fa[0].second == 1);
}

TEST_CASE("sum of e*f equals the degree and primes multiply back to p") {
  for (auto& k : sample_fields()) {
    for (long p : primes_up_to(60)) {
      auto ps = factor_prime(k, p);
      int total = 0;
      Ideal prod = Ideal::unit(k);
      for (auto& P : ps) {
        total += P->e * P->f;
        CHECK(P->ideal.norm() == Rational(P->norm()));
        CHECK(P->ideal.contains(P->pi));
        CHECK(valuation(P->pi, *P) == 1);
        for (auto& Q : ps)
          if (Q != P) CHECK(valuation(P->pi, *Q) == 0);
        prod = prod * P->ideal.pow(P->e);
      }
      CHECK(total == k.degree());
      CHECK(prod == Ideal::principal(k.from_integer(p)));
    }
  }
}

TEST_CASE("splitting type agrees with the decomposition") {
  SplitMix64 rng(99);
  auto fields = sample_fields();
  auto primes = primes_up_to(100);
  for (int t = 0; t < 50; ++t) {
    const NumberField& k = fields[rng.next() % fields.size()];
    long p = primes[rng.next() % primes.size()];
    auto ps = factor_prime(k, p);
    SplittingType st = splitting_type(k, p);
    int n = k.degree();
    bool inert = ps.size() == 1 && ps[0]->f == n;
    bool tot = ps.size() == 1 && ps[0]->e == n;
    bool split = static_cast<int>(ps.size()) == n;
    if (inert) CHECK(st == SplittingType::inert);
    else if (tot) CHECK(st == SplittingType::totally_ramified);
    else if (split) CHECK(st == SplittingType::split);
    else CHECK(st == SplittingType::mixed);
    // For p not dividing disc(f) the residue degrees are the degrees of the
    // factors of f mod p.
    if (discriminant(k.poly()).get_num() % p != 0) {
      auto fac = fp::factor(fp::reduce(k.poly_coeffs(), static_cast<std::uint64_t>(p)),
                            static_cast<std::uint64_t>(p));
      std::vector<int> a, b;
      for (auto& [g, m] : fac) a.push_back(fp::degree(g));
      for (auto& P : ps) b.push_back(P->f);
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }
}

TEST_CASE("element factorizations reproduce valuations and norms") {
  SplitMix64 rng(7);
  for (auto& k : sample_fields()) {
    for (int t = 0; t < 8; ++t) {
      FieldElement x = random_integral(k, rng, 12);
      FieldElement y = random_integral(k, rng, 12);
      if (x.is_zero() || y.is_zero()) continue;
      auto fx = factor_element(x);
      Integer nm = 1;
      for (auto& [P, e] : fx) {
        nm *= ipow(P->norm(), static_cast<unsigned long>(e));
        CHECK(valuation(x, *P) == e);
        CHECK(valuation(x * y, *P) == valuation(x, *P) + valuation(y, *P));
        CHECK(valuation(x / y, *P) == valuation(x, *P) - valuation(y, *P));
      }
      CHECK(Rational(nm) == abs(x.norm()));
      Ideal I = Ideal::principal(x);
      CHECK(product_of(k, fx) == I);
      CHECK(factor_ideal(I).size() == fx.size());
      Ideal J = Ideal::principal(x / y);
      CHECK(product_of(k, factor_ideal(J)) == J);
    }
  }
}

TEST_CASE("ideal arithmetic") {
  SplitMix64 rng(21);
  for (auto& k : sample_fields()) {
    for (int t = 0; t < 4; ++t) {
      FieldElement a = random_integral(k, rng), b = random_integral(k, rng), c = random_integral(k, rng);
      if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
      Ideal A = Ideal::generated(k, {a, k.from_integer(6)});
      Ideal B = Ideal::generated(k, {b, c});
      Ideal C = Ideal::principal(c) / Ideal::principal(a);
      CHECK(A * B == B * A);
      CHECK((A * B) * C == A * (B * C));
      CHECK((A * B).norm() == A.norm() * B.norm());
      CHECK((A * C).norm() == A.norm() * C.norm());
      CHECK(A * A.inverse() == Ideal::unit(k));
      CHECK(C * C.inverse() == Ideal::unit(k));
      CHECK(A.pow(-2) * A.pow(3) == A);
      CHECK((A + B).contains(a));
      CHECK((A + B).contains(b));
      CHECK(A.contains(a * b));
      CHECK_FALSE(Ideal::principal(k.from_integer(2)).contains(k.one()));
      // Closed under multiplication by every integral basis element.
      for (auto& h : A.basis())
        for (int i = 0; i < k.degree(); ++i) CHECK(A.contains(h * k.basis_element(i)));
    }
  }
  NumberField k = NumberField::quadratic(13);
  CHECK_THROWS_AS(Ideal::principal(k.zero()), ZeroIdeal);
}

TEST_CASE("residue maps are ring homomorphisms") {
  SplitMix64 rng(5);
  for (auto& k : sample_fields()) {
    for (long p : {2L, 3L, 5L, 7L, 17L}) {
      for (auto& P : factor_prime(k, p)) {
        const ResidueField& F = P->residue;
        CHECK(fp::degree(F.h) == P->f);
        CHECK(fp::is_irreducible(F.h, F.p));
        CHECK(F.size() == P->norm());
        for (int t = 0; t < 6; ++t) {
          FieldElement x = random_integral(k, rng), y = random_integral(k, rng);
          CHECK(P->reduce(x * y) == F.mul(P->reduce(x), P->reduce(y)));
          CHECK(P->reduce(x + y) == F.add(P->reduce(x), P->reduce(y)));
          if (!x.is_zero()) CHECK(P->reduce(x).empty() == (valuation(x, *P) > 0));
        }
        CHECK(P->reduce(P->pi).empty());
        CHECK(P->reduce(k.one()) == FpPoly{1});
      }
    }
  }
}

TEST_CASE("S-units") {
  NumberField k = NumberField::quadratic(10);
  auto S = factor_prime(k, 3);
  REQUIRE(S.size() == 2);
  FieldElement eps = k.gen() + Rational(3);  // norm -1
  CHECK(is_s_unit(eps, S));
  CHECK(is_s_unit(k.from_integer(9), S));
  CHECK(is_s_unit(k.from_rational(Rational(1, 3)), S));
  CHECK_FALSE(is_s_unit(k.from_integer(2), S));
  FieldElement g = k.gen() + Rational(1);  // norm -9
  std::vector<Prime> half{S[0]};
  CHECK(is_s_unit(g, S));
  CHECK(is_s_unit(g, half) == (valuation(g, *S[1]) == 0));
  CHECK(is_s_integer(g.inverse(), half) == (valuation(g, *S[1]) <= 0));
  CHECK(is_s_integer(g, {}));
  CHECK(valuation_vector(k.from_integer(3), S) == std::vector<int>{1, 1});
}
