#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "aflt/classgrp.hpp"
#include "aflt/errors.hpp"
#include "aflt/unitgrp.hpp"

using namespace aflt;

namespace {

long fundamental_discriminant(long d) { return (d % 4 + 4) % 4 == 1 ? d : 4 * d; }

// Number of reduced primitive positive definite forms of discriminant D < 0.
long forms_class_number(long D) {
  long h = 0;
  for (long a = 1; 3 * a * a <= -D; ++a)
    for (long b = -a + 1; b <= a; ++b) {
      long t = b * b - D;
      if (t % (4 * a) != 0) continue;
      long c = t / (4 * a);
      if (c < a) continue;
      if (c == a && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      ++h;
    }
  return h;
}

bool lt_sqrt(long x, long D) { return x <= 0 || x * x < D; }

// Narrow class number of discriminant D > 0: number of cycles of reduced
// indefinite forms under the reduction operator.
long forms_narrow_class_number(long D) {
  using Form = std::tuple<long, long, long>;
  std::set<Form> reduced;
  for (long b = 1; b * b < D; ++b) {
    if ((b * b - D) % 4 != 0) continue;
    long ac = (b * b - D) / 4;
    for (long a = -std::labs(ac); a <= std::labs(ac); ++a) {
      if (a == 0 || ac % a != 0) continue;
      long c = ac / a;
      long A = std::labs(a);
      if (!((2 * A + b) * (2 * A + b) > D && lt_sqrt(2 * A - b, D))) continue;
      if (std::gcd(std::gcd(A, b), std::labs(c)) != 1) continue;
      reduced.insert({a, b, c});
    }
  }
  long cycles = 0;
  std::set<Form> seen;
  for (const Form& f : reduced) {
    if (seen.count(f)) continue;
    ++cycles;
    Form g = f;
    while (!seen.count(g)) {
      seen.insert(g);
      auto [a, b, c] = g;
      long m = 2 * std::labs(c);
      long nb = ((-b) % m + m) % m;
      // Largest nb = -b mod 2|c| below sqrt D.
      while (lt_sqrt(nb + m, D)) nb += m;
      while (!lt_sqrt(nb, D)) nb -= m;
      g = {c, nb, (nb * nb - D) / (4 * c)};
    }
  }
  return cycles;
}

bool norm_minus_one(long D) {
  for (long y = 1;; ++y) {
    for (long s : {-4L, 4L}) {
      long t = D * y * y + s;
      long x = static_cast<long>(std::llround(std::sqrt(static_cast<double>(t))));
      if (x * x == t) return s == -4;
    }
  }
}

int omega(long n) {
  n = std::labs(n);
  int w = 0;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      ++w;
      while (n % p == 0) n /= p;
    }
  return w + (n > 1);
}

void check_witnesses(const ClassGroup& G) {
  REQUIRE(G.generators.size() == G.invariants.size());
  for (std::size_t i = 0; i < G.generators.size(); ++i) {
    REQUIRE(G.witnesses[i].has_value());
    long d = G.invariants[i].get_si();
    CHECK(Ideal::principal(*G.witnesses[i]) == G.generators[i].pow(d));
    IntVector e = G.dlog(G.generators[i]);
    for (std::size_t j = 0; j < e.size(); ++j) CHECK(e[j] == (i == j ? 1 : 0));
  }
}

}  // namespace

TEST_CASE("imaginary quadratic class numbers match reduced form counts") {
  for (long d = -1; d >= -130; --d) {
    if (!is_squarefree(Integer(-d))) continue;
    long D = fundamental_discriminant(d);
    ClassGroup G = class_group(NumberField::quadratic(d));
    CHECK_MESSAGE(G.order == forms_class_number(D), "d = " << d);
    CHECK(G.certified);
    CHECK(G.status == "certified");
    int two_rank = 0;
    for (auto& x : G.invariants) two_rank += (x % 2 == 0);
    CHECK_MESSAGE(two_rank == omega(D) - 1, "d = " << d);
    check_witnesses(G);
  }
}

TEST_CASE("real quadratic class numbers match cycles of reduced forms") {
  for (long d = 2; d <= 120; ++d) {
    if (!is_squarefree(Integer(d))) continue;
    long D = fundamental_discriminant(d);
    long hp = forms_narrow_class_number(D);
    long h = norm_minus_one(D) ? hp : hp / 2;
    NumberField k = NumberField::quadratic(d);
    ClassGroup G = class_group(k);
    CHECK_MESSAGE(G.order == h, "d = " << d);
    CHECK(G.certified);
    check_witnesses(G);
    NarrowClassNumber N = narrow_class_number(k);
    CHECK_MESSAGE(N.h_plus == hp, "d = " << d);
    CHECK(N.two_divides == (hp % 2 == 0));
    CHECK(N.certified);
  }
}

TEST_CASE("narrow class numbers") {
  CHECK(narrow_class_number(NumberField::quadratic(5)).h_plus == 1);
  CHECK(narrow_class_number(NumberField::quadratic(3)).h_plus == 2);
  CHECK(narrow_class_number(NumberField::quadratic(13)).h_plus == 1);
  CHECK(narrow_class_number(NumberField::rationals()).h_plus == 1);
  CHECK_THROWS(narrow_class_number(NumberField::quadratic(-3)));
}

TEST_CASE("discrete logarithms are additive") {
  for (long d : {-23L, -65L, -89L, 79L, 226L}) {
    NumberField k = NumberField::quadratic(d);
    ClassGroup G = class_group(k);
    std::vector<Ideal> ideals;
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L})
      for (auto& P : factor_prime(k, p)) ideals.push_back(P->ideal);
    SplitMix64 rng(static_cast<std::uint64_t>(d + 1000));
    for (int t = 0; t < 15; ++t) {
      const Ideal& I = ideals[static_cast<std::size_t>(rng.range(0, static_cast<long>(ideals.size()) - 1))];
      const Ideal& J = ideals[static_cast<std::size_t>(rng.range(0, static_cast<long>(ideals.size()) - 1))];
      IntVector a = G.dlog(I), b = G.dlog(J), c = G.dlog(I * J);
      for (std::size_t i = 0; i < c.size(); ++i) CHECK((a[i] + b[i] - c[i]) % G.invariants[i] == 0);
      CHECK(G.is_principal(I * I.pow(-1)));
      Ideal R = reduce_ideal(I * J);
      CHECK(R.is_integral());
      CHECK(G.dlog(R) == c);
      CHECK(R.norm() <= abs(k.disc()));
    }
  }
}

TEST_CASE("principal ideal generators") {
  NumberField k = NumberField::quadratic(-5);
  ClassGroup G = class_group(k);
  CHECK(G.order == 2);
  auto P2 = factor_prime(k, 2).at(0);
  CHECK_FALSE(G.is_principal(P2->ideal));
  CHECK_FALSE(G.generator(P2->ideal).has_value());
  auto g = G.generator(P2->ideal.pow(2));
  REQUIRE(g.has_value());
  CHECK(Ideal::principal(*g) == P2->ideal.pow(2));
  auto P3 = factor_prime(k, 3);
  Ideal I = P2->ideal * P3.at(0)->ideal;
  auto h = G.generator(I);
  REQUIRE(h.has_value());
  CHECK(abs(h->norm()) == 6);
}

TEST_CASE("torsion of the S-class group") {
  NumberField k13 = NumberField::quadratic(13);
  CHECK(s_class_torsion_trivial(k13, factor_prime(k13, 2), 2));
  NumberField q = NumberField::rationals();
  CHECK(s_class_torsion_trivial(q, factor_prime(q, 2), 3));
  CHECK(s_class_torsion_trivial(q, {}, 2));
  NumberField k10 = NumberField::quadratic(10);
  CHECK_FALSE(s_class_torsion_trivial(k10, {}, 2));
  CHECK(s_class_torsion_trivial(k10, {}, 3));
  // The prime above 2 generates Cl(Q(sqrt 10)).
  CHECK(s_class_torsion_trivial(k10, factor_prime(k10, 2), 2));
  // Primes above 3 are not principal either, and also generate.
  CHECK(s_class_torsion_trivial(k10, {factor_prime(k10, 3).at(0)}, 2));
  // 31 = 11^2 - 10 * 3^2, so the primes above 31 are principal.
  CHECK_FALSE(s_class_torsion_trivial(k10, factor_prime(k10, 31), 2));

  // Q(sqrt -65): Cl = Z/2 x Z/4.
  NumberField k65 = NumberField::quadratic(-65);
  ClassGroup G = class_group(k65);
  REQUIRE(G.invariants == IntVector{2, 4});
  CHECK_FALSE(s_class_torsion_trivial(k65, {}, 2));
  CHECK_FALSE(s_class_torsion_trivial(k65, {factor_prime(k65, 2).at(0)}, 2));
  CHECK(s_class_torsion_trivial(k65, {}, 3));
}

TEST_CASE("class numbers of the cubic and quintic fields") {
  for (auto& p : std::vector<std::vector<long>>{{-85, -51, 0, 1}, {13, -40, -1, 1}, {-75, -38, -1, 1}, {-17, -17, 0, 1}}) {
    NumberField k = NumberField::make(p);
    ClassGroup G = class_group(k);
    CHECK(G.order == 1);
    CHECK(G.certified);
    NarrowClassNumber N = narrow_class_number(k);
    CHECK(N.h_plus == 1);
    CHECK_FALSE(N.two_divides);
  }
  NumberField k5 = NumberField::make(std::vector<long>{-20, 50, -10, -25, 0, 1});
  ClassGroup G = class_group(k5);
  CHECK(G.order == 1);
  CHECK(G.certified);
}

TEST_CASE("asserted and uncertified class groups") {
  NumberField k = NumberField::quadratic(-14);
  ClassGroupOptions opt;
  opt.max_factor_norm = 1;
  ClassGroup U = class_group(k, opt);
  CHECK_FALSE(U.certified);
  CHECK_FALSE(U.asserted);
  CHECK(U.status.rfind("uncertified", 0) == 0);
  CHECK_THROWS_AS(U.dlog(Ideal::unit(k)), Uncertified);
  CHECK_THROWS_AS(s_class_torsion_trivial(k, {}, 2, opt), Uncertified);

  opt.asserted_order = Integer(4);
  ClassGroup A = class_group(k, opt);
  CHECK(A.asserted);
  CHECK_FALSE(A.certified);
  CHECK(A.status == "asserted, unverified");
  CHECK(A.order == 4);
  CHECK(s_class_torsion_trivial(k, {}, 3, opt));

  // The full computation agrees with the asserted value.
  CHECK(class_group(k).order == 4);
}

TEST_CASE("Minkowski bound") {
  CHECK(static_cast<double>(minkowski_bound(NumberField::quadratic(-5))) ==
        doctest::Approx(4.0 / 3.14159265358979 * 0.5 * std::sqrt(20.0)));
  CHECK(static_cast<double>(minkowski_bound(NumberField::quadratic(10))) == doctest::Approx(0.5 * std::sqrt(40.0)));
}
