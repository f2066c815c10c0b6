#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aflt/numfield.hpp"

using namespace aflt;

namespace {

FieldElement random_element(const NumberField& k, SplitMix64& rng, long range = 20) {
  RatVector c;
  for (int i = 0; i < k.degree(); ++i) c.emplace_back(rng.range(-range, range), rng.range(1, 3));
  return k.from_power(c);
}

// Discriminant from the trace form of the integral basis, computed
// independently of the library's bookkeeping.
Integer trace_form_disc(const NumberField& k) {
  std::size_t n = static_cast<std::size_t>(k.degree());
  RatMatrix g(n, RatVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      g[i][j] = (k.basis_element(static_cast<int>(i)) * k.basis_element(static_cast<int>(j))).trace();
  Rational d = determinant(g);
  REQUIRE(d.get_den() == 1);
  return d.get_num();
}

}  // namespace

TEST_CASE("quadratic fields") {
  NumberField k = NumberField::make(std::vector<long>{-13, 0, 1});
  CHECK(k.degree() == 2);
  CHECK(k.disc() == 13);
  CHECK(k.totally_real());
  RatMatrix b = k.integral_basis();
  CHECK(b[1][0] == Rational(1, 2));
  CHECK(b[1][1] == Rational(1, 2));
  CHECK_FALSE(NumberField::make(std::vector<long>{1, 0, 1}).totally_real());
  for (long d : {2L, 3L, 5L, 6L, 7L, 10L, 13L, 17L, 21L, 22L, 23L, 29L, 33L, 37L, 41L, -1L, -3L, -5L, -7L}) {
    NumberField q = NumberField::quadratic(d);
    long dm = ((d % 4) + 4) % 4;
    CHECK(q.disc() == (dm == 1 ? Integer(d) : Integer(4 * d)));
    CHECK(trace_form_disc(q) == q.disc());
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(NumberField::make(std::vector<long>{-4, 0, 1}), ReduciblePolynomial);
  CHECK_THROWS_AS(NumberField::make(std::vector<long>{1, 2, 1}), NotSquarefree);
  CHECK_THROWS_AS(NumberField::make(std::vector<long>{1, 2}), InvalidInput);
}

TEST_CASE("discriminants of the cubic and quintic example fields") {
  // Reference values: Dedekind criterion at each prime whose square divides disc(f).
  struct Case {
    std::vector<long> f;
    long disc;
  };
  std::vector<Case> cases{
      {{-85, -51, 0, 1}, 37281},
      {{13, -40, -1, 1}, 29161},
      {{-75, -38, -1, 1}, 17457},
      {{-17, -17, 0, 1}, 11849},
      {{-20, 50, -10, -25, 0, 1}, 49000000},
      {{128, 160, -20, -30, 0, 1}, 132250000},
      {{4, 10, -10, -15, 0, 1}, 169000000},
      {{4, 10, -15, -20, 0, 1}, 1032015625},
  };
  for (auto& c : cases) {
    NumberField k = NumberField::make(c.f);
    CHECK(k.disc() == c.disc);
    CHECK(k.totally_real());
    CHECK(trace_form_disc(k) == k.disc());
    Integer m = fmod(k.disc(), Integer(4));
    CHECK((m == 0 || m == 1));
    for (int i = 0; i < k.degree(); ++i) {
      FieldElement w = k.basis_element(i);
      CHECK(w.trace().get_den() == 1);
      CHECK(w.norm().get_den() == 1);
    }
  }
}

TEST_CASE("norm and trace are exact and compatible") {
  SplitMix64 rng(11);
  NumberField k = NumberField::make(std::vector<long>{-85, -51, 0, 1});
  for (int t = 0; t < 50; ++t) {
    FieldElement x = random_element(k, rng), y = random_element(k, rng);
    CHECK((x * y).norm() == x.norm() * y.norm());
    CHECK((x + y).trace() == x.trace() + y.trace());
    if (!x.is_zero()) CHECK(x * x.inverse() == k.one());
    Poly cp = x.charpoly();
    CHECK(cp.coeff(0) * (k.degree() % 2 ? -1 : 1) == x.norm());
  }
}

TEST_CASE("exact signs") {
  NumberField k = NumberField::quadratic(13);
  FieldElement s = k.gen();
  // Embeddings are ordered by the real root: -sqrt13 first.
  CHECK(s.signs() == std::vector<int>{-1, 1});
  CHECK((s + Rational(1)).signs() == std::vector<int>{-1, 1});
  CHECK((-k.one()).signs() == std::vector<int>{-1, -1});
  CHECK_THROWS_AS(k.zero().signs(), ZeroElement);
  SplitMix64 rng(5);
  NumberField c = NumberField::make(std::vector<long>{-17, -17, 0, 1});
  for (int t = 0; t < 30; ++t) {
    FieldElement x = random_element(c, rng);
    if (x.is_zero()) continue;
    CHECK((x * x).is_totally_positive());
    auto e = x.embeddings();
    auto sg = x.signs();
    for (std::size_t j = 0; j < sg.size(); ++j)
      if (std::abs(e[j].real()) > 1e-9L) CHECK(sg[j] == (e[j].real() > 0 ? 1 : -1));
  }
  // A tiny unit: the conjugate of a large power of the fundamental unit.
  FieldElement eps = (k.gen() + Rational(3)) * Rational(1, 2);
  FieldElement big = eps.pow(60);
  auto le = big.log_embeddings();
  CHECK(std::abs(le[0] + le[1]) < 1e-12L);
  CHECK(big.signs() == std::vector<int>{1, 1});
}

TEST_CASE("extensions") {
  NumberField q = NumberField::rationals();
  Extension w = extend_field(q, ExtensionKind::omega);
  CHECK_FALSE(w.trivial);
  CHECK(w.field.degree() == 2);
  CHECK(w.field.disc() == -3);
  FieldElement om = w.field.adjoined();
  CHECK((om * om + om + w.field.one()).is_zero());

  Extension four = extend_field(q, ExtensionKind::sqrt, q.from_integer(4));
  CHECK(four.trivial);
  CHECK(four.root * four.root == q.from_integer(4));

  NumberField k = NumberField::quadratic(13);
  Extension e = extend_field(k, ExtensionKind::sqrt, k.from_integer(2));
  NumberField L = e.field;
  CHECK(L.degree() == 4);
  CHECK(L.disc() == 8 * 13 * 104);
  CHECK(trace_form_disc(L) == L.disc());
  CHECK(L.adjoined() * L.adjoined() == L.from_integer(2));
  FieldElement s13 = L.embed(k.gen());
  CHECK(s13 * s13 == L.from_integer(13));

  SplitMix64 rng(3);
  for (int t = 0; t < 100; ++t) {
    FieldElement x = random_element(k, rng), y = random_element(k, rng);
    CHECK(L.embed(x + y) == L.embed(x) + L.embed(y));
    CHECK(L.embed(x * y) == L.embed(x) * L.embed(y));
  }
  FieldElement z = L.embed(k.gen()) * L.adjoined() + L.from_integer(5);
  auto rc = L.relative_coords(z);
  REQUIRE(rc.size() == 2);
  CHECK(rc[0] == k.from_integer(5));
  CHECK(rc[1] == k.gen());

  Extension sq = extend_field(k, ExtensionKind::sqrt, (k.gen() + Rational(4)).pow(2));
  CHECK(sq.trivial);
  CHECK(sq.root * sq.root == (k.gen() + Rational(4)).pow(2));
  CHECK_THROWS_AS(extend_field(k, ExtensionKind::sqrt, k.zero()), DegenerateExtension);
}

TEST_CASE("cube roots and omega over a cubic field") {
  NumberField k = NumberField::make(std::vector<long>{13, -40, -1, 1});
  Extension w = extend_field(k, ExtensionKind::omega);
  CHECK(w.field.degree() == 6);
  CHECK(trace_form_disc(w.field) == w.field.disc());
  // disc(K(omega)) = disc(K)^2 * (-3)^3 when 3 is unramified in K
  CHECK(w.field.disc() == k.disc() * k.disc() * -27);
  Extension c = extend_field(w.field, ExtensionKind::cbrt, w.field.from_integer(2));
  CHECK(c.field.degree() == 18);
  CHECK(c.field.adjoined().pow(3) == c.field.from_integer(2));
  FieldElement x = c.field.adjoined() + c.field.embed(w.field.adjoined());
  FieldElement r;
  CHECK(is_power(x.pow(3), 3, &r));
  CHECK(r.pow(3) == x.pow(3));
  CHECK_FALSE(is_power(c.field.from_integer(3), 3));
  CHECK(is_power(k.from_integer(-8), 3, &r));
  CHECK(r == k.from_integer(-2));
}
