#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "aflt/matrix.hpp"
#include "aflt/poly.hpp"

using namespace aflt;

namespace {

Poly P(std::vector<long> c) { return Poly::from_longs(c); }

Poly product(const std::vector<std::pair<Poly, int>>& fs) {
  Poly r = Poly::constant(1);
  for (auto& [f, m] : fs)
    for (int i = 0; i < m; ++i) r = r * f;
  return r;
}

}  // namespace

TEST_CASE("integer factorization") {
  auto fs = factor_integer(Integer(-360));
  REQUIRE(fs.size() == 3);
  CHECK(fs[0] == std::make_pair(Integer(2), 3));
  CHECK(fs[1] == std::make_pair(Integer(3), 2));
  CHECK(fs[2] == std::make_pair(Integer(5), 1));
  Integer big = Integer("1000000007") * Integer("998244353") * 49;
  auto gs = factor_integer(big);
  REQUIRE(gs.size() == 3);
  CHECK(gs[0] == std::make_pair(Integer(7), 2));
  CHECK(gs[2].first == Integer("1000000007"));
  CHECK(valuation(Rational(40, 9), Integer(3)) == -2);
}

TEST_CASE("resultant and discriminant") {
  CHECK(discriminant(P({-13, 0, 1})) == 52);
  CHECK(discriminant(P({-85, -51, 0, 1})) == Rational(-4 * (-51) * (-51) * (-51) - 27 * 85 * 85));
  // Res(x^2 - 2, x - 3) = 3^2 - 2
  CHECK(resultant(P({-2, 0, 1}), P({-3, 1})) == 7);
  CHECK(resultant(P({1, 1}), P({1, 2, 1})) == 0);
}

TEST_CASE("factorization over Q") {
  Poly a = P({-2, 0, 1}), b = P({1, 1, 1}), c = P({-85, -51, 0, 1}), d = P({3, -1});
  Poly f = a * b * b * c * d;
  auto fs = factor_rational(f);
  CHECK(fs.size() == 4);
  CHECK(primitive_part(product(fs)) == primitive_part(f));
  for (auto& [g, m] : fs) CHECK(is_irreducible(g));
  CHECK(is_irreducible(P({-85, -51, 0, 1})));
  CHECK_FALSE(is_irreducible(P({-4, 0, 1})));
  // x^4 + 1 splits modulo every prime but is irreducible over Q.
  CHECK(is_irreducible(P({1, 0, 0, 0, 1})));
  // Swinnerton-Dyer polynomial for sqrt2, sqrt3: x^4 - 10x^2 + 1.
  CHECK(is_irreducible(P({1, 0, -10, 0, 1})));
  Poly sd = P({1, 0, -10, 0, 1}) * P({1, 0, -10, 0, 1}).shift(1);
  CHECK(factor_rational(sd).size() == 2);
}

TEST_CASE("factorization of random products") {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    Poly f = Poly::constant(1);
    int parts = 2 + static_cast<int>(rng.next() % 3);
    for (int k = 0; k < parts; ++k) {
      int deg = 1 + static_cast<int>(rng.next() % 4);
      std::vector<long> c(static_cast<std::size_t>(deg) + 1);
      for (auto& x : c) x = rng.range(-9, 9);
      c.back() = 1 + rng.range(0, 2);
      f = f * P(c);
    }
    if (f.degree() < 1) continue;
    auto fs = factor_rational(f);
    CHECK(primitive_part(product(fs)) == primitive_part(f));
    for (auto& [g, m] : fs) CHECK(is_irreducible(g));
  }
}

TEST_CASE("real root isolation") {
  auto roots = isolate_real_roots(P({-85, -51, 0, 1}));
  REQUIRE(roots.size() == 3);
  auto r2 = isolate_real_roots(P({1, 0, 1}));
  CHECK(r2.empty());
  auto r3 = isolate_real_roots(P({0, -1, 0, 1}));  // x^3 - x
  REQUIRE(r3.size() == 3);
  CHECK(r3[1].exact());
  auto iv = roots[2];
  refine_root(P({-85, -51, 0, 1}), iv, Rational(1, 1000000));
  CHECK(iv.hi - iv.lo <= Rational(1, 1000000));
  auto cr = complex_roots(P({1, 1, 1}));
  REQUIRE(cr.size() == 2);
  CHECK(std::abs(cr[0].imag()) > 0.8L);
}

TEST_CASE("factorization over F_p") {
  auto fs = fp::factor(fp::reduce(Poly::from_longs({-3, -1, 1}) * Poly::from_longs({2, 0, 1}), 5), 5);
  int total = 0;
  for (auto& [g, m] : fs) total += fp::degree(g) * m;
  CHECK(total == 4);
  // x^2 - x - 3 is irreducible mod 2 (2 inert in Q(sqrt 13)).
  CHECK(fp::is_irreducible(FpPoly{1, 1, 1}, 2));
  // Repeated factor: (x+1)^3 mod 3 = x^3 + 1.
  auto rep = fp::factor(FpPoly{1, 0, 0, 1}, 3);
  REQUIRE(rep.size() == 1);
  CHECK(rep[0].second == 3);
}

TEST_CASE("Hermite and Smith forms") {
  std::vector<IntVector> cols{{Integer(4), Integer(2)}, {Integer(2), Integer(6)}};
  IntMatrix h = hnf_columns(cols, 2);
  CHECK(h[1][0] == 0);
  CHECK(h[0][0] * h[1][1] == 20);
  IntMatrix hm = hnf_columns_mod(cols, 2, Integer(20));
  CHECK(hm == h);
  IntMatrix a{{Integer(2), Integer(4), Integer(4)}, {Integer(-6), Integer(6), Integer(12)},
              {Integer(10), Integer(-4), Integer(-16)}};
  SmithForm s = smith_form(a);
  CHECK(s.diag == IntVector{Integer(2), Integer(6), Integer(12)});
  IntMatrix d = mat_mul(mat_mul(s.u, a), s.v);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(d[i][j] == (i == j ? s.diag[i] : Integer(0)));
  IntMatrix k = integer_left_kernel(IntMatrix{{Integer(1), Integer(2)}, {Integer(2), Integer(4)}, {Integer(1), Integer(1)}});
  REQUIRE(k.size() == 1);
  CHECK(k[0][0] * 1 + k[0][1] * 2 + k[0][2] * 1 == 0);
}

TEST_CASE("LLL and enumeration") {
  RealMatrix g{{1, 0.9L}, {0.9L, 1}};
  IntMatrix t = lll_gram(g);
  CHECK(g[0][0] <= 0.2L + 1e-12L);  // shortest vector is b1 - b0
  CHECK(determinant(t) * determinant(t) == 1);
  int count = 0;
  RealMatrix id{{1, 0}, {0, 1}};
  fincke_pohst(id, 2.0L, [&](const std::vector<long>&, long double) {
    ++count;
    return true;
  });
  CHECK(count == 4);  // (1,0),(0,1),(1,1),(1,-1) up to sign
}
