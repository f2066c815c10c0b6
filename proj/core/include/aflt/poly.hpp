#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "aflt/arith.hpp"

namespace aflt {

/// Univariate polynomial over Q, coefficients stored constant term first.
/// The zero polynomial has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);
  static Poly from_integers(const std::vector<Integer>& coeffs);
  static Poly from_longs(const std::vector<long>& coeffs);
  static Poly constant(const Rational& c);
  static Poly monomial(int deg, const Rational& c = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& lead() const { return c_.back(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Rational eval(const Rational& x) const;
  long double eval(long double x) const;
  std::complex<long double> eval(std::complex<long double> x) const;

  Poly derivative() const;
  Poly monic() const;
  Poly compose(const Poly& inner) const;
  /// p(x + a)
  Poly shift(const Rational& a) const;
  bool is_integral() const;
  /// Requires is_integral().
  std::vector<Integer> integer_coeffs() const;
  /// Least common multiple of coefficient denominators.
  Integer denominator() const;
  std::string str(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly operator/(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// Returns monic g = s*a + t*b.
Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t);

Rational resultant(const Poly& a, const Poly& b);
Rational discriminant(const Poly& f);
bool is_squarefree(const Poly& f);
Poly squarefree_part(const Poly& f);

/// Integer polynomial with content 1 and positive leading coefficient.
Poly primitive_part(const Poly& f);

/// Factorization over Q into primitive integer irreducible factors with
/// positive leading coefficients, together with multiplicities. Factors are
/// sorted by (degree, coefficients).
std::vector<std::pair<Poly, int>> factor_rational(const Poly& f);
bool is_irreducible(const Poly& f);

// ---------------------------------------------------------------------------
// Real roots.

/// Isolating interval for a real root. lo == hi marks an exact rational root;
/// otherwise the root lies strictly inside (lo, hi) and f(lo), f(hi) are
/// nonzero with opposite signs.
struct RootInterval {
  Rational lo, hi;
  bool exact() const { return lo == hi; }
};

/// Sturm sequence with integer primitive members (positive rescalings only).
std::vector<Poly> sturm_sequence(const Poly& f);
/// Number of distinct real roots of the sequence's head in (lo, hi].
int sturm_count(const std::vector<Poly>& seq, const Rational& lo, const Rational& hi);

/// Isolating intervals of the real roots of f, sorted increasingly. f need
/// not be squarefree.
std::vector<RootInterval> isolate_real_roots(const Poly& f);
/// Bisect until hi - lo <= width (f squarefree, iv isolating a root of f).
void refine_root(const Poly& f, RootInterval& iv, const Rational& width);

/// Numerical approximations of all complex roots (Aberth iteration with
/// Newton polishing). Input must be squarefree.
std::vector<std::complex<long double>> complex_roots(const Poly& f);

// ---------------------------------------------------------------------------
// Polynomials over F_p, p < 2^32, coefficients in [0, p).

using FpPoly = std::vector<std::uint64_t>;

namespace fp {

void trim(FpPoly& a);
int degree(const FpPoly& a);
FpPoly reduce(const Poly& f, std::uint64_t p);
FpPoly reduce(const std::vector<Integer>& f, std::uint64_t p);
FpPoly add(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly scale(const FpPoly& a, std::uint64_t s, std::uint64_t p);
void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r, std::uint64_t p);
FpPoly mod(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly monic(const FpPoly& a, std::uint64_t p);
FpPoly gcd(const FpPoly& a, const FpPoly& b, std::uint64_t p);
FpPoly xgcd(const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t, std::uint64_t p);
FpPoly derivative(const FpPoly& a, std::uint64_t p);
FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& m, std::uint64_t p);
std::uint64_t eval(const FpPoly& a, std::uint64_t x, std::uint64_t p);

/// Monic irreducible factors with multiplicities, sorted by (degree, coeffs).
std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f, std::uint64_t p);
bool is_irreducible(const FpPoly& f, std::uint64_t p);

}  // namespace fp

}  // namespace aflt
