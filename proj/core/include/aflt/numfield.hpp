#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "aflt/arith.hpp"
#include "aflt/errors.hpp"
#include "aflt/matrix.hpp"
#include "aflt/poly.hpp"

namespace aflt {

class FieldElement;
struct FieldData;

enum class ExtensionKind { none, omega, sqrt, cbrt };

/// An absolute number field Q[x]/(f) with f monic, integral and irreducible,
/// together with its maximal order. Fields built by extend_field remember
/// the base field and the adjoined element so elements can be moved up the
/// tower and decomposed relative to it.
///
/// NumberField is a cheap handle; copies share the same immutable data.
class NumberField {
 public:
  NumberField() = default;

  static NumberField make(const std::vector<Integer>& coeffs);
  static NumberField make(const std::vector<long>& coeffs);
  static NumberField rationals();
  /// Q(sqrt d) presented by x^2 - d.
  static NumberField quadratic(long d);

  bool valid() const { return d_ != nullptr; }
  int degree() const;
  const Poly& poly() const;
  const std::vector<Integer>& poly_coeffs() const;
  const Integer& disc() const;
  /// Factorization of |disc|.
  const std::vector<std::pair<Integer, int>>& disc_factors() const;
  /// Index of Z[x]/(f) in the maximal order.
  const Integer& index() const;
  int r1() const;
  int r2() const;
  bool totally_real() const;

  /// Integral basis w_0 = 1, ..., w_{n-1}: w_i = sum_{j<=i} N[i][j] x^j / D.
  const IntMatrix& basis_numerators() const;
  const Integer& basis_denominator() const;
  RatMatrix integral_basis() const;
  /// Coordinates of w_i * w_j in the integral basis.
  const IntVector& mult(int i, int j) const;

  /// Isolating intervals for the real roots of f (increasing), then the
  /// roots as long doubles: r1 real ones followed by r2 with positive
  /// imaginary part. Embedding j of the field sends x to roots()[j].
  const std::vector<RootInterval>& real_root_intervals() const;
  const std::vector<std::complex<long double>>& roots() const;

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement gen() const;
  FieldElement from_integer(const Integer& a) const;
  FieldElement from_rational(const Rational& a) const;
  FieldElement from_power(const RatVector& coords) const;
  FieldElement from_basis(const RatVector& coords) const;
  FieldElement from_basis(const IntVector& coords) const;
  FieldElement basis_element(int i) const;

  // Tower data (only for fields produced by extend_field).
  bool is_extension() const;
  NumberField base() const;
  ExtensionKind kind() const;
  /// The radicand beta in the base field (1 for omega).
  FieldElement radicand() const;
  /// omega, sqrt(beta) or cbrt(beta) inside this field.
  FieldElement adjoined() const;
  /// Image of an element of base() in this field.
  FieldElement embed(const FieldElement& x) const;
  /// Coefficients c_j in base() with x = sum_j c_j * adjoined()^j.
  std::vector<FieldElement> relative_coords(const FieldElement& x) const;

  bool operator==(const NumberField& o) const { return d_ == o.d_; }
  bool operator!=(const NumberField& o) const { return d_ != o.d_; }
  std::string str() const;

  /// Memoized derived data attached to the field (prime decompositions,
  /// units, class groups). `make` runs without the cache lock held, so it
  /// may itself use the cache.
  template <class T>
  std::shared_ptr<const T> cached(const std::string& key,
                                  const std::function<std::shared_ptr<const T>()>& make) const {
    if (auto hit = cache_get(key)) return std::static_pointer_cast<const T>(hit);
    std::shared_ptr<const T> v = make();
    return std::static_pointer_cast<const T>(cache_put(key, v));
  }

  const FieldData& data() const { return *d_; }

 private:
  friend class FieldElement;
  friend struct FieldBuilder;
  explicit NumberField(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}
  std::shared_ptr<const void> cache_get(const std::string& key) const;
  std::shared_ptr<const void> cache_put(const std::string& key, std::shared_ptr<const void> v) const;

  std::shared_ptr<const FieldData> d_;
};

/// Element of a number field, stored exactly as num(x) / den with num a
/// polynomial of degree < n in the field generator and den > 0 coprime to
/// the content of num.
class FieldElement {
 public:
  FieldElement() = default;

  NumberField field() const { return NumberField(d_); }
  bool valid() const { return d_ != nullptr; }
  const std::vector<Integer>& num() const { return num_; }
  const Integer& den() const { return den_; }

  RatVector power_coords() const;
  RatVector basis_coords() const;
  /// Integral-basis coordinates; throws InvalidInput if not integral.
  IntVector integral_coords() const;
  /// Least positive integer d with d*x integral.
  Integer denominator() const;

  bool is_zero() const;
  bool is_one() const;
  bool is_integral() const;
  bool is_rational() const;
  Rational rational_value() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator*(const Rational& s) const;
  FieldElement operator+(const Rational& s) const;
  FieldElement operator-(const Rational& s) const;

  FieldElement inverse() const;
  FieldElement pow(long e) const;

  Rational norm() const;
  Rational trace() const;
  /// Characteristic polynomial over Q (monic, degree n).
  Poly charpoly() const;
  Poly minpoly() const;
  /// Numerator polynomial in the generator with den folded in.
  Poly as_poly() const;

  /// Exact sign (+1/-1) at each real embedding; ZeroElement for 0.
  std::vector<int> signs() const;
  bool is_totally_positive() const;
  /// Approximate values at all r1 + r2 embeddings.
  std::vector<std::complex<long double>> embeddings() const;
  /// log|sigma_j(x)| for the r1 + r2 embeddings, accurate to long double
  /// precision regardless of cancellation (evaluated with MPFR).
  std::vector<long double> log_embeddings() const;
  /// log|sigma_j(x)| and arg(sigma_j(x)) with the same accuracy guarantee.
  void polar_embeddings(std::vector<long double>* logs, std::vector<long double>* args) const;

  friend bool operator==(const FieldElement& a, const FieldElement& b);
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }
  /// Deterministic total order (by den, then coefficients).
  friend bool operator<(const FieldElement& a, const FieldElement& b);

  std::string str(const std::string& var = "t") const;

 private:
  friend class NumberField;
  friend struct FieldBuilder;
  FieldElement(std::shared_ptr<const FieldData> d, std::vector<Integer> num, Integer den);
  void normalize();
  void check_same(const FieldElement& o) const;

  std::shared_ptr<const FieldData> d_;
  std::vector<Integer> num_;
  Integer den_ = 1;
};

inline std::vector<int> element_signs(const FieldElement& x) { return x.signs(); }

/// Polynomial with coefficients in a number field (constant term first).
class FieldPoly {
 public:
  FieldPoly() = default;
  explicit FieldPoly(std::vector<FieldElement> c);
  static FieldPoly from_rational(const NumberField& k, const Poly& p);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<FieldElement>& coeffs() const { return c_; }
  const FieldElement& coeff(int i) const { return c_[static_cast<std::size_t>(i)]; }

  friend FieldPoly operator+(const FieldPoly& a, const FieldPoly& b);
  friend FieldPoly operator-(const FieldPoly& a, const FieldPoly& b);
  friend FieldPoly operator*(const FieldPoly& a, const FieldPoly& b);
  FieldPoly scaled(const FieldElement& s) const;
  FieldElement eval(const FieldElement& x) const;
  FieldPoly derivative() const;
  FieldPoly monic() const;
  /// p(t + a)
  FieldPoly shift(const FieldElement& a) const;

 private:
  void trim();
  std::vector<FieldElement> c_;
};

void divmod(const FieldPoly& a, const FieldPoly& b, FieldPoly& q, FieldPoly& r);
FieldPoly gcd(const FieldPoly& a, const FieldPoly& b);

/// Norm from K[t] down to Q[t]: prod over embeddings of the coefficientwise
/// conjugate polynomial.
Poly norm_poly(const FieldPoly& g);

/// Distinct roots in K of a nonzero polynomial over K, sorted.
std::vector<FieldElement> roots_in_field(const FieldPoly& g);

/// True when x = r^l for some r in K (root stored in *root when non-null).
bool is_power(const FieldElement& x, int l, FieldElement* root = nullptr);

/// Result of adjoining omega, sqrt(beta) or cbrt(beta). When the element
/// already lies in the base, `trivial` is set, `field` is the base itself
/// and `root` is the element found there.
struct Extension {
  NumberField field;
  bool trivial = false;
  FieldElement root;
};

Extension extend_field(const NumberField& base, ExtensionKind kind,
                       const FieldElement& beta = FieldElement());

/// Determinant of a square matrix over a number field.
FieldElement determinant(std::vector<std::vector<FieldElement>> a);

}  // namespace aflt
