#pragma once

#include <memory>
#include <string>
#include <vector>

#include "aflt/numfield.hpp"

namespace aflt {

/// Fractional ideal H / d, where H is the upper-triangular column Hermite
/// normal form (integral-basis coordinates) of an integral lattice and d a
/// positive integer, normalized so that gcd(content(H), d) = 1.
class Ideal {
 public:
  Ideal() = default;
  static Ideal unit(const NumberField& k);
  static Ideal principal(const FieldElement& x);
  /// O_K-module generated by the given elements (at least one nonzero).
  static Ideal generated(const NumberField& k, const std::vector<FieldElement>& gens);

  NumberField field() const { return k_; }
  bool valid() const { return k_.valid(); }
  const IntMatrix& hnf() const { return h_; }
  const Integer& den() const { return d_; }

  Rational norm() const;
  bool is_integral() const { return d_ == 1; }
  bool is_unit() const;
  bool contains(const FieldElement& x) const;
  /// Smallest positive integer in the numerator lattice H.
  const Integer& min_integer() const { return h_[0][0]; }
  /// Z-basis of the ideal as field elements.
  std::vector<FieldElement> basis() const;

  Ideal operator*(const Ideal& o) const;
  Ideal operator*(const FieldElement& x) const;
  Ideal operator+(const Ideal& o) const;
  Ideal inverse() const;
  Ideal operator/(const Ideal& o) const { return *this * o.inverse(); }
  Ideal pow(long e) const;

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.k_ == b.k_ && a.d_ == b.d_ && a.h_ == b.h_;
  }
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }
  /// Order by norm, then denominator, then HNF entries (row-major).
  friend bool operator<(const Ideal& a, const Ideal& b);

  std::string str() const;

 private:
  friend struct IdealAccess;
  Ideal(NumberField k, IntMatrix h, Integer d, std::vector<IntVector> gens = {});
  void normalize();

  NumberField k_;
  IntMatrix h_;
  Integer d_ = 1;
  // Optional small O_K-generating set of the numerator (integral coords).
  std::vector<IntVector> gens_;
};

/// Residue field O_K / P presented as F_p[t] / (h) with h irreducible of
/// degree f. The reduction of w_i is row i of `images`.
struct ResidueField {
  std::uint64_t p = 0;
  FpPoly h;
  int f = 0;
  std::vector<FpPoly> images;

  FpPoly mul(const FpPoly& a, const FpPoly& b) const;
  FpPoly add(const FpPoly& a, const FpPoly& b) const;
  FpPoly pow(const FpPoly& a, const Integer& e) const;
  FpPoly inverse(const FpPoly& a) const;
  FpPoly from_int(const Integer& a) const;
  Integer size() const;
};

/// Prime ideal P = (p, pi) of K with ramification e and residue degree f.
struct PrimeIdeal {
  NumberField field;
  Integer p;
  int e = 0, f = 0;
  /// pi has valuation 1 at P and 0 at the other primes above p.
  FieldElement pi;
  /// Element with beta * P contained in pO but beta not in pO; used for
  /// valuations.
  FieldElement beta;
  /// Multiplication by beta in integral-basis coordinates.
  IntMatrix beta_mult;
  Ideal ideal;
  ResidueField residue;

  Integer norm() const { return ipow(p, static_cast<unsigned long>(f)); }
  /// Reduction modulo P of an element whose denominator is prime to p.
  FpPoly reduce(const FieldElement& x) const;
  std::string str() const;
};

using Prime = std::shared_ptr<const PrimeIdeal>;

/// Total order used for factor bases and prime lists: (norm, e, HNF).
bool prime_less(const Prime& a, const Prime& b);
bool same_prime(const Prime& a, const Prime& b);

/// Primes above p with multiplicities, sorted by (f, e, HNF). Memoized per
/// field.
std::vector<Prime> factor_prime(const NumberField& k, const Integer& p);

enum class SplittingType { inert, totally_ramified, split, mixed };
SplittingType splitting_type(const NumberField& k, const Integer& p);
std::string to_string(SplittingType t);

int valuation(const FieldElement& x, const PrimeIdeal& P);
int valuation(const Ideal& I, const PrimeIdeal& P);

/// Factorization of a nonzero fractional ideal into prime powers, sorted by
/// prime_less.
std::vector<std::pair<Prime, int>> factor_ideal(const Ideal& I);
std::vector<std::pair<Prime, int>> factor_element(const FieldElement& x);

/// Primes above l (S_K) and those of residue degree 1 (T_K).
struct PrimeSets {
  std::vector<Prime> S, T;
  bool t_defined = true;
};
PrimeSets prime_sets(const NumberField& k, int l);

/// Rational primes lying below a set of primes.
std::vector<Integer> primes_below(const std::vector<Prime>& S);

/// x has valuation zero (resp. nonnegative) at every prime outside S.
bool is_s_unit(const FieldElement& x, const std::vector<Prime>& S);
bool is_s_integer(const FieldElement& x, const std::vector<Prime>& S);

/// Valuations of x at each prime of S.
std::vector<int> valuation_vector(const FieldElement& x, const std::vector<Prime>& S);

}  // namespace aflt
