#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace aflt {

using Integer = mpz_class;
using Rational = mpq_class;

/// Deterministic 64-bit generator (splitmix64). Every randomized search in
/// the library is seeded from fixed constants so outputs are reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0x9e3779b97f4a7c15ULL) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

bool is_prime(const Integer& n);
bool is_prime(long n);

/// Primes p <= bound in increasing order.
std::vector<long> primes_up_to(long bound);

/// Factorization of |n| into (prime, exponent) pairs sorted by prime.
/// n == 0 is rejected; |n| == 1 gives the empty list.
std::vector<std::pair<Integer, int>> factor_integer(const Integer& n);

/// Largest k with p^k | n (n != 0).
int valuation(const Integer& n, const Integer& p);
int valuation(const Rational& x, const Integer& p);

Integer ipow(const Integer& base, unsigned long exp);
Rational rpow(const Rational& base, long exp);

/// True when n is a perfect k-th power; root receives the root.
bool exact_root(const Integer& n, unsigned long k, Integer& root);

bool is_squarefree(const Integer& n);

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
inline Integer lcm(const Integer& a, const Integer& b) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}
/// Floor division / non-negative remainder for positive modulus.
inline Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}
inline Integer fmod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}
/// Representative of a mod m in (-m/2, m/2].
Integer symmetric_mod(const Integer& a, const Integer& m);

/// Extended gcd: returns g = gcd(a, b) >= 0 with s*a + t*b = g.
Integer xgcd(const Integer& a, const Integer& b, Integer& s, Integer& t);

/// Round a rational to the nearest integer (ties away from zero).
Integer round_rational(const Rational& q);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
/// Reduce an Integer into [0, m).
std::uint64_t to_residue(const Integer& a, std::uint64_t m);

long double to_ld(const Integer& a);
long double to_ld(const Rational& a);
/// log|a| robust for huge values.
long double log_abs(const Integer& a);
long double log_abs(const Rational& a);

std::string to_string(const Rational& q);

}  // namespace aflt
