#include "aflt/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace aflt {

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

bool is_prime(long n) {
  if (n < 2) return false;
  static const std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::uint64_t m = static_cast<std::uint64_t>(n);
  for (auto q : small) {
    if (m == q) return true;
    if (m % q == 0) return false;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = m - 1;
  int s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  for (auto a : small) {
    std::uint64_t x = powmod(a, d, m);
    if (x == 1 || x == m - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mulmod(x, x, m);
      if (x == m - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
  for (long i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (long j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

namespace {

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n
// or 0 when the iteration budget is exhausted for every tried constant.
Integer pollard_brent(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1; c < 64; ++c) {
    Integer y = 2, x, q = 1, g = 1, ys;
    unsigned long r = 1, m = 128;
    auto f = [&](const Integer& v) {
      Integer w = v * v + c;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), n.get_mpz_t());
      return w;
    };
    unsigned long total = 0;
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      do {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          Integer d = x - y;
          q = q * d;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
      total += r;
    } while (g == 1 && total < (1UL << 26));
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(Integer(x - ys), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void factor_into(Integer n, std::map<Integer, int>& acc) {
  if (n == 1) return;
  if (is_prime(n)) {
    acc[n] += 1;
    return;
  }
  Integer root;
  for (unsigned long k = 2; k <= 6; ++k) {
    if (exact_root(n, k, root)) {
      std::map<Integer, int> sub;
      factor_into(root, sub);
      for (auto& [p, e] : sub) acc[p] += e * static_cast<int>(k);
      return;
    }
  }
  Integer d = pollard_brent(n);
  if (d == 0) throw std::runtime_error("integer factorization failed for " + n.get_str());
  factor_into(d, acc);
  factor_into(n / d, acc);
}

}  // namespace

std::vector<std::pair<Integer, int>> factor_integer(const Integer& n_in) {
  if (n_in == 0) throw std::invalid_argument("factor_integer: zero");
  Integer n = abs(n_in);
  std::map<Integer, int> acc;
  static const std::vector<long> small = primes_up_to(10000);
  for (long p : small) {
    if (n == 1) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(p));
        ++e;
      }
      acc[Integer(p)] = e;
    }
  }
  factor_into(n, acc);
  return {acc.begin(), acc.end()};
}

int valuation(const Integer& n, const Integer& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  Integer m = n;
  int v = 0;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), p.get_mpz_t());
    ++v;
  }
  return v;
}

int valuation(const Rational& x, const Integer& p) {
  return valuation(Integer(x.get_num()), p) - valuation(Integer(x.get_den()), p);
}

Integer ipow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational rpow(const Rational& base, long exp) {
  if (exp < 0) {
    if (base == 0) throw std::domain_error("rpow: zero to negative power");
    Rational inv = 1 / base;
    return rpow(inv, -exp);
  }
  Rational r(ipow(base.get_num(), static_cast<unsigned long>(exp)),
             ipow(base.get_den(), static_cast<unsigned long>(exp)));
  r.canonicalize();
  return r;
}

bool exact_root(const Integer& n, unsigned long k, Integer& root) {
  if (n < 0) {
    if (k % 2 == 0) return false;
    Integer r;
    if (!exact_root(Integer(-n), k, r)) return false;
    root = -r;
    return true;
  }
  return mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0;
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor_integer(n))
    if (e > 1) return false;
  return true;
}

Integer symmetric_mod(const Integer& a, const Integer& m) {
  Integer r = fmod(a, m);
  if (2 * r > m) r -= m;
  return r;
}

Integer xgcd(const Integer& a, const Integer& b, Integer& s, Integer& t) {
  Integer g;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Integer round_rational(const Rational& q) {
  Integer twice_num = 2 * q.get_num() + (q >= 0 ? Integer(q.get_den()) : Integer(-q.get_den()));
  Integer twice_den = 2 * q.get_den();
  Integer r;
  mpz_tdiv_q(r.get_mpz_t(), twice_num.get_mpz_t(), twice_den.get_mpz_t());
  return r;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t to_residue(const Integer& a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

namespace {
// Top 64 bits of |a| and the binary shift dropped to get them.
void top_bits(const Integer& a, std::uint64_t& mant, long& shift) {
  Integer t = abs(a);
  std::size_t bits = mpz_sizeinbase(t.get_mpz_t(), 2);
  shift = bits > 64 ? static_cast<long>(bits - 64) : 0;
  if (shift) mpz_tdiv_q_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  mant = mpz_get_ui(t.get_mpz_t());
}
}  // namespace

long double to_ld(const Integer& a) {
  if (a == 0) return 0;
  std::uint64_t mant;
  long shift;
  top_bits(a, mant, shift);
  long double r = std::ldexp(static_cast<long double>(mant), static_cast<int>(shift));
  return a < 0 ? -r : r;
}

long double to_ld(const Rational& a) {
  if (a == 0) return 0;
  std::uint64_t m1, m2;
  long s1, s2;
  top_bits(Integer(a.get_num()), m1, s1);
  top_bits(Integer(a.get_den()), m2, s2);
  long double r = std::ldexp(static_cast<long double>(m1) / static_cast<long double>(m2),
                             static_cast<int>(s1 - s2));
  return a < 0 ? -r : r;
}

long double log_abs(const Integer& a) {
  std::uint64_t mant;
  long shift;
  top_bits(a, mant, shift);
  return std::log(static_cast<long double>(mant)) + static_cast<long double>(shift) * std::log(2.0L);
}

long double log_abs(const Rational& a) {
  return log_abs(Integer(a.get_num())) - log_abs(Integer(a.get_den()));
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace aflt
