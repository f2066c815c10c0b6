#include "aflt/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace aflt {

// ---------------------------------------------------------------------------
// Poly over Q

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& x : c_) x.canonicalize();
  trim();
}

Poly Poly::from_integers(const std::vector<Integer>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (auto& x : coeffs) c.emplace_back(x);
  return Poly(std::move(c));
}

Poly Poly::from_longs(const std::vector<long>& coeffs) {
  std::vector<Rational> c;
  c.reserve(coeffs.size());
  for (long x : coeffs) c.emplace_back(x);
  return Poly(std::move(c));
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::monomial(int deg, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(deg) + 1);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational Poly::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return c_[static_cast<std::size_t>(i)];
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(const Rational& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Rational Poly::eval(const Rational& x) const {
  Rational r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

long double Poly::eval(long double x) const {
  long double r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + to_ld(*it);
  return r;
}

std::complex<long double> Poly::eval(std::complex<long double> x) const {
  std::complex<long double> r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + to_ld(*it);
  return r;
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return Poly(std::move(r));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rational inv = 1 / lead();
  return *this * inv;
}

Poly Poly::compose(const Poly& inner) const {
  Poly r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * inner + Poly::constant(*it);
  return r;
}

Poly Poly::shift(const Rational& a) const {
  // Taylor shift by repeated synthetic division.
  std::vector<Rational> v = c_;
  int n = degree();
  for (int i = 0; i < n; ++i)
    for (int j = n - 1; j >= i; --j) v[static_cast<std::size_t>(j)] += a * v[static_cast<std::size_t>(j) + 1];
  return Poly(std::move(v));
}

bool Poly::is_integral() const {
  for (auto& x : c_)
    if (x.get_den() != 1) return false;
  return true;
}

std::vector<Integer> Poly::integer_coeffs() const {
  std::vector<Integer> r;
  r.reserve(c_.size());
  for (auto& x : c_) {
    if (x.get_den() != 1) throw std::logic_error("integer_coeffs: non-integral polynomial");
    r.emplace_back(x.get_num());
  }
  return r;
}

Integer Poly::denominator() const {
  Integer d = 1;
  for (auto& x : c_) d = lcm(d, Integer(x.get_den()));
  return d;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& a = c_[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    Rational mag = abs(a);
    if (!first) os << (a < 0 ? " - " : " + ");
    else if (a < 0) os << "-";
    first = false;
    bool unit = (mag == 1);
    if (!unit || i == 0) os << mag.get_str();
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  int db = b.degree();
  std::vector<Rational> rem = a.coeffs();
  if (a.degree() < db) {
    q = Poly();
    r = a;
    return;
  }
  std::vector<Rational> quo(static_cast<std::size_t>(a.degree() - db) + 1);
  Rational inv = 1 / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    Rational t = rem[static_cast<std::size_t>(i)] * inv;
    if (t == 0) continue;
    quo[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j)
      rem[static_cast<std::size_t>(i - db + j)] -= t * b.coeffs()[static_cast<std::size_t>(j)];
  }
  rem.resize(static_cast<std::size_t>(db));
  q = Poly(std::move(quo));
  r = Poly(std::move(rem));
}

Poly operator/(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  return q;
}

Poly operator%(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  return r;
}

namespace {

// Integer coefficients of c*f with c > 0 chosen to clear denominators and
// content.
std::vector<Integer> primitive_coeffs(const Poly& f) {
  Integer d = f.denominator();
  std::vector<Integer> v;
  for (auto& x : f.coeffs()) v.emplace_back(Integer(x * d));
  Integer g = 0;
  for (auto& x : v) g = gcd(g, x);
  for (auto& x : v) x /= g;
  return v;
}

// Primes just below 2^61, used for multimodular computations.
std::uint64_t modular_prime(std::size_t i) {
  static std::vector<std::uint64_t> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  std::uint64_t p = cache.empty() ? (1ULL << 61) : cache.back();
  while (cache.size() <= i) {
    p -= 1;
    while (!is_prime(static_cast<long>(p))) --p;
    cache.push_back(p);
  }
  return cache[i];
}

// Combine x mod m and r mod p into a residue mod m*p (symmetric range not
// applied).
void crt_combine(std::vector<Integer>& x, Integer& m, const FpPoly& r, std::uint64_t p, std::size_t len) {
  Integer P(static_cast<unsigned long>(p));
  Integer minv;
  mpz_invert(minv.get_mpz_t(), Integer(fmod(m, P)).get_mpz_t(), P.get_mpz_t());
  x.resize(len);
  for (std::size_t i = 0; i < len; ++i) {
    Integer ri = i < r.size() ? Integer(static_cast<unsigned long>(r[i])) : Integer(0);
    Integer t = fmod((ri - x[i]) * minv, P);
    x[i] += m * t;
  }
  m *= P;
}

bool divides_exactly(const std::vector<Integer>& g, const std::vector<Integer>& a) {
  Poly q, r;
  divmod(Poly::from_integers(a), Poly::from_integers(g), q, r);
  return r.is_zero() && q.is_integral();
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.degree() == 0 || b.degree() == 0) return Poly::constant(1);
  auto A = primitive_coeffs(a), B = primitive_coeffs(b);
  Integer lc = gcd(A.back(), B.back());
  int best = std::min(a.degree(), b.degree()) + 1;
  std::vector<Integer> h;
  Integer m = 1;
  std::vector<Integer> last;
  for (std::size_t i = 0;; ++i) {
    std::uint64_t p = modular_prime(i);
    if (to_residue(A.back(), p) == 0 || to_residue(B.back(), p) == 0) continue;
    FpPoly g = fp::gcd(fp::reduce(A, p), fp::reduce(B, p), p);
    int d = fp::degree(g);
    if (d == 0) return Poly::constant(1);
    if (d > best) continue;
    g = fp::scale(g, to_residue(lc, p), p);
    if (d < best) {
      best = d;
      h.assign(static_cast<std::size_t>(d) + 1, Integer(0));
      m = 1;
      last.clear();
    }
    crt_combine(h, m, g, p, static_cast<std::size_t>(d) + 1);
    std::vector<Integer> cand;
    for (auto& x : h) cand.push_back(symmetric_mod(x, m));
    if (cand == last) {
      Poly c = primitive_part(Poly::from_integers(cand));
      auto cc = c.integer_coeffs();
      if (divides_exactly(cc, A) && divides_exactly(cc, B)) return c.monic();
    }
    last = std::move(cand);
  }
}

Poly xgcd(const Poly& a, const Poly& b, Poly& s, Poly& t) {
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(1), s1, t0, t1 = Poly::constant(1);
  while (!r1.is_zero()) {
    Poly q, r;
    divmod(r0, r1, q, r);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    s = Poly();
    t = Poly();
    return r0;
  }
  Rational inv = 1 / r0.lead();
  s = s0 * inv;
  t = t0 * inv;
  return r0 * inv;
}

namespace {

std::uint64_t fp_resultant(FpPoly a, FpPoly b, std::uint64_t p) {
  std::uint64_t acc = 1;
  while (true) {
    int m = fp::degree(a), n = fp::degree(b);
    if (n < 0) return 0;
    if (n == 0) return mulmod(acc, powmod(b[0], static_cast<std::uint64_t>(m), p), p);
    FpPoly r = fp::mod(a, b, p);
    if (r.empty()) return 0;
    if ((static_cast<long>(m) * n) % 2 == 1) acc = (p - acc) % p;
    acc = mulmod(acc, powmod(b.back(), static_cast<std::uint64_t>(m - fp::degree(r)), p), p);
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace

Rational resultant(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  if (a.degree() == 0) return rpow(a.lead(), b.degree());
  if (b.degree() == 0) return rpow(b.lead(), a.degree());
  Integer da = a.denominator(), db = b.denominator();
  std::vector<Integer> A, B;
  for (auto& x : a.coeffs()) A.emplace_back(Integer(x * da));
  for (auto& x : b.coeffs()) B.emplace_back(Integer(x * db));
  // Hadamard bound on the Sylvester determinant.
  auto log2norm = [](const std::vector<Integer>& v) {
    long double s = 0;
    for (auto& x : v)
      if (x != 0) s = std::max(s, static_cast<long double>(mpz_sizeinbase(x.get_mpz_t(), 2)));
    return s + 0.5L * std::log2(static_cast<long double>(v.size()));
  };
  long double bits = b.degree() * log2norm(A) + a.degree() * log2norm(B) + 2;
  std::vector<Integer> r{Integer(0)};
  Integer m = 1;
  for (std::size_t i = 0; static_cast<long double>(mpz_sizeinbase(m.get_mpz_t(), 2)) <= bits + 1; ++i) {
    std::uint64_t p = modular_prime(i);
    if (to_residue(A.back(), p) == 0 || to_residue(B.back(), p) == 0) continue;
    FpPoly rp{fp_resultant(fp::reduce(A, p), fp::reduce(B, p), p)};
    crt_combine(r, m, rp, p, 1);
  }
  Rational res(symmetric_mod(r[0], m));
  res /= Rational(ipow(da, static_cast<unsigned long>(b.degree())) * ipow(db, static_cast<unsigned long>(a.degree())));
  return res;
}

Rational discriminant(const Poly& f) {
  int n = f.degree();
  if (n < 1) throw std::invalid_argument("discriminant of constant polynomial");
  Rational r = resultant(f, f.derivative()) / f.lead();
  if ((static_cast<long>(n) * (n - 1) / 2) % 2 == 1) r = -r;
  return r;
}

bool is_squarefree(const Poly& f) { return gcd(f, f.derivative()).degree() == 0; }

Poly squarefree_part(const Poly& f) { return (f / gcd(f, f.derivative())).monic(); }

Poly primitive_part(const Poly& f) {
  if (f.is_zero()) return f;
  Integer d = f.denominator();
  std::vector<Integer> v;
  for (auto& x : f.coeffs()) v.emplace_back(Integer(x * d));
  Integer g = 0;
  for (auto& x : v) g = gcd(g, x);
  if (v.back() < 0) g = -g;
  for (auto& x : v) x /= g;
  return Poly::from_integers(v);
}

// ---------------------------------------------------------------------------
// F_p[x]

namespace fp {

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

FpPoly reduce(const Poly& f, std::uint64_t p) {
  FpPoly r;
  for (auto& c : f.coeffs()) {
    std::uint64_t den = to_residue(Integer(c.get_den()), p);
    if (den == 0) throw std::domain_error("fp::reduce: denominator divisible by p");
    r.push_back(mulmod(to_residue(Integer(c.get_num()), p), invmod(den, p), p));
  }
  trim(r);
  return r;
}

FpPoly reduce(const std::vector<Integer>& f, std::uint64_t p) {
  FpPoly r;
  for (auto& c : f) r.push_back(to_residue(c, p));
  trim(r);
  return r;
}

FpPoly add(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
  trim(r);
  return r;
}

FpPoly sub(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

FpPoly mul(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
      // Keep the accumulator bounded; p < 2^32 so each product < 2^64.
      if (acc[i + j] >> 100) acc[i + j] %= p;
    }
  }
  FpPoly r(acc.size());
  for (std::size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<std::uint64_t>(acc[i] % p);
  trim(r);
  return r;
}

FpPoly scale(const FpPoly& a, std::uint64_t s, std::uint64_t p) {
  FpPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
  trim(r);
  return r;
}

void divmod(const FpPoly& a, const FpPoly& b, FpPoly& q, FpPoly& r, std::uint64_t p) {
  if (b.empty()) throw std::domain_error("fp::divmod by zero");
  int db = degree(b);
  r = a;
  if (degree(a) < db) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(degree(a) - db) + 1, 0);
  std::uint64_t inv = invmod(b.back(), p);
  for (int i = degree(a); i >= db; --i) {
    std::uint64_t t = mulmod(r[static_cast<std::size_t>(i)], inv, p);
    if (!t) continue;
    q[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) {
      auto& x = r[static_cast<std::size_t>(i - db + j)];
      x = (x + p - mulmod(t, b[static_cast<std::size_t>(j)], p)) % p;
    }
  }
  r.resize(static_cast<std::size_t>(db));
  trim(r);
  trim(q);
}

FpPoly mod(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly q, r;
  divmod(a, b, q, r, p);
  return r;
}

FpPoly monic(const FpPoly& a, std::uint64_t p) {
  if (a.empty()) return a;
  return scale(a, invmod(a.back(), p), p);
}

FpPoly gcd(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly x = a, y = b;
  while (!y.empty()) {
    FpPoly r = mod(x, y, p);
    x = std::move(y);
    y = std::move(r);
  }
  return monic(x, p);
}

FpPoly xgcd(const FpPoly& a, const FpPoly& b, FpPoly& s, FpPoly& t, std::uint64_t p) {
  FpPoly r0 = a, r1 = b, s0{1}, s1, t0, t1{1};
  while (!r1.empty()) {
    FpPoly q, r;
    divmod(r0, r1, q, r, p);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = sub(s0, mul(q, s1, p), p), t2 = sub(t0, mul(q, t1, p), p);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  std::uint64_t inv = r0.empty() ? 0 : invmod(r0.back(), p);
  s = scale(s0, inv, p);
  t = scale(t0, inv, p);
  return scale(r0, inv, p);
}

FpPoly derivative(const FpPoly& a, std::uint64_t p) {
  if (a.size() <= 1) return {};
  FpPoly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = mulmod(a[i], i % p, p);
  trim(r);
  return r;
}

FpPoly powmod(const FpPoly& base, const Integer& e, const FpPoly& m, std::uint64_t p) {
  FpPoly result{1};
  result = mod(result, m, p);
  FpPoly b = mod(base, m, p);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = mod(mul(result, result, p), m, p);
    if (mpz_tstbit(e.get_mpz_t(), i)) result = mod(mul(result, b, p), m, p);
  }
  return result;
}

std::uint64_t eval(const FpPoly& a, std::uint64_t x, std::uint64_t p) {
  std::uint64_t r = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) r = (mulmod(r, x, p) + *it) % p;
  return r;
}

namespace {

FpPoly divexact(const FpPoly& a, const FpPoly& b, std::uint64_t p) {
  FpPoly q, r;
  divmod(a, b, q, r, p);
  return q;
}

// f monic squarefree; returns pairs (product of irreducible factors of degree d, d).
std::vector<std::pair<FpPoly, int>> distinct_degree(FpPoly f, std::uint64_t p) {
  std::vector<std::pair<FpPoly, int>> out;
  FpPoly x{0, 1};
  FpPoly h = x;
  int d = 0;
  while (degree(f) >= 2 * (d + 1)) {
    ++d;
    h = powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
    FpPoly g = gcd(f, sub(h, x, p), p);
    if (degree(g) > 0) {
      out.emplace_back(g, d);
      f = divexact(f, g, p);
      h = mod(h, f, p);
    }
  }
  if (degree(f) > 0) out.emplace_back(f, degree(f));
  return out;
}

// Split g (monic, product of irreducibles of degree d) into its factors.
void equal_degree(const FpPoly& g, int d, std::uint64_t p, SplitMix64& rng, std::vector<FpPoly>& out) {
  int n = degree(g);
  if (n == d) {
    out.push_back(g);
    return;
  }
  while (true) {
    FpPoly a(static_cast<std::size_t>(n));
    for (auto& c : a) c = rng.next() % p;
    trim(a);
    if (degree(a) < 1) continue;
    FpPoly b;
    if (p == 2) {
      // Trace map to F_2.
      FpPoly t = a, acc = a;
      for (int i = 1; i < d; ++i) {
        t = mod(mul(t, t, p), g, p);
        acc = add(acc, t, p);
      }
      b = acc;
    } else {
      Integer e = (ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(d)) - 1) / 2;
      b = sub(powmod(a, e, g, p), FpPoly{1}, p);
    }
    FpPoly h = gcd(g, b, p);
    if (degree(h) > 0 && degree(h) < n) {
      equal_degree(h, d, p, rng, out);
      equal_degree(divexact(g, h, p), d, p, rng, out);
      return;
    }
  }
}

// Squarefree decomposition of monic f: pairs (squarefree part, multiplicity).
void squarefree_decomp(const FpPoly& f, std::uint64_t p, int mult, std::vector<std::pair<FpPoly, int>>& out) {
  if (degree(f) < 1) return;
  FpPoly df = derivative(f, p);
  auto pth_root = [&](const FpPoly& c) {
    FpPoly r;
    for (std::size_t i = 0; i < c.size(); i += p) r.push_back(c[i]);
    return r;
  };
  if (df.empty()) {
    squarefree_decomp(pth_root(f), p, mult * static_cast<int>(p), out);
    return;
  }
  FpPoly c = gcd(f, df, p);
  FpPoly w = divexact(f, c, p);
  int i = 1;
  while (degree(w) > 0) {
    FpPoly y = gcd(w, c, p);
    FpPoly z = divexact(w, y, p);
    if (degree(z) > 0) out.emplace_back(z, i * mult);
    ++i;
    w = y;
    c = divexact(c, y, p);
  }
  if (degree(c) > 0) squarefree_decomp(pth_root(c), p, mult * static_cast<int>(p), out);
}

}  // namespace

std::vector<std::pair<FpPoly, int>> factor(const FpPoly& f_in, std::uint64_t p) {
  FpPoly f = f_in;
  trim(f);
  if (f.empty()) throw std::invalid_argument("fp::factor of zero");
  f = monic(f, p);
  std::vector<std::pair<FpPoly, int>> sqf;
  squarefree_decomp(f, p, 1, sqf);
  std::vector<std::pair<FpPoly, int>> out;
  SplitMix64 rng(0x5eed0000ULL + p);
  for (auto& [g, m] : sqf) {
    for (auto& [h, d] : distinct_degree(g, p)) {
      std::vector<FpPoly> parts;
      equal_degree(h, d, p, rng, parts);
      for (auto& part : parts) out.emplace_back(part, m);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  // Merge duplicates (possible when the same factor appears in several parts).
  std::vector<std::pair<FpPoly, int>> merged;
  for (auto& pr : out) {
    if (!merged.empty() && merged.back().first == pr.first) merged.back().second += pr.second;
    else merged.push_back(pr);
  }
  return merged;
}

bool is_irreducible(const FpPoly& f, std::uint64_t p) {
  if (degree(f) < 1) return false;
  auto fs = factor(f, p);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace fp

// ---------------------------------------------------------------------------
// Factorization over Z by Zassenhaus: factor modulo a prime, Hensel lift,
// recombine subsets.

namespace {

using ZVec = std::vector<Integer>;

void ztrim(ZVec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void zmod(ZVec& a, const Integer& m) {
  for (auto& x : a) x = fmod(x, m);
  ztrim(a);
}

ZVec zmul(const ZVec& a, const ZVec& b, const Integer& m) {
  if (a.empty() || b.empty()) return {};
  ZVec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  zmod(r, m);
  return r;
}

ZVec zadd(const ZVec& a, const ZVec& b, const Integer& m) {
  ZVec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  zmod(r, m);
  return r;
}

ZVec zsub(const ZVec& a, const ZVec& b, const Integer& m) {
  ZVec r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zmod(r, m);
  return r;
}

// Division by a monic polynomial modulo m.
void zdivmod_monic(const ZVec& a, const ZVec& b, ZVec& q, ZVec& r, const Integer& m) {
  int db = static_cast<int>(b.size()) - 1;
  r = a;
  int da = static_cast<int>(a.size()) - 1;
  if (da < db) {
    q.clear();
    return;
  }
  q.assign(static_cast<std::size_t>(da - db) + 1, 0);
  for (int i = da; i >= db; --i) {
    Integer t = fmod(r[static_cast<std::size_t>(i)], m);
    if (t == 0) continue;
    q[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= t * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  zmod(r, m);
  zmod(q, m);
}

ZVec from_fp(const FpPoly& a) {
  ZVec r;
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

// Lift f ≡ g*h (mod p) with g, h monic to modulus p^k (f monic mod p^k).
void hensel_pair(const ZVec& f, ZVec& g, ZVec& h, std::uint64_t p, const Integer& pk) {
  FpPoly gp = fp::reduce(g, p), hp = fp::reduce(h, p), sp, tp;
  fp::xgcd(gp, hp, sp, tp, p);
  // Normalise degrees: deg s < deg h, deg t < deg g.
  FpPoly q, r;
  fp::divmod(sp, hp, q, r, p);
  tp = fp::add(tp, fp::mul(q, gp, p), p);
  sp = r;
  ZVec s = from_fp(sp), t = from_fp(tp);
  Integer m = static_cast<unsigned long>(p);
  while (m < pk) {
    Integer m2 = m * m;
    ZVec e = zsub(f, zmul(g, h, m2), m2);
    ZVec qq, rr;
    zdivmod_monic(zmul(s, e, m2), h, qq, rr, m2);
    ZVec g2 = zadd(zadd(g, zmul(t, e, m2), m2), zmul(qq, g, m2), m2);
    ZVec h2 = zadd(h, rr, m2);
    ZVec b = zsub(zadd(zmul(s, g2, m2), zmul(t, h2, m2), m2), ZVec{1}, m2);
    ZVec c, d;
    zdivmod_monic(zmul(s, b, m2), h2, c, d, m2);
    s = zsub(s, d, m2);
    t = zsub(zsub(t, zmul(t, b, m2), m2), zmul(c, g2, m2), m2);
    g = std::move(g2);
    h = std::move(h2);
    m = std::move(m2);
  }
  zmod(g, pk);
  zmod(h, pk);
  // Monic polynomials may lose their leading 1 to trimming only if pk == 1.
}

std::vector<ZVec> hensel_lift(const ZVec& f, const std::vector<FpPoly>& factors, std::uint64_t p, const Integer& pk) {
  std::vector<ZVec> out;
  ZVec cur = f;
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    FpPoly rest{1};
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = fp::mul(rest, factors[j], p);
    ZVec g = from_fp(factors[i]), h = from_fp(rest);
    hensel_pair(cur, g, h, p, pk);
    out.push_back(g);
    cur = h;
  }
  out.push_back(cur);
  return out;
}

ZVec symmetric(const ZVec& a, const Integer& m) {
  ZVec r = a;
  for (auto& x : r) x = symmetric_mod(x, m);
  ztrim(r);
  return r;
}

// Exact division over Z; returns false when b does not divide a.
bool zdivides(const ZVec& a, const ZVec& b, ZVec& q) {
  int da = static_cast<int>(a.size()) - 1, db = static_cast<int>(b.size()) - 1;
  if (da < db) return false;
  ZVec r = a;
  q.assign(static_cast<std::size_t>(da - db) + 1, 0);
  for (int i = da; i >= db; --i) {
    Integer& top = r[static_cast<std::size_t>(i)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), b.back().get_mpz_t())) return false;
    Integer t = top / b.back();
    q[static_cast<std::size_t>(i - db)] = t;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= t * b[static_cast<std::size_t>(j)];
  }
  for (auto& x : r)
    if (x != 0) return false;
  return true;
}

ZVec zprimitive(const ZVec& a) {
  Integer g = 0;
  for (auto& x : a) g = gcd(g, x);
  if (a.back() < 0) g = -g;
  ZVec r = a;
  for (auto& x : r) x /= g;
  return r;
}

// f: primitive, squarefree, positive leading coefficient, degree >= 1.
std::vector<ZVec> zassenhaus(const ZVec& f) {
  int n = static_cast<int>(f.size()) - 1;
  if (n == 1) return {f};
  const Integer& lc = f.back();

  // Pick the prime with fewest modular factors among a handful of candidates.
  std::uint64_t best_p = 0;
  std::vector<FpPoly> best;
  int tried = 0;
  for (long pl : primes_up_to(100000)) {
    auto p = static_cast<std::uint64_t>(pl);
    if (p < 3 || to_residue(lc, p) == 0) continue;
    FpPoly fp_ = fp::reduce(f, p);
    if (fp::degree(fp::gcd(fp_, fp::derivative(fp_, p), p)) > 0) continue;
    auto fs = fp::factor(fp_, p);
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best.clear();
      for (auto& pr : fs) best.push_back(pr.first);
    }
    if (best.size() == 1) return {f};
    if (++tried >= 6) break;
  }
  if (best_p == 0) throw std::runtime_error("zassenhaus: no suitable prime");

  // Mignotte-type bound on coefficients of any factor.
  Integer norm2 = 0;
  for (auto& c : f) norm2 += c * c;
  Integer nrm;
  mpz_sqrt(nrm.get_mpz_t(), norm2.get_mpz_t());
  nrm += 1;
  Integer bound = 2 * abs(lc) * nrm * ipow(Integer(2), static_cast<unsigned long>(n)) + 1;
  Integer pk = static_cast<unsigned long>(best_p);
  while (pk <= 2 * bound) pk *= static_cast<unsigned long>(best_p);

  // Monic version of f modulo p^k.
  Integer lcinv;
  mpz_invert(lcinv.get_mpz_t(), lc.get_mpz_t(), pk.get_mpz_t());
  ZVec fm = f;
  for (auto& c : fm) c = fmod(c * lcinv, pk);
  ztrim(fm);
  std::vector<ZVec> lifted = hensel_lift(fm, best, best_p, pk);

  std::vector<ZVec> result;
  ZVec rem = f;
  std::vector<ZVec> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZVec cand{rem.back()};
      for (auto i : idx) cand = zmul(cand, pool[i], pk);
      cand = symmetric(cand, pk);
      if (!cand.empty()) {
        cand = zprimitive(cand);
        ZVec q;
        if (static_cast<int>(cand.size()) > 1 && zdivides(rem, cand, q)) {
          result.push_back(cand);
          rem = q;
          std::vector<ZVec> np;
          for (std::size_t i = 0; i < pool.size(); ++i)
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) np.push_back(pool[i]);
          pool = std::move(np);
          found = true;
          break;
        }
      }
      // Next combination.
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == pool.size() - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rem.size() > 1) result.push_back(zprimitive(rem));
  return result;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i) {
    if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
  }
  return false;
}

}  // namespace

std::vector<std::pair<Poly, int>> factor_rational(const Poly& f_in) {
  if (f_in.degree() < 1) throw std::invalid_argument("factor_rational: constant polynomial");
  Poly f = primitive_part(f_in);
  // Yun's squarefree decomposition over Q.
  std::vector<std::pair<Poly, int>> sqf;
  {
    Poly a = f.monic();
    Poly b = a.derivative();
    Poly c = gcd(a, b);
    Poly w = a / c;
    Poly y = b / c - w.derivative();
    int i = 1;
    while (w.degree() > 0) {
      Poly g = gcd(w, y);
      if (g.degree() > 0) sqf.emplace_back(g, i);
      w = w / g;
      y = y / g - w.derivative();
      ++i;
    }
  }
  std::vector<std::pair<Poly, int>> out;
  for (auto& [g, m] : sqf) {
    for (auto& z : zassenhaus(primitive_part(g).integer_coeffs())) out.emplace_back(Poly::from_integers(z), m);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fs = factor_rational(f);
  return fs.size() == 1 && fs[0].second == 1;
}

// ---------------------------------------------------------------------------
// Real roots

std::vector<Poly> sturm_sequence(const Poly& f) {
  std::vector<Poly> seq;
  seq.push_back(primitive_part(f));
  Poly d = f.derivative();
  if (d.is_zero()) return seq;
  seq.push_back(primitive_part(d));
  while (true) {
    const Poly& a = seq[seq.size() - 2];
    const Poly& b = seq.back();
    if (b.degree() == 0) break;
    Poly r = a % b;
    if (r.is_zero()) break;
    // -rem rescaled by a positive factor.
    Poly pr = primitive_part(r);
    // primitive_part forces a positive lead; restore the sign of -r.
    if (r.lead() > 0) pr = -pr;
    seq.push_back(pr);
  }
  return seq;
}

namespace {

int sign_of(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

int sign_changes_at(const std::vector<Poly>& seq, const Rational& x) {
  int changes = 0, last = 0;
  for (auto& p : seq) {
    int s = sign_of(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace

int sturm_count(const std::vector<Poly>& seq, const Rational& lo, const Rational& hi) {
  return sign_changes_at(seq, lo) - sign_changes_at(seq, hi);
}

std::vector<RootInterval> isolate_real_roots(const Poly& f_in) {
  if (f_in.degree() < 1) return {};
  Poly f = primitive_part(squarefree_part(f_in));
  auto seq = sturm_sequence(f);
  // Cauchy bound.
  Rational bound = 0;
  for (int i = 0; i < f.degree(); ++i) {
    Rational r = abs(f.coeff(i) / f.lead());
    if (r > bound) bound = r;
  }
  bound += 1;
  struct Item {
    Rational lo, hi;
  };
  std::vector<RootInterval> out;
  std::vector<Item> stack{{-bound, bound}};
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    int cnt = sturm_count(seq, it.lo, it.hi);
    if (cnt == 0) continue;
    if (cnt == 1) {
      if (f.eval(it.hi) == 0) {
        out.push_back({it.hi, it.hi});
        continue;
      }
      if (f.eval(it.lo) != 0) {
        out.push_back({it.lo, it.hi});
        continue;
      }
    }
    Rational mid = (it.lo + it.hi) / 2;
    stack.push_back({mid, it.hi});
    stack.push_back({it.lo, mid});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

void refine_root(const Poly& f, RootInterval& iv, const Rational& width) {
  if (iv.exact()) return;
  int slo = sign_of(f.eval(iv.lo));
  while (iv.hi - iv.lo > width) {
    Rational mid = (iv.lo + iv.hi) / 2;
    int sm = sign_of(f.eval(mid));
    if (sm == 0) {
      iv.lo = iv.hi = mid;
      return;
    }
    if (sm == slo) iv.lo = mid;
    else iv.hi = mid;
  }
}

std::vector<std::complex<long double>> complex_roots(const Poly& f_in) {
  using C = std::complex<long double>;
  int n = f_in.degree();
  if (n < 1) return {};
  Poly f = f_in.monic();
  Poly df = f.derivative();
  // Fujiwara-style radius.
  long double radius = 0;
  for (int i = 0; i < n; ++i) {
    long double a = std::fabs(to_ld(f.coeff(i)));
    if (a == 0) continue;
    radius = std::max(radius, std::pow(a, 1.0L / (n - i)));
  }
  radius = 2 * radius + 1e-3L;
  std::vector<C> z(static_cast<std::size_t>(n));
  const long double pi = 3.141592653589793238462643383279L;
  for (int k = 0; k < n; ++k) {
    long double ang = 2 * pi * k / n + 0.4L;
    z[static_cast<std::size_t>(k)] = std::polar(radius * (0.5L + 0.5L * (k + 1) / n), ang);
  }
  for (int iter = 0; iter < 2000; ++iter) {
    long double maxstep = 0;
    for (int k = 0; k < n; ++k) {
      C zk = z[static_cast<std::size_t>(k)];
      C pv = f.eval(zk), dv = df.eval(zk);
      if (pv == C(0)) continue;
      C ratio = pv / dv;
      C sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0L / (zk - z[static_cast<std::size_t>(j)]);
      C step = ratio / (1.0L - ratio * sum);
      z[static_cast<std::size_t>(k)] = zk - step;
      maxstep = std::max(maxstep, std::abs(step) / std::max(1.0L, std::abs(zk)));
    }
    if (maxstep < 1e-17L) break;
  }
  for (auto& zk : z) {
    for (int it = 0; it < 3; ++it) {
      C dv = df.eval(zk);
      if (dv == C(0)) break;
      zk -= f.eval(zk) / dv;
    }
  }
  return z;
}

}  // namespace aflt
