#include "aflt/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "mp.hpp"

namespace aflt {

struct FieldData {
  int n = 0;
  std::vector<Integer> f;  // monic, constant term first
  Poly fpoly;
  IntMatrix B;  // integral basis numerators, lower triangular
  Integer D = 1;
  Integer disc, index = 1;
  std::vector<std::pair<Integer, int>> disc_factors;
  int r1 = 0, r2 = 0;
  std::vector<Integer> psum;  // Tr(x^i) for i < n
  std::vector<std::vector<IntVector>> table;
  std::vector<RootInterval> real_iv;
  std::vector<std::complex<long double>> roots;

  std::shared_ptr<const FieldData> base;
  ExtensionKind kind = ExtensionKind::none;
  int ell = 1;
  std::vector<Integer> beta_num;  // radicand in the base, power coordinates
  Integer beta_den = 1;
  Integer scale = 1;  // adjoined element = y / scale
  RatMatrix rel_to_abs, abs_to_rel;

  mutable std::mutex mu;
  mutable std::map<std::string, std::shared_ptr<const void>> cache;
  mutable std::vector<RootInterval> refined;
  mutable mpfr_prec_t hp_prec = 0;
  mutable std::vector<mp::Complex> hp_roots;
};

namespace {

using Data = std::shared_ptr<const FieldData>;

// r <- r mod f for monic integral f.
void reduce_mod(std::vector<Integer>& r, const std::vector<Integer>& f) {
  std::size_t n = f.size() - 1;
  for (std::size_t k = r.size(); k-- > n;) {
    if (r[k] == 0) continue;
    Integer c = r[k];
    for (std::size_t i = 0; i < n; ++i)
      if (f[i] != 0) r[k - n + i] -= c * f[i];
    r[k] = 0;
  }
  r.resize(n);
}

std::vector<Integer> mul_mod(const std::vector<Integer>& a, const std::vector<Integer>& b,
                             const std::vector<Integer>& f) {
  std::size_t n = f.size() - 1;
  std::vector<Integer> r(2 * n - 1 > 0 ? 2 * n - 1 : 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) r[i + j] += a[i] * b[j];
  }
  reduce_mod(r, f);
  return r;
}

// Lower-triangular row HNF of a full-rank lattice in Z^n.
IntMatrix lower_hnf(const IntMatrix& rows, std::size_t n) {
  IntMatrix rev(rows.size(), IntVector(n));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) rev[i][j] = rows[i][n - 1 - j];
  IntMatrix h = hnf_rows(rev);
  if (h.size() != n) throw std::logic_error("lower_hnf: lattice not of full rank");
  IntMatrix out(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[n - 1 - i][j] = h[i][n - 1 - j];
  return out;
}

// Coordinates of num/den (power basis) in the basis rows B/D (lower
// triangular): solve c * B = D * num / den.
RatVector to_basis(const IntMatrix& B, const Integer& D, const std::vector<Integer>& num,
                   const Integer& den) {
  std::size_t n = B.size();
  RatVector w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = Rational(D * num[j], den);
  RatVector c(n);
  for (std::size_t j = n; j-- > 0;) {
    Rational s = w[j];
    for (std::size_t i = j + 1; i < n; ++i)
      if (B[i][j] != 0) s -= c[i] * B[i][j];
    c[j] = s / B[j][j];
    c[j].canonicalize();
  }
  return c;
}

// Integral coordinates of an element known to lie in the order.
// Solves c * B = w exactly.
IntVector to_order(const IntMatrix& B, std::vector<Integer> w) {
  std::size_t n = B.size();
  IntVector c(n);
  for (std::size_t j = n; j-- > 0;) {
    if (w[j] != 0) {
      if (!mpz_divisible_p(w[j].get_mpz_t(), B[j][j].get_mpz_t()))
        throw std::logic_error("to_order: element outside the order");
      c[j] = w[j] / B[j][j];
      for (std::size_t k = 0; k <= j; ++k)
        if (B[j][k] != 0) w[k] -= c[j] * B[j][k];
    }
  }
  return c;
}

std::vector<std::vector<IntVector>> order_table(const std::vector<Integer>& f, const IntMatrix& B,
                                                const Integer& D) {
  std::size_t n = B.size();
  std::vector<std::vector<IntVector>> t(n, std::vector<IntVector>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      // w_i w_j = b_i b_j / D^2; c * B = D * (b_i b_j / D^2) = b_i b_j / D
      auto prod = mul_mod(B[i], B[j], f);
      for (auto& x : prod) {
        if (!mpz_divisible_p(x.get_mpz_t(), D.get_mpz_t()))
          throw std::logic_error("order_table: basis does not span an order");
        x /= D;
      }
      t[i][j] = to_order(B, std::move(prod));
      if (i != j) t[j][i] = t[i][j];
    }
  return t;
}

std::uint64_t small_prime(const Integer& p) {
  if (!p.fits_ulong_p() || p > Integer("4611686018427387903"))
    throw InvalidInput("prime " + p.get_str() + " too large for order computations");
  return p.get_ui();
}

// Multiply two elements given by coordinates modulo p using the table.
FpVector table_mul(const std::vector<std::vector<IntVector>>& t, const FpVector& a, const FpVector& b,
                   std::uint64_t p) {
  std::size_t n = a.size();
  FpVector r(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!b[j]) continue;
      std::uint64_t ab = mulmod(a[i], b[j], p);
      const IntVector& c = t[i][j];
      for (std::size_t k = 0; k < n; ++k)
        if (c[k] != 0) r[k] = (r[k] + mulmod(ab, to_residue(c[k], p), p)) % p;
    }
  }
  return r;
}

// One prime's worth of Round 2. Returns true when the order was enlarged.
bool round2_step(const std::vector<Integer>& f, IntMatrix& B, Integer& D, const Integer& P) {
  std::size_t n = B.size();
  std::uint64_t p = small_prime(P);
  auto t = order_table(f, B, D);
  // Frobenius x -> x^p on O/pO.
  FpMatrix frob(n);
  for (std::size_t i = 0; i < n; ++i) {
    FpVector e(n, 0), r(n, 0);
    e[i] = 1;
    r[0] = 1;
    std::uint64_t k = p;
    FpVector base = e;
    while (k) {
      if (k & 1) r = table_mul(t, r, base, p);
      k >>= 1;
      if (k) base = table_mul(t, base, base, p);
    }
    frob[i] = r;
  }
  // x -> x^{p^j} with p^j >= n.
  FpMatrix powmap = frob;
  for (Integer pj = P; pj < Integer(static_cast<unsigned long>(n)); pj *= P) {
    FpMatrix next(n, FpVector(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (!powmap[i][k]) continue;
        for (std::size_t m = 0; m < n; ++m)
          next[i][m] = (next[i][m] + mulmod(powmap[i][k], frob[k][m], p)) % p;
      }
    powmap = next;
  }
  FpMatrix tr(n, FpVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) tr[j][i] = powmap[i][j];
  FpMatrix rad = fp_kernel(tr, p);
  if (rad.empty()) return false;
  // Z-basis of the radical in order coordinates.
  IntMatrix gens;
  for (auto& v : rad) {
    IntVector w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = Integer(static_cast<unsigned long>(v[i]));
    gens.push_back(w);
  }
  for (std::size_t i = 0; i < n; ++i) {
    IntVector w(n);
    w[i] = P;
    gens.push_back(w);
  }
  IntMatrix G = hnf_rows(gens);  // upper triangular, row i pivot at column i
  // For each w_i the matrix of multiplication on I/pI.
  FpMatrix big(n * n, FpVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      IntVector w(n);
      for (std::size_t m = 0; m < n; ++m) {
        if (G[k][m] == 0) continue;
        for (std::size_t q = 0; q < n; ++q)
          if (t[i][m][q] != 0) w[q] += G[k][m] * t[i][m][q];
      }
      // express w in the rows of G
      IntVector c(n);
      for (std::size_t j = 0; j < n; ++j) {
        if (w[j] == 0) continue;
        c[j] = w[j] / G[j][j];
        for (std::size_t q = j; q < n; ++q) w[q] -= c[j] * G[j][q];
      }
      for (std::size_t j = 0; j < n; ++j) big[k * n + j][i] = to_residue(c[j], p);
    }
  }
  FpMatrix ker = fp_kernel(big, p);
  if (ker.empty()) return false;
  IntMatrix rows;
  for (std::size_t i = 0; i < n; ++i) {
    IntVector r(n);
    for (std::size_t j = 0; j < n; ++j) r[j] = B[i][j] * P;
    rows.push_back(r);
  }
  for (auto& u : ker) {
    IntVector r(n);
    for (std::size_t i = 0; i < n; ++i)
      if (u[i])
        for (std::size_t j = 0; j < n; ++j) r[j] += Integer(static_cast<unsigned long>(u[i])) * B[i][j];
    rows.push_back(r);
  }
  IntMatrix nb = lower_hnf(rows, n);
  Integer nd = D * P;
  Integer g = nd;
  for (auto& r : nb)
    for (auto& x : r) g = gcd(g, x);
  for (auto& r : nb)
    for (auto& x : r) x /= g;
  B = std::move(nb);
  D = nd / g;
  return true;
}

std::vector<Integer> power_sums(const std::vector<Integer>& f) {
  int n = static_cast<int>(f.size()) - 1;
  std::vector<Integer> s(static_cast<std::size_t>(n));
  s[0] = n;
  for (int k = 1; k < n; ++k) {
    Integer v = Integer(k) * f[static_cast<std::size_t>(n - k)];
    for (int i = 1; i < k; ++i) v += f[static_cast<std::size_t>(n - i)] * s[static_cast<std::size_t>(k - i)];
    s[static_cast<std::size_t>(k)] = -v;
  }
  return s;
}

}  // namespace

struct FieldBuilder {
  // Builds the field of f starting from the order with basis rows B0/D0 whose
  // discriminant is disc0. Only primes whose square divides disc0 can divide
  // the index, and `disc_primes` must contain all primes of disc0.
  static std::shared_ptr<FieldData> build(const std::vector<Integer>& f, IntMatrix B, Integer D,
                                          const Integer& disc0, const std::vector<Integer>& disc_primes) {
    auto d = std::make_shared<FieldData>();
    d->n = static_cast<int>(f.size()) - 1;
    d->f = f;
    d->fpoly = Poly::from_integers(f);
    Integer cur = disc0;
    for (const auto& p : disc_primes) {
      while (valuation(cur, p) >= 2) {
        Integer before = inverse_index(B, D);
        if (!round2_step(f, B, D, p)) break;
        Integer idx = inverse_index(B, D) / before;
        cur /= idx * idx;
      }
    }
    d->B = std::move(B);
    d->D = D;
    d->disc = cur;
    // index of Z[x] in O_K = D^n / prod(pivots)
    d->index = inverse_index(d->B, D);
    for (const auto& p : disc_primes) {
      int v = valuation(d->disc, p);
      if (v > 0) d->disc_factors.emplace_back(p, v);
    }
    std::sort(d->disc_factors.begin(), d->disc_factors.end());
    d->psum = power_sums(f);
    d->table = order_table(f, d->B, d->D);
    compute_roots(*d);
    return d;
  }

  static Integer inverse_index(const IntMatrix& B, const Integer& D) {
    // Index of Z[x] in the lattice spanned by B/D.
    Integer num = 1, den = 1;
    for (std::size_t i = 0; i < B.size(); ++i) {
      num *= D;
      den *= B[i][i];
    }
    return num / den;
  }

  static void compute_roots(FieldData& d) {
    const Poly& f = d.fpoly;
    d.real_iv = isolate_real_roots(f);
    d.r1 = static_cast<int>(d.real_iv.size());
    d.r2 = (d.n - d.r1) / 2;
    d.refined = d.real_iv;
    for (auto& iv : d.refined) {
      if (iv.exact()) continue;
      Rational mag = abs(iv.lo) > abs(iv.hi) ? abs(iv.lo) : abs(iv.hi);
      Rational w = (mag + 1) / Rational(Integer(1) << 80);
      refine_root(f, iv, w);
    }
    d.roots.clear();
    for (auto& iv : d.refined) d.roots.emplace_back(to_ld((iv.lo + iv.hi) / 2), 0.0L);
    if (d.r2 > 0) {
      auto all = complex_roots(f);
      std::vector<std::complex<long double>> up;
      for (auto& z : all)
        if (z.imag() > 0) up.push_back(z);
      std::sort(up.begin(), up.end(), [](auto& a, auto& b) { return a.imag() > b.imag(); });
      if (static_cast<int>(up.size()) < d.r2) throw std::runtime_error("complex root approximation failed");
      up.resize(static_cast<std::size_t>(d.r2));
      std::sort(up.begin(), up.end(), [](auto& a, auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
      });
      for (auto& z : up) d.roots.push_back(z);
    }
  }

  static std::shared_ptr<const FieldData> ptr(const NumberField& k) { return k.d_; }
  static NumberField wrap(std::shared_ptr<const FieldData> d) { return NumberField(std::move(d)); }
  static FieldElement element(const Data& d, std::vector<Integer> num, Integer den) {
    return FieldElement(d, std::move(num), std::move(den));
  }
};

// ---------------------------------------------------------------------------
// NumberField

NumberField NumberField::make(const std::vector<Integer>& coeffs) {
  std::vector<Integer> f = coeffs;
  while (!f.empty() && f.back() == 0) f.pop_back();
  if (f.size() < 2) throw InvalidInput("defining polynomial must have degree at least 1");
  if (f.back() != 1) throw InvalidInput("defining polynomial must be monic");
  Poly fp = Poly::from_integers(f);
  if (!is_squarefree(fp)) throw NotSquarefree("defining polynomial " + fp.str() + " is not squarefree");
  if (!is_irreducible(fp)) throw ReduciblePolynomial("defining polynomial " + fp.str() + " is reducible over Q");
  std::size_t n = f.size() - 1;
  Integer disc0 = discriminant(fp).get_num();
  std::vector<Integer> primes;
  if (disc0 != 0 && abs(disc0) != 1)
    for (auto& [p, e] : factor_integer(disc0)) primes.push_back(p);
  auto d = FieldBuilder::build(f, identity_matrix(n), 1, disc0, primes);
  return NumberField(d);
}

NumberField NumberField::make(const std::vector<long>& coeffs) {
  std::vector<Integer> c;
  for (long x : coeffs) c.emplace_back(x);
  return make(c);
}

NumberField NumberField::rationals() { return make(std::vector<long>{0, 1}); }

NumberField NumberField::quadratic(long d) { return make(std::vector<long>{-d, 0, 1}); }

int NumberField::degree() const { return d_->n; }
const Poly& NumberField::poly() const { return d_->fpoly; }
const std::vector<Integer>& NumberField::poly_coeffs() const { return d_->f; }
const Integer& NumberField::disc() const { return d_->disc; }
const std::vector<std::pair<Integer, int>>& NumberField::disc_factors() const { return d_->disc_factors; }
const Integer& NumberField::index() const { return d_->index; }
int NumberField::r1() const { return d_->r1; }
int NumberField::r2() const { return d_->r2; }
bool NumberField::totally_real() const { return d_->r2 == 0; }
const IntMatrix& NumberField::basis_numerators() const { return d_->B; }
const Integer& NumberField::basis_denominator() const { return d_->D; }

RatMatrix NumberField::integral_basis() const {
  RatMatrix r(d_->B.size());
  for (std::size_t i = 0; i < r.size(); ++i)
    for (auto& x : d_->B[i]) {
      Rational q(x, d_->D);
      q.canonicalize();
      r[i].push_back(q);
    }
  return r;
}

const IntVector& NumberField::mult(int i, int j) const {
  return d_->table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}
const std::vector<RootInterval>& NumberField::real_root_intervals() const { return d_->real_iv; }
const std::vector<std::complex<long double>>& NumberField::roots() const { return d_->roots; }

FieldElement NumberField::zero() const {
  return FieldElement(d_, std::vector<Integer>(static_cast<std::size_t>(d_->n)), 1);
}
FieldElement NumberField::one() const { return from_integer(1); }
FieldElement NumberField::gen() const {
  std::vector<Integer> v(static_cast<std::size_t>(d_->n));
  if (d_->n == 1) v[0] = -d_->f[0];
  else v[1] = 1;
  return FieldElement(d_, v, 1);
}
FieldElement NumberField::from_integer(const Integer& a) const {
  std::vector<Integer> v(static_cast<std::size_t>(d_->n));
  v[0] = a;
  return FieldElement(d_, v, 1);
}
FieldElement NumberField::from_rational(const Rational& a) const {
  std::vector<Integer> v(static_cast<std::size_t>(d_->n));
  v[0] = a.get_num();
  return FieldElement(d_, v, a.get_den());
}
FieldElement NumberField::from_power(const RatVector& c) const {
  if (static_cast<int>(c.size()) != d_->n) throw InvalidInput("coordinate vector has wrong length");
  Integer den = 1;
  for (auto& x : c) den = lcm(den, x.get_den());
  std::vector<Integer> v;
  for (auto& x : c) v.push_back(x.get_num() * (den / x.get_den()));
  return FieldElement(d_, v, den);
}
FieldElement NumberField::from_basis(const RatVector& c) const {
  if (static_cast<int>(c.size()) != d_->n) throw InvalidInput("coordinate vector has wrong length");
  Integer den = d_->D;
  for (auto& x : c) den = lcm(den, x.get_den() * d_->D);
  std::vector<Integer> v(static_cast<std::size_t>(d_->n));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    Integer s = c[i].get_num() * (den / (c[i].get_den() * d_->D));
    for (std::size_t j = 0; j <= i; ++j) v[j] += s * d_->B[i][j];
  }
  return FieldElement(d_, v, den);
}
FieldElement NumberField::from_basis(const IntVector& c) const {
  if (static_cast<int>(c.size()) != d_->n) throw InvalidInput("coordinate vector has wrong length");
  std::vector<Integer> v(static_cast<std::size_t>(d_->n));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (std::size_t j = 0; j <= i; ++j) v[j] += c[i] * d_->B[i][j];
  }
  return FieldElement(d_, v, d_->D);
}
FieldElement NumberField::basis_element(int i) const {
  return FieldElement(d_, d_->B[static_cast<std::size_t>(i)], d_->D);
}

bool NumberField::is_extension() const { return d_->base != nullptr; }
NumberField NumberField::base() const {
  if (!d_->base) throw TowerMismatch("field is not an extension");
  return NumberField(d_->base);
}
ExtensionKind NumberField::kind() const { return d_->kind; }

FieldElement NumberField::radicand() const {
  if (!d_->base) throw TowerMismatch("field is not an extension");
  if (d_->kind == ExtensionKind::omega) return base().one();
  return FieldElement(d_->base, d_->beta_num, d_->beta_den);
}

FieldElement NumberField::embed(const FieldElement& x) const {
  if (!d_->base) throw TowerMismatch("field is not an extension");
  if (x.d_ != d_->base) {
    if (x.d_ == d_) return x;
    throw TowerMismatch("element does not belong to the base field");
  }
  std::size_t nb = static_cast<std::size_t>(d_->base->n);
  std::size_t n = static_cast<std::size_t>(d_->n);
  RatVector out(n);
  for (std::size_t i = 0; i < nb; ++i) {
    if (x.num_[i] == 0) continue;
    Rational c(x.num_[i], x.den_);
    for (std::size_t k = 0; k < n; ++k)
      if (d_->rel_to_abs[i][k] != 0) out[k] += c * d_->rel_to_abs[i][k];
  }
  return from_power(out);
}

FieldElement NumberField::adjoined() const {
  if (!d_->base) throw TowerMismatch("field is not an extension");
  std::size_t nb = static_cast<std::size_t>(d_->base->n);
  RatVector row = d_->rel_to_abs[nb];
  for (auto& x : row) x /= d_->scale;
  return from_power(row);
}

std::vector<FieldElement> NumberField::relative_coords(const FieldElement& x) const {
  if (!d_->base) throw TowerMismatch("field is not an extension");
  if (x.d_ != d_) throw FieldMismatch("element does not belong to this field");
  std::size_t nb = static_cast<std::size_t>(d_->base->n);
  std::size_t n = static_cast<std::size_t>(d_->n);
  RatVector a = x.power_coords();
  RatVector rel = vec_mat(a, d_->abs_to_rel);
  NumberField b(d_->base);
  std::vector<FieldElement> out;
  Integer sc = 1;
  for (std::size_t j = 0; j * nb < n; ++j) {
    RatVector c(rel.begin() + static_cast<std::ptrdiff_t>(j * nb),
                rel.begin() + static_cast<std::ptrdiff_t>((j + 1) * nb));
    out.push_back(b.from_power(c) * Rational(sc));
    sc *= d_->scale;
  }
  return out;
}

std::string NumberField::str() const { return d_->fpoly.str(); }

std::shared_ptr<const void> NumberField::cache_get(const std::string& key) const {
  std::lock_guard<std::mutex> lock(d_->mu);
  auto it = d_->cache.find(key);
  return it == d_->cache.end() ? nullptr : it->second;
}

std::shared_ptr<const void> NumberField::cache_put(const std::string& key, std::shared_ptr<const void> v) const {
  std::lock_guard<std::mutex> lock(d_->mu);
  auto [it, inserted] = d_->cache.emplace(key, std::move(v));
  return it->second;
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(std::shared_ptr<const FieldData> d, std::vector<Integer> num, Integer den)
    : d_(std::move(d)), num_(std::move(num)), den_(std::move(den)) {
  num_.resize(static_cast<std::size_t>(d_->n));
  normalize();
}

void FieldElement::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  Integer g = den_;
  for (auto& x : num_) {
    if (g == 1) break;
    if (x != 0) g = gcd(g, x);
  }
  bool zero = std::all_of(num_.begin(), num_.end(), [](const Integer& x) { return x == 0; });
  if (zero) {
    den_ = 1;
    return;
  }
  if (g != 1) {
    den_ /= g;
    for (auto& x : num_) x /= g;
  }
}

void FieldElement::check_same(const FieldElement& o) const {
  if (d_ != o.d_) throw FieldMismatch("elements belong to different fields");
}

RatVector FieldElement::power_coords() const {
  RatVector r;
  for (auto& x : num_) {
    Rational q(x, den_);
    q.canonicalize();
    r.push_back(q);
  }
  return r;
}

RatVector FieldElement::basis_coords() const { return to_basis(d_->B, d_->D, num_, den_); }

IntVector FieldElement::integral_coords() const {
  RatVector c = basis_coords();
  IntVector r;
  for (auto& x : c) {
    if (x.get_den() != 1) throw InvalidInput("element is not integral");
    r.push_back(x.get_num());
  }
  return r;
}

Integer FieldElement::denominator() const {
  Integer d = 1;
  for (auto& x : basis_coords()) d = lcm(d, x.get_den());
  return d;
}

bool FieldElement::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& x) { return x == 0; });
}
bool FieldElement::is_one() const {
  if (den_ != 1 || num_[0] != 1) return false;
  return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& x) { return x == 0; });
}
bool FieldElement::is_integral() const {
  if (den_ == 1) return true;
  return denominator() == 1;
}
bool FieldElement::is_rational() const {
  return std::all_of(num_.begin() + 1, num_.end(), [](const Integer& x) { return x == 0; });
}
Rational FieldElement::rational_value() const {
  if (!is_rational()) throw InvalidInput("element is not rational");
  Rational q(num_[0], den_);
  q.canonicalize();
  return q;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_same(o);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this += -o; }

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_same(o);
  num_ = mul_mod(num_, o.num_, d_->f);
  den_ *= o.den_;
  normalize();
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

FieldElement FieldElement::operator*(const Rational& s) const {
  FieldElement r = *this;
  for (auto& x : r.num_) x *= s.get_num();
  r.den_ *= s.get_den();
  r.normalize();
  return r;
}
FieldElement FieldElement::operator+(const Rational& s) const { return *this + field().from_rational(s); }
FieldElement FieldElement::operator-(const Rational& s) const { return *this - field().from_rational(s); }

Poly FieldElement::as_poly() const {
  std::vector<Rational> c;
  for (auto& x : num_) c.emplace_back(x, den_);
  for (auto& q : c) q.canonicalize();
  return Poly(c);
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw ZeroElement("inverse of zero");
  if (d_->n == 1) return FieldElement(d_, {den_}, num_[0]);
  // Cayley-Hamilton on the integral numerator g = den * x:
  // g^{-1} = -(g^{n-1} + c_{n-1} g^{n-2} + ... + c_1) / c_0.
  FieldElement g(d_, num_, 1);
  Poly cp = g.charpoly();
  int n = d_->n;
  FieldElement acc = field().one();
  for (int k = n - 1; k >= 1; --k) acc = acc * g + cp.coeff(k);
  return acc * (-Rational(den_) / cp.coeff(0));
}

FieldElement FieldElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElement r = field().one(), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

Rational FieldElement::norm() const {
  std::size_t n = static_cast<std::size_t>(d_->n);
  IntMatrix m(n, IntVector(n));
  std::vector<Integer> col = num_;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col[i];
    if (j + 1 < n) {
      col.insert(col.begin(), Integer(0));
      reduce_mod(col, d_->f);
    }
  }
  Integer dn = 1;
  for (std::size_t i = 0; i < n; ++i) dn *= den_;
  Rational r(determinant(m), dn);
  r.canonicalize();
  return r;
}

Rational FieldElement::trace() const {
  Integer s = 0;
  for (std::size_t i = 0; i < num_.size(); ++i) s += num_[i] * d_->psum[i];
  Rational r(s, den_);
  r.canonicalize();
  return r;
}

Poly FieldElement::charpoly() const {
  int n = d_->n;
  std::vector<Rational> p(static_cast<std::size_t>(n) + 1), e(static_cast<std::size_t>(n) + 1);
  FieldElement x = *this;
  for (int k = 1; k <= n; ++k) {
    p[static_cast<std::size_t>(k)] = x.trace();
    if (k < n) x *= *this;
  }
  e[0] = 1;
  for (int k = 1; k <= n; ++k) {
    Rational s = 0;
    for (int i = 1; i <= k; ++i) {
      Rational term = e[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i)];
      if (i % 2) s += term;
      else s -= term;
    }
    e[static_cast<std::size_t>(k)] = s / k;
  }
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    Rational v = e[static_cast<std::size_t>(k)];
    if (k % 2) v = -v;
    c[static_cast<std::size_t>(n - k)] = v;
  }
  return Poly(c);
}

Poly FieldElement::minpoly() const { return squarefree_part(charpoly()).monic(); }

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.d_ == b.d_ && a.den_ == b.den_ && a.num_ == b.num_;
}

bool operator<(const FieldElement& a, const FieldElement& b) {
  if (a.den_ != b.den_) return a.den_ < b.den_;
  for (std::size_t i = 0; i < a.num_.size(); ++i)
    if (a.num_[i] != b.num_[i]) return a.num_[i] < b.num_[i];
  return false;
}

std::string FieldElement::str(const std::string& var) const {
  std::string s = Poly::from_integers(num_).str(var);
  if (is_zero()) s = "0";
  if (den_ != 1) return "(" + s + ")/" + den_.get_str();
  return s;
}

// ---------------------------------------------------------------------------
// Signs and embeddings

namespace {

int sign_at_root(const FieldData& d, const std::vector<Integer>& g, std::size_t j) {
  RootInterval iv;
  {
    std::lock_guard<std::mutex> lock(d.mu);
    iv = d.refined[j];
  }
  Poly gp = Poly::from_integers(g);
  std::vector<Poly> sturm;
  for (int iter = 0;; ++iter) {
    if (iv.exact()) return sgn(gp.eval(iv.lo));
    Rational mid = (iv.lo + iv.hi) / 2, w = (iv.hi - iv.lo) / 2;
    Rational val = gp.eval(mid);
    Rational R = abs(iv.lo) > abs(iv.hi) ? abs(iv.lo) : abs(iv.hi);
    // Lipschitz bound for g on the interval.
    Rational M = 0, rp = 1;
    for (std::size_t i = 1; i < g.size(); ++i) {
      M += Rational(Integer(static_cast<unsigned long>(i)) * abs(g[i])) * rp;
      rp *= R;
    }
    if (abs(val) > M * w) return sgn(val);
    if (iter >= 40 && iter % 20 == 0) {
      // exact certificate: g has no root in [lo, hi]
      if (sturm.empty()) sturm = sturm_sequence(squarefree_part(gp));
      if (gp.eval(iv.lo) != 0 && sturm_count(sturm, iv.lo, iv.hi) == 0) return sgn(gp.eval(iv.hi));
    }
    refine_root(d.fpoly, iv, w);
    std::lock_guard<std::mutex> lock(d.mu);
    if (iv.hi - iv.lo < d.refined[j].hi - d.refined[j].lo) d.refined[j] = iv;
  }
}

// Refine the stored high-precision roots to at least `prec` bits.
void ensure_hp_roots(const FieldData& d, mpfr_prec_t prec) {
  if (d.hp_prec >= prec) return;
  std::size_t m = d.roots.size();
  if (d.hp_roots.empty()) {
    d.hp_roots.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
      mp::Complex z(64);
      if (static_cast<int>(j) < d.r1) {
        const auto& iv = d.refined[j];
        z.re.set_prec(128);
        z.re.set((iv.lo + iv.hi) / 2);
      } else {
        z.re.set(d.roots[j].real());
        z.im.set(d.roots[j].imag());
      }
      d.hp_roots.push_back(z);
    }
    d.hp_prec = 60;
  }
  mpfr_prec_t cur = d.hp_prec;
  std::size_t n = d.f.size() - 1;
  while (cur < prec) {
    cur = std::min<mpfr_prec_t>(prec, cur * 2);
    mpfr_prec_t wp = cur + 32;
    for (std::size_t j = 0; j < m; ++j) {
      mp::Complex& z = d.hp_roots[j];
      z.set_prec(wp);
      bool real = static_cast<int>(j) < d.r1;
      for (int it = 0; it < 2; ++it) {
        mp::Complex v(wp), dv(wp), t(wp);
        mpfr_set_z(v.re.get(), d.f[n].get_mpz_t(), MPFR_RNDN);
        for (std::size_t k = n; k-- > 0;) {
          mp::mul(t, dv, z);
          mpfr_add(dv.re.get(), t.re.get(), v.re.get(), MPFR_RNDN);
          mpfr_add(dv.im.get(), t.im.get(), v.im.get(), MPFR_RNDN);
          mp::mul(t, v, z);
          mpfr_add_z(v.re.get(), t.re.get(), d.f[k].get_mpz_t(), MPFR_RNDN);
          mpfr_set(v.im.get(), t.im.get(), MPFR_RNDN);
        }
        mp::div(t, v, dv);
        mpfr_sub(z.re.get(), z.re.get(), t.re.get(), MPFR_RNDN);
        if (real) mpfr_set_zero(z.im.get(), 1);
        else mpfr_sub(z.im.get(), z.im.get(), t.im.get(), MPFR_RNDN);
      }
    }
  }
  d.hp_prec = cur;
}

}  // namespace

std::vector<int> FieldElement::signs() const {
  if (is_zero()) throw ZeroElement("sign of zero");
  std::vector<int> s;
  for (std::size_t j = 0; j < static_cast<std::size_t>(d_->r1); ++j) s.push_back(sign_at_root(*d_, num_, j));
  return s;
}

bool FieldElement::is_totally_positive() const {
  for (int s : signs())
    if (s < 0) return false;
  return true;
}

std::vector<std::complex<long double>> FieldElement::embeddings() const {
  std::vector<std::complex<long double>> out;
  long double dd = to_ld(den_);
  for (auto& r : d_->roots) {
    std::complex<long double> v = 0;
    for (std::size_t k = num_.size(); k-- > 0;) v = v * r + to_ld(num_[k]);
    out.push_back(v / dd);
  }
  return out;
}

void FieldElement::polar_embeddings(std::vector<long double>* logs, std::vector<long double>* args) const {
  if (is_zero()) throw ZeroElement("log of zero");
  std::size_t m = d_->roots.size();
  if (logs) logs->assign(m, 0);
  if (args) args->assign(m, 0);
  long double lden = log_abs(den_);
  long double maxlog = 0;
  for (auto& r : d_->roots) maxlog = std::max(maxlog, std::log(std::abs(r)) / std::log(2.0L));
  long double coeffbits = 0;
  for (auto& x : num_)
    if (x != 0) coeffbits = std::max<long double>(coeffbits, static_cast<long double>(mpz_sizeinbase(x.get_mpz_t(), 2)));
  std::size_t n = num_.size();
  long double sbits = coeffbits + maxlog * static_cast<long double>(n) + std::log2(static_cast<long double>(n) + 1);
  std::lock_guard<std::mutex> lock(d_->mu);
  std::vector<bool> done(m, false);
  for (mpfr_prec_t prec = 128 + static_cast<mpfr_prec_t>(sbits); prec < (1 << 22); prec *= 2) {
    ensure_hp_roots(*d_, prec);
    bool all = true;
    for (std::size_t j = 0; j < m; ++j) {
      if (done[j]) continue;
      mp::Complex v(prec), t(prec);
      const mp::Complex& z = d_->hp_roots[j];
      for (std::size_t k = n; k-- > 0;) {
        mp::mul(t, v, z);
        mpfr_add_z(v.re.get(), t.re.get(), num_[k].get_mpz_t(), MPFR_RNDN);
        mpfr_set(v.im.get(), t.im.get(), MPFR_RNDN);
      }
      bool zero = v.re.is_zero() && v.im.is_zero();
      long double lg = zero ? -1e30L : mp::log_abs(v);
      // accept when the value clears the rounding error by a wide margin
      if (!zero && lg / std::log(2.0L) > sbits - static_cast<long double>(prec) + 40) {
        if (logs) (*logs)[j] = lg - lden;
        if (args) {
          mp::Real a(prec);
          mpfr_atan2(a.get(), v.im.get(), v.re.get(), MPFR_RNDN);
          (*args)[j] = a.ld();
        }
        done[j] = true;
      } else {
        all = false;
      }
    }
    if (all) return;
  }
  throw std::runtime_error("log_embeddings: precision limit reached");
}

std::vector<long double> FieldElement::log_embeddings() const {
  std::vector<long double> out;
  polar_embeddings(&out, nullptr);
  return out;
}

// ---------------------------------------------------------------------------
// Polynomials over a number field

FieldPoly::FieldPoly(std::vector<FieldElement> c) : c_(std::move(c)) { trim(); }

FieldPoly FieldPoly::from_rational(const NumberField& k, const Poly& p) {
  std::vector<FieldElement> c;
  for (auto& x : p.coeffs()) c.push_back(k.from_rational(x));
  return FieldPoly(c);
}

void FieldPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

FieldPoly operator+(const FieldPoly& a, const FieldPoly& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  std::vector<FieldElement> c = a.c_.size() >= b.c_.size() ? a.c_ : b.c_;
  const auto& o = a.c_.size() >= b.c_.size() ? b.c_ : a.c_;
  for (std::size_t i = 0; i < o.size(); ++i) c[i] += o[i];
  return FieldPoly(c);
}

FieldPoly operator-(const FieldPoly& a, const FieldPoly& b) {
  std::vector<FieldElement> nb;
  for (auto& x : b.c_) nb.push_back(-x);
  return a + FieldPoly(nb);
}

FieldPoly operator*(const FieldPoly& a, const FieldPoly& b) {
  if (a.is_zero() || b.is_zero()) return FieldPoly();
  NumberField k = a.c_[0].field();
  std::vector<FieldElement> c(a.c_.size() + b.c_.size() - 1, k.zero());
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return FieldPoly(c);
}

FieldPoly FieldPoly::scaled(const FieldElement& s) const {
  std::vector<FieldElement> c;
  for (auto& x : c_) c.push_back(x * s);
  return FieldPoly(c);
}

FieldElement FieldPoly::eval(const FieldElement& x) const {
  FieldElement r = x.field().zero();
  for (std::size_t k = c_.size(); k-- > 0;) r = r * x + c_[k];
  return r;
}

FieldPoly FieldPoly::derivative() const {
  std::vector<FieldElement> c;
  for (std::size_t i = 1; i < c_.size(); ++i) c.push_back(c_[i] * Rational(static_cast<long>(i)));
  return FieldPoly(c);
}

FieldPoly FieldPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(c_.back().inverse());
}

FieldPoly FieldPoly::shift(const FieldElement& a) const {
  // Horner: p(t + a)
  if (is_zero()) return *this;
  NumberField k = a.field();
  FieldPoly lin({a, k.one()});
  FieldPoly r;
  for (std::size_t i = c_.size(); i-- > 0;) r = r * lin + FieldPoly({c_[i]});
  return r;
}

void divmod(const FieldPoly& a, const FieldPoly& b, FieldPoly& q, FieldPoly& r) {
  if (b.is_zero()) throw ZeroElement("polynomial division by zero");
  std::vector<FieldElement> rc = a.coeffs();
  int db = b.degree();
  NumberField k = b.coeff(0).field();
  FieldElement inv = b.coeffs().back().inverse();
  int dq = a.degree() - db;
  std::vector<FieldElement> qc(dq >= 0 ? static_cast<std::size_t>(dq) + 1 : 0, k.zero());
  for (int i = a.degree(); i >= db; --i) {
    FieldElement c = rc[static_cast<std::size_t>(i)] * inv;
    if (c.is_zero()) continue;
    qc[static_cast<std::size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j) rc[static_cast<std::size_t>(i - db + j)] -= c * b.coeff(j);
  }
  q = FieldPoly(qc);
  rc.resize(static_cast<std::size_t>(std::max(0, std::min(db, a.degree() + 1))));
  r = FieldPoly(rc);
}

FieldPoly gcd(const FieldPoly& a_in, const FieldPoly& b_in) {
  FieldPoly a = a_in, b = b_in;
  while (!b.is_zero()) {
    FieldPoly q, r;
    divmod(a, b, q, r);
    a = b;
    b = r.monic();
  }
  return a.monic();
}

namespace {

// Interpolate a polynomial of degree <= m from values at 0..m.
Poly interpolate(const std::vector<Rational>& vals) {
  std::size_t m = vals.size();
  std::vector<Rational> dd = vals;
  for (std::size_t j = 1; j < m; ++j)
    for (std::size_t i = m - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / Rational(static_cast<long>(j));
      if (i == j) break;
    }
  Poly r;
  for (std::size_t i = m; i-- > 0;) {
    r = r * Poly::from_longs({-static_cast<long>(i), 1}) + Poly::constant(dd[i]);
  }
  return r;
}

}  // namespace

Poly norm_poly(const FieldPoly& g) {
  if (g.is_zero()) return Poly();
  NumberField k = g.coeff(0).field();
  std::size_t m = static_cast<std::size_t>(g.degree() * k.degree());
  std::vector<Rational> vals;
  for (std::size_t t = 0; t <= m; ++t) vals.push_back(g.eval(k.from_integer(static_cast<long>(t))).norm());
  return interpolate(vals);
}

std::vector<FieldElement> roots_in_field(const FieldPoly& g_in) {
  if (g_in.is_zero()) throw ZeroElement("roots of the zero polynomial");
  FieldPoly g = g_in.monic();
  if (g.degree() < 1) return {};
  FieldPoly dg = g.derivative();
  FieldPoly h = gcd(g, dg);
  if (h.degree() > 0) {
    FieldPoly q, r;
    divmod(g, h, q, r);
    g = q.monic();
  }
  NumberField k = g.coeff(0).field();
  int n = k.degree();
  std::vector<FieldElement> out;
  if (g.degree() == 1) {
    out.push_back(-g.coeff(0));
    return out;
  }
  FieldElement th = k.gen();
  for (long kk : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, 7L, 8L, 9L, 10L}) {
    FieldElement shift = th * Rational(kk);
    Poly N = norm_poly(g.shift(-shift));
    if (!is_squarefree(N)) continue;
    for (auto& [fac, mult] : factor_rational(N)) {
      if (fac.degree() != n) continue;
      // fac(t + shift) reduced modulo g by Horner's rule
      FieldPoly lin({shift, k.one()}), hk, q, r;
      for (int i = fac.degree(); i >= 0; --i) {
        hk = hk * lin + FieldPoly({k.from_rational(fac.coeff(i))});
        divmod(hk, g, q, r);
        hk = r;
      }
      FieldPoly d = gcd(g, hk);
      if (d.degree() == 1) out.push_back(-d.coeff(0));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  throw std::runtime_error("roots_in_field: no squarefree norm found");
}

bool is_power(const FieldElement& x, int l, FieldElement* root) {
  if (x.is_zero()) {
    if (root) *root = x;
    return true;
  }
  if (l == 1) {
    if (root) *root = x;
    return true;
  }
  NumberField k = x.field();
  Rational nx = x.norm();
  Integer rn, rd;
  if (l % 2 == 0 && nx < 0) return false;
  if (!exact_root(abs(nx.get_num()), static_cast<unsigned long>(l), rn)) return false;
  if (!exact_root(nx.get_den(), static_cast<unsigned long>(l), rd)) return false;
  if (l % 2 == 0 && k.r1() > 0 && !x.is_totally_positive()) return false;
  if (x.is_rational()) {
    Rational q = x.rational_value();
    Integer a, b;
    bool neg = q < 0;
    if (neg && l % 2 == 0) {
      // only possible via non-real roots
    } else if (exact_root(abs(q.get_num()), static_cast<unsigned long>(l), a) &&
               exact_root(q.get_den(), static_cast<unsigned long>(l), b)) {
      if (root) *root = k.from_rational(Rational(neg ? Integer(-a) : a, b));
      return true;
    }
  }
  std::vector<FieldElement> c(static_cast<std::size_t>(l) + 1, k.zero());
  c[0] = -x;
  c[static_cast<std::size_t>(l)] = k.one();
  auto rs = roots_in_field(FieldPoly(c));
  if (rs.empty()) return false;
  if (root) *root = rs.front();
  return true;
}

FieldElement determinant(std::vector<std::vector<FieldElement>> a) {
  std::size_t n = a.size();
  if (n == 0) throw InvalidInput("empty matrix");
  NumberField k = a[0][0].field();
  FieldElement det = k.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return k.zero();
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    FieldElement inv = a[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i][c].is_zero()) continue;
      FieldElement f = a[i][c] * inv;
      for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[c][j];
    }
  }
  return det;
}

// ---------------------------------------------------------------------------
// Extensions

namespace {

using Rel = std::vector<FieldElement>;  // element of K[t]/(g), length ell

Rel rel_mul(const Rel& a, const Rel& b, const FieldPoly& g) {
  FieldPoly p = FieldPoly(a) * FieldPoly(b);
  FieldPoly q, r;
  divmod(p, g, q, r);
  std::size_t ell = static_cast<std::size_t>(g.degree());
  NumberField k = g.coeff(0).field();
  Rel out(ell, k.zero());
  for (int i = 0; i <= r.degree(); ++i) out[static_cast<std::size_t>(i)] = r.coeff(i);
  return out;
}

}  // namespace

Extension extend_field(const NumberField& base, ExtensionKind kind, const FieldElement& beta) {
  Extension ext;
  NumberField K = base;
  int n = K.degree();
  int ell = kind == ExtensionKind::cbrt ? 3 : 2;
  FieldElement bprime;
  Integer scale = 1;
  std::vector<FieldElement> gc;
  if (kind == ExtensionKind::none) throw InvalidInput("extension kind required");
  if (kind == ExtensionKind::omega) {
    gc = {K.one(), K.one(), K.one()};
    auto rs = roots_in_field(FieldPoly(gc));
    if (!rs.empty()) {
      ext.field = K;
      ext.trivial = true;
      ext.root = rs.front();
      return ext;
    }
  } else {
    if (!beta.valid()) throw InvalidInput("radicand required");
    if (beta.field() != K) throw FieldMismatch("radicand not in the base field");
    if (beta.is_zero()) throw DegenerateExtension("cannot adjoin a root of zero");
    FieldElement r;
    if (is_power(beta, ell, &r)) {
      ext.field = K;
      ext.trivial = true;
      ext.root = r;
      return ext;
    }
    scale = beta.denominator();
    bprime = beta * Rational(ipow(scale, static_cast<unsigned long>(ell)));
    gc.assign(static_cast<std::size_t>(ell) + 1, K.zero());
    gc[0] = -bprime;
    gc[static_cast<std::size_t>(ell)] = K.one();
  }
  FieldPoly g(gc);
  FieldElement th = K.gen();
  Poly N;
  long kk = 0;
  bool found = false;
  for (long cand : {0L, 1L, -1L, 2L, -2L, 3L, -3L, 4L, -4L, 5L, -5L, 6L, 7L, 8L}) {
    if (n == 1 && cand != 0) break;
    N = norm_poly(g.shift(-(th * Rational(cand))));
    if (is_squarefree(N)) {
      kk = cand;
      found = true;
      break;
    }
  }
  if (!found) throw std::runtime_error("extend_field: no primitive element found");
  std::size_t m = static_cast<std::size_t>(n * ell);
  std::size_t nb = static_cast<std::size_t>(n);
  // Powers of eta = t + kk*theta in the basis theta^i t^j.
  Rel eta(static_cast<std::size_t>(ell), K.zero());
  eta[0] = th * Rational(kk);
  eta[1] = K.one();
  Rel cur(static_cast<std::size_t>(ell), K.zero());
  cur[0] = K.one();
  RatMatrix M(m, RatVector(m));
  auto flatten = [&](const Rel& r) {
    RatVector v(m);
    for (std::size_t j = 0; j < static_cast<std::size_t>(ell); ++j) {
      RatVector pc = r[j].power_coords();
      for (std::size_t i = 0; i < nb; ++i) v[i + nb * j] = pc[i];
    }
    return v;
  };
  for (std::size_t e = 0; e < m; ++e) {
    M[e] = flatten(cur);
    if (e + 1 < m) cur = rel_mul(cur, eta, g);
  }
  RatMatrix Minv = inverse(M);
  // Order O_K[t] expressed in eta coordinates.
  IntMatrix rows;
  {
    RatMatrix rat;
    Integer den = 1;
    for (std::size_t j = 0; j < static_cast<std::size_t>(ell); ++j)
      for (std::size_t i = 0; i < nb; ++i) {
        Rel r(static_cast<std::size_t>(ell), K.zero());
        r[j] = K.basis_element(static_cast<int>(i));
        RatVector v = vec_mat(flatten(r), Minv);
        for (auto& x : v) den = lcm(den, x.get_den());
        rat.push_back(v);
      }
    for (auto& v : rat) {
      IntVector w;
      for (auto& x : v) w.push_back(x.get_num() * (den / x.get_den()));
      rows.push_back(w);
    }
    IntMatrix B0 = lower_hnf(rows, m);
    Integer g0 = den;
    for (auto& r : B0)
      for (auto& x : r) g0 = gcd(g0, x);
    for (auto& r : B0)
      for (auto& x : r) x /= g0;
    Integer D0 = den / g0;
    // disc(O_K[t]) = d_K^ell * N_K(disc g)
    FieldElement dg = kind == ExtensionKind::omega ? K.from_integer(-3)
                      : ell == 2                  ? bprime * Rational(4)
                                                  : bprime * bprime * Rational(-27);
    Rational ndg = dg.norm();
    Integer disc0 = ipow(K.disc(), static_cast<unsigned long>(ell)) * ndg.get_num();
    std::vector<Integer> primes;
    for (auto& [p, e] : K.disc_factors()) primes.push_back(p);
    primes.push_back(ell == 2 && kind != ExtensionKind::omega ? Integer(2) : Integer(3));
    if (kind != ExtensionKind::omega) {
      Integer nb_ = abs(bprime.norm().get_num());
      if (nb_ > 1)
        for (auto& [p, e] : factor_integer(nb_)) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    std::vector<Integer> nc;
    for (auto& c : N.coeffs()) nc.push_back(c.get_num());
    auto d = FieldBuilder::build(nc, B0, D0, disc0, primes);
    d->base = FieldBuilder::ptr(base);
    d->kind = kind;
    d->ell = ell;
    if (kind != ExtensionKind::omega) {
      d->beta_num = beta.num();
      d->beta_den = beta.den();
    }
    d->scale = scale;
    d->rel_to_abs = Minv;
    d->abs_to_rel = M;
    ext.field = FieldBuilder::wrap(d);
  }
  // Verify the embedding on generators.
  NumberField L = ext.field;
  FieldElement thL = L.embed(th);
  FieldElement fv = L.zero();
  for (std::size_t i = K.poly_coeffs().size(); i-- > 0;) fv = fv * thL + L.from_integer(K.poly_coeffs()[i]);
  FieldElement y = L.adjoined();
  FieldElement chk = kind == ExtensionKind::omega ? y * y + y + L.one() : y.pow(ell) - L.embed(beta);
  if (!fv.is_zero() || !chk.is_zero()) throw std::logic_error("extend_field: embedding check failed");
  ext.root = y;
  return ext;
}

}  // namespace aflt
