#include "aflt/ideals.hpp"

#include <algorithm>
#include <sstream>

namespace aflt {

struct IdealAccess {
  static Ideal make(NumberField k, IntMatrix h, Integer d, std::vector<IntVector> gens = {}) {
    return Ideal(std::move(k), std::move(h), std::move(d), std::move(gens));
  }
};

namespace {

std::size_t dim(const NumberField& k) { return static_cast<std::size_t>(k.degree()); }

// Coordinates of a*b for integral-basis coordinate vectors.
IntVector mul_coords(const NumberField& k, const IntVector& a, const IntVector& b) {
  std::size_t n = dim(k);
  IntVector r(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      Integer c = a[i] * b[j];
      const IntVector& m = k.mult(static_cast<int>(i), static_cast<int>(j));
      for (std::size_t t = 0; t < n; ++t)
        if (m[t] != 0) r[t] += c * m[t];
    }
  }
  return r;
}

// Matrix of multiplication by c: column j holds c * w_j.
IntMatrix mult_matrix(const NumberField& k, const IntVector& c) {
  std::size_t n = dim(k);
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    if (c[a] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const IntVector& t = k.mult(static_cast<int>(a), static_cast<int>(j));
      for (std::size_t r = 0; r < n; ++r)
        if (t[r] != 0) m[r][j] += c[a] * t[r];
    }
  }
  return m;
}

IntVector mat_apply(const IntMatrix& m, const IntVector& v) {
  IntVector r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0 && m[i][j] != 0) r[i] += m[i][j] * v[j];
  return r;
}

std::vector<IntVector> columns(const IntMatrix& h) {
  std::size_t n = h.size();
  std::vector<IntVector> cols(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = h[i][j];
  return cols;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (auto& x : v) g = gcd(g, x);
  return g;
}

// ---------------------------------------------------------------------------
// Arithmetic in O/pO with integral-basis coordinates.

struct ModP {
  std::uint64_t p;
  std::size_t n;
  std::vector<FpVector> table;  // table[i*n+j] = w_i w_j mod p

  ModP(const NumberField& k, std::uint64_t p_) : p(p_), n(dim(k)) {
    table.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const IntVector& m = k.mult(static_cast<int>(i), static_cast<int>(j));
        FpVector v(n);
        for (std::size_t t = 0; t < n; ++t) v[t] = to_residue(m[t], p);
        table[i * n + j] = std::move(v);
      }
  }
  FpVector mul(const FpVector& a, const FpVector& b) const {
    FpVector r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!b[j]) continue;
        std::uint64_t c = mulmod(a[i], b[j], p);
        const FpVector& m = table[i * n + j];
        for (std::size_t t = 0; t < n; ++t)
          if (m[t]) r[t] = (r[t] + mulmod(c, m[t], p)) % p;
      }
    }
    return r;
  }
  FpVector one() const {
    FpVector r(n, 0);
    r[0] = 1;
    return r;
  }
  FpVector reduce(const IntVector& v) const {
    FpVector r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = to_residue(v[i], p);
    return r;
  }
};

// Quotient of F_p^n by a subspace, with coordinates on the non-pivot columns
// of the subspace's reduced echelon basis.
struct Quotient {
  std::uint64_t p;
  FpMatrix rows;
  std::vector<std::size_t> pivots, free;

  Quotient(FpMatrix sub, std::size_t n, std::uint64_t p_) : p(p_) {
    if (!sub.empty()) {
      pivots = fp_rref(sub, p);
      sub.resize(pivots.size());
    }
    rows = std::move(sub);
    std::vector<bool> is_piv(n, false);
    for (auto c : pivots) is_piv[c] = true;
    for (std::size_t c = 0; c < n; ++c)
      if (!is_piv[c]) free.push_back(c);
  }
  std::size_t dim() const { return free.size(); }
  FpVector project(FpVector v) const {
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      std::uint64_t c = v[pivots[i]];
      if (!c) continue;
      for (std::size_t t = 0; t < v.size(); ++t)
        if (rows[i][t]) v[t] = (v[t] + p - mulmod(c, rows[i][t], p)) % p;
    }
    FpVector r(free.size());
    for (std::size_t i = 0; i < free.size(); ++i) r[i] = v[free[i]];
    return r;
  }
  FpVector lift(const FpVector& a, std::size_t n) const {
    FpVector v(n, 0);
    for (std::size_t i = 0; i < free.size(); ++i) v[free[i]] = a[i];
    return v;
  }
};

FpVector fp_add(const FpVector& a, const FpVector& b, std::uint64_t p) {
  FpVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

FpVector fp_scale(const FpVector& a, std::uint64_t s, std::uint64_t p) {
  FpVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = mulmod(a[i], s, p);
  return r;
}

bool fp_is_zero(const FpVector& a) {
  return std::all_of(a.begin(), a.end(), [](std::uint64_t x) { return x == 0; });
}

// Semisimple algebra A = (O/pO)/Rad with projected multiplication.
struct Algebra {
  const ModP& R;
  const Quotient& Q;
  FpVector mul(const FpVector& a, const FpVector& b) const {
    return Q.project(R.mul(Q.lift(a, R.n), Q.lift(b, R.n)));
  }
  FpVector pow(FpVector a, std::uint64_t e, const FpVector& unit) const {
    FpVector r = unit;
    while (e) {
      if (e & 1) r = mul(r, a);
      e >>= 1;
      if (e) a = mul(a, a);
    }
    return r;
  }
};

// Monic minimal polynomial of x inside the algebra with identity `unit`.
FpPoly min_poly(const Algebra& A, const FpVector& x, const FpVector& unit, std::uint64_t p) {
  std::vector<FpVector> pw{unit};
  for (;;) {
    FpVector next = A.mul(pw.back(), x);
    FpMatrix m(next.size(), FpVector(pw.size()));
    for (std::size_t i = 0; i < next.size(); ++i)
      for (std::size_t j = 0; j < pw.size(); ++j) m[i][j] = pw[j][i];
    FpVector sol;
    if (fp_solve(m, next, sol, p)) {
      FpPoly h(pw.size() + 1);
      for (std::size_t j = 0; j < pw.size(); ++j) h[j] = (p - sol[j]) % p;
      h[pw.size()] = 1;
      return h;
    }
    pw.push_back(next);
  }
}

std::size_t span_dim(const std::vector<FpVector>& v, std::uint64_t p) {
  if (v.empty()) return 0;
  return fp_rank(FpMatrix(v.begin(), v.end()), p);
}

// Primitive idempotents of the semisimple algebra A, via its Frobenius-fixed
// subalgebra.
std::vector<FpVector> primitive_idempotents(const Algebra& A, std::size_t m, std::uint64_t p,
                                            SplitMix64& rng) {
  FpVector unit = A.Q.project(A.R.one());
  FpMatrix F(m, FpVector(m));
  for (std::size_t c = 0; c < m; ++c) {
    FpVector e(m, 0);
    e[c] = 1;
    FpVector img = A.pow(e, p, unit);
    for (std::size_t r = 0; r < m; ++r) F[r][c] = (img[r] + (r == c ? p - 1 : 0)) % p;
  }
  FpMatrix B = fp_kernel(F, p);
  std::vector<FpVector> idem{unit};
  auto component_dim = [&](const FpVector& e) {
    std::vector<FpVector> v;
    for (auto& b : B) v.push_back(A.mul(b, e));
    return span_dim(v, p);
  };
  std::vector<std::size_t> dims{B.size()};
  for (int guard = 0; guard < 10000; ++guard) {
    bool done = true;
    for (auto d : dims) done = done && d == 1;
    if (done) return idem;
    FpVector b(m, 0);
    for (auto& v : B) b = fp_add(b, fp_scale(v, static_cast<std::uint64_t>(rng.next() % p), p), p);
    std::vector<FpVector> next_idem;
    std::vector<std::size_t> next_dims;
    for (std::size_t k = 0; k < idem.size(); ++k) {
      if (dims[k] == 1) {
        next_idem.push_back(idem[k]);
        next_dims.push_back(1);
        continue;
      }
      const FpVector& e = idem[k];
      FpVector be = A.mul(b, e);
      FpPoly mp = min_poly(A, be, e, p);
      auto fac = fp::factor(mp, p);
      if (fac.size() == 1) {
        next_idem.push_back(e);
        next_dims.push_back(dims[k]);
        continue;
      }
      std::vector<std::uint64_t> roots;
      for (auto& [g, mult] : fac) roots.push_back((p - g[0]) % p);  // all linear
      for (std::size_t r = 0; r < roots.size(); ++r) {
        FpVector acc = e;
        for (std::size_t s = 0; s < roots.size(); ++s) {
          if (s == r) continue;
          FpVector lin = fp_add(be, fp_scale(e, (p - roots[s]) % p, p), p);
          std::uint64_t inv = invmod((roots[r] + p - roots[s]) % p, p);
          acc = fp_scale(A.mul(acc, lin), inv, p);
        }
        next_idem.push_back(acc);
        next_dims.push_back(component_dim(acc));
      }
    }
    idem = std::move(next_idem);
    dims = std::move(next_dims);
  }
  throw std::logic_error("idempotent splitting did not terminate");
}

// Integral-basis coordinates of a power-basis polynomial over Z (degree < n).
IntVector coords_of_power(const NumberField& k, const std::vector<Integer>& c) {
  RatVector v(dim(k), 0);
  for (std::size_t i = 0; i < c.size() && i < v.size(); ++i) v[i] = c[i];
  return k.from_power(v).integral_coords();
}

// Raw valuation of a nonzero integral coordinate vector, without using e.
int raw_valuation(IntVector y, const IntMatrix& beta_mult, const Integer& p) {
  int v = 0;
  for (;;) {
    IntVector z = mat_apply(beta_mult, y);
    for (auto& c : z)
      if (!mpz_divisible_p(c.get_mpz_t(), p.get_mpz_t())) return v;
    for (auto& c : z) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    y = std::move(z);
    ++v;
  }
}

int int_valuation(IntVector y, const PrimeIdeal& P) {
  Integer c = content(y);
  if (c == 0) throw ZeroElement("valuation of zero");
  int a = valuation(c, P.p);
  if (a > 0) {
    Integer pa = ipow(P.p, static_cast<unsigned long>(a));
    for (auto& x : y) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), pa.get_mpz_t());
  }
  return a * P.e + raw_valuation(std::move(y), P.beta_mult, P.p);
}

struct RawPrime {
  IntMatrix hnf;
  int f;
  std::vector<IntVector> gens;  // optional (p, pi0)
};

// Completes a prime: uniformizer, valuation helper, e, residue field.
Prime finish_prime(const NumberField& k, const Integer& p, const RawPrime& raw, SplitMix64& rng) {
  std::size_t n = dim(k);
  std::uint64_t pp = p.get_ui();
  ModP R(k, pp);
  auto P = std::make_shared<PrimeIdeal>();
  P->field = k;
  P->p = p;
  P->f = raw.f;

  auto good_pi = [&](const IntVector& c) {
    if (fp_is_zero(R.reduce(c)) && raw.f != static_cast<int>(n)) return false;
    Rational nm = k.from_basis(c).norm();
    if (nm == 0) return false;
    return valuation(nm.get_num(), p) == raw.f;
  };
  IntVector pi;
  bool found = false;
  if (!raw.gens.empty()) {
    IntVector c = raw.gens.back();
    if (good_pi(c)) {
      pi = c;
      found = true;
    } else {
      c[0] += p;
      if (good_pi(c)) {
        pi = c;
        found = true;
      }
    }
  }
  if (!found && raw.f == static_cast<int>(n)) {
    pi = IntVector(n, 0);
    pi[0] = p;
    found = true;
  }
  Integer p2 = p * p;
  auto cols = columns(raw.hnf);
  for (int tries = 0; !found && tries < 20000; ++tries) {
    IntVector c(n, 0);
    for (auto& col : cols) {
      Integer r = Integer(static_cast<unsigned long>(rng.next() % 1000003)) % p2;
      for (std::size_t i = 0; i < n; ++i) c[i] += r * col[i];
    }
    if (good_pi(c)) {
      pi = c;
      found = true;
    }
  }
  if (!found) throw std::logic_error("no uniformizer found for prime above " + p.get_str());
  P->pi = k.from_basis(pi);

  // beta spans (p P^{-1}) / pO: the kernel of multiplication by pi mod p.
  IntMatrix mpi = mult_matrix(k, pi);
  FpMatrix mm(n, FpVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mm[i][j] = to_residue(mpi[i][j], pp);
  FpMatrix ker = fp_kernel(mm, pp);
  if (ker.empty()) throw std::logic_error("prime ideal with trivial annihilator");
  IntVector beta(n);
  for (std::size_t i = 0; i < n; ++i) beta[i] = Integer(static_cast<unsigned long>(ker[0][i]));
  P->beta = k.from_basis(beta);
  P->beta_mult = mult_matrix(k, beta);
  IntVector pv(n, 0);
  pv[0] = p;
  P->e = raw_valuation(pv, P->beta_mult, p);

  std::vector<IntVector> gens{pv, pi};
  P->ideal = IdealAccess::make(k, raw.hnf, 1, gens);

  // Residue field O/P = F_p[t]/(h) via a primitive element z.
  FpMatrix sub;
  for (auto& col : cols) {
    FpVector v = R.reduce(col);
    if (!fp_is_zero(v)) sub.push_back(v);
  }
  Quotient Q(sub, n, pp);
  std::size_t f = Q.dim();
  if (static_cast<int>(f) != raw.f) throw std::logic_error("residue degree mismatch");
  ResidueField& rf = P->residue;
  rf.p = pp;
  rf.f = raw.f;
  FpVector unit = Q.project(R.one());
  IntVector theta = k.gen().integral_coords();
  for (int tries = 0;; ++tries) {
    FpVector z;
    if (tries == 0) {
      z = R.reduce(theta);
    } else {
      z.assign(n, 0);
      for (auto& x : z) x = rng.next() % pp;
    }
    z = Q.project(z);
    std::vector<FpVector> pw{unit};
    for (std::size_t i = 1; i <= f; ++i) pw.push_back(Q.project(R.mul(Q.lift(pw.back(), n), Q.lift(z, n))));
    FpMatrix zm(f, FpVector(f));
    for (std::size_t i = 0; i < f; ++i)
      for (std::size_t j = 0; j < f; ++j) zm[i][j] = pw[j][i];
    if (fp_rank(zm, pp) != f) {
      if (tries > 10000) throw std::logic_error("no primitive residue element");
      continue;
    }
    FpVector sol;
    fp_solve(zm, pw[f], sol, pp);
    rf.h.assign(f + 1, 0);
    for (std::size_t j = 0; j < f; ++j) rf.h[j] = (pp - sol[j]) % pp;
    rf.h[f] = 1;
    rf.images.clear();
    for (std::size_t i = 0; i < n; ++i) {
      FpVector e(n, 0);
      e[i] = 1;
      FpVector a;
      fp_solve(zm, Q.project(e), a, pp);
      fp::trim(a);
      rf.images.push_back(a);
    }
    break;
  }
  return P;
}

std::vector<Prime> compute_primes(const NumberField& k, const Integer& p) {
  if (p < 2 || !is_prime(p)) throw InvalidInput("factor_prime: " + p.get_str() + " is not prime");
  if (p >= Integer(1) << 31) throw InvalidInput("factor_prime: prime too large");
  std::size_t n = dim(k);
  std::uint64_t pp = p.get_ui();
  SplitMix64 rng(0x5eed0000ULL ^ (pp * 0x9e3779b97f4a7c15ULL));
  std::vector<RawPrime> raws;

  if (k.index() % p != 0) {
    // Dedekind: P_i = (p, g_i(theta)) for the factors g_i of f mod p.
    auto fac = fp::factor(fp::reduce(k.poly_coeffs(), pp), pp);
    for (auto& [g, mult] : fac) {
      std::vector<Integer> c(n, 0);
      for (std::size_t i = 0; i < g.size() && i < n; ++i) c[i] = Integer(static_cast<unsigned long>(g[i]));
      if (g.size() == n + 1)
        for (std::size_t i = 0; i < n; ++i) c[i] -= k.poly_coeffs()[i];
      IntVector pi0 = coords_of_power(k, c);
      IntVector pv(n, 0);
      pv[0] = p;
      std::vector<IntVector> cols;
      IntMatrix mp = mult_matrix(k, pi0);
      for (auto& col : columns(mp)) cols.push_back(col);
      for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, 0);
        e[i] = p;
        cols.push_back(e);
      }
      raws.push_back({hnf_columns_mod(cols, n, p), static_cast<int>(g.size()) - 1, {pv, pi0}});
    }
  } else {
    ModP R(k, pp);
    // Radical: kernel of x -> x^(p^j) with p^j >= n.
    std::uint64_t q = pp;
    while (q < n) q *= pp;
    FpMatrix fr(n, FpVector(n));
    for (std::size_t c = 0; c < n; ++c) {
      FpVector x(n, 0);
      x[c] = 1;
      for (std::uint64_t r = 1; r < q; r *= pp) {
        FpVector acc = R.one(), b = x;
        for (std::uint64_t e = pp; e; e >>= 1) {
          if (e & 1) acc = R.mul(acc, b);
          if (e > 1) b = R.mul(b, b);
        }
        x = acc;
      }
      for (std::size_t r = 0; r < n; ++r) fr[r][c] = x[r];
    }
    FpMatrix rad = fp_kernel(fr, pp);
    Quotient Q(rad, n, pp);
    Algebra A{R, Q};
    auto idem = primitive_idempotents(A, Q.dim(), pp, rng);
    for (auto& e : idem) {
      FpVector le = Q.lift(e, n);
      FpMatrix m(Q.dim(), FpVector(n));
      for (std::size_t c = 0; c < n; ++c) {
        FpVector x(n, 0);
        x[c] = 1;
        FpVector img = Q.project(R.mul(x, le));
        for (std::size_t r = 0; r < Q.dim(); ++r) m[r][c] = img[r];
      }
      FpMatrix ker = fp_kernel(m, pp);
      std::vector<IntVector> cols;
      for (auto& v : ker) {
        IntVector c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = Integer(static_cast<unsigned long>(v[i]));
        cols.push_back(c);
      }
      for (std::size_t i = 0; i < n; ++i) {
        IntVector c(n, 0);
        c[i] = p;
        cols.push_back(c);
      }
      raws.push_back({hnf_columns_mod(cols, n, p), static_cast<int>(n - ker.size()), {}});
    }
  }

  std::vector<Prime> out;
  for (auto& r : raws) out.push_back(finish_prime(k, p, r, rng));
  std::sort(out.begin(), out.end(), [](const Prime& a, const Prime& b) {
    if (a->f != b->f) return a->f < b->f;
    if (a->e != b->e) return a->e < b->e;
    return a->ideal.hnf() < b->ideal.hnf();
  });
  int total = 0;
  for (auto& P : out) total += P->e * P->f;
  if (total != k.degree()) throw std::logic_error("prime decomposition does not account for the degree");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(NumberField k, IntMatrix h, Integer d, std::vector<IntVector> gens)
    : k_(std::move(k)), h_(std::move(h)), d_(std::move(d)), gens_(std::move(gens)) {
  normalize();
}

void Ideal::normalize() {
  Integer g = d_;
  for (auto& row : h_)
    for (auto& x : row) g = gcd(g, x);
  if (g > 1) {
    d_ /= g;
    for (auto& row : h_)
      for (auto& x : row) x /= g;
    for (auto& v : gens_)
      for (auto& x : v) x /= g;
  }
  for (auto& v : gens_)
    if (content(v) == 0) {
      gens_.clear();
      break;
    }
}

Ideal Ideal::unit(const NumberField& k) {
  IntVector one(dim(k), 0);
  one[0] = 1;
  return Ideal(k, identity_matrix(dim(k)), 1, {one});
}

Ideal Ideal::principal(const FieldElement& x) { return generated(x.field(), {x}); }

Ideal Ideal::generated(const NumberField& k, const std::vector<FieldElement>& gens) {
  Integer L = 1;
  bool any = false;
  for (auto& x : gens) {
    if (x.field() != k) throw FieldMismatch("ideal generator from another field");
    if (x.is_zero()) continue;
    any = true;
    L = lcm(L, x.denominator());
  }
  if (!any) throw ZeroIdeal("ideal generated by zero");
  std::size_t n = dim(k);
  std::vector<IntVector> ys, cols;
  Integer D = 0;
  for (auto& x : gens) {
    if (x.is_zero()) continue;
    FieldElement y = x * Rational(L);
    IntVector c = y.integral_coords();
    Rational nm = y.norm();
    D = gcd(D, abs(nm.get_num()));
    for (auto& col : columns(mult_matrix(k, c))) cols.push_back(std::move(col));
    ys.push_back(std::move(c));
  }
  if (ys.size() > n) ys.clear();
  return Ideal(k, hnf_columns_mod(cols, n, D), L, std::move(ys));
}

Rational Ideal::norm() const {
  Integer num = 1;
  for (std::size_t i = 0; i < h_.size(); ++i) num *= h_[i][i];
  Rational r(num, ipow(d_, static_cast<unsigned long>(h_.size())));
  r.canonicalize();
  return r;
}

bool Ideal::is_unit() const { return d_ == 1 && h_ == identity_matrix(h_.size()); }

bool Ideal::contains(const FieldElement& x) const {
  if (x.field() != k_) throw FieldMismatch("ideal membership across fields");
  RatVector v = x.basis_coords();
  for (auto& c : v) c *= d_;
  std::size_t n = h_.size();
  for (std::size_t i = n; i-- > 0;) {
    Rational z = v[i] / Rational(h_[i][i]);
    if (z.get_den() != 1) return false;
    for (std::size_t r = 0; r <= i; ++r) v[r] -= z * h_[r][i];
  }
  return true;
}

std::vector<FieldElement> Ideal::basis() const {
  std::vector<FieldElement> out;
  for (auto& col : columns(h_)) {
    RatVector v(col.size());
    for (std::size_t i = 0; i < col.size(); ++i) {
      v[i] = Rational(col[i], d_);
      v[i].canonicalize();
    }
    out.push_back(k_.from_basis(v));
  }
  return out;
}

Ideal Ideal::operator*(const Ideal& o) const {
  if (k_ != o.k_) throw FieldMismatch("ideal product across fields");
  std::size_t n = h_.size();
  const Ideal* a = this;
  const Ideal* b = &o;
  auto ngens = [n](const Ideal* x) { return x->gens_.empty() ? n : x->gens_.size(); };
  if (ngens(a) < ngens(b)) std::swap(a, b);
  std::vector<IntVector> bg = b->gens_.empty() ? columns(b->h_) : b->gens_;
  std::vector<IntVector> cols;
  auto acols = columns(a->h_);
  for (auto& g : bg) {
    IntMatrix m = mult_matrix(k_, g);
    for (auto& c : acols) cols.push_back(mat_apply(m, c));
  }
  std::vector<IntVector> gens;
  if (!a->gens_.empty() && !b->gens_.empty() && a->gens_.size() * b->gens_.size() <= 4)
    for (auto& x : a->gens_)
      for (auto& y : b->gens_) gens.push_back(mul_coords(k_, x, y));
  Integer D = a->min_integer() * b->min_integer();
  return Ideal(k_, hnf_columns_mod(cols, n, D), d_ * o.d_, std::move(gens));
}

Ideal Ideal::operator*(const FieldElement& x) const { return *this * principal(x); }

Ideal Ideal::operator+(const Ideal& o) const {
  if (k_ != o.k_) throw FieldMismatch("ideal sum across fields");
  std::size_t n = h_.size();
  Integer L = lcm(d_, o.d_);
  Integer sa = L / d_, sb = L / o.d_;
  std::vector<IntVector> cols;
  for (auto c : columns(h_)) {
    for (auto& x : c) x *= sa;
    cols.push_back(std::move(c));
  }
  for (auto c : columns(o.h_)) {
    for (auto& x : c) x *= sb;
    cols.push_back(std::move(c));
  }
  Integer D = gcd(min_integer() * sa, o.min_integer() * sb);
  return Ideal(k_, hnf_columns_mod(cols, n, D), L);
}

Ideal Ideal::inverse() const {
  std::size_t n = h_.size();
  // J^{-1} = {c : g * c integral for all generators g of J}.
  std::vector<IntVector> g = gens_.empty() ? columns(h_) : gens_;
  IntMatrix a;
  for (auto& x : g)
    for (auto& row : mult_matrix(k_, x)) a.push_back(row);
  IntMatrix ha = hnf_rows(a);
  RatMatrix inv = aflt::inverse(to_rational(ha));
  Integer e = 1;
  for (auto& row : inv)
    for (auto& x : row) e = lcm(e, x.get_den());
  std::vector<IntVector> cols(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational v = inv[i][j] * e;
      cols[j][i] = v.get_num();
    }
  IntMatrix h = hnf_columns_mod(cols, n, e);
  for (auto& row : h)
    for (auto& x : row) x *= d_;
  return Ideal(k_, std::move(h), e);
}

Ideal Ideal::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Ideal r = unit(k_), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

bool operator<(const Ideal& a, const Ideal& b) {
  Rational na = a.norm(), nb = b.norm();
  if (na != nb) return na < nb;
  if (a.d_ != b.d_) return a.d_ < b.d_;
  return a.h_ < b.h_;
}

std::string Ideal::str() const {
  std::ostringstream os;
  os << "Ideal(norm " << to_string(norm()) << ", hnf [";
  for (std::size_t i = 0; i < h_.size(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < h_[i].size(); ++j) os << (j ? " " : "") << h_[i][j];
  }
  os << "]";
  if (d_ != 1) os << " / " << d_;
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Residue fields

FpPoly ResidueField::mul(const FpPoly& a, const FpPoly& b) const {
  return fp::mod(fp::mul(a, b, p), h, p);
}

FpPoly ResidueField::add(const FpPoly& a, const FpPoly& b) const { return fp::add(a, b, p); }

FpPoly ResidueField::pow(const FpPoly& a, const Integer& e) const {
  if (e < 0) return pow(inverse(a), -e);
  return fp::powmod(a, e, h, p);
}

FpPoly ResidueField::inverse(const FpPoly& a) const {
  FpPoly s, t;
  FpPoly g = fp::xgcd(a, h, s, t, p);
  if (fp::degree(g) != 0) throw ZeroElement("inverse of zero residue");
  return fp::mod(s, h, p);
}

FpPoly ResidueField::from_int(const Integer& a) const {
  FpPoly r{to_residue(a, p)};
  fp::trim(r);
  return r;
}

Integer ResidueField::size() const { return ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(f)); }

FpPoly PrimeIdeal::reduce(const FieldElement& x) const {
  if (x.field() != field) throw FieldMismatch("reduction modulo a prime of another field");
  Integer L = x.denominator();
  if (L % p == 0) throw InvalidInput("reduction of an element with denominator divisible by p");
  IntVector y = (x * Rational(L)).integral_coords();
  std::uint64_t pp = residue.p;
  FpPoly acc;
  for (std::size_t i = 0; i < y.size(); ++i) {
    std::uint64_t c = to_residue(y[i], pp);
    if (c) acc = fp::add(acc, fp::scale(residue.images[i], c, pp), pp);
  }
  acc = fp::scale(acc, invmod(to_residue(L, pp), pp), pp);
  fp::trim(acc);
  return acc;
}

std::string PrimeIdeal::str() const {
  std::ostringstream os;
  os << "(" << p << ", " << pi.str() << ") [e=" << e << ", f=" << f << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Primes

bool prime_less(const Prime& a, const Prime& b) {
  Integer na = a->norm(), nb = b->norm();
  if (na != nb) return na < nb;
  if (a->p != b->p) return a->p < b->p;
  if (a->e != b->e) return a->e < b->e;
  return a->ideal.hnf() < b->ideal.hnf();
}

bool same_prime(const Prime& a, const Prime& b) {
  return a == b || (a->field == b->field && a->p == b->p && a->ideal == b->ideal);
}

std::vector<Prime> factor_prime(const NumberField& k, const Integer& p) {
  auto v = k.cached<std::vector<Prime>>("primes:" + p.get_str(), [&] {
    return std::make_shared<const std::vector<Prime>>(compute_primes(k, p));
  });
  return *v;
}

SplittingType splitting_type(const NumberField& k, const Integer& p) {
  auto ps = factor_prime(k, p);
  int n = k.degree();
  if (ps.size() == 1 && ps[0]->e == 1 && ps[0]->f == n) return SplittingType::inert;
  if (ps.size() == 1 && ps[0]->e == n) return SplittingType::totally_ramified;
  if (static_cast<int>(ps.size()) == n) return SplittingType::split;
  return SplittingType::mixed;
}

std::string to_string(SplittingType t) {
  switch (t) {
    case SplittingType::inert: return "inert";
    case SplittingType::totally_ramified: return "totally_ramified";
    case SplittingType::split: return "split";
    case SplittingType::mixed: return "mixed";
  }
  return "?";
}

int valuation(const FieldElement& x, const PrimeIdeal& P) {
  if (x.field() != P.field) throw FieldMismatch("valuation at a prime of another field");
  if (x.is_zero()) throw ZeroElement("valuation of zero");
  Integer L = x.denominator();
  IntVector y = (x * Rational(L)).integral_coords();
  return int_valuation(std::move(y), P) - P.e * valuation(L, P.p);
}

int valuation(const Ideal& I, const PrimeIdeal& P) {
  if (I.field() != P.field) throw FieldMismatch("valuation at a prime of another field");
  int best = 0;
  bool first = true;
  for (auto& col : columns(I.hnf())) {
    if (content(col) == 0) continue;
    int v = int_valuation(col, P);
    if (first || v < best) best = v;
    first = false;
  }
  return best - P.e * valuation(I.den(), P.p);
}

namespace {

void add_prime_factors(const Integer& a, std::vector<Integer>& ps) {
  if (abs(a) <= 1) return;
  for (auto& [q, e] : factor_integer(a)) ps.push_back(q);
}

std::vector<std::pair<Prime, int>> collect(std::vector<Integer> ps,
                                           const std::function<int(const PrimeIdeal&)>& val,
                                           const NumberField& k) {
  std::sort(ps.begin(), ps.end());
  ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
  std::vector<std::pair<Prime, int>> out;
  for (auto& q : ps)
    for (auto& P : factor_prime(k, q)) {
      int v = val(*P);
      if (v != 0) out.emplace_back(P, v);
    }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return prime_less(a.first, b.first); });
  return out;
}

}  // namespace

std::vector<std::pair<Prime, int>> factor_ideal(const Ideal& I) {
  if (!I.valid()) throw ZeroIdeal("invalid ideal");
  std::vector<Integer> ps;
  for (std::size_t i = 0; i < I.hnf().size(); ++i) add_prime_factors(I.hnf()[i][i], ps);
  add_prime_factors(I.den(), ps);
  return collect(std::move(ps), [&](const PrimeIdeal& P) { return valuation(I, P); }, I.field());
}

std::vector<std::pair<Prime, int>> factor_element(const FieldElement& x) {
  if (x.is_zero()) throw ZeroElement("factorization of zero");
  Rational nm = x.norm();
  std::vector<Integer> ps;
  add_prime_factors(nm.get_num(), ps);
  add_prime_factors(nm.get_den(), ps);
  add_prime_factors(x.denominator(), ps);
  return collect(std::move(ps), [&](const PrimeIdeal& P) { return valuation(x, P); }, x.field());
}

PrimeSets prime_sets(const NumberField& k, int l) {
  if (l != 2 && l != 3) throw InvalidInput("prime_sets: l must be 2 or 3");
  PrimeSets s;
  s.S = factor_prime(k, l);
  if (l == 2) {
    for (auto& P : s.S)
      if (P->f == 1) s.T.push_back(P);
  } else {
    s.t_defined = false;
  }
  return s;
}

std::vector<Integer> primes_below(const std::vector<Prime>& S) {
  std::vector<Integer> out;
  for (auto& P : S) out.push_back(P->p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

Integer strip(Integer a, const std::vector<Integer>& qs) {
  a = abs(a);
  for (auto& q : qs)
    while (a != 0 && a % q == 0) a /= q;
  return a;
}

bool in_set(const Prime& P, const std::vector<Prime>& S) {
  for (auto& Q : S)
    if (same_prime(P, Q)) return true;
  return false;
}

}  // namespace

bool is_s_unit(const FieldElement& x, const std::vector<Prime>& S) {
  if (x.is_zero()) return false;
  auto qs = primes_below(S);
  Rational nm = x.norm();
  if (strip(nm.get_num(), qs) != 1 || strip(nm.get_den(), qs) != 1) return false;
  if (strip(x.denominator(), qs) != 1) return false;
  for (auto& q : qs)
    for (auto& P : factor_prime(x.field(), q))
      if (!in_set(P, S) && valuation(x, *P) != 0) return false;
  return true;
}

bool is_s_integer(const FieldElement& x, const std::vector<Prime>& S) {
  if (x.is_zero()) return true;
  auto qs = primes_below(S);
  if (strip(x.denominator(), qs) != 1) return false;
  for (auto& q : qs)
    for (auto& P : factor_prime(x.field(), q))
      if (!in_set(P, S) && valuation(x, *P) < 0) return false;
  return true;
}

std::vector<int> valuation_vector(const FieldElement& x, const std::vector<Prime>& S) {
  std::vector<int> v;
  for (auto& P : S) v.push_back(valuation(x, *P));
  return v;
}

}  // namespace aflt
