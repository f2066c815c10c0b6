#include "aflt/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aflt {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, IntVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Integer determinant(IntMatrix a) {
  std::size_t n = a.size();
  if (n == 0) return 1;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t piv = k + 1;
      while (piv < n && a[piv][k] == 0) ++piv;
      if (piv == n) return 0;
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

Rational determinant(RatMatrix a) {
  std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != k) {
      std::swap(a[k], a[piv]);
      det = -det;
    }
    det *= a[k][k];
    Rational inv = 1 / a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rational f = a[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

RatMatrix inverse(RatMatrix a) {
  std::size_t n = a.size();
  RatMatrix inv(n, RatVector(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k] == 0) ++piv;
    if (piv == n) throw std::domain_error("inverse: singular matrix");
    std::swap(a[k], a[piv]);
    std::swap(inv[k], inv[piv]);
    Rational s = 1 / a[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      a[k][j] *= s;
      inv[k][j] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a[i][k] == 0) continue;
      Rational f = a[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        if (a[k][j] != 0) a[i][j] -= f * a[k][j];
        if (inv[k][j] != 0) inv[i][j] -= f * inv[k][j];
      }
    }
  }
  return inv;
}

RatVector mat_vec(const RatMatrix& a, const RatVector& v) {
  RatVector r(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != 0) r[i] += a[i][j] * v[j];
  return r;
}

RatVector vec_mat(const RatVector& v, const RatMatrix& a) {
  std::size_t m = a.empty() ? 0 : a[0].size();
  RatVector r(m, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) r[j] += v[i] * a[i][j];
  }
  return r;
}

RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  RatMatrix r(n, RatVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix r(n, IntVector(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

RatMatrix to_rational(const IntMatrix& a) {
  RatMatrix r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (auto& x : a[i]) r[i].emplace_back(x);
  return r;
}

// ---------------------------------------------------------------------------
// Hermite normal forms

namespace {

// Final reduction of an upper-triangular column basis.
void reduce_upper(IntMatrix& h) {
  std::size_t n = h.size();
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = j; i-- > 0;) {
      Integer q = fdiv(h[i][j], h[i][i]);
      if (q == 0) continue;
      for (std::size_t r = 0; r <= i; ++r) h[r][j] -= q * h[r][i];
    }
  }
}

}  // namespace

IntMatrix hnf_columns_mod(const std::vector<IntVector>& cols, std::size_t n, const Integer& D_in) {
  Integer D = abs(D_in);
  if (D == 0) throw std::invalid_argument("hnf_columns_mod: zero modulus");
  std::vector<IntVector> work;
  for (auto& c : cols) {
    IntVector v(n);
    bool nz = false;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = fmod(c[i], D);
      if (v[i] != 0) nz = true;
    }
    if (nz) work.push_back(std::move(v));
  }
  IntMatrix h(n, IntVector(n, 0));
  for (std::size_t i = n; i-- > 0;) {
    IntVector piv(n, 0);
    piv[i] = D;
    for (auto& c : work) {
      if (c[i] == 0) continue;
      Integer u, v;
      Integer g = xgcd(piv[i], c[i], u, v);
      Integer a = piv[i] / g, b = c[i] / g;
      IntVector np(n, 0), nc(n, 0);
      for (std::size_t r = 0; r < i; ++r) {
        np[r] = fmod(u * piv[r] + v * c[r], D);
        nc[r] = fmod(b * piv[r] - a * c[r], D);
      }
      np[i] = g;
      piv = std::move(np);
      c = std::move(nc);
    }
    for (std::size_t r = 0; r <= i; ++r) h[r][i] = piv[r];
    work.erase(std::remove_if(work.begin(), work.end(),
                              [](const IntVector& v) {
                                for (auto& x : v)
                                  if (x != 0) return false;
                                return true;
                              }),
               work.end());
  }
  reduce_upper(h);
  return h;
}

IntMatrix hnf_columns(const std::vector<IntVector>& cols, std::size_t n) {
  std::vector<IntVector> work = cols;
  IntMatrix h(n, IntVector(n, 0));
  for (std::size_t i = n; i-- > 0;) {
    IntVector piv(n, 0);
    for (auto& c : work) {
      if (c[i] == 0) continue;
      if (piv[i] == 0) {
        std::swap(piv, c);
        continue;
      }
      Integer u, v;
      Integer g = xgcd(piv[i], c[i], u, v);
      Integer a = piv[i] / g, b = c[i] / g;
      IntVector np(n), nc(n);
      for (std::size_t r = 0; r < n; ++r) {
        np[r] = u * piv[r] + v * c[r];
        nc[r] = b * piv[r] - a * c[r];
      }
      piv = std::move(np);
      c = std::move(nc);
    }
    if (piv[i] == 0) throw std::domain_error("hnf_columns: lattice not of full rank");
    if (piv[i] < 0)
      for (auto& x : piv) x = -x;
    for (std::size_t r = 0; r <= i; ++r) h[r][i] = piv[r];
    work.erase(std::remove_if(work.begin(), work.end(),
                              [](const IntVector& v) {
                                for (auto& x : v)
                                  if (x != 0) return false;
                                return true;
                              }),
               work.end());
  }
  reduce_upper(h);
  return h;
}

IntMatrix hnf_rows(const IntMatrix& a_in, IntMatrix* u_out) {
  IntMatrix a = a_in;
  std::size_t m = a.size();
  std::size_t k = m ? a[0].size() : 0;
  IntMatrix u = identity_matrix(m);
  auto row_combine = [&](std::size_t r1, std::size_t r2, const Integer& x, const Integer& y, const Integer& z,
                         const Integer& w) {
    // (row r1, row r2) <- (x*r1 + y*r2, z*r1 + w*r2)
    for (std::size_t j = 0; j < k; ++j) {
      Integer n1 = x * a[r1][j] + y * a[r2][j];
      Integer n2 = z * a[r1][j] + w * a[r2][j];
      a[r1][j] = std::move(n1);
      a[r2][j] = std::move(n2);
    }
    if (u_out) {
      for (std::size_t j = 0; j < m; ++j) {
        Integer n1 = x * u[r1][j] + y * u[r2][j];
        Integer n2 = z * u[r1][j] + w * u[r2][j];
        u[r1][j] = std::move(n1);
        u[r2][j] = std::move(n2);
      }
    }
  };
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < m; ++c) {
    for (std::size_t i = r + 1; i < m; ++i) {
      if (a[i][c] == 0) continue;
      if (a[r][c] == 0) {
        std::swap(a[r], a[i]);
        if (u_out) std::swap(u[r], u[i]);
        continue;
      }
      Integer s, t;
      Integer g = xgcd(a[r][c], a[i][c], s, t);
      Integer p = a[r][c] / g, q = a[i][c] / g;
      row_combine(r, i, s, t, -q, p);
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& x : a[r]) x = -x;
      if (u_out)
        for (auto& x : u[r]) x = -x;
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = fdiv(a[i][c], a[r][c]);
      if (q == 0) continue;
      for (std::size_t j = 0; j < k; ++j) a[i][j] -= q * a[r][j];
      if (u_out)
        for (std::size_t j = 0; j < m; ++j) u[i][j] -= q * u[r][j];
    }
    ++r;
  }
  if (u_out) *u_out = std::move(u);
  a.resize(r);
  return a;
}

IntMatrix integer_left_kernel(const IntMatrix& a) {
  IntMatrix u;
  IntMatrix h = hnf_rows(a, &u);
  IntMatrix ker(u.begin() + static_cast<std::ptrdiff_t>(h.size()), u.end());
  if (ker.empty()) return ker;
  return hnf_rows(ker);
}

SmithForm smith_form(const IntMatrix& a_in) {
  IntMatrix a = a_in;
  std::size_t n = a.size();
  IntMatrix u = identity_matrix(n), v = identity_matrix(n);
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Pivot: smallest nonzero entry in the trailing block.
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a[i][j] != 0 && (pi == n || abs(a[i][j]) < abs(a[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == n) throw std::domain_error("smith_form: singular matrix");
      if (pi != t) {
        std::swap(a[pi], a[t]);
        std::swap(u[pi], u[t]);
      }
      if (pj != t) {
        for (std::size_t i = 0; i < n; ++i) {
          std::swap(a[i][pj], a[i][t]);
          std::swap(v[i][pj], v[i][t]);
        }
      }
      bool dirty = false;
      for (std::size_t i = t + 1; i < n; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = fdiv(a[i][t], a[t][t]);
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        for (std::size_t j = 0; j < n; ++j) u[i][j] -= q * u[t][j];
        if (a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = fdiv(a[t][j], a[t][t]);
        for (std::size_t i = t; i < n; ++i) a[i][j] -= q * a[i][t];
        for (std::size_t i = 0; i < n; ++i) v[i][j] -= q * v[i][t];
        if (a[t][j] != 0) dirty = true;
      }
      if (dirty) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < n && divisible; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            for (std::size_t c = t; c < n; ++c) a[t][c] += a[i][c];
            for (std::size_t c = 0; c < n; ++c) u[t][c] += u[i][c];
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a[t][t] < 0) {
      for (std::size_t j = 0; j < n; ++j) {
        a[t][j] = -a[t][j];
        u[t][j] = -u[t][j];
      }
    }
  }
  SmithForm s;
  for (std::size_t i = 0; i < n; ++i) s.diag.push_back(a[i][i]);
  s.u = std::move(u);
  s.v = std::move(v);
  return s;
}

// ---------------------------------------------------------------------------
// F_p linear algebra

std::vector<std::size_t> fp_rref(FpMatrix& a, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    std::uint64_t inv = invmod(a[r][c], p);
    for (auto& x : a[r]) x = mulmod(x, inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      std::uint64_t f = a[i][c];
      for (std::size_t j = c; j < cols; ++j) a[i][j] = (a[i][j] + p - mulmod(f, a[r][j], p)) % p;
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

FpMatrix fp_kernel(const FpMatrix& a_in, std::uint64_t p) {
  FpMatrix a = a_in;
  std::size_t cols = a.empty() ? 0 : a[0].size();
  auto pivots = fp_rref(a, p);
  std::vector<bool> is_piv(cols, false);
  for (auto c : pivots) is_piv[c] = true;
  FpMatrix ker;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    FpVector v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = (p - a[i][f]) % p;
    ker.push_back(std::move(v));
  }
  return ker;
}

std::size_t fp_rank(FpMatrix a, std::uint64_t p) { return fp_rref(a, p).size(); }

bool fp_solve(const FpMatrix& a, const FpVector& b, FpVector& x, std::uint64_t p) {
  std::size_t rows = a.size();
  std::size_t cols = rows ? a[0].size() : 0;
  FpMatrix aug = a;
  for (std::size_t i = 0; i < rows; ++i) aug[i].push_back(b[i] % p);
  auto pivots = fp_rref(aug, p);
  x.assign(cols, 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == cols) return false;
    x[pivots[i]] = aug[i][cols];
  }
  return true;
}

// ---------------------------------------------------------------------------
// LLL and enumeration

IntMatrix lll_gram(RealMatrix& g, long double delta) {
  std::size_t n = g.size();
  IntMatrix t = identity_matrix(n);
  if (n <= 1) return t;
  RealMatrix mu(n, std::vector<long double>(n, 0));
  std::vector<long double> b(n, 0);
  auto gso_row = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      long double s = g[k][j];
      for (std::size_t i = 0; i < j; ++i) s -= mu[j][i] * mu[k][i] * b[i];
      mu[k][j] = s / b[j];
    }
    long double s = g[k][k];
    for (std::size_t i = 0; i < k; ++i) s -= mu[k][i] * mu[k][i] * b[i];
    b[k] = s;
  };
  // Basis operation b_k <- b_k - q b_j.
  auto sub_row = [&](std::size_t k, std::size_t j, long double q) {
    Integer qi;
    mpz_set_d(qi.get_mpz_t(), static_cast<double>(q));
    long double qd = to_ld(qi);
    for (std::size_t c = 0; c < n; ++c) t[k][c] -= qi * t[j][c];
    long double gkk = g[k][k] - 2 * qd * g[k][j] + qd * qd * g[j][j];
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      g[k][i] -= qd * g[j][i];
      g[i][k] = g[k][i];
    }
    g[k][k] = gkk;
  };
  gso_row(0);
  std::size_t k = 1;
  std::size_t iterations = 0;
  while (k < n && ++iterations < 200000) {
    gso_row(k);
    for (std::size_t j = k; j-- > 0;) {
      if (std::fabs(mu[k][j]) > 0.51L) {
        sub_row(k, j, std::nearbyint(mu[k][j]));
        gso_row(k);
      }
    }
    if (b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
      std::swap(t[k], t[k - 1]);
      std::swap(g[k], g[k - 1]);
      for (std::size_t i = 0; i < n; ++i) std::swap(g[i][k], g[i][k - 1]);
      if (k == 1) gso_row(0);
      k = std::max<std::size_t>(k - 1, 1);
    } else {
      ++k;
    }
  }
  return t;
}

bool fincke_pohst(const RealMatrix& g, long double bound,
                  const std::function<bool(const std::vector<long>&, long double)>& visit, std::size_t max_nodes) {
  std::size_t n = g.size();
  if (n == 0) return true;
  // Cholesky-type decomposition: Q(x) = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2.
  RealMatrix q = g;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      q[j][i] = q[i][j];
      q[i][j] = q[i][j] / q[i][i];
    }
    for (std::size_t k = i + 1; k < n; ++k)
      for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
  }
  long double c = bound * (1 + 1e-12L) + 1e-12L;
  std::vector<long> x(n, 0);
  std::vector<long double> rem(n + 1, 0);
  std::size_t nodes = 0;
  bool stopped = false;
  // Depth-first search from the last coordinate down to the first.
  std::function<void(std::size_t, long double, bool)> rec = [&](std::size_t i, long double remaining, bool all_zero) {
    if (stopped) return;
    long double center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= q[i][j] * static_cast<long double>(x[j]);
    if (remaining < 0) remaining = 0;
    long double r = std::sqrt(remaining / q[i][i]);
    long lo = static_cast<long>(std::ceil(center - r - 1e-9L));
    long hi = static_cast<long>(std::floor(center + r + 1e-9L));
    if (all_zero && lo < 0) lo = 0;
    for (long v = lo; v <= hi; ++v) {
      if (++nodes > max_nodes) {
        stopped = true;
        return;
      }
      long double d = static_cast<long double>(v) - center;
      long double used = q[i][i] * d * d;
      if (used > remaining + 1e-9L * (1 + c)) continue;
      x[i] = v;
      bool zero_here = all_zero && v == 0;
      if (i == 0) {
        if (!zero_here) {
          long double val = c - (remaining - used);
          if (!visit(x, val)) {
            stopped = true;
            x[i] = 0;
            return;
          }
        }
      } else {
        rec(i - 1, remaining - used, zero_here);
        if (stopped) {
          x[i] = 0;
          return;
        }
      }
    }
    x[i] = 0;
  };
  rec(n - 1, c, true);
  return !stopped;
}

RealMatrix gram_of_rows(const RealMatrix& rows) {
  std::size_t n = rows.size();
  RealMatrix g(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      long double s = 0;
      for (std::size_t k = 0; k < rows[i].size(); ++k) s += rows[i][k] * rows[j][k];
      g[i][j] = g[j][i] = s;
    }
  return g;
}

}  // namespace aflt
