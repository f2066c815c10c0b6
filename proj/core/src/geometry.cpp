#include "aflt/geometry.hpp"

#include <cmath>

namespace aflt {

namespace {

// Embeddings of the integral basis, memoized on the field.
struct BasisEmbeddings {
  std::vector<std::vector<std::complex<long double>>> w;  // w[i][j] = sigma_j(w_i)
};

const BasisEmbeddings& basis_embeddings(const NumberField& k) {
  auto p = k.cached<BasisEmbeddings>("basis-embeddings", [&] {
    auto b = std::make_shared<BasisEmbeddings>();
    for (int i = 0; i < k.degree(); ++i) b->w.push_back(k.basis_element(i).embeddings());
    return b;
  });
  return *p;
}

}  // namespace

std::vector<std::complex<long double>> approx_embeddings(const NumberField& k, const IntVector& c) {
  const auto& be = basis_embeddings(k);
  std::size_t m = static_cast<std::size_t>(k.r1() + k.r2());
  std::vector<std::complex<long double>> out(m, 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    long double ci = to_ld(c[i]);
    for (std::size_t j = 0; j < m; ++j) out[j] += ci * be.w[i][j];
  }
  return out;
}

RealMatrix t2_gram(const NumberField& k, const std::vector<IntVector>& basis) {
  std::size_t n = basis.size();
  std::size_t r1 = static_cast<std::size_t>(k.r1());
  std::vector<std::vector<std::complex<long double>>> e;
  for (auto& b : basis) e.push_back(approx_embeddings(k, b));
  RealMatrix g(n, std::vector<long double>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      long double s = 0;
      for (std::size_t t = 0; t < e[i].size(); ++t) {
        long double v = (e[i][t] * std::conj(e[j][t])).real();
        s += t < r1 ? v : 2 * v;
      }
      g[i][j] = g[j][i] = s;
    }
  return g;
}

bool enumerate_short(const NumberField& k, const std::vector<IntVector>& basis, long double bound,
                     const std::function<bool(const IntVector&, long double)>& visit, std::size_t max_nodes) {
  RealMatrix g = t2_gram(k, basis);
  IntMatrix t = lll_gram(g);
  std::size_t n = basis.size();
  std::size_t dim = basis.empty() ? 0 : basis[0].size();
  std::vector<IntVector> red(n, IntVector(dim, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (t[i][j] != 0)
        for (std::size_t c = 0; c < dim; ++c) red[i][c] += t[i][j] * basis[j][c];
  // Recompute the Gram matrix of the reduced basis directly for accuracy.
  g = t2_gram(k, red);
  return fincke_pohst(
      g, bound,
      [&](const std::vector<long>& x, long double val) {
        IntVector c(dim, 0);
        for (std::size_t i = 0; i < n; ++i)
          if (x[i] != 0)
            for (std::size_t j = 0; j < dim; ++j) c[j] += x[i] * red[i][j];
        return visit(c, val);
      },
      max_nodes);
}

std::vector<IntVector> ideal_lattice(const Ideal& I) {
  const IntMatrix& h = I.hnf();
  std::size_t n = h.size();
  std::vector<IntVector> cols(n, IntVector(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cols[j][i] = h[i][j];
  return cols;
}

long double approx_abs_norm(const NumberField& k, const IntVector& c) {
  auto e = approx_embeddings(k, c);
  long double lg = 0;
  std::size_t r1 = static_cast<std::size_t>(k.r1());
  for (std::size_t j = 0; j < e.size(); ++j) lg += (j < r1 ? 1 : 2) * std::log(std::abs(e[j]));
  return std::exp(lg);
}

std::optional<FieldElement> find_generator(const Ideal& I, long double max_t2, std::size_t max_nodes) {
  if (!I.is_integral()) throw InvalidInput("find_generator expects an integral ideal");
  NumberField k = I.field();
  Integer nm = I.norm().get_num();
  if (nm == 1) return k.one();
  long double nml = to_ld(nm);
  int n = k.degree();
  long double bound = n * std::pow(nml, 2.0L / n) * 1.5L;
  std::optional<FieldElement> found;
  auto lat = ideal_lattice(I);
  for (;;) {
    long double b = std::min(bound, max_t2);
    enumerate_short(
        k, lat, b,
        [&](const IntVector& c, long double) {
          long double an = approx_abs_norm(k, c);
          if (std::fabs(an - nml) > 1e-6L * nml + 0.5L) return true;
          FieldElement x = k.from_basis(c);
          if (abs(x.norm()) == Rational(nm)) {
            found = x;
            return false;
          }
          return true;
        },
        max_nodes);
    if (found || b >= max_t2) break;
    bound *= 4;
  }
  return found;
}

long double t2_norm(const FieldElement& x) {
  auto e = x.embeddings();
  NumberField k = x.field();
  long double s = 0;
  for (std::size_t j = 0; j < e.size(); ++j) s += (static_cast<int>(j) < k.r1() ? 1 : 2) * std::norm(e[j]);
  return s;
}

}  // namespace aflt
