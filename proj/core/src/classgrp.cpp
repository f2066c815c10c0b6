#include "aflt/classgrp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "aflt/geometry.hpp"
#include "aflt/unitgrp.hpp"

namespace aflt {

namespace {

constexpr long double kProofPoints = 3e7L;

long double ball_volume_count(int n, long double t2, const Integer& disc, const Integer& norm) {
  long double vol = std::pow(static_cast<long double>(M_PI), n / 2.0L) / std::tgamma(n / 2.0L + 1);
  return vol * std::pow(t2, n / 2.0L) / std::sqrt(std::fabs(to_ld(disc))) / to_ld(norm);
}

// First vector of an LLL-reduced basis of the ideal lattice.
FieldElement short_element(const Ideal& I) {
  NumberField k = I.field();
  auto lat = ideal_lattice(I);
  RealMatrix g = t2_gram(k, lat);
  IntMatrix t = lll_gram(g);
  std::size_t n = lat.size();
  std::size_t best = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (g[i][i] < g[best][best]) best = i;
  IntVector c(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t d = 0; d < n; ++d) c[d] += t[best][j] * lat[j][d];
  return k.from_basis(c) * Rational(1) / k.from_integer(I.den());
}

// Returns J = f * I integral of small norm.
Ideal reduce_tracked(const Ideal& I, FieldElement& f) {
  NumberField k = I.field();
  f = k.one();
  Ideal J = I;
  if (!J.is_integral()) {
    f = k.from_integer(J.den());
    J = J * f;
  }
  for (int round = 0; round < 2; ++round) {
    FieldElement a = short_element(J);
    Ideal Jp = Ideal::principal(a) * J.inverse();
    // After the second round J = (b / a) f0 I.
    f = a / f;
    J = Jp;
  }
  return J;
}

struct Harvest {
  NumberField k;
  std::vector<Prime> fb;
  std::map<const PrimeIdeal*, std::size_t> index;
  std::vector<long> rational_primes;
  long bound = 0;
  std::set<std::vector<long>> seen;
  std::vector<std::vector<long>> rels;

  // FB exponent vector of the integral element x, if (x) factors over FB
  // (with `extra` also allowed; its exponent goes to *extra_v).
  bool factor(const FieldElement& x, std::vector<long>& v, const PrimeIdeal* extra = nullptr,
              int* extra_v = nullptr) const {
    Integer nm = abs(x.norm().get_num());
    v.assign(fb.size(), 0);
    if (extra_v) *extra_v = 0;
    std::vector<Integer> ps;
    for (long p : rational_primes) {
      if (nm == 1) break;
      if (nm % p == 0) {
        ps.emplace_back(p);
        while (nm % p == 0) nm /= p;
      }
    }
    if (extra && nm != 1 && nm % extra->p == 0) {
      ps.push_back(extra->p);
      while (nm % extra->p == 0) nm /= extra->p;
    }
    if (nm != 1) return false;
    for (auto& p : ps) {
      for (auto& P : factor_prime(k, p)) {
        int e = valuation(x, *P);
        if (e == 0) continue;
        if (extra && P.get() == extra) {
          *extra_v = e;
          continue;
        }
        auto it = index.find(P.get());
        if (it == index.end()) return false;
        v[it->second] = e;
      }
    }
    return true;
  }

  bool add(std::vector<long> v) {
    bool zero = std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
    if (zero) return false;
    for (auto& x : v)
      if (x != 0) {
        if (x < 0)
          for (auto& y : v) y = -y;
        break;
      }
    if (!seen.insert(v).second) return false;
    rels.push_back(std::move(v));
    return true;
  }

  // Short elements of the ideal lattice; keeps smooth ones.
  std::size_t harvest(const Ideal& I, std::size_t want, std::size_t nodes) {
    std::size_t got = 0;
    long double t2 = k.degree() * std::pow(to_ld(I.norm().get_num()), 2.0L / k.degree()) * 2;
    for (int round = 0; round < 3 && got < want; ++round, t2 *= 2) {
      enumerate_short(
          k, ideal_lattice(I), t2,
          [&](const IntVector& c, long double) {
            std::vector<long> v;
            if (factor(k.from_basis(c), v) && add(v)) ++got;
            return got < want;
          },
          nodes);
    }
    return got;
  }
};

std::size_t fp_rank_of(const std::vector<std::vector<long>>& rels, std::size_t cols) {
  const std::uint64_t p = 2147483629ULL;
  FpMatrix a;
  for (auto& r : rels) {
    FpVector row(cols);
    for (std::size_t j = 0; j < cols; ++j) row[j] = static_cast<std::uint64_t>(((r[j] % (long)p) + (long)p) % (long)p);
    a.push_back(row);
  }
  return fp_rank(a, p);
}

bool is_cm_field(const NumberField& k) {
  if (!k.is_extension() || k.r1() != 0 || !k.base().totally_real()) return false;
  if (k.kind() == ExtensionKind::omega) return true;
  if (k.kind() != ExtensionKind::sqrt) return false;
  for (int s : k.radicand().signs())
    if (s > 0) return false;
  return true;
}

// x * conj(x) for x in a quadratic extension generated by omega or sqrt(beta).
FieldElement relative_norm(const FieldElement& x) {
  NumberField L = x.field();
  auto c = L.relative_coords(x);
  FieldElement c0 = c[0], c1 = c.size() > 1 ? c[1] : L.base().zero();
  if (L.kind() == ExtensionKind::omega) return c0 * c0 - c0 * c1 + c1 * c1;
  return c0 * c0 - L.radicand() * c1 * c1;
}

// Norm to the base field of an ideal of a CM quadratic extension: the ideal
// generated by element norms, grown until its absolute norm is right.
Ideal relative_norm(const Ideal& J) {
  NumberField L = J.field();
  NumberField K = L.base();
  Rational target = J.norm();
  auto basis = J.basis();
  std::vector<FieldElement> gens{K.from_integer(J.min_integer()).pow(2)};
  for (auto& b : basis) gens.push_back(relative_norm(b));
  Ideal I = Ideal::generated(K, gens);
  SplitMix64 rng(17);
  for (int it = 0; it < 200 && I.norm() != target; ++it) {
    FieldElement x = L.zero();
    for (auto& b : basis) x += b * Rational(rng.range(-3, 3));
    if (x.is_zero()) continue;
    gens.push_back(relative_norm(x));
    I = Ideal::generated(K, gens);
  }
  if (I.norm() != target) throw Uncertified("relative norm of an ideal not determined");
  return I;
}

// Looks for x in J with |N(x)| = N(J) and T2(x) <= t2: 1 none, 0 found, -1 too large.
int search_norm(const Ideal& J, long double t2, FieldElement& gen) {
  NumberField k = J.field();
  Integer nm = J.norm().get_num();
  if (ball_volume_count(k.degree(), t2, k.disc(), nm) > kProofPoints) return -1;
  long double nml = to_ld(nm);
  bool found = false;
  bool complete = enumerate_short(
      k, ideal_lattice(J), t2,
      [&](const IntVector& c, long double) {
        long double an = approx_abs_norm(k, c);
        if (std::fabs(an - nml) > 1e-6L * nml + 0.5L) return true;
        FieldElement x = k.from_basis(c);
        if (abs(x.norm()) == Rational(nm)) {
          gen = x;
          found = true;
          return false;
        }
        return true;
      },
      static_cast<std::size_t>(kProofPoints * 10));
  if (found) return 0;
  return complete ? 1 : -1;
}

// a * prod u_i^(2 m_i) with the smallest trace among m near the real
// minimizer (a totally positive).
FieldElement min_trace_square_class(const FieldElement& a, const std::vector<FieldElement>& units,
                                    const std::vector<std::vector<long double>>& logs) {
  std::size_t r = units.size();
  if (r == 0) return a;
  NumberField K = a.field();
  auto lv = a.log_embeddings();
  std::size_t m = lv.size();
  long double mean = std::log(std::fabs(to_ld(a.norm()))) / K.degree();
  RealMatrix g(r, std::vector<long double>(r));
  std::vector<long double> b(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      long double acc = 0;
      for (std::size_t t = 0; t < m; ++t) acc += logs[i][t] * logs[j][t];
      g[i][j] = acc;
    }
    long double acc = 0;
    for (std::size_t t = 0; t < m; ++t) acc += logs[i][t] * (mean - lv[t]);
    b[i] = acc;
  }
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) {
      long double f = g[j][i] / g[i][i];
      for (std::size_t t = i; t < r; ++t) g[j][t] -= f * g[i][t];
      b[j] -= f * b[i];
    }
  std::vector<long double> c(r);
  for (std::size_t i = r; i-- > 0;) {
    long double acc = b[i];
    for (std::size_t t = i + 1; t < r; ++t) acc -= g[i][t] * c[t];
    c[i] = acc / g[i][i];
  }
  // c solves log(a) + sum c_i log(u_i) ~ mean; we need c_i = 2 m_i.
  std::vector<long> base(r);
  for (std::size_t i = 0; i < r; ++i) base[i] = static_cast<long>(std::floor(c[i] / 2));
  std::vector<long> best;
  long double best_tr = 0;
  std::size_t total = 1;
  for (std::size_t i = 0; i < r; ++i) total *= 3;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<long> mm(r);
    std::size_t z = idx;
    for (std::size_t i = 0; i < r; ++i) {
      mm[i] = base[i] + static_cast<long>(z % 3) - (z % 3 == 2 ? 3 : 0);
      z /= 3;
    }
    long double tr = 0;
    for (std::size_t t = 0; t < m; ++t) {
      long double l = lv[t];
      for (std::size_t i = 0; i < r; ++i) l += 2 * mm[i] * logs[i][t];
      tr += std::exp(l);
    }
    if (best.empty() || tr < best_tr) {
      best = mm;
      best_tr = tr;
    }
  }
  FieldElement out = a;
  for (std::size_t i = 0; i < r; ++i)
    if (best[i] != 0) out *= units[i].pow(2 * best[i]);
  return out;
}

// In a CM field a generator x of J has x * conj(x) = a totally positive
// generator of N_{L/K}(J), and then T2(x) = 2 Tr(a). Only a modulo squares
// of units matters, so finitely many exact T2 values need checking.
int cm_principal_search(const Ideal& J, FieldElement& gen) {
  NumberField L = J.field();
  NumberField K = L.base();
  Ideal N = relative_norm(J);
  ClassGroup clk = class_group(K);
  std::optional<FieldElement> a0 = clk.generator(N);
  if (!a0) {
    if (clk.certified && !clk.is_principal(N)) return 1;
    return -1;
  }
  SUnitGroup U;
  try {
    U = unit_group(K);
  } catch (const Error&) {
    return -1;
  }
  if (!U.units_certified && !U.saturated_at(2)) return -1;
  const auto& units = U.fundamental_units;
  std::vector<std::vector<long double>> logs;
  for (auto& u : units) logs.push_back(u.log_embeddings());
  std::vector<FieldElement> signs_units{-K.one()};
  for (auto& u : units) signs_units.push_back(u);
  bool undecided = false;
  std::size_t combos = std::size_t{1} << signs_units.size();
  for (std::size_t mask = 0; mask < combos; ++mask) {
    FieldElement cand = *a0;
    for (std::size_t i = 0; i < signs_units.size(); ++i)
      if (mask >> i & 1) cand *= signs_units[i];
    if (!cand.is_totally_positive()) continue;
    cand = min_trace_square_class(cand, units, logs);
    long double t2 = 2 * to_ld(cand.trace()) * (1 + 1e-9L);
    int res = search_norm(J, t2, gen);
    if (res == 0) return 0;
    if (res < 0) undecided = true;
  }
  return undecided ? -1 : 1;
}

int principal_search(const Ideal& J, FieldElement& gen) {
  NumberField k = J.field();
  int n = k.degree();
  Integer nm = J.norm().get_num();
  if (nm == 1) {
    gen = k.one();
    return 0;
  }
  if (is_cm_field(k)) {
    try {
      int res = cm_principal_search(J, gen);
      if (res >= 0) return res;
    } catch (const Error&) {
    }
  }
  std::vector<std::vector<long double>> logs;
  if (k.r1() + k.r2() > 1) {
    SUnitGroup U;
    try {
      U = unit_group(k);
    } catch (const Error&) {
      return -1;
    }
    for (auto& u : U.fundamental_units) logs.push_back(u.log_embeddings());
  }
  std::size_t m = static_cast<std::size_t>(k.r1() + k.r2());
  long double base = std::log(to_ld(nm)) / n;
  long double t2 = 0;
  for (std::size_t j = 0; j < m; ++j) {
    long double c = base;
    for (auto& l : logs) c += std::fabs(l[j]) / 2;
    t2 += (static_cast<int>(j) < k.r1() ? 1 : 2) * std::exp(2 * c);
  }
  t2 *= 1.000001L;
  return search_norm(J, t2, gen);
}

// Product of ideals with exponents, reduced along the way to keep norms small.
Ideal class_product(const NumberField& k, const std::vector<std::pair<Ideal, Integer>>& terms) {
  Ideal acc = Ideal::unit(k);
  FieldElement f;
  for (auto& [I, e0] : terms) {
    if (e0 == 0) continue;
    Ideal b = e0 < 0 ? reduce_tracked(I.inverse(), f) : I;
    Integer e = abs(e0);
    Ideal sq = b;
    while (e > 0) {
      if (e % 2 == 1) acc = reduce_tracked(acc * sq, f);
      e /= 2;
      if (e > 0) sq = reduce_tracked(sq * sq, f);
    }
  }
  return acc;
}

// Relation matrix after eliminating columns that have a +-1 pivot. The
// class group is Z^cols / rows; eliminated primes are expressed through
// their pivot relations.
struct Core {
  std::vector<std::size_t> cols;
  std::vector<std::pair<std::size_t, std::vector<long>>> pivots;
  IntMatrix rows;
};

Core eliminate(const std::vector<std::vector<long>>& rels, std::size_t nfb) {
  constexpr long kLimit = 1L << 30;
  std::vector<std::vector<long>> R = rels;
  std::vector<char> alive(R.size(), 1), kept(nfb, 1);
  Core core;
  for (std::size_t j = nfb; j-- > 0;) {
    std::size_t best = R.size(), bw = 0;
    for (std::size_t i = 0; i < R.size(); ++i) {
      if (!alive[i] || (R[i][j] != 1 && R[i][j] != -1)) continue;
      std::size_t w = 0;
      for (long x : R[i]) w += x != 0;
      if (best == R.size() || w < bw) {
        best = i;
        bw = w;
      }
    }
    if (best == R.size()) continue;
    const std::vector<long> piv = R[best];
    long s = piv[j];
    std::vector<std::pair<std::size_t, std::vector<long>>> updates;
    bool ok = true;
    for (std::size_t i = 0; i < R.size() && ok; ++i) {
      if (!alive[i] || i == best || R[i][j] == 0) continue;
      long f = R[i][j] * s;
      std::vector<long> nr = R[i];
      for (std::size_t t = 0; t < nfb; ++t) {
        if (piv[t] == 0) continue;
        nr[t] -= f * piv[t];
        if (nr[t] > kLimit || nr[t] < -kLimit) {
          ok = false;
          break;
        }
      }
      updates.emplace_back(i, std::move(nr));
    }
    if (!ok) continue;
    for (auto& [i, nr] : updates) R[i] = std::move(nr);
    alive[best] = 0;
    kept[j] = 0;
    core.pivots.emplace_back(j, piv);
  }
  for (std::size_t j = 0; j < nfb; ++j)
    if (kept[j]) core.cols.push_back(j);
  for (std::size_t i = 0; i < R.size(); ++i) {
    if (!alive[i]) continue;
    IntVector row;
    bool nz = false;
    for (std::size_t j : core.cols) {
      row.emplace_back(R[i][j]);
      nz |= R[i][j] != 0;
    }
    if (nz) core.rows.push_back(row);
  }
  return core;
}

ClassGroup compute_class_group(const NumberField& k, const ClassGroupOptions& opt) {
  ClassGroup G;
  G.field = k;
  long double M = minkowski_bound(k);
  G.minkowski_bound = Rational(static_cast<long>(std::ceil(M * 1e6L)), 1000000);
  G.minkowski_bound.canonicalize();
  auto give_up = [&](const std::string& why) {
    G.certified = false;
    G.structure_known = false;
    G.invariants.clear();
    G.generators.clear();
    G.witnesses.clear();
    if (opt.asserted_order) {
      G.order = *opt.asserted_order;
      G.asserted = true;
      G.status = "asserted, unverified";
    } else {
      G.order = 0;
      G.status = "uncertified: " + why;
    }
    return G;
  };
  if (M > opt.max_factor_norm) return give_up("Minkowski bound exceeds the factor base budget");

  Harvest H;
  H.k = k;
  H.bound = static_cast<long>(std::floor(M));
  for (long p : primes_up_to(std::max(2L, H.bound))) {
    if (p > H.bound) break;
    H.rational_primes.push_back(p);
    for (auto& P : factor_prime(k, p))
      if (P->norm() <= H.bound) H.fb.push_back(P);
  }
  std::sort(H.fb.begin(), H.fb.end(), prime_less);
  for (std::size_t i = 0; i < H.fb.size(); ++i) H.index[H.fb[i].get()] = i;
  G.factor_base = H.fb;
  std::size_t nfb = H.fb.size();
  if (nfb == 0) {
    G.order = 1;
    G.certified = true;
    G.structure_known = true;
    G.status = "certified";
    return G;
  }
  std::size_t max_rel = opt.max_relations ? opt.max_relations : std::max<std::size_t>(400, 6 * nfb + 50);

  // Relations from the decomposition of each rational prime.
  for (long p : H.rational_primes) {
    std::vector<long> v(nfb, 0);
    bool all = true;
    for (auto& P : factor_prime(k, p)) {
      auto it = H.index.find(P.get());
      if (it == H.index.end()) {
        all = false;
        break;
      }
      v[it->second] = P->e;
    }
    if (all) H.add(v);
  }
  // Relations from short elements of each factor base prime.
  for (auto& P : H.fb) {
    if (H.rels.size() >= max_rel) break;
    H.harvest(P->ideal, 2, 20000);
  }
  SplitMix64 rng(0x5eed);
  std::size_t rank = fp_rank_of(H.rels, nfb);
  int extra_rounds = 0;
  while ((rank < nfb || extra_rounds < 2) && H.rels.size() < max_rel) {
    for (std::size_t t = 0; t < nfb + 4 && H.rels.size() < max_rel; ++t) {
      const Prime& a = H.fb[rng.next() % nfb];
      const Prime& b = H.fb[rng.next() % nfb];
      const Prime& c = H.fb[rng.next() % nfb];
      H.harvest(a->ideal * b->ideal * c->ideal, 2, 20000);
    }
    std::size_t nr = fp_rank_of(H.rels, nfb);
    if (nr == rank && rank == nfb) ++extra_rounds;
    rank = nr;
  }
  G.relations = H.rels.size();
  if (rank < nfb) return give_up("relation budget exhausted before full rank");

  IntMatrix vinv;
  SmithForm snf;
  Core core;
  for (int attempt = 0; attempt < 64; ++attempt) {
    core = eliminate(H.rels, nfb);
    std::size_t c = core.cols.size();
    IntMatrix sq;
    if (c > 0) {
      IntMatrix h = hnf_rows(core.rows);
      for (auto& row : h)
        if (std::any_of(row.begin(), row.end(), [](const Integer& x) { return x != 0; })) sq.push_back(row);
      if (sq.size() != c) return give_up("relation matrix not of full rank");
      snf = smith_form(sq);
      RatMatrix vi = inverse(to_rational(snf.v));
      vinv.assign(c, IntVector(c));
      for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) vinv[i][j] = vi[i][j].get_num();
    } else {
      snf = SmithForm{};
      vinv.clear();
    }
    Integer order = 1;
    for (auto& d : snf.diag) order *= abs(d);
    // The true group is a quotient of the computed one; it is the whole
    // thing when every element of prime order is a nonprincipal class.
    bool undecided = false, grew = false;
    for (auto& [lz, mult] : factor_integer(order)) {
      long l = lz.get_si();
      std::vector<std::size_t> T;
      for (std::size_t i = 0; i < c; ++i)
        if (abs(snf.diag[i]) % l == 0) T.push_back(i);
      std::size_t t = T.size();
      std::size_t total = 1;
      for (std::size_t i = 0; i < t; ++i) total *= static_cast<std::size_t>(l);
      if (total > 5000) {
        undecided = true;
        break;
      }
      std::vector<long> coef(t);
      for (std::size_t idx = 1; idx < total && !grew; ++idx) {
        std::size_t z = idx;
        for (std::size_t i = 0; i < t; ++i) {
          coef[i] = static_cast<long>(z % static_cast<std::size_t>(l));
          z /= static_cast<std::size_t>(l);
        }
        std::size_t first = 0;
        while (coef[first] == 0) ++first;
        if (coef[first] != 1) continue;
        IntVector x(c, 0);
        for (std::size_t i = 0; i < t; ++i) {
          Integer yi = Integer(coef[i]) * (abs(snf.diag[T[i]]) / l);
          for (std::size_t j = 0; j < c; ++j) x[j] += yi * vinv[T[i]][j];
        }
        std::vector<std::pair<Ideal, Integer>> terms;
        for (std::size_t j = 0; j < c; ++j) terms.emplace_back(H.fb[core.cols[j]]->ideal, x[j]);
        Ideal J = class_product(k, terms);
        FieldElement g;
        int res = principal_search(J, g);
        if (res == 0) {
          std::vector<long> rel(nfb, 0);
          bool fits = true;
          for (std::size_t j = 0; j < c; ++j) {
            if (!x[j].fits_slong_p()) fits = false;
            else rel[core.cols[j]] = x[j].get_si();
          }
          if (!fits) {
            undecided = true;
            break;
          }
          H.add(rel);
          grew = true;
        } else if (res < 0) {
          undecided = true;
        }
      }
      if (grew || undecided) break;
    }
    if (grew) continue;
    G.order = order;
    G.structure_known = true;
    G.certified = !undecided;
    G.status = undecided ? "uncertified: nonprincipality not proven" : "certified";
    break;
  }
  if (G.status.empty()) return give_up("too many principal classes discovered");
  if (!G.certified && opt.asserted_order) {
    if (*opt.asserted_order != G.order) return give_up("computed order disagrees with the asserted one");
  }

  std::size_t c = core.cols.size();
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < c; ++i)
    if (abs(snf.diag[i]) != 1) keep.push_back(i);
  for (std::size_t i : keep) G.invariants.push_back(abs(snf.diag[i]));
  std::size_t m = keep.size();
  std::vector<IntVector> full(nfb);
  for (std::size_t t = 0; t < c; ++t) {
    IntVector d;
    for (std::size_t i : keep) d.push_back(fmod(snf.v[t][i], abs(snf.diag[i])));
    full[core.cols[t]] = d;
  }
  // An eliminated prime j with pivot relation r (r_j = +-1) satisfies
  // [P_j] = -r_j * sum_{i != j} r_i [P_i].
  for (auto it = core.pivots.rbegin(); it != core.pivots.rend(); ++it) {
    auto& [j, r] = *it;
    IntVector d(m, 0);
    for (std::size_t i = 0; i < nfb; ++i) {
      if (i == j || r[i] == 0) continue;
      for (std::size_t t = 0; t < m; ++t) d[t] -= r[j] * r[i] * full[i][t];
    }
    for (std::size_t t = 0; t < m; ++t) d[t] = fmod(d[t], G.invariants[t]);
    full[j] = d;
  }
  G.fb_dlog = full;
  for (std::size_t i : keep) {
    std::vector<std::pair<Ideal, Integer>> terms;
    for (std::size_t j = 0; j < c; ++j) terms.emplace_back(H.fb[core.cols[j]]->ideal, vinv[i][j]);
    Ideal g = class_product(k, terms);
    G.generators.push_back(g);
    FieldElement f, w;
    std::optional<FieldElement> witness;
    Ideal gd = g.pow(Integer(abs(snf.diag[i])).get_si());
    Ideal red = reduce_tracked(gd, f);
    if (principal_search(red, w) == 0) witness = w / f;
    G.witnesses.push_back(witness);
  }
  return G;
}

}  // namespace

long double minkowski_bound(const NumberField& k) {
  int n = k.degree();
  long double m = std::sqrt(std::fabs(to_ld(k.disc())));
  for (int i = 1; i <= n; ++i) m *= static_cast<long double>(i) / n;
  m *= std::pow(4.0L / static_cast<long double>(M_PI), static_cast<long double>(k.r2()));
  return m;
}

Ideal reduce_ideal(const Ideal& I) {
  FieldElement f;
  return reduce_tracked(I, f);
}

IntVector ClassGroup::dlog(const Ideal& I) const {
  if (!structure_known) throw Uncertified("class group structure unknown");
  std::size_t c = invariants.size();
  IntVector out(c, 0);
  if (c == 0) return out;
  std::map<const PrimeIdeal*, std::size_t> index;
  for (std::size_t i = 0; i < factor_base.size(); ++i) index[factor_base[i].get()] = i;
  for (auto& [P, e] : factor_ideal(I)) {
    IntVector d;
    auto it = index.find(P.get());
    if (it != index.end()) {
      d = fb_dlog[it->second];
    } else {
      // [P] = -sum of the cofactor classes of an element of P.
      Harvest H;
      H.k = field;
      H.fb = factor_base;
      H.index = index;
      long bound = 0;
      for (auto& Q : factor_base) bound = std::max(bound, Q->p.get_si());
      H.rational_primes = primes_up_to(std::max(2L, bound));
      bool done = false;
      long double t2 = field.degree() * std::pow(to_ld(P->norm()), 2.0L / field.degree()) * 2;
      for (int round = 0; round < 8 && !done; ++round, t2 *= 4) {
        enumerate_short(
            field, ideal_lattice(P->ideal), t2,
            [&](const IntVector& cc, long double) {
              std::vector<long> v;
              int ev = 0;
              if (!H.factor(field.from_basis(cc), v, P.get(), &ev) || ev != 1) return true;
              d.assign(c, 0);
              for (std::size_t j = 0; j < v.size(); ++j)
                for (std::size_t t = 0; t < c; ++t) d[t] -= v[j] * fb_dlog[j][t];
              done = true;
              return false;
            },
            500000);
      }
      if (!done) throw Uncertified("no smooth element found for " + P->str());
    }
    for (std::size_t t = 0; t < c; ++t) out[t] += e * d[t];
  }
  for (std::size_t t = 0; t < c; ++t) out[t] = fmod(out[t], invariants[t]);
  return out;
}

bool ClassGroup::is_principal(const Ideal& I) const {
  auto d = dlog(I);
  return std::all_of(d.begin(), d.end(), [](const Integer& x) { return x == 0; });
}

std::optional<FieldElement> ClassGroup::generator(const Ideal& I) const {
  FieldElement f, g;
  Ideal J = reduce_tracked(I, f);
  if (principal_search(J, g) == 0) return g / f;
  return std::nullopt;
}

ClassGroup class_group(const NumberField& k, const ClassGroupOptions& opt) {
  std::string key = "class-group:" + std::to_string(opt.max_relations) + ":" +
                    std::to_string(static_cast<long>(opt.max_factor_norm)) + ":" +
                    (opt.asserted_order ? opt.asserted_order->get_str() : std::string("-"));
  auto p = k.cached<ClassGroup>(key, [&] { return std::make_shared<ClassGroup>(compute_class_group(k, opt)); });
  return *p;
}

NarrowClassNumber narrow_class_number(const NumberField& k, const ClassGroupOptions& opt) {
  if (!k.totally_real()) throw InvalidInput("narrow class number needs a totally real field");
  ClassGroup cl = class_group(k, opt);
  SUnitGroup U = unit_group(k);
  int r1 = k.r1();
  FpMatrix signs;
  auto row = [&](const FieldElement& u) {
    FpVector v;
    for (int s : u.signs()) v.push_back(s < 0 ? 1 : 0);
    signs.push_back(v);
  };
  row(-k.one());
  for (auto& u : U.fundamental_units) row(u);
  std::size_t rk = fp_rank(signs, 2);
  NarrowClassNumber out;
  out.h_plus = cl.order * ipow(2, static_cast<unsigned long>(r1 - static_cast<int>(rk)));
  out.two_divides = out.h_plus % 2 == 0;
  out.certified = cl.certified && U.saturated_at(2);
  return out;
}

bool s_class_torsion_trivial(const NumberField& k, const std::vector<Prime>& S, int i,
                             const ClassGroupOptions& opt) {
  ClassGroup cl = class_group(k, opt);
  if ((cl.certified || cl.asserted) && cl.order != 0 && gcd(cl.order, Integer(i)) == 1) return true;
  if (!cl.certified) throw Uncertified("class group not certified");
  std::size_t c = cl.invariants.size();
  IntMatrix A;
  for (std::size_t t = 0; t < c; ++t) {
    IntVector r(c, 0);
    r[t] = cl.invariants[t];
    A.push_back(r);
  }
  for (auto& P : S) A.push_back(cl.dlog(P->ideal));
  IntMatrix h = hnf_rows(A);
  IntMatrix sq;
  for (auto& r : h)
    if (std::any_of(r.begin(), r.end(), [](const Integer& x) { return x != 0; })) sq.push_back(r);
  auto snf = smith_form(sq);
  for (auto& d : snf.diag)
    if (abs(d) % i == 0) return false;
  return true;
}

}  // namespace aflt
