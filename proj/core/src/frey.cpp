#include "aflt/frey.hpp"

#include <stdexcept>

#include "aflt/errors.hpp"

namespace aflt {

std::string to_string(Signature s) { return s == Signature::pp2 ? "pp2" : "pp3"; }

Signature parse_signature(const std::string& s) {
  if (s == "pp2") return Signature::pp2;
  if (s == "pp3") return Signature::pp3;
  throw InvalidInput("unknown signature '" + s + "'");
}

CurveModel CurveModel::from_coefficients(const FieldElement& a1, const FieldElement& a2, const FieldElement& a3,
                                         const FieldElement& a4, const FieldElement& a6) {
  CurveModel E;
  E.a1 = a1;
  E.a2 = a2;
  E.a3 = a3;
  E.a4 = a4;
  E.a6 = a6;
  E.b2 = a1 * a1 + a2 * Rational(4);
  E.b4 = a1 * a3 + a4 * Rational(2);
  E.b6 = a3 * a3 + a6 * Rational(4);
  E.b8 = a1 * a1 * a6 + a2 * a6 * Rational(4) - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  E.c4 = E.b2 * E.b2 - E.b4 * Rational(24);
  E.c6 = -E.b2 * E.b2 * E.b2 + E.b2 * E.b4 * Rational(36) - E.b6 * Rational(216);
  E.disc = -E.b2 * E.b2 * E.b8 - E.b4 * E.b4 * E.b4 * Rational(8) - E.b6 * E.b6 * Rational(27) +
           E.b2 * E.b4 * E.b6 * Rational(9);
  if (!E.disc.is_zero()) E.j = E.c4 * E.c4 * E.c4 / E.disc;
  return E;
}

namespace {

void check_triple(const FieldElement& a, const FieldElement& b, const FieldElement& c, int p) {
  if (a.field() != b.field() || a.field() != c.field()) throw FieldMismatch("a, b, c lie in different fields");
  if (p < 2) throw InvalidInput("exponent must be at least 2");
  if (a.is_zero() || b.is_zero() || c.is_zero()) throw DegenerateTriple("abc = 0");
}

void expect(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("closed form disagrees with the model: ") + what);
}

}  // namespace

CurveModel frey_pp2(const FieldElement& a, const FieldElement& b, const FieldElement& c, int p) {
  NumberField k = a.field();
  if (a.field() == b.field() && a.field() == c.field() && a.pow(p) + b.pow(p) != c * c)
    throw EquationNotSatisfied("a^p + b^p != c^2");
  check_triple(a, b, c, p);
  FieldElement ap = a.pow(p), bp = b.pow(p);
  CurveModel E = CurveModel::from_coefficients(k.zero(), c * Rational(4), k.zero(), ap * Rational(4), k.zero());
  if (!E.nonsingular()) throw DegenerateTriple("discriminant vanishes");
  FieldElement ab = (a * a * b).pow(p);
  expect(E.disc == ab * Rational(4096), "disc");
  expect(E.c4 == (bp * Rational(4) + ap) * Rational(64), "c4");
  FieldElement t = bp * Rational(4) + ap;
  expect(*E.j == t * t * t * Rational(64) / ab, "j");
  return E;
}

CurveModel frey_pp3(const FieldElement& a, const FieldElement& b, const FieldElement& c, int p) {
  NumberField k = a.field();
  if (a.field() == b.field() && a.field() == c.field() && a.pow(p) + b.pow(p) != c * c * c)
    throw EquationNotSatisfied("a^p + b^p != c^3");
  check_triple(a, b, c, p);
  FieldElement ap = a.pow(p), bp = b.pow(p);
  CurveModel E = CurveModel::from_coefficients(c * Rational(3), k.zero(), ap, k.zero(), k.zero());
  if (!E.nonsingular()) throw DegenerateTriple("discriminant vanishes");
  FieldElement ab = (a * a * a * b).pow(p);
  FieldElement t = bp * Rational(9) + ap;
  expect(E.disc == ab * Rational(27), "disc");
  expect(E.c4 == c * t * Rational(9), "c4");
  expect(*E.j == c * c * c * t * t * t * Rational(27) / ab, "j");
  return E;
}

namespace {

bool order2_shape(const CurveModel& E) { return E.a1.is_zero() && E.a3.is_zero() && E.a6.is_zero(); }
bool order3_shape(const CurveModel& E) { return E.a2.is_zero() && E.a4.is_zero() && E.a6.is_zero(); }

}  // namespace

TorsionLambda torsion_lambda(const CurveModel& E, int order) {
  TorsionLambda t;
  t.order = order;
  if (order == 2) {
    if (!order2_shape(E)) throw WrongShape("expected Y^2 = X^3 + aX^2 + bX");
    if (E.a4.is_zero()) throw SingularLambda("b = 0");
    t.lambda = E.a2 * E.a2 / E.a4;
    t.mu = t.lambda - Rational(4);
    if (t.mu.is_zero()) throw SingularLambda("lambda = 4");
    FieldElement m1 = t.mu + Rational(1);
    t.j = m1 * m1 * m1 * Rational(256) / t.mu;
  } else if (order == 3) {
    if (!order3_shape(E)) throw WrongShape("expected Y^2 + cXY + dY = X^3");
    if (E.a3.is_zero()) throw SingularLambda("d = 0");
    t.lambda = E.a1 * E.a1 * E.a1 / E.a3;
    t.mu = t.lambda - Rational(27);
    if (t.mu.is_zero()) throw SingularLambda("lambda = 27");
    FieldElement m3 = t.mu + Rational(3);
    t.j = (t.mu + Rational(27)) * m3 * m3 * m3 / t.mu;
  } else {
    throw InvalidInput("torsion order must be 2 or 3");
  }
  if (!E.j || *E.j != t.j) throw std::logic_error("j from mu disagrees with the model");
  return t;
}

MuCheck mu_is_s_unit(const CurveModel& E, const std::vector<Prime>& S) {
  int order;
  if (order2_shape(E) && !E.a4.is_zero())
    order = 2;
  else if (order3_shape(E) && !E.a3.is_zero())
    order = 3;
  else
    throw WrongShape("curve has neither torsion shape");
  TorsionLambda t = torsion_lambda(E, order);
  return {is_s_unit(t.mu, S), t.mu, order};
}

LambdaSplit lambda_ideal_split(const NumberField& k, const FieldElement& lambda, const std::vector<Prime>& S, int i) {
  if (lambda.is_zero()) throw ZeroElement("lambda = 0");
  if (i < 1) throw InvalidInput("i must be positive");
  LambdaSplit out{Ideal::unit(k), Ideal::unit(k), {}};
  for (auto& [P, e] : factor_element(lambda)) {
    bool in_s = false;
    for (auto& Q : S) in_s = in_s || same_prime(P, Q);
    if (in_s) {
      out.J = out.J * P->ideal.pow(e);
      continue;
    }
    int r = ((e % i) + i) % i;
    out.I = out.I * P->ideal.pow((e - r) / i);
    if (r != 0) {
      out.J = out.J * P->ideal.pow(r);
      out.violations.push_back(P);
    }
  }
  return out;
}

bool inertia_p_divides(long v_j, long p) {
  if (p < 5) throw InvalidInput("p must be at least 5");
  return v_j < 0 && v_j % p != 0;
}

long frey_vj_at_S(Signature sig, long v_l, long v_b, long p) {
  long w = sig == Signature::pp2 ? 6 * v_l : 3 * v_l;
  if (v_b < 1) throw InvalidInput("P must divide b");
  if (p <= w) throw ThresholdNotMet("p = " + std::to_string(p) + " is not above " + std::to_string(w));
  return w - p * v_b;
}

ConductorBounds conductor_exponent_bounds(Signature sig, const NumberField& k) {
  int l = sig == Signature::pp2 ? 2 : 3;
  int m = sig == Signature::pp2 ? 6 : 3;
  ConductorBounds out;
  for (auto& P : factor_prime(k, l)) out.at_s.push_back({P, 2 + m * P->e});
  return out;
}

}  // namespace aflt
