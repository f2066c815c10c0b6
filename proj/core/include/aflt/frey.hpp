#pragma once

#include <optional>
#include <vector>

#include "aflt/ideals.hpp"

namespace aflt {

enum class Signature { pp2, pp3 };
std::string to_string(Signature s);
Signature parse_signature(const std::string& s);

/// Long Weierstrass model Y^2 + a1 XY + a3 Y = X^3 + a2 X^2 + a4 X + a6 with
/// its standard invariants.
struct CurveModel {
  FieldElement a1, a2, a3, a4, a6;
  FieldElement b2, b4, b6, b8, c4, c6, disc;
  /// Absent when disc = 0.
  std::optional<FieldElement> j;

  static CurveModel from_coefficients(const FieldElement& a1, const FieldElement& a2, const FieldElement& a3,
                                      const FieldElement& a4, const FieldElement& a6);
  bool nonsingular() const { return !disc.is_zero(); }
  std::vector<FieldElement> coefficients() const { return {a1, a2, a3, a4, a6}; }
};

/// Y^2 = X^3 + 4c X^2 + 4a^p X for a^p + b^p = c^2.
CurveModel frey_pp2(const FieldElement& a, const FieldElement& b, const FieldElement& c, int p);
/// Y^2 + 3c XY + a^p Y = X^3 for a^p + b^p = c^3.
CurveModel frey_pp3(const FieldElement& a, const FieldElement& b, const FieldElement& c, int p);

/// Curves with a rational point of order 2 (Y^2 = X^3 + aX^2 + bX, lambda =
/// a^2/b, mu = lambda - 4) or 3 (Y^2 + cXY + dY = X^3, lambda = c^3/d, mu =
/// lambda - 27). j is recomputed from mu and checked against the model.
struct TorsionLambda {
  FieldElement lambda, mu, j;
  int order = 2;
};
TorsionLambda torsion_lambda(const CurveModel& E, int order);

struct MuCheck {
  bool s_unit = false;
  FieldElement mu;
  int order = 2;
};
/// Detects the torsion shape of E and tests whether mu is an S-unit.
MuCheck mu_is_s_unit(const CurveModel& E, const std::vector<Prime>& S);

/// (lambda) = I^i J with J supported on S together with the residues mod i
/// of the exponents off S. `violations` lists primes off S whose exponent is
/// not divisible by i.
struct LambdaSplit {
  Ideal I, J;
  std::vector<Prime> violations;
};
LambdaSplit lambda_ideal_split(const NumberField& k, const FieldElement& lambda, const std::vector<Prime>& S, int i);

/// p divides the order of the inertia image at q exactly when v_q(j) < 0 and
/// p does not divide v_q(j). Requires p >= 5.
bool inertia_p_divides(long v_j, long p);

/// v(j) of the Frey curve at a prime P above 2 (pp2) or 3 (pp3) dividing b:
/// 6 v_P(2) - p v_P(b), resp. 3 v_P(3) - p v_P(b). Needs p > 6 v_P(2), resp.
/// p > 3 v_P(3), and v_P(b) >= 1.
long frey_vj_at_S(Signature sig, long v_l, long v_b, long p);

struct ConductorBound {
  Prime prime;
  int bound = 0;
};
/// Upper bounds on the conductor exponent of the Frey curve at each prime of
/// S_K; primes outside S_K have exponent at most `other`.
struct ConductorBounds {
  std::vector<ConductorBound> at_s;
  int other = 1;
};
ConductorBounds conductor_exponent_bounds(Signature sig, const NumberField& k);

}  // namespace aflt
