#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aflt/unitgrp.hpp"

namespace aflt {

/// a*x + b*y = 1 with x, y S-units.
struct UnitEquationSolution {
  FieldElement x, y;
  SUnitExponents x_exponents, y_exponents;
};

struct UnitEquationResult {
  std::vector<UnitEquationSolution> solutions;
  long bound = 0;
  /// Only exponent vectors of x with sup-norm <= bound are searched, so the
  /// list is complete relative to that bound and nothing more.
  std::string completeness = "bounded";
  std::uint64_t candidates = 0;
};

/// All solutions whose x has free exponents of absolute value <= bound over
/// the generators of O_S^*. Throws UncertifiedGenerators if the S-unit group
/// is not certified.
UnitEquationResult solve_unit_equation(const NumberField& k, const std::vector<Prime>& S, const FieldElement& a,
                                       const FieldElement& b, long bound);
/// Same search with x running over the group Gx and y required to be an
/// Sy-unit (Sy may differ from Gx.S).
UnitEquationResult solve_unit_equation(const SUnitGroup& Gx, const FieldElement& a, const FieldElement& b,
                                       const std::vector<Prime>& Sy, long bound);

/// Number of candidates x examined by solve_unit_equation over G.
double search_size(const SUnitGroup& G, long bound);

/// alpha + beta = gamma^i with alpha, beta S-units and gamma an S-integer.
struct PowerEquationSolution {
  FieldElement alpha, beta, gamma;
  int i = 2;
  /// beta is the fixed representative of its class in O_S^*/(O_S^*)^i.
  bool canonical = true;
  std::vector<Prime> S;
};

struct PowerEquationResult {
  std::vector<PowerEquationSolution> solutions;
  /// Representatives beta that were examined, in power_class_reps order.
  std::vector<FieldElement> betas;
  long bound = 0;
  std::string completeness = "bounded";
};

struct PowerEquationOptions {
  long bound = 12;
  /// Largest absolute degree of an auxiliary field K(sqrt beta) or
  /// K(omega, cbrt beta); larger fields raise ExtensionBudgetExceeded.
  int max_extension_degree = 12;
  /// Largest number of candidates a single unit equation may examine;
  /// larger searches raise BoundExceeded.
  double max_candidates = 5e7;
};

/// Solutions up to ~_i, one per class, with beta running over
/// power_class_reps(O_S^*, i). Each beta is handled through the S'-unit
/// equation in K(sqrt beta) (i = 2) or K(omega, cbrt beta) (i = 3).
PowerEquationResult solve_power_equation(const NumberField& k, const std::vector<Prime>& S, int i,
                                         const PowerEquationOptions& opt = {});
/// The solutions with a single fixed beta (for instance beta = 1).
PowerEquationResult solve_power_equation(const NumberField& k, const std::vector<Prime>& S, int i,
                                         const FieldElement& beta, const PowerEquationOptions& opt = {});

/// (a1, b1, c1) ~_i (a2, b2, c2): a2 = e^i a1, b2 = e^i b1, c2 = e c1 for an
/// S-unit e. Uses the S stored in s1.
bool equivalent(const PowerEquationSolution& s1, const PowerEquationSolution& s2);

/// Primes of L above the primes S of a subfield K in L's tower.
std::vector<Prime> primes_above(const NumberField& L, const std::vector<Prime>& S);
/// Image in L of an element of a field lower in L's tower.
FieldElement lift_to(const NumberField& L, const FieldElement& x);
/// x as an element of the subfield K of L's tower, if it lies there.
bool descend_to(const NumberField& K, const FieldElement& x, FieldElement& out);

}  // namespace aflt
