#pragma once

#include <string>
#include <vector>

#include "aflt/ideals.hpp"

namespace aflt {

/// O_S^* = <zeta> x <u_1, ..., u_r> x <g_1, ..., g_s>: torsion, fundamental
/// units and generators of the S-part (O_S^*/O^* is free of rank s).
struct SUnitGroup {
  NumberField field;
  FieldElement torsion_gen;
  int torsion_order = 2;
  std::vector<FieldElement> fundamental_units;
  std::vector<Prime> S;
  std::vector<FieldElement> s_generators;
  /// valuation_matrix[i][j] = v_{S_j}(s_generators[i]).
  IntMatrix valuation_matrix;
  /// The fundamental units are proven to generate the full unit group.
  bool units_certified = false;
  /// The S-generators are proven to generate O_S^*/O^*.
  bool s_certified = true;
  /// Primes l at which the unit part is proven l-saturated.
  std::vector<int> saturated;
  /// How the units were found: "trivial", "continued fraction", "cm", "enumeration".
  std::string method;

  bool certified() const { return units_certified && s_certified; }
  bool saturated_at(int l) const;
  int unit_rank() const { return static_cast<int>(fundamental_units.size()); }
  /// Number of free generators (units and S-generators).
  int rank() const { return static_cast<int>(fundamental_units.size() + s_generators.size()); }
  /// Fundamental units followed by S-generators.
  std::vector<FieldElement> free_generators() const;
};

/// Unit group (S empty). Memoized per field.
SUnitGroup unit_group(const NumberField& k);
SUnitGroup s_unit_group(const NumberField& k, const std::vector<Prime>& S);

/// x = zeta^torsion * prod free_generators[j]^free[j].
struct SUnitExponents {
  int torsion = 0;
  std::vector<long> free;
};
/// Throws NotAUnit when x is not an S-unit.
SUnitExponents s_unit_exponents(const SUnitGroup& G, const FieldElement& x);
FieldElement s_unit_from_exponents(const SUnitGroup& G, int torsion, const std::vector<long>& free);

/// Representatives of O_S^*/(O_S^*)^i, ordered lexicographically by their
/// exponent vectors (torsion exponent first) with entries in [0, i).
std::vector<FieldElement> power_class_reps(const SUnitGroup& G, int i);
/// Position in power_class_reps of the class of the S-unit x.
std::size_t power_class_index(const SUnitGroup& G, const FieldElement& x, int i);

bool is_totally_positive(const FieldElement& x);

/// Value in Z/l of the l-th power residue character of x at P. Requires
/// N(P) = 1 mod l and x a unit at P.
int power_residue_symbol(const FieldElement& x, const PrimeIdeal& P, int l);

/// Looks for a nontrivial exponent vector e (entries in [0, l)) such that
/// prod gens^e is an l-th power; returns e and the root. Primes above
/// `avoid` are not used as character primes.
bool find_power_relation(const NumberField& k, const std::vector<FieldElement>& gens, int l,
                         const std::vector<Integer>& avoid, std::vector<long>& exps, FieldElement& root);

}  // namespace aflt
