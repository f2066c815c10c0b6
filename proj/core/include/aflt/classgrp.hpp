#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aflt/ideals.hpp"

namespace aflt {

struct ClassGroupOptions {
  /// Maximum number of harvested relations (0 picks a default from the
  /// factor base size).
  std::size_t max_relations = 0;
  /// Largest Minkowski bound we are willing to cover with a factor base.
  long double max_factor_norm = 60000;
  /// Class number supplied by the caller, used when the computation cannot
  /// finish; the result is then flagged "asserted, unverified".
  std::optional<Integer> asserted_order;
};

/// Cl(K) = Z/d_1 x ... x Z/d_k with d_1 | d_2 | ... and every d_i > 1.
struct ClassGroup {
  NumberField field;
  IntVector invariants;
  /// Integral ideals whose classes generate the cyclic factors.
  std::vector<Ideal> generators;
  /// witnesses[i] generates generators[i]^invariants[i] when found.
  std::vector<std::optional<FieldElement>> witnesses;
  Integer order = 1;
  bool certified = false;
  bool asserted = false;
  /// Invariants, generators and discrete logarithms are available (possibly
  /// without a proof that the group is not smaller).
  bool structure_known = false;
  /// "certified", "uncertified" or "asserted, unverified".
  std::string status;
  Rational minkowski_bound;
  std::vector<Prime> factor_base;
  /// Discrete logarithms of the factor base primes.
  IntMatrix fb_dlog;
  std::size_t relations = 0;

  /// Coordinates of [I] in Z/d_1 x ... x Z/d_k. Throws Uncertified when the
  /// group structure is unknown.
  IntVector dlog(const Ideal& I) const;
  bool is_principal(const Ideal& I) const;
  /// A generator of a principal ideal, searched among short elements.
  std::optional<FieldElement> generator(const Ideal& I) const;
};

/// Memoized per field when called with default options.
ClassGroup class_group(const NumberField& k, const ClassGroupOptions& opt = {});

struct NarrowClassNumber {
  Integer h_plus;
  bool two_divides = false;
  bool certified = false;
};
/// h+ = h * 2^r1 / |sign image of the units|. K must be totally real.
NarrowClassNumber narrow_class_number(const NumberField& k, const ClassGroupOptions& opt = {});

/// Whether Cl(K)/<[P] : P in S> has trivial i-torsion (i prime). Throws
/// Uncertified unless the class group is certified or i does not divide h.
bool s_class_torsion_trivial(const NumberField& k, const std::vector<Prime>& S, int i,
                             const ClassGroupOptions& opt = {});

/// Minkowski bound (4/pi)^r2 n!/n^n sqrt|d|.
long double minkowski_bound(const NumberField& k);

/// Integral ideal of small norm in the class of I.
Ideal reduce_ideal(const Ideal& I);

}  // namespace aflt
