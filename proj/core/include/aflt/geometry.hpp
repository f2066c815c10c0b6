#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "aflt/ideals.hpp"

namespace aflt {

/// Gram matrix of T2(x) = sum |sigma(x)|^2 (over all n embeddings) on the
/// lattice spanned by the given integral-basis coordinate vectors.
RealMatrix t2_gram(const NumberField& k, const std::vector<IntVector>& basis);

/// Approximate embeddings of an element given by integral-basis coordinates.
std::vector<std::complex<long double>> approx_embeddings(const NumberField& k, const IntVector& c);

/// Enumerates nonzero elements (up to sign) of the lattice spanned by
/// `basis` with T2 <= bound, after LLL reduction. The visitor receives the
/// integral-basis coordinates and returns false to stop. Returns false if
/// stopped or the node budget ran out.
bool enumerate_short(const NumberField& k, const std::vector<IntVector>& basis, long double bound,
                     const std::function<bool(const IntVector&, long double)>& visit,
                     std::size_t max_nodes = 2000000);

/// Z-basis (integral coordinates) of the numerator of an integral ideal.
std::vector<IntVector> ideal_lattice(const Ideal& I);

/// Searches for x with (x) = I among elements of T2 up to max_t2. Integral I
/// only. Returns nothing when the search is exhausted.
std::optional<FieldElement> find_generator(const Ideal& I, long double max_t2,
                                           std::size_t max_nodes = 2000000);

/// Squared T2 norm approximations.
long double t2_norm(const FieldElement& x);

/// Absolute value of the norm computed from approximate embeddings.
long double approx_abs_norm(const NumberField& k, const IntVector& c);

}  // namespace aflt
