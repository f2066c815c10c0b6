#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "aflt/arith.hpp"

namespace aflt {

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;  // row-major
using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;
using FpVector = std::vector<std::uint64_t>;
using FpMatrix = std::vector<FpVector>;
using RealMatrix = std::vector<std::vector<long double>>;

IntMatrix identity_matrix(std::size_t n);

// ---------------------------------------------------------------------------
// Exact linear algebra over Z and Q.

Integer determinant(IntMatrix a);
Rational determinant(RatMatrix a);
/// Throws std::domain_error for singular input.
RatMatrix inverse(RatMatrix a);
RatVector mat_vec(const RatMatrix& a, const RatVector& v);
/// v * A (row vector times matrix).
RatVector vec_mat(const RatVector& v, const RatMatrix& a);
RatMatrix mat_mul(const RatMatrix& a, const RatMatrix& b);
IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
RatMatrix to_rational(const IntMatrix& a);

/// Upper-triangular column Hermite normal form of the full-rank lattice in
/// Z^n spanned by `cols` (each a length-n column), given a nonzero multiple D
/// of its determinant so that D*Z^n lies in the lattice. Result H is n x n
/// with H[i][j] = 0 for i > j, H[i][i] > 0 and 0 <= H[i][j] < H[i][i] for j > i;
/// column j of H is the j-th basis vector.
IntMatrix hnf_columns_mod(const std::vector<IntVector>& cols, std::size_t n, const Integer& D);

/// Same lattice convention without a modulus (lattice must be full rank).
IntMatrix hnf_columns(const std::vector<IntVector>& cols, std::size_t n);

/// Row-style echelon HNF of the row space of A: returns the nonzero rows,
/// upper triangular in the sense that each row's pivot is strictly right of
/// the previous row's pivot, pivots positive and entries above pivots
/// reduced into [0, pivot). When U is non-null it receives a unimodular
/// matrix with U * A = [H; 0].
IntMatrix hnf_rows(const IntMatrix& a, IntMatrix* u = nullptr);

/// Basis (as rows) of the integer lattice {x in Z^m : x * A = 0} for an
/// m x k matrix A.
IntMatrix integer_left_kernel(const IntMatrix& a);

/// Smith normal form of a square nonsingular matrix: U * A * V = diag(d)
/// with d[0] | d[1] | ... and U, V unimodular.
struct SmithForm {
  IntVector diag;
  IntMatrix u, v;
};
SmithForm smith_form(const IntMatrix& a);

// ---------------------------------------------------------------------------
// Linear algebra over F_p.

/// Basis of {x : A x = 0} for an r x c matrix A over F_p (vectors of length c).
FpMatrix fp_kernel(const FpMatrix& a, std::uint64_t p);
std::size_t fp_rank(FpMatrix a, std::uint64_t p);
/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> fp_rref(FpMatrix& a, std::uint64_t p);
/// Solve A x = b; returns false when inconsistent.
bool fp_solve(const FpMatrix& a, const FpVector& b, FpVector& x, std::uint64_t p);

// ---------------------------------------------------------------------------
// Lattice reduction and enumeration with floating-point Gram matrices.

/// LLL-reduce the basis described by Gram matrix `gram` (updated in place).
/// Returns the integer transform T whose rows express the new basis in the
/// old one (new_i = sum_j T[i][j] old_j).
IntMatrix lll_gram(RealMatrix& gram, long double delta = 0.99L);

/// Enumerate all nonzero integer vectors x with x^T G x <= bound, one from
/// each pair +-x (last nonzero coordinate positive). The visitor returns
/// false to stop. Returns false when stopped early or when `max_nodes`
/// search nodes were exceeded.
bool fincke_pohst(const RealMatrix& gram, long double bound,
                  const std::function<bool(const std::vector<long>&, long double)>& visit,
                  std::size_t max_nodes = 50000000);

/// Integer-relation style lattice reduction: rows [I_k | scale * v_i]. Used to
/// find a basis of the Z-span of real vectors together with relations.
RealMatrix gram_of_rows(const RealMatrix& rows);

}  // namespace aflt
