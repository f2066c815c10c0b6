#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aflt/classgrp.hpp"
#include "aflt/frey.hpp"
#include "aflt/sunit.hpp"

namespace aflt {

enum class Verdict { holds, fails, inconclusive };
std::string to_string(Verdict v);

enum class HypothesisStatus { pass, fail, uncertified };
std::string to_string(HypothesisStatus s);

struct Hypothesis {
  std::string name;
  HypothesisStatus status = HypothesisStatus::pass;
  std::string witness;
};

/// One solution looked at by a checker, with the quantities it was judged on.
struct ExaminedSolution {
  std::vector<std::pair<std::string, std::string>> elements;
  std::vector<std::pair<std::string, long>> values;
  bool ok = true;
};

struct CriterionReport {
  /// pp2_main, pp2_inert, pp2_quad, pp2_local, pp3_..., or pp2_iko.
  std::string theorem_id;
  NumberField field;
  std::vector<Hypothesis> hypotheses;
  std::optional<Prime> distinguished_prime;
  std::vector<Prime> primes_tried;
  std::vector<ExaminedSolution> solutions_examined;
  Verdict verdict = Verdict::inconclusive;
  long bound_used = 0;
  /// The verdict rests on a search that is only complete up to bound_used.
  bool bounded = false;
  /// Some input could not be certified (class group, units, search budget).
  bool uncertified = false;
  /// Solutions contradicting a step of the argument the checker replays.
  std::vector<std::string> consistency_errors;
  std::vector<std::string> notes;
};

struct CheckOptions {
  long bound = 12;
  /// Treat bounded searches as complete, upgrading inconclusive to holds.
  bool assume_complete = false;
  ClassGroupOptions class_options;
  /// Class number of K(omega) supplied by the caller, used (and flagged as
  /// asserted) when it cannot be computed.
  std::optional<Integer> asserted_h_k_omega;
  int max_extension_degree = 12;
  double max_candidates = 5e7;
  /// Exponent bound for the consistency replays (case split, unit equation
  /// obstructions); these do not affect the verdict.
  long replay_bound = 8;
  /// Largest auxiliary field degree the replays may build.
  int replay_max_extension_degree = 8;
};

/// Cl_S[i] = 1 and a prime P of S with |v_P(alpha/beta)| <= 6 v_P(2)
/// (resp. 3 v_P(3)) for every solution of alpha + beta = gamma^i.
CriterionReport check_main(const NumberField& k, Signature sig, const CheckOptions& opt = {});
/// 2 inert and 2 not dividing h+ (resp. 3 inert, 3 not dividing h_K or
/// h_K(omega)), and v(alpha) <= 6 (resp. 3) on alpha + 1 = gamma^i.
CriterionReport check_inert(const NumberField& k, Signature sig, const CheckOptions& opt = {});
/// The criterion for Q(sqrt d).
CriterionReport check_quad(long d, Signature sig, const CheckOptions& opt = {});
/// The criterion with a totally ramified prime q >= 5.
CriterionReport check_local(const NumberField& k, long q, Signature sig, const CheckOptions& opt = {});
/// Condition (A) of the earlier criterion with h+ = 1 and T_K; condition (B)
/// is not evaluated.
CriterionReport check_iko(const NumberField& k, const CheckOptions& opt = {});

/// Norm from L = K(omega) down to F = Q(omega) of an element of L, as an
/// element of F. F must be Q(omega) built by extend_field.
FieldElement relative_norm_to_f(const NumberField& F, const FieldElement& x);

struct NormCongruence {
  NumberField F;
  /// b = r0 + r1 omega with 0 <= r_i < q and lambda = b mod the primes above q.
  FieldElement b;
  FieldElement norm;
  bool holds = false;
};
/// L = K(omega) with q totally ramified in K. Computes b and checks
/// Norm_{L/F}(lambda) = b^n mod q O_F. lambda must be integral.
NormCongruence norm_congruence(const NumberField& L, const FieldElement& lambda, long q);

/// Which of 1, -1, omega+1, -(omega+1), omega, -omega the unit v is
/// congruent to modulo the primes above q; raises ResidueOutsideCyclic when
/// none matches. Needs gcd(n, q^2 - 1) = 1.
std::string unit_residue_class(const NumberField& L, const FieldElement& v, long q);

}  // namespace aflt
