#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aflt/criteria.hpp"

namespace CLI {
class App;
}

namespace aflt::cli {

enum class Theorem { main, inert, quad, local, all };
enum class OutputFormat { json, text };

std::string to_string(Theorem t);

enum ExitCode : int { holds = 0, input_error = 2, uncertified = 3, inconclusive = 10, fails = 20 };

struct RunConfig {
  /// Defining polynomial, constant term first.
  std::optional<std::vector<Integer>> poly;
  std::optional<long> quad_d;
  Signature signature = Signature::pp2;
  Theorem theorem = Theorem::all;
  std::optional<long> q;
  long bound = 12;
  /// Relation budget for class group computations (0 = automatic).
  long class_budget = 0;
  bool assume_complete = false;
  OutputFormat output = OutputFormat::json;
  bool timings = true;
  std::optional<Integer> asserted_h_k_omega;
  int max_extension_degree = 12;
  double max_candidates = 5e7;

  /// Throws InvalidInput unless exactly one of poly/quad_d is set and q is
  /// given for theorem local.
  void validate() const;
};

/// Registers every per-run flag on `app`, writing into `cfg`.
void add_run_options(CLI::App& app, RunConfig& cfg);

/// Parses one batch line (flags separated by whitespace) on top of `base`.
RunConfig parse_line(const std::string& line, const RunConfig& base);

/// Exit code of a single report.
int exit_code(const CriterionReport& r);
/// any holds -> 0, else any inconclusive -> 10, else any uncertified -> 3,
/// else 20; input errors dominate.
int combine(const std::vector<int>& codes);

nlohmann::ordered_json to_json(const CriterionReport& r, std::optional<double> ms);
std::string to_text(const CriterionReport& r, std::optional<double> ms);

/// Runs the requested checkers and writes one report per line (json) or one
/// block per report (text). Returns the combined exit code.
int run(const RunConfig& cfg, std::ostream& out);
/// Runs every non-empty, non-comment line of `in` as a config.
int run_batch(std::istream& in, const RunConfig& base, std::ostream& out);

}  // namespace aflt::cli
