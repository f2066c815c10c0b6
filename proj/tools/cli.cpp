#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <istream>
#include <ostream>
#include <sstream>

#include "aflt/errors.hpp"

namespace aflt::cli {

std::string to_string(Theorem t) {
  switch (t) {
    case Theorem::main:
      return "main";
    case Theorem::inert:
      return "inert";
    case Theorem::quad:
      return "quad";
    case Theorem::local:
      return "local";
    case Theorem::all:
      return "all";
  }
  return "all";
}

void RunConfig::validate() const {
  if (poly.has_value() == quad_d.has_value()) throw InvalidInput("give exactly one of --poly and --quad-d");
  if (theorem == Theorem::local && !q) throw InvalidInput("--q is required for theorem local");
  if (q && theorem != Theorem::local && theorem != Theorem::all) throw InvalidInput("--q only applies to theorem local");
  if (theorem == Theorem::quad && !quad_d) throw InvalidInput("theorem quad needs --quad-d");
  if (quad_d && *quad_d <= 0) throw InvalidInput("--quad-d must be positive");
  if (bound < 0) throw InvalidInput("--bound must be non-negative");
}

namespace {

std::vector<Integer> parse_poly(const std::string& s) {
  std::vector<Integer> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), [](unsigned char c) { return std::isspace(c); }), tok.end());
    Integer v;
    if (tok.empty() || v.set_str(tok, 10) != 0) throw InvalidInput("bad coefficient '" + tok + "' in --poly");
    out.push_back(v);
  }
  if (out.size() < 2) throw InvalidInput("--poly needs at least two coefficients");
  return out;
}

}  // namespace

void add_run_options(CLI::App& app, RunConfig& cfg) {
  app.add_option_function<std::string>(
         "--poly", [&cfg](const std::string& s) { cfg.poly = parse_poly(s); },
         "Defining polynomial as comma separated coefficients, constant term first")
      ->allow_extra_args(false);
  app.add_option_function<long>("--quad-d", [&cfg](long d) { cfg.quad_d = d; }, "Use Q(sqrt d)");
  app.add_option("--signature", cfg.signature, "pp2 or pp3")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Signature>{{"pp2", Signature::pp2}, {"pp3", Signature::pp3}}));
  app.add_option("--theorem", cfg.theorem, "main, inert, quad, local or all")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Theorem>{{"main", Theorem::main},
                                                                         {"inert", Theorem::inert},
                                                                         {"quad", Theorem::quad},
                                                                         {"local", Theorem::local},
                                                                         {"all", Theorem::all}}));
  app.add_option_function<long>("--q", [&cfg](long q) { cfg.q = q; }, "Totally ramified prime for theorem local");
  app.add_option("--bound", cfg.bound, "Exponent bound for S-unit searches")->envname("FERMAT_BOUND");
  app.add_option("--class-budget", cfg.class_budget, "Relation budget for class groups (0 = automatic)");
  app.add_flag("--assume-complete", cfg.assume_complete, "Treat bounded searches as complete");
  app.add_option("--output", cfg.output, "json or text")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"json", OutputFormat::json}, {"text", OutputFormat::text}}));
  app.add_flag_callback("--no-timings", [&cfg] { cfg.timings = false; }, "Omit timings for byte-stable output");
  app.add_option_function<std::string>(
      "--assert-hkw",
      [&cfg](const std::string& s) {
        Integer h;
        if (h.set_str(s, 10) != 0 || h <= 0) throw CLI::ValidationError("--assert-hkw", "expected a positive integer");
        cfg.asserted_h_k_omega = h;
      },
      "Class number of K(omega) to use, flagged as asserted, when it cannot be computed");
  app.add_option("--max-ext-degree", cfg.max_extension_degree, "Largest auxiliary field degree");
  app.add_option("--max-candidates", cfg.max_candidates, "Candidate budget per unit equation");
}

RunConfig parse_line(const std::string& line, const RunConfig& base) {
  RunConfig cfg = base;
  CLI::App app;
  add_run_options(app, cfg);
  try {
    app.parse(line, false);
  } catch (const CLI::ParseError& e) {
    throw InvalidInput(std::string("bad batch line '") + line + "': " + e.what());
  }
  return cfg;
}

int exit_code(const CriterionReport& r) {
  switch (r.verdict) {
    case Verdict::holds:
      return holds;
    case Verdict::fails:
      return fails;
    case Verdict::inconclusive:
      return r.uncertified ? uncertified : inconclusive;
  }
  return inconclusive;
}

int combine(const std::vector<int>& codes) {
  auto has = [&](int c) { return std::find(codes.begin(), codes.end(), c) != codes.end(); };
  for (int c : {int(input_error), int(holds), int(inconclusive), int(uncertified)})
    if (has(c)) return c;
  return fails;
}

nlohmann::ordered_json to_json(const CriterionReport& r, std::optional<double> ms) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = 1;
  const NumberField& k = r.field;
  j["field"] = {{"poly", k.poly().str()}, {"disc", k.disc().get_str()}, {"signature_r1r2", {k.r1(), k.r2()}}};
  j["theorem_id"] = r.theorem_id;
  ordered_json hs = ordered_json::array();
  for (auto& h : r.hypotheses) hs.push_back({{"name", h.name}, {"status", to_string(h.status)}, {"witness", h.witness}});
  j["hypotheses"] = hs;
  j["distinguished_prime"] = r.distinguished_prime ? ordered_json((*r.distinguished_prime)->str()) : ordered_json();
  ordered_json tried = ordered_json::array();
  for (auto& P : r.primes_tried) tried.push_back(P->str());
  j["primes_tried"] = tried;
  ordered_json sols = ordered_json::array();
  for (auto& s : r.solutions_examined) {
    ordered_json e, v;
    e = ordered_json::object();
    v = ordered_json::object();
    for (auto& [name, x] : s.elements) e[name] = x;
    for (auto& [name, x] : s.values) v[name] = x;
    sols.push_back({{"elements", e}, {"values", v}, {"ok", s.ok}});
  }
  j["solutions_examined"] = sols;
  j["verdict"] = to_string(r.verdict);
  j["bound_used"] = r.bound_used;
  j["bounded"] = r.bounded;
  j["uncertified"] = r.uncertified;
  j["consistency_errors"] = r.consistency_errors;
  j["notes"] = r.notes;
  j["exit_code"] = exit_code(r);
  if (ms) j["timings_ms"] = {{"total", static_cast<long>(*ms)}};
  return j;
}

std::string to_text(const CriterionReport& r, std::optional<double> ms) {
  std::ostringstream o;
  const NumberField& k = r.field;
  o << r.theorem_id << "  K = Q[x]/(" << k.poly().str() << ")  disc " << k.disc().get_str() << "  signature (" << k.r1()
    << "," << k.r2() << ")\n";
  for (auto& h : r.hypotheses) {
    o << "  [" << to_string(h.status) << "] " << h.name;
    if (!h.witness.empty()) o << ": " << h.witness;
    o << "\n";
  }
  if (r.distinguished_prime) o << "  distinguished prime: " << (*r.distinguished_prime)->str() << "\n";
  if (!r.solutions_examined.empty()) {
    long bad = std::count_if(r.solutions_examined.begin(), r.solutions_examined.end(), [](auto& s) { return !s.ok; });
    o << "  solutions examined: " << r.solutions_examined.size() << " (" << bad << " flagged)\n";
  }
  for (auto& e : r.consistency_errors) o << "  consistency error: " << e << "\n";
  for (auto& n : r.notes) o << "  note: " << n << "\n";
  o << "  verdict: " << to_string(r.verdict) << " (bound " << r.bound_used << ")\n";
  if (ms) o << "  time: " << static_cast<long>(*ms) << " ms\n";
  return o.str();
}

namespace {

bool uncertified_error(const Error& e) {
  static const std::vector<std::string> codes = {"Uncertified", "UncertifiedGenerators", "RankNotReached",
                                                 "BoundExceeded", "ExtensionBudgetExceeded"};
  return std::find(codes.begin(), codes.end(), e.code()) != codes.end();
}

void emit_error(const RunConfig& cfg, const std::string& code, const std::string& msg, int exit, std::ostream& out) {
  if (cfg.output == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["error"] = {{"code", code}, {"message", msg}};
    j["exit_code"] = exit;
    out << j.dump() << "\n";
  } else {
    out << "error [" << code << "]: " << msg << "\n";
  }
}

NumberField field_of(const RunConfig& cfg) {
  if (cfg.poly) return NumberField::make(*cfg.poly);
  Integer d(*cfg.quad_d);
  if (mpz_perfect_square_p(d.get_mpz_t())) return NumberField::rationals();
  return NumberField::quadratic(*cfg.quad_d);
}

CheckOptions check_options(const RunConfig& cfg) {
  CheckOptions o;
  o.bound = cfg.bound;
  o.assume_complete = cfg.assume_complete;
  o.class_options.max_relations = static_cast<std::size_t>(std::max(0L, cfg.class_budget));
  o.asserted_h_k_omega = cfg.asserted_h_k_omega;
  o.max_extension_degree = cfg.max_extension_degree;
  o.max_candidates = cfg.max_candidates;
  return o;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out) {
  std::vector<Theorem> todo;
  try {
    cfg.validate();
  } catch (const Error& e) {
    emit_error(cfg, e.code(), e.what(), input_error, out);
    return input_error;
  }
  if (cfg.theorem == Theorem::all) {
    todo = {Theorem::main, Theorem::inert};
    if (cfg.quad_d) todo.push_back(Theorem::quad);
    if (cfg.q) todo.push_back(Theorem::local);
  } else {
    todo = {cfg.theorem};
  }
  CheckOptions opt = check_options(cfg);
  std::vector<int> codes;
  std::optional<NumberField> k;
  for (Theorem t : todo) {
    auto start = std::chrono::steady_clock::now();
    try {
      CriterionReport r;
      if (t == Theorem::quad) {
        r = check_quad(*cfg.quad_d, cfg.signature, opt);
      } else {
        if (!k) k = field_of(cfg);
        if (t == Theorem::main)
          r = check_main(*k, cfg.signature, opt);
        else if (t == Theorem::inert)
          r = check_inert(*k, cfg.signature, opt);
        else
          r = check_local(*k, *cfg.q, cfg.signature, opt);
      }
      std::optional<double> ms;
      if (cfg.timings)
        ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (cfg.output == OutputFormat::json)
        out << to_json(r, ms).dump() << "\n";
      else
        out << to_text(r, ms);
      codes.push_back(exit_code(r));
    } catch (const Error& e) {
      int c = uncertified_error(e) ? uncertified : input_error;
      emit_error(cfg, e.code(), e.what(), c, out);
      codes.push_back(c);
      if (c == input_error) break;
    }
  }
  return combine(codes);
}

int run_batch(std::istream& in, const RunConfig& base, std::ostream& out) {
  std::vector<int> codes;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      codes.push_back(run(parse_line(line, base), out));
    } catch (const Error& e) {
      emit_error(base, e.code(), e.what(), input_error, out);
      codes.push_back(input_error);
    }
  }
  if (codes.empty()) {
    emit_error(base, "InvalidInput", "batch file has no configurations", input_error, out);
    return input_error;
  }
  return combine(codes);
}

}  // namespace aflt::cli
