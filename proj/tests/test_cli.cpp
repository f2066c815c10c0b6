#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <sstream>

#include "cli.hpp"

using namespace aflt;
using namespace aflt::cli;

namespace {

RunConfig config(const std::string& line) { return parse_line(line, RunConfig{}); }

std::pair<int, std::string> run_line(const std::string& line) {
  std::ostringstream out;
  int code = run(config(line), out);
  return {code, out.str()};
}

// Runs the installed binary through the shell; returns exit status and stdout.
std::pair<int, std::string> shell(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " AFLT_CLI_PATH " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, f)) out.append(buf, n);
  int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<nlohmann::json> json_lines(const std::string& s) {
  std::vector<nlohmann::json> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("config parsing") {
  RunConfig c = config("--poly -85,-51,0,1 --signature pp2 --theorem local --q 17");
  REQUIRE(c.poly);
  CHECK(*c.poly == std::vector<Integer>{-85, -51, 0, 1});
  CHECK(c.theorem == Theorem::local);
  CHECK(c.q == 17);
  CHECK(c.bound == 12);
  CHECK_NOTHROW(c.validate());

  RunConfig d = config("--quad-d 13 --signature pp3 --theorem quad --output text --no-timings --assume-complete");
  CHECK(d.quad_d == 13);
  CHECK(d.signature == Signature::pp3);
  CHECK(d.output == OutputFormat::text);
  CHECK(!d.timings);
  CHECK(d.assume_complete);

  CHECK_THROWS_AS(config("--signature pp5"), InvalidInput);
  CHECK_THROWS_AS(config("--poly 1,x,1"), InvalidInput);
  CHECK_THROWS_AS(config("--quad-d 13 --poly 1,0,1").validate(), InvalidInput);
  CHECK_THROWS_AS(config("--signature pp2").validate(), InvalidInput);
  CHECK_THROWS_AS(config("--quad-d 13 --theorem local").validate(), InvalidInput);
  CHECK_THROWS_AS(config("--quad-d 13 --theorem main --q 5").validate(), InvalidInput);
  CHECK_THROWS_AS(config("--poly -2,0,1 --theorem quad").validate(), InvalidInput);
}

TEST_CASE("exit codes") {
  CHECK(run_line("--quad-d 13 --signature pp2 --theorem quad").first == 0);
  CHECK(run_line("--quad-d 12 --signature pp2 --theorem quad").first == 20);
  int local = run_line("--poly -85,-51,0,1 --signature pp2 --theorem local --q 17 --bound 6").first;
  CHECK((local == 0 || local == 10));
  CHECK(run_line("--quad-d 13 --signature pp2 --theorem inert --bound 4").first == 10);
  CHECK(run_line("--quad-d 7 --signature pp2 --theorem inert").first == 20);
  CHECK(run_line("--quad-d 13 --theorem local").first == 2);
  CHECK(run_line("--poly -1,0,1 --theorem main").first == 2);
  CHECK(run_line("--quad-d 13 --theorem local --q 4").first == 2);
  // The main criterion cannot finish at this candidate budget.
  CHECK(run_line("--quad-d 13 --theorem main --max-candidates 10").first == 3);

  CHECK(combine({20, 10, 0}) == 0);
  CHECK(combine({20, 10, 3}) == 10);
  CHECK(combine({20, 3}) == 3);
  CHECK(combine({20, 20}) == 20);
  CHECK(combine({0, 2}) == 2);
}

TEST_CASE("json reports") {
  auto [code, out] = run_line("--quad-d 13 --signature pp2 --theorem quad --no-timings");
  auto js = json_lines(out);
  REQUIRE(js.size() == 1);
  auto& j = js[0];
  CHECK(j["schema"] == 1);
  CHECK(j["theorem_id"] == "pp2_quad");
  CHECK(j["verdict"] == "holds");
  CHECK(j["bound_used"] == 12);
  CHECK(j["field"]["disc"] == "13");
  CHECK(j["field"]["signature_r1r2"] == nlohmann::json::array({2, 0}));
  CHECK(j["hypotheses"].size() == 3);
  CHECK(!j.contains("timings_ms"));
  CHECK(code == j["exit_code"]);

  auto timed = json_lines(run_line("--quad-d 13 --signature pp2 --theorem quad").second);
  CHECK(timed[0].contains("timings_ms"));

  auto err = json_lines(run_line("--quad-d 13 --theorem local").second);
  REQUIRE(err.size() == 1);
  CHECK(err[0]["error"]["code"] == "InvalidInput");
  CHECK(err[0]["exit_code"] == 2);
}

TEST_CASE("identical configs give byte-identical json") {
  const std::string line = "--quad-d 13 --signature pp2 --theorem all --bound 5 --no-timings";
  auto a = run_line(line), b = run_line(line);
  CHECK(a == b);
  CHECK(json_lines(a.second).size() == 3);
}

TEST_CASE("text and json give the same verdicts") {
  for (std::string line : {"--quad-d 13 --signature pp2 --theorem all --bound 5", "--quad-d 17 --signature pp2 --theorem quad",
                           "--quad-d 5 --signature pp3 --theorem quad --bound 4"}) {
    auto j = run_line(line + " --no-timings");
    auto t = run_line(line + " --no-timings --output text");
    CHECK(j.first == t.first);
    std::vector<std::string> jv, tv;
    for (auto& x : json_lines(j.second)) jv.push_back(x["verdict"]);
    std::istringstream in(t.second);
    std::string l;
    while (std::getline(in, l))
      if (auto p = l.find("verdict: "); p != std::string::npos) tv.push_back(l.substr(p + 9, l.find(' ', p + 9) - p - 9));
    CHECK(jv == tv);
  }
}

TEST_CASE("batch mode keeps input order") {
  std::istringstream in(
      "# scan\n"
      "--quad-d 17 --signature pp2 --theorem quad\n"
      "\n"
      "--quad-d 13 --signature pp2 --theorem quad\n"
      "--quad-d 29 --signature pp2 --theorem quad\n");
  RunConfig base;
  base.timings = false;
  std::ostringstream out;
  int code = run_batch(in, base, out);
  auto js = json_lines(out.str());
  REQUIRE(js.size() == 3);
  CHECK(js[0]["field"]["disc"] == "17");
  CHECK(js[1]["field"]["disc"] == "13");
  CHECK(js[2]["field"]["disc"] == "29");
  CHECK(code == 0);

  std::istringstream bad("--quad-d 13 --theorem quad\n--frobnicate\n");
  std::ostringstream out2;
  CHECK(run_batch(bad, base, out2) == 2);
}

TEST_CASE("command line binary") {
  CHECK(shell("--quad-d 13 --signature pp2 --theorem quad").first == 0);
  CHECK(shell("--quad-d 12 --signature pp2 --theorem quad").first == 20);
  int local = shell("--poly -85,-51,0,1 --signature pp2 --theorem local --q 17").first;
  CHECK((local == 0 || local == 10));
  CHECK(shell("--frobnicate").first == 2);

  auto [code, out] = shell("--quad-d 13 --signature pp2 --theorem inert --no-timings", "FERMAT_BOUND=3");
  CHECK(code == 10);
  CHECK(json_lines(out).at(0)["bound_used"] == 3);
  auto explicit_bound = shell("--quad-d 13 --signature pp2 --theorem inert --no-timings --bound 4", "FERMAT_BOUND=3");
  CHECK(json_lines(explicit_bound.second).at(0)["bound_used"] == 4);
}
