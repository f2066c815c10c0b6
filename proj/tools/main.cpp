#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "aflt/errors.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace aflt::cli;
  CLI::App app{"Checks asymptotic Fermat criteria for signatures (p,p,2) and (p,p,3) over totally real fields", "aflt"};
  RunConfig cfg;
  std::string batch;
  add_run_options(app, cfg);
  app.add_option("--batch", batch, "File with one configuration per line ('-' for stdin)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return input_error;
  } catch (const aflt::Error& e) {
    std::cerr << e.code() << ": " << e.what() << "\n";
    return input_error;
  }
  if (batch.empty()) return run(cfg, std::cout);
  if (batch == "-") return run_batch(std::cin, cfg, std::cout);
  std::ifstream in(batch);
  if (!in) {
    std::cerr << "cannot open " << batch << "\n";
    return input_error;
  }
  return run_batch(in, cfg, std::cout);
}
