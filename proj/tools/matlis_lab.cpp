// matlis-lab: computations and verification suites on fixture files.
//
// Exit status: 0 success (all checks pass), 1 some check failed,
// 2 input error (bad fixture, unknown module, NotUniserial, bad arguments),
// 3 internal error.

#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "matlis/error.hpp"
#include "matlis/io/compute.hpp"
#include "matlis/io/fixture.hpp"
#include "matlis/io/verify.hpp"

namespace {

int write_output(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-length modules over Artinian local algebras: Matlis duality, trace and reject."};
  app.name("matlis-lab");
  app.require_subcommand(1);

  std::string fixture;
  std::string module_ref;
  std::string out;
  std::string command;
  std::string suite;
  int trials = -1;
  long long seed = -1;
  int budget = 500;
  bool as_json = false;

  auto* compute = app.add_subcommand("compute", "Run one computation on a module of a fixture");
  compute->add_option("command", command, "gamma | kappa | dual | trace-basis | member-P | member-S | uniserial-s")
      ->required()
      ->check(CLI::IsMember(matlis::io::compute_commands()));
  compute->add_option("--fixture", fixture, "Fixture file or name")->required();
  compute->add_option("--module", module_ref, "Module name (regular, E, k, I, I-dual, a fixture module; suffix ^j)")
      ->required();
  compute->add_option("--out", out, "Write the result to this file");

  auto* verify = app.add_subcommand("verify", "Run a verification suite on a fixture");
  std::vector<std::string> suites = matlis::io::suite_names();
  suites.push_back("all");
  verify->add_option("suite", suite, "Suite name or all")->required()->check(CLI::IsMember(suites));
  verify->add_option("--fixture", fixture, "Fixture file or name")->required();
  verify->add_option("--trials", trials, "Random trials per check family")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "Seed (default: the fixture seed)")->check(CLI::NonNegativeNumber);
  verify->add_option("--budget", budget, "Extension constructions allowed in satz25")->check(CLI::NonNegativeNumber);
  verify->add_flag("--json", as_json, "Machine-readable report");
  verify->add_option("--out", out, "Write the report to this file");

  auto* ring = app.add_subcommand("ring", "Algebra checks");
  auto* ring_check = ring->add_subcommand("check", "Build the algebra and print its invariants");
  ring->require_subcommand(1);
  ring_check->add_option("--fixture", fixture, "Fixture file or name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const auto fx = matlis::io::load_fixture(fixture);
    if (*compute) return write_output(matlis::io::run_compute(fx, command, module_ref), out);
    if (*ring_check) return write_output(matlis::io::ring_check(fx), out);
    matlis::io::VerifyOptions opt;
    if (trials >= 0) opt.trials = trials;
    if (seed >= 0) opt.seed = static_cast<std::uint64_t>(seed);
    opt.budget = budget;
    const auto report = matlis::io::run_suite(fx, suite, opt);
    if (const int rc = write_output(as_json ? report.json() : report.text(), out); rc != 0) return rc;
    return report.failed() == 0 ? 0 : 1;
  } catch (const matlis::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
