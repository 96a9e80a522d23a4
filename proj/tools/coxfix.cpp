// coxfix: batch verification front-end.
//
//   coxfix verify <suite> --group <name|file> [--perm=...]... [--theta id|perm]
//                 [-L n] [--max-interval k] [--extended] [-o report.tsv]
//   coxfix catalog
//
// Exit status: 0 all checks pass, 1 some check failed, 2 configuration or
// resource error.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "coxfix/suites.hpp"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coxeter group fixed-point and folding verifier"};
  app.require_subcommand(1);

  auto* cat = app.add_subcommand("catalog", "List supported Coxeter types and their generator numbering");

  auto* verify = app.add_subcommand("verify", "Run a named verification suite");
  std::string suite;
  coxfix::SuiteConfig cfg;
  std::string output;
  int radius = -1, top_length = -1;
  verify->add_option("suite", suite, "Suite name")->required();
  verify->add_option("--group,-g", cfg.group, "Catalog name (A3, B3, I2(5), affA2, ...) or matrix file")->required();
  verify->add_option("--perm", cfg.perms, "Automorphism group generator, e.g. perm=3,2,1 or 3,2,1 (repeatable)");
  verify->add_option("--theta", cfg.theta, "Diagram involution: id or a permutation")->default_val("id");
  verify->add_option("-L,--radius", radius, "Ball radius (default: l(w0) for finite groups, 8 otherwise)");
  verify->add_option("--top-length", top_length, "Longest interval top considered (default: radius)");
  verify->add_option("--max-interval", cfg.max_interval, "Interval length cap")->default_val(5);
  verify->add_option("--max-faces", cfg.max_faces, "Order complex face cap")->default_val(2'000'000);
  verify->add_option("--samples", cfg.samples, "Random sample size (0 = exhaustive)")->default_val(0);
  verify->add_option("--seed", cfg.seed, "Sampling seed")->default_val(1);
  verify->add_option("--expect", cfg.expect, "fold-matrix: catalog type the folded matrix must match");
  verify->add_flag("--extended", cfg.extended, "Allow large groups (E6 and up)");
  verify->add_option("-o,--output", output, "Write a TSV report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  if (cat->parsed()) {
    for (const auto& line : coxfix::catalog_listing()) std::cout << line << '\n';
    return 0;
  }

  if (radius >= 0) cfg.radius = radius;
  if (top_length >= 0) cfg.top_length = top_length;
  for (auto& p : cfg.perms)
    if (p.rfind("perm=", 0) == 0) p = p.substr(5);

  try {
    const auto report = coxfix::run_suite(suite, cfg);
    report.write_text(std::cout);
    std::cout << "# " << report.seconds << " s\n";
    if (!output.empty()) {
      std::ofstream out(output);
      if (!out) throw coxfix::InputError("cannot write `" + output + "`");
      report.write_tsv(out);
    }
    return report.all_pass() ? 0 : kExitFail;
  } catch (const coxfix::Error& e) {
    std::cerr << "coxfix: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "coxfix: " << e.what() << '\n';
    return kExitConfig;
  }
}
