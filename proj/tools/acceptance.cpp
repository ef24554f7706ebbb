// Acceptance suite: one PASS/FAIL line per criterion.
//
//   hsclab_acceptance [--seed N] [--only id[,id...]] [--json FILE] [--list]

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hsclab/error.hpp"
#include "selftest.hpp"

int main(int argc, char** argv) {
  CLI::App app{"hsc-lab acceptance suite"};
  std::uint64_t seed = 0;
  std::vector<std::string> only;
  std::string json_path;
  bool list = false;
  app.add_option("--seed", seed, "RNG seed");
  app.add_option("--only", only, "criterion ids to run")->delimiter(',');
  app.add_option("--json", json_path, "also write the JSON report here");
  app.add_flag("--list", list, "print criterion ids and exit");
  CLI11_PARSE(app, argc, argv);

  using namespace hsclab::selftest;
  if (list) {
    for (const auto& c : criteria()) std::cout << c.id << '\n';
    return 0;
  }
  Config cfg;
  cfg.seed = seed;
  std::vector<Result> results;
  try {
    results = run(cfg, only);
  } catch (const hsclab::Error& e) {
    std::cerr << "hsclab_acceptance: " << e.what() << '\n';
    return 2;
  }
  int failed = 0;
  for (const auto& r : results) {
    std::cout << format_line(r) << '\n';
    failed += r.pass ? 0 : 1;
  }
  std::cout << (failed == 0 ? "ALL PASS" : "FAILED") << "  " << results.size() - failed << "/" << results.size()
            << '\n';
  if (!json_path.empty()) {
    std::ofstream(json_path) << report_json(cfg, results) << '\n';
  }
  return failed == 0 ? 0 : 1;
}
