// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero if any criterion fails.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "minkowski/acceptance.hpp"

using namespace minkowski;

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria 1-14"};
  AcceptanceConfig cfg;
  std::vector<int> only;
  bool quiet = false;
  app.add_option("--threads", cfg.threads)->check(CLI::PositiveNumber);
  app.add_option("--only", only, "criterion ids to run (default: all)")->delimiter(',');
  app.add_flag("--quiet", quiet, "omit the detail lines");
  CLI11_PARSE(app, argc, argv);

  if (only.empty())
    for (int i = 1; i <= static_cast<int>(acceptance_criteria().size()); ++i) only.push_back(i);

  std::cout << "config: " << cfg.to_json().dump() << "\n" << std::flush;
  AcceptanceContext ctx(cfg);
  int failed = 0;
  for (int id : only) {
    const auto r = run_criterion(id, ctx);
    failed += r.pass ? 0 : 1;
    std::cout << format_line(r) << "  (" << static_cast<long>(r.seconds + 0.5) << " s)\n";
    if (!quiet && r.detail.is_object())
      for (auto it = r.detail.begin(); it != r.detail.end(); ++it)
        std::cout << "        " << it.key() << ": " << it.value().dump() << '\n';
    std::cout << std::flush;
  }
  std::cout << (failed ? "FAILED " + std::to_string(failed) + " of " : "PASSED all ") << only.size()
            << " criteria\n";
  return failed ? 1 : 0;
}
