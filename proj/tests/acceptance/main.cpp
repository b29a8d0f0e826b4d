#include <cstdio>
#include <cstdlib>
#include <string>

#include "wrtlab/acceptance.hpp"

// Usage: wrtlab_acceptance [fast|full] [criterion ids...]
int main(int argc, char** argv) {
  wrtlab::AcceptanceOptions opt;
  int first = 1;
  if (argc > 1 && (std::string(argv[1]) == "fast" || std::string(argv[1]) == "full")) {
    opt.level = wrtlab::parse_acceptance_level(argv[1]);
    first = 2;
  }
  for (int i = first; i < argc; ++i) opt.only.push_back(std::atoi(argv[i]));
  opt.on_result = [](const wrtlab::CriterionResult& r) {
    std::printf("%s\n", wrtlab::format_result_line(r).c_str());
    std::fflush(stdout);
  };
  const auto report = wrtlab::run_acceptance_suite(opt);
  std::printf("%s: %zu criteria, %s level, %.1f s, build %s\n", report.pass() ? "PASS" : "FAIL",
              report.criteria.size(), wrtlab::to_string(report.level), report.seconds,
              report.build_id.c_str());
  return report.pass() ? 0 : 1;
}
