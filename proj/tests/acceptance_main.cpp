// One line per acceptance criterion; exit status 1 if any fails.
#include <iostream>
#include <thread>

#include "seqode/harness/acceptance.hpp"

int main() {
  seqode::AcceptanceOptions options;
  options.threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const auto results = seqode::run_acceptance(
      options, [](const seqode::CriterionResult& r) { std::cout << seqode::format_result(r) << std::endl; });
  int failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << (results.size() - failed) << "/" << results.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
