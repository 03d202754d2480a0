// Runs every acceptance criterion and prints one line per criterion.

#include <iostream>

#include "zeckit/verify.hpp"

int main() {
  int failed = 0;
  for (const auto& r : zeckit::run_acceptance()) {
    std::cout << zeckit::format_result(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed")
            << std::endl;
  return failed == 0 ? 0 : 1;
}
