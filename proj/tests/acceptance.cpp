#include <iostream>

#include "zlab/acceptance.hpp"

int main() {
  int failed = 0;
  zlab::run_acceptance({}, [&](const zlab::CriterionResult& r) {
    std::cout << zlab::format_line(r) << std::endl;
    failed += !r.pass;
  });
  std::cout << (zlab::kCriterionCount - failed) << "/" << zlab::kCriterionCount << " criteria pass" << std::endl;
  return failed == 0 ? 0 : 1;
}
