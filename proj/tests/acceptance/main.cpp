// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cstdio>
#include <vector>

#include "criteria.hpp"

int main() {
  int failures = 0;
  for (const auto& criterion : acceptance::all_criteria()) {
    acceptance::Result res;
    try {
      res = criterion.run();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %2d. %s%s%s\n", res.pass ? "PASS" : "FAIL", criterion.number,
                criterion.name, res.detail.empty() ? "" : " — ", res.detail.c_str());
    std::fflush(stdout);
    failures += res.pass ? 0 : 1;
  }
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
