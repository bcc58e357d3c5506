#pragma once

#include <string>
#include <vector>

namespace enpp {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Invariant suite on small grids (N = 32; N = 16 and shorter runs with quick).
std::vector<CheckResult> run_selftest(bool quick);

}  // namespace enpp
