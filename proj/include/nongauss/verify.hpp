#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "nongauss/series.hpp"

namespace nongauss::verify {

enum class GridSize { small, full };

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;  ///< worst deviation, or the first failure
};

/// Runs every library invariant plus the comparison against the
/// extended-precision reference path. Series paths use `ctl`; comparison
/// thresholds are fixed, so a loose `ctl.tol` is reported as failures.
std::vector<CheckResult> run_all(const SeriesControl& ctl = {},
                                 GridSize grid = GridSize::full);

/// Prints one PASS/FAIL line per check; returns true iff all passed.
bool print_report(std::ostream& os, const std::vector<CheckResult>& results);

}  // namespace nongauss::verify
