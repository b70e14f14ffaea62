#pragma once

#include <string>
#include <vector>

namespace fpt {

struct InvariantResult {
  std::string module;
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs the quick invariant checks of every module (normalisation, ordering,
/// derivative consistency, degenerate reductions, determinism). Failures are
/// reported, never thrown.
std::vector<InvariantResult> run_invariant_suites();

}  // namespace fpt
