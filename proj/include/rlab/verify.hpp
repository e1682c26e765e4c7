#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rlab {

// Outcome of one acceptance criterion; detail carries the check count or
// the first failing instance.
struct CriterionResult {
  int number = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0;  // offsets every seeded family
  std::string only_model;  // restrict the model sweeps, e.g. "torus:g=2"
};

// The full acceptance suite; every check is an exact equality.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

}  // namespace rlab
