// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <cstdio>
#include <cstdlib>

#include "rlab/verify.hpp"

int main() {
  rlab::AcceptanceOptions opts;
  if (const char* env = std::getenv("RLAB_SEED"))
    opts.seed = std::strtoull(env, nullptr, 10);
  bool ok = true;
  for (const rlab::CriterionResult& r : rlab::run_acceptance(opts)) {
    std::printf("[%s] %d. %s (%s)\n", r.passed ? "PASS" : "FAIL", r.number,
                r.name.c_str(), r.detail.c_str());
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
