#pragma once

#include <cstdint>

#include "dtrecon/boolfn.hpp"
#include "dtrecon/params.hpp"

namespace dtrecon {

struct TestOutcome {
  bool accept = false;
  double mismatch = 0.0;   // empirical fraction of reconstructor disagreements
  uint64_t m = 0;          // sample count used
  double threshold = 0.0;  // kappa * eps; reject iff mismatch > threshold
  uint32_t d = 0;          // reconstructor depth, fixing the reject class
  uint64_t reconstructor_queries = 0;
  uint64_t total_queries = 0;  // reconstructor queries + m direct evaluations
};

/// Tolerant tester: draws m = ceil(c_m ln(1/delta) / eps^2) uniform points,
/// answers them through a fresh Reconstructor(f, s, eps, delta), and rejects
/// iff the empirical mismatch exceeds kappa * eps.
TestOutcome tolerant_test(OraclePtr f, uint64_t s, double eps, double delta,
                          uint64_t seed, const Constants& consts = Constants{});

}  // namespace dtrecon
