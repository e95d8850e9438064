#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dtrecon/params.hpp"

namespace dtrecon {

/// One parsed invocation of the experiment harness.
struct ExperimentConfig {
  std::string subcommand;  // gen | scores | reconstruct | test | learn
  uint32_t n = 8;
  uint64_t s = 4;
  double eps = 0.1;
  double delta = 0.1;
  double rho = 0.0;
  uint64_t seed = 1;
  uint32_t trials = 1;
  std::string fn = "random-tree";  // constant | dictator | parity-k |
                                   // majority-k | random-tree | random-table
  std::string out;                 // artifact base path; empty -> stdout
  double p = 0.5;                  // scores: noise rate
  double tau = 0.05;               // scores: accuracy target
  std::string backend = "exact";   // learn: exact | tester
  Constants consts;
};

/// Applies one "name=value" constant override (c_d, c_p, c_tau, c_q, c_leaf,
/// c_m, kappa, c); throws std::invalid_argument on unknown names.
void apply_constant_override(Constants& consts, const std::string& assignment);

/// Runs the configured pipeline deterministically under its seed and writes
/// the CSV/tree artifacts.  Returns the process exit code (for `test`, the
/// verdict: 0 accept, 1 reject).
int run(const ExperimentConfig& config, std::ostream& out_stream,
        std::ostream& err_stream);

inline constexpr const char* kCsvHeader =
    "trial,n,s,eps,delta,rho,queries_total,queries_max_per_answer,distance,"
    "verdict,seed";

}  // namespace dtrecon
