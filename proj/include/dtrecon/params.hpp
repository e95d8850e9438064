#pragma once

#include <cstdint>

namespace dtrecon {

/// Every hidden constant behind the asymptotic parameter choices, in one
/// place and overridable from the CLI.
struct Constants {
  double c_d = 1.0;     // depth:       d   = min(n, ceil(c_d (log2 s)^3 / eps^3))
  double c_p = 1.0;     // noise rate:  p   = clamp(c_p eps / max(1, log2 s), <= 1/2)
  double c_tau = 1.0;   // score gap:   tau = c_tau eps^3 / max(1, log2 s)^3
  double c_q = 2.0;     // Hoeffding factor for score sample counts
  double c_leaf = 1.0;  // leaf sample factor
  double c_m = 2.0;     // tester sample factor: m = ceil(c_m ln(1/delta) / eps^2)
  double kappa = 4.0;   // tester reject multiplier: reject iff mismatch > kappa*eps
  double soundness = 4.0;  // learner's tester soundness constant c
};

/// Derived reconstruction parameters for one (n, s, eps, delta) instance.
struct Params {
  uint32_t n = 0;
  uint64_t s = 0;
  double eps = 0.0;
  double delta = 0.0;
  Constants consts;

  uint32_t d = 0;    // depth cap
  double p = 0.0;    // noise rate
  double tau = 0.0;  // score separation target

  /// Validates s >= 2, eps in (0,1), delta in (0,1) and computes (d, p, tau).
  /// p is clamped into (0, 1/2] and tau into (0, 1/2]; both clamps keep
  /// constant overrides from leaving the estimators' preconditions.
  static Params derive(uint32_t n, uint64_t s, double eps, double delta,
                       const Constants& consts = Constants{});

  /// Samples per score estimation at a node: accuracy tau/2, failure budget
  /// delta / 2^(d+1).  Each sample costs 2 oracle queries.
  uint64_t score_samples_per_node() const;

  /// Samples per leaf-label estimation: accuracy eps/4, failure budget
  /// delta / 2^(d+1), i.e. ceil(c_leaf * (32/eps^2) * ln(2^(d+2)/delta)).
  uint64_t leaf_samples() const;

  /// Hard per-answer oracle-query cap: d * 2q + q_leaf.
  uint64_t per_answer_cap() const;
};

}  // namespace dtrecon
