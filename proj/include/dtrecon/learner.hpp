#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dtrecon/boolfn.hpp"
#include "dtrecon/bruteforce.hpp"
#include "dtrecon/params.hpp"
#include "dtrecon/trees.hpp"

namespace dtrecon {

/// Distance-to-small-tree estimation bound to one target function g: an
/// estimate eta for a restriction r and budget s promises
///   eta <= opt_s(g restricted by r) <= c * eta + gamma
/// when the backend's guarantees hold, with c = soundness().  Also supplies
/// the base-case leaf sign so callers never touch g directly.
class DistanceEstimator {
 public:
  virtual ~DistanceEstimator() = default;

  virtual uint32_t dimension() const = 0;
  virtual double soundness() const = 0;
  virtual double estimate(const Restriction& r, uint64_t s, double gamma) = 0;
  /// sign(E[g_r]) or an estimate of it; sign(0) = +1.
  virtual Sign leaf_sign(const Restriction& r) = 0;
  /// Tolerant-tester invocations made so far (0 for exact backends).
  virtual uint64_t tester_calls() const { return 0; }
};

/// Exact backend: tabulates g once and serves every (restriction, s) from a
/// single subcube dynamic program.  Soundness c = 1; gamma is ignored.
class ExactDistanceEstimator final : public DistanceEstimator {
 public:
  ExactDistanceEstimator(const TruthTable& t, uint32_t s_max);

  uint32_t dimension() const override { return dp_.dimension(); }
  double soundness() const override { return 1.0; }
  double estimate(const Restriction& r, uint64_t s, double gamma) override;
  Sign leaf_sign(const Restriction& r) override;

 private:
  OptTable dp_;
};

/// Tester backend: eta is the largest eps on the grid gamma/c, 2 gamma/c, ...
/// for which the tolerant tester rejects (0 if none rejects).  Budget s = 1
/// bypasses the tester: the distance to the best constant is estimated
/// directly from uniform samples of E[g_r].
class TesterDistanceEstimator final : public DistanceEstimator {
 public:
  /// base_accuracy feeds the base-case mean estimates (leaf_sign and s = 1),
  /// sampled at ceil(8 ln(2/delta) / base_accuracy^2) points.
  TesterDistanceEstimator(OraclePtr g, const Constants& consts, double delta,
                          double base_accuracy, uint64_t seed);

  uint32_t dimension() const override { return g_->dimension(); }
  double soundness() const override { return consts_.soundness; }
  double estimate(const Restriction& r, uint64_t s, double gamma) override;
  Sign leaf_sign(const Restriction& r) override;
  uint64_t tester_calls() const override { return tester_calls_; }

 private:
  double sample_mean(const Restriction& r, double accuracy);

  OraclePtr g_;
  Constants consts_;
  double delta_;
  double base_accuracy_;
  uint64_t seed_;
  uint64_t invocation_ = 0;
  uint64_t tester_calls_ = 0;
};

/// Per-node audit rows recorded by build_dt.
struct BuildAudit {
  struct NodeRecord {
    uint64_t s = 0;
    uint32_t depth = 0;
    double chosen_error = 0.0;  // error(i*, s0*, s1*) at this node
    double opt_here = 0.0;      // estimate(r, s, gamma) at this node
  };
  std::vector<NodeRecord> nodes;
  uint64_t estimate_calls = 0;
};

/// Top-down proper learner: base case returns the leaf sign; otherwise picks
/// the (i, s0, s1) grid point minimizing
///   error(i, s0, s1) = (eta(x_i = -1, s0) + eta(x_i = +1, s1)) / 2
/// (ties to the lowest i, then lowest s0) and recurses on the two
/// restrictions.  Output has size <= s and depth <= d.
DecisionTree build_dt(DistanceEstimator& estimator, uint64_t s, uint32_t d,
                      double gamma, BuildAudit* audit = nullptr);

struct LearnPlan {
  uint32_t d = 0;
  double gamma = 0.0;
};

/// d = max(0, ceil(log2(s'/eps')) - 1) and
/// gamma = (eps'/2) * (eps'/s')^max(1, log2 c).
LearnPlan plan_learn(uint64_t s_prime, double eps_prime, double c);

/// Runs build_dt with the plan above; the output tree has at most s' leaves.
DecisionTree learn(DistanceEstimator& estimator, uint64_t s_prime,
                   double eps_prime, BuildAudit* audit = nullptr);

}  // namespace dtrecon
