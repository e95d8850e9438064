#pragma once

#include <cstdint>
#include <memory>
#include <mutex>

#include "dtrecon/boolfn.hpp"
#include "dtrecon/params.hpp"
#include "dtrecon/rng.hpp"
#include "dtrecon/trees.hpp"

namespace dtrecon {

/// local: all randomness comes from a seed-keyed tape addressed by node path,
///        so answers are a deterministic function of the input alone and
///        concurrent or reordered queries stay consistent.
/// plain: a stateful generator; single-threaded use only, and answers depend
///        on query order for fresh nodes.
enum class ReconMode { plain, local };

struct QueryStats {
  uint64_t total = 0;
  uint64_t max_per_answer = 0;
  uint64_t answers = 0;
};

/// Lazy query access to one fixed decision tree close to f: walks the partial
/// tree along each query, resolving internal nodes by estimated score argmax
/// and leaves by estimated subcube bias, never revisiting a resolved node.
class Reconstructor {
 public:
  Reconstructor(OraclePtr f, const Params& params, uint64_t seed,
                ReconMode mode = ReconMode::local);

  /// Convenience constructor deriving Params from (s, eps, delta).
  Reconstructor(OraclePtr f, uint64_t s, double eps, double delta,
                uint64_t seed, ReconMode mode = ReconMode::local,
                const Constants& consts = Constants{});

  Sign answer(const Point& z);

  /// Snapshot of the partial tree; agrees with every answer issued so far.
  DecisionTree materialize() const;

  const Params& params() const { return params_; }
  uint64_t seed() const { return tape_.master(); }
  ReconMode mode() const { return mode_; }

  /// Exact oracle-query counters: total and the largest single-answer cost
  /// (the latter is meaningful for sequential use).
  QueryStats query_stats() const;

 private:
  Sign answer_locked_walk(const Point& z);

  Params params_;
  std::shared_ptr<CountingOracle> counted_;
  ReconMode mode_;
  RandomTape tape_;
  Rng plain_rng_;
  PartialTree tree_;
  mutable std::mutex mu_;
  uint64_t max_per_answer_ = 0;
  uint64_t answers_ = 0;
};

}  // namespace dtrecon
