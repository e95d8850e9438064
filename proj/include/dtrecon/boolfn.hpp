#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "dtrecon/point.hpp"
#include "dtrecon/rng.hpp"
#include "dtrecon/trees.hpp"

namespace dtrecon {

/// Raised when an exhaustive routine is asked to run beyond its cutoff.
struct unsupported_scale : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic membership-query interface over {-1,+1}^n -> {-1,+1}.
/// Implementations must be pure: repeated queries at the same point return
/// the same value, and concurrent queries are safe.
class FunctionOracle {
 public:
  explicit FunctionOracle(uint32_t n) : n_(n) {
    if (n < 1 || n > kMaxDimension)
      throw std::invalid_argument("oracle: dimension must be in [1, 2^20]");
  }
  virtual ~FunctionOracle() = default;

  uint32_t dimension() const { return n_; }

  Sign query(const Point& x) const {
    if (x.dimension() != n_)
      throw std::invalid_argument("oracle: dimension mismatch");
    return do_query(x);
  }

 protected:
  virtual Sign do_query(const Point& x) const = 0;

 private:
  uint32_t n_;
};

using OraclePtr = std::shared_ptr<const FunctionOracle>;

OraclePtr make_constant(uint32_t n, Sign value);
OraclePtr make_dictator(uint32_t n, uint32_t var);
OraclePtr make_parity(uint32_t n, std::vector<uint32_t> vars);
/// Majority over an odd number of coordinates.
OraclePtr make_majority(uint32_t n, std::vector<uint32_t> vars);
OraclePtr make_tree_oracle(uint32_t n, DecisionTree tree);

/// The subfunction forcing r's coordinates; dimension is unchanged and the
/// restricted coordinates of the input are ignored.
OraclePtr restricted(OraclePtr f, Restriction r);

/// Flips f(x) iff a pseudorandom predicate keyed by (seed, x) fires, with
/// per-point probability rho.  Deterministic per point.
OraclePtr corrupt(OraclePtr f, double rho, uint64_t seed);

/// Counts queries to the wrapped oracle.  The counter is atomic: counts from
/// concurrent threads sum correctly, with no ordering promised.
class CountingOracle final : public FunctionOracle {
 public:
  explicit CountingOracle(OraclePtr inner)
      : FunctionOracle(inner->dimension()), inner_(std::move(inner)) {}

  uint64_t count() const { return count_.load(std::memory_order_relaxed); }

 protected:
  Sign do_query(const Point& x) const override {
    count_.fetch_add(1, std::memory_order_relaxed);
    return inner_->query(x);
  }

 private:
  OraclePtr inner_;
  mutable std::atomic<uint64_t> count_{0};
};

/// A uniformly random decision tree with exactly s leaves (2 <= s <= 2^n):
/// variables are drawn uniformly among those unused on the path, the leaf
/// budget splits uniformly over its feasible range, and leaf labels are
/// uniform signs.  No variable repeats along any root-to-leaf path.
DecisionTree random_tree_instance(uint32_t n, uint64_t s, Rng& rng);

/// Exhaustive Pr[f(x) != g(x)]; requires n <= 24.
double exact_distance(const FunctionOracle& f, const FunctionOracle& g);

/// Empirical mismatch fraction over m uniform points.
double sampled_distance(const FunctionOracle& f, const FunctionOracle& g,
                        uint64_t m, Rng& rng);

}  // namespace dtrecon
