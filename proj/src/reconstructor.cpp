#include "dtrecon/reconstructor.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "dtrecon/estimators.hpp"

namespace dtrecon {

Reconstructor::Reconstructor(OraclePtr f, const Params& params, uint64_t seed,
                             ReconMode mode)
    : params_(params),
      counted_(std::make_shared<CountingOracle>(std::move(f))),
      mode_(mode),
      tape_(seed),
      plain_rng_(mix_seeds(seed, 0x706c61696eull)),
      tree_(params.d) {
  if (counted_->dimension() != params_.n)
    throw std::invalid_argument("reconstructor: params.n != oracle dimension");
}

namespace {

Params derive_for(const OraclePtr& f, uint64_t s, double eps, double delta,
                  const Constants& consts) {
  if (!f) throw std::invalid_argument("reconstructor: null oracle");
  return Params::derive(f->dimension(), s, eps, delta, consts);
}

}  // namespace

Reconstructor::Reconstructor(OraclePtr f, uint64_t s, double eps, double delta,
                             uint64_t seed, ReconMode mode,
                             const Constants& consts)
    : Reconstructor(f, derive_for(f, s, eps, delta, consts), seed, mode) {}

Sign Reconstructor::answer(const Point& z) {
  if (z.dimension() != params_.n)
    throw std::invalid_argument("reconstructor: dimension mismatch");
  uint64_t before = counted_->count();
  Sign out = answer_locked_walk(z);
  uint64_t spent = counted_->count() - before;
  {
    std::lock_guard<std::mutex> lock(mu_);
    max_per_answer_ = std::max(max_per_answer_, spent);
    ++answers_;
  }
  return out;
}

Sign Reconstructor::answer_locked_walk(const Point& z) {
  const uint64_t q = params_.score_samples_per_node();
  const uint64_t q_leaf = params_.leaf_samples();

  std::string path;
  path.reserve(params_.d);
  Restriction along_path;
  uint32_t node = tree_.root();

  for (uint32_t level = 0; level < params_.d; ++level) {
    uint32_t var;
    bool resolved;
    {
      std::lock_guard<std::mutex> lock(mu_);
      resolved = tree_.internal_resolved(node);
      if (resolved) var = tree_.variable(node);
    }
    if (!resolved) {
      // Estimate outside the lock; racing resolvers in local mode compute
      // identical results from the tape, so the first write wins harmlessly.
      OraclePtr sub = restricted(counted_, along_path);
      std::vector<double> scores;
      if (mode_ == ReconMode::local) {
        scores = estimate_scores_sampled(
            *sub, params_.p, q, [&](uint64_t j) {
              return tape_.stream(path, TapePurpose::score, j);
            });
      } else {
        scores = estimate_scores_sampled(*sub, params_.p, q, [&](uint64_t j) {
          (void)j;
          return Rng(plain_rng_.next_u64());
        });
      }
      uint32_t best = 0;
      for (uint32_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best]) best = i;  // ties keep the lowest index
      std::lock_guard<std::mutex> lock(mu_);
      tree_.resolve_internal(node, best);
      var = tree_.variable(node);
    }

    bool right = z.bit(var);
    path.push_back(right ? 'R' : 'L');
    if (!along_path.fixes(var)) along_path.push(var, right ? +1 : -1);
    {
      std::lock_guard<std::mutex> lock(mu_);
      node = tree_.child(node, right);
    }
  }

  {
    std::lock_guard<std::mutex> lock(mu_);
    if (tree_.leaf_resolved(node)) return tree_.leaf_label(node);
  }

  // Estimate E[f_leaf] from uniform completions of the free coordinates.
  int64_t sum = 0;
  Point x(params_.n);
  for (uint64_t j = 0; j < q_leaf; ++j) {
    Rng rng = mode_ == ReconMode::local
                  ? tape_.stream(path, TapePurpose::leaf, j)
                  : Rng(plain_rng_.next_u64());
    x.fill_random(rng);
    along_path.apply(x);
    sum += counted_->query(x);
  }
  Sign label = sum >= 0 ? +1 : -1;
  std::lock_guard<std::mutex> lock(mu_);
  tree_.resolve_leaf(node, label);
  return tree_.leaf_label(node);
}

DecisionTree Reconstructor::materialize() const {
  std::lock_guard<std::mutex> lock(mu_);
  return tree_.snapshot();
}

QueryStats Reconstructor::query_stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  QueryStats stats;
  stats.total = counted_->count();
  stats.max_per_answer = max_per_answer_;
  stats.answers = answers_;
  return stats;
}

}  // namespace dtrecon
