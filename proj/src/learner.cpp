#include "dtrecon/learner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dtrecon/rng.hpp"
#include "dtrecon/tester.hpp"

namespace dtrecon {

ExactDistanceEstimator::ExactDistanceEstimator(const TruthTable& t,
                                               uint32_t s_max)
    : dp_(t, s_max) {}

double ExactDistanceEstimator::estimate(const Restriction& r, uint64_t s,
                                        double gamma) {
  (void)gamma;
  if (s < 1 || s > dp_.s_max())
    throw std::invalid_argument("exact estimator: s out of range");
  return dp_.opt(r, static_cast<uint32_t>(s));
}

Sign ExactDistanceEstimator::leaf_sign(const Restriction& r) {
  return dp_.majority_sign(r);
}

TesterDistanceEstimator::TesterDistanceEstimator(OraclePtr g,
                                                 const Constants& consts,
                                                 double delta,
                                                 double base_accuracy,
                                                 uint64_t seed)
    : g_(std::move(g)),
      consts_(consts),
      delta_(delta),
      base_accuracy_(base_accuracy),
      seed_(seed) {
  if (!(base_accuracy > 0.0 && base_accuracy < 1.0))
    throw std::invalid_argument("tester estimator: base accuracy in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("tester estimator: delta in (0, 1)");
}

double TesterDistanceEstimator::sample_mean(const Restriction& r,
                                            double accuracy) {
  auto samples = static_cast<uint64_t>(
      std::ceil(8.0 * std::log(2.0 / delta_) / (accuracy * accuracy)));
  Rng rng(mix_seeds(seed_, ++invocation_));
  Point x(g_->dimension());
  int64_t sum = 0;
  for (uint64_t i = 0; i < samples; ++i) {
    x.fill_random(rng);
    r.apply(x);
    sum += g_->query(x);
  }
  return static_cast<double>(sum) / static_cast<double>(samples);
}

double TesterDistanceEstimator::estimate(const Restriction& r, uint64_t s,
                                         double gamma) {
  if (!(gamma > 0.0 && gamma < 1.0))
    throw std::invalid_argument("tester estimator: gamma in (0, 1)");
  if (s == 1) {
    // opt_1 is the distance to the best constant, (1 - |E[g_r]|) / 2.  The
    // tester needs s >= 2, so estimate the mean directly; shifting down by
    // gamma/2 keeps eta an underestimate within the gamma slack.
    double mean = sample_mean(r, gamma);
    double est = (1.0 - std::min(1.0, std::abs(mean))) / 2.0;
    return std::max(0.0, est - gamma / 2.0);
  }
  OraclePtr sub = r.empty() ? g_ : restricted(g_, r);
  double c = consts_.soundness;
  double eta = 0.0;
  for (double eps = gamma / c; eps < 1.0; eps += gamma / c) {
    TestOutcome outcome = tolerant_test(sub, s, eps, delta_,
                                        mix_seeds(seed_, ++invocation_),
                                        consts_);
    ++tester_calls_;
    if (!outcome.accept) eta = eps;
  }
  return eta;
}

Sign TesterDistanceEstimator::leaf_sign(const Restriction& r) {
  return sample_mean(r, base_accuracy_) >= 0.0 ? +1 : -1;
}

namespace {

Restriction extended(const Restriction& r, uint32_t var, Sign value) {
  // A variable already on the path is dead in the subfunction; restricting it
  // again changes nothing, so the restriction object stays as-is.
  if (r.fixes(var)) return r;
  Restriction out = r;
  out.push(var, value);
  return out;
}

DecisionTree build_rec(DistanceEstimator& e, const Restriction& r, uint64_t s,
                       uint32_t d, double gamma, BuildAudit* audit) {
  if (s == 1 || d == 0) return DecisionTree::leaf(e.leaf_sign(r));

  uint32_t n = e.dimension();
  uint32_t best_i = 0;
  uint64_t best_s0 = 1;
  double best_error = std::numeric_limits<double>::infinity();
  for (uint32_t i = 0; i < n; ++i) {
    for (uint64_t s0 = 1; s0 < s; ++s0) {
      double lo = e.estimate(extended(r, i, -1), s0, gamma);
      double hi = e.estimate(extended(r, i, +1), s - s0, gamma);
      if (audit) audit->estimate_calls += 2;
      double err = 0.5 * (lo + hi);
      if (err < best_error) {  // strict: ties keep lowest i, then lowest s0
        best_error = err;
        best_i = i;
        best_s0 = s0;
      }
    }
  }

  if (audit) {
    BuildAudit::NodeRecord rec;
    rec.s = s;
    rec.depth = d;
    rec.chosen_error = best_error;
    rec.opt_here = e.estimate(r, s, gamma);
    audit->nodes.push_back(rec);
  }

  DecisionTree left =
      build_rec(e, extended(r, best_i, -1), best_s0, d - 1, gamma, audit);
  DecisionTree right =
      build_rec(e, extended(r, best_i, +1), s - best_s0, d - 1, gamma, audit);
  return DecisionTree::internal(best_i, std::move(left), std::move(right));
}

}  // namespace

DecisionTree build_dt(DistanceEstimator& estimator, uint64_t s, uint32_t d,
                      double gamma, BuildAudit* audit) {
  if (s < 1) throw std::invalid_argument("build_dt: s must be >= 1");
  Restriction empty;
  return build_rec(estimator, empty, s, d, gamma, audit);
}

LearnPlan plan_learn(uint64_t s_prime, double eps_prime, double c) {
  if (s_prime < 1) throw std::invalid_argument("learn: s' must be >= 1");
  if (!(eps_prime > 0.0 && eps_prime < 1.0))
    throw std::invalid_argument("learn: eps' must be in (0, 1)");
  if (!(c >= 1.0)) throw std::invalid_argument("learn: c must be >= 1");
  LearnPlan plan;
  double d_raw =
      std::ceil(std::log2(static_cast<double>(s_prime) / eps_prime)) - 1.0;
  plan.d = d_raw <= 0.0 ? 0 : static_cast<uint32_t>(d_raw);
  double exponent = std::max(1.0, std::log2(c));
  plan.gamma = (eps_prime / 2.0) *
               std::pow(eps_prime / static_cast<double>(s_prime), exponent);
  return plan;
}

DecisionTree learn(DistanceEstimator& estimator, uint64_t s_prime,
                   double eps_prime, BuildAudit* audit) {
  LearnPlan plan = plan_learn(s_prime, eps_prime, estimator.soundness());
  return build_dt(estimator, s_prime, plan.d, plan.gamma, audit);
}

}  // namespace dtrecon
