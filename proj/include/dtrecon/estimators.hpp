#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "dtrecon/boolfn.hpp"
#include "dtrecon/point.hpp"
#include "dtrecon/rng.hpp"

namespace dtrecon {

/// p-noisy copy: each coordinate is independently replaced by a fresh uniform
/// sign with probability p (so it flips with probability p/2).  Rerandomizing
/// rather than flipping with probability p is deliberate; the two differ.
Point noisy_copy(const Point& x, double p, Rng& rng);
void noisy_copy_into(const Point& x, double p, Rng& rng, Point& out);

/// The per-pair score estimate for every coordinate:
///   eta_i = 1[f(x) != f(y)] * (1 - 1[x_i = y_i] / (1 - p/2)).
/// Exposed separately so its arithmetic is testable without sampling.
std::vector<double> score_estimate_from_pair(const Point& x, const Point& y,
                                             bool values_differ, double p);

/// One draw of (x, p-noisy y): exactly 2 oracle queries, O(n) time, and an
/// unbiased estimate of Score_i(f, p) in every coordinate.
std::vector<double> unbiased_score_sample(const FunctionOracle& f, double p,
                                          Rng& rng);

/// Sample count for simultaneous tau-accurate estimates with failure
/// probability delta: ceil(c_q * (ln(2n) + ln(1/delta)) / tau^2).
uint64_t score_sample_count(uint32_t n, double tau, double delta,
                            double c_q = 2.0);

/// Coordinate-wise mean of q pair samples, sample j drawing its randomness
/// from rng_for(j).  Makes exactly 2q oracle queries.
std::vector<double> estimate_scores_sampled(
    const FunctionOracle& f, double p, uint64_t q,
    const std::function<Rng(uint64_t)>& rng_for);

/// Mean of score_sample_count(n, tau, delta, c_q) unbiased samples; with
/// probability >= 1 - delta every coordinate lands within +-tau of
/// Score_i(f, p).
std::vector<double> estimate_scores(const FunctionOracle& f, double p,
                                    double tau, double delta, Rng& rng,
                                    double c_q = 2.0);

/// Both sides of the identity
///   E_b[NS_p(f_{x_i=b})] = Pr[f(x) != f(y) and x_i = y_i] / (1 - p/2)
/// for every coordinate, by exact enumeration of the (x, y) noise channel.
/// Requires n <= 10.
std::pair<std::vector<double>, std::vector<double>>
conditional_ns_identity_check(const FunctionOracle& f, double p);

}  // namespace dtrecon
