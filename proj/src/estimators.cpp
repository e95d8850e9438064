#include "dtrecon/estimators.hpp"

#include <bit>
#include <cmath>

#include "dtrecon/bruteforce.hpp"

namespace dtrecon {

void noisy_copy_into(const Point& x, double p, Rng& rng, Point& out) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("noisy copy: p must be in (0, 1)");
  out = x;
  uint32_t n = x.dimension();
  // Geometric skipping visits only the rerandomized coordinates, O(pn)
  // expected draws instead of n.
  double log1mp = std::log1p(-p);
  uint64_t i = 0;
  while (true) {
    double u = rng.next_double_open();
    double skip = std::floor(std::log(u) / log1mp);
    if (skip >= static_cast<double>(n)) break;
    i += static_cast<uint64_t>(skip);
    if (i >= n) break;
    out.set_bit(static_cast<uint32_t>(i), rng.next_u64() >> 63);
    ++i;
  }
}

Point noisy_copy(const Point& x, double p, Rng& rng) {
  Point y(x.dimension());
  noisy_copy_into(x, p, rng, y);
  return y;
}

std::vector<double> score_estimate_from_pair(const Point& x, const Point& y,
                                             bool values_differ, double p) {
  uint32_t n = x.dimension();
  std::vector<double> eta(n, 0.0);
  if (!values_differ) return eta;
  double equal_value = 1.0 - 1.0 / (1.0 - p / 2.0);
  for (uint32_t i = 0; i < n; ++i)
    eta[i] = x.bit(i) == y.bit(i) ? equal_value : 1.0;
  return eta;
}

std::vector<double> unbiased_score_sample(const FunctionOracle& f, double p,
                                          Rng& rng) {
  Point x(f.dimension());
  x.fill_random(rng);
  Point y = noisy_copy(x, p, rng);
  bool differ = f.query(x) != f.query(y);
  return score_estimate_from_pair(x, y, differ, p);
}

uint64_t score_sample_count(uint32_t n, double tau, double delta, double c_q) {
  if (!(tau > 0.0 && tau < 1.0))
    throw std::invalid_argument("score samples: tau must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("score samples: delta must be in (0, 1)");
  if (!(c_q > 0.0)) throw std::invalid_argument("score samples: c_q <= 0");
  double q = std::ceil(
      c_q * (std::log(2.0 * n) + std::log(1.0 / delta)) / (tau * tau));
  if (q >= 9.0e18) throw unsupported_scale("score samples: q overflows");
  return static_cast<uint64_t>(q);
}

std::vector<double> estimate_scores_sampled(
    const FunctionOracle& f, double p, uint64_t q,
    const std::function<Rng(uint64_t)>& rng_for) {
  if (q < 1) throw std::invalid_argument("estimate scores: q must be >= 1");
  uint32_t n = f.dimension();
  // eta_i takes only two nonzero values, 1 when x_i != y_i and
  // 1 - 1/(1 - p/2) when x_i = y_i, both gated on f(x) != f(y).  Tracking the
  // differing-sample count and per-coordinate flip counts reproduces the
  // exact mean without touching all n coordinates per sample.
  std::vector<uint64_t> flips(n, 0);
  uint64_t differ_count = 0;
  Point x(n);
  Point y(n);
  for (uint64_t j = 0; j < q; ++j) {
    Rng rng = rng_for(j);
    x.fill_random(rng);
    noisy_copy_into(x, p, rng, y);
    Sign fx = f.query(x);
    Sign fy = f.query(y);
    if (fx == fy) continue;
    ++differ_count;
    const auto& xw = x.words();
    const auto& yw = y.words();
    for (size_t w = 0; w < xw.size(); ++w) {
      uint64_t diff = xw[w] ^ yw[w];
      while (diff) {
        flips[w * 64 + static_cast<uint32_t>(std::countr_zero(diff))]++;
        diff &= diff - 1;
      }
    }
  }
  double equal_value = 1.0 - 1.0 / (1.0 - p / 2.0);
  std::vector<double> mean(n);
  auto qd = static_cast<double>(q);
  for (uint32_t i = 0; i < n; ++i) {
    double sum = equal_value * static_cast<double>(differ_count - flips[i]) +
                 static_cast<double>(flips[i]);
    mean[i] = sum / qd;
  }
  return mean;
}

std::vector<double> estimate_scores(const FunctionOracle& f, double p,
                                    double tau, double delta, Rng& rng,
                                    double c_q) {
  uint64_t q = score_sample_count(f.dimension(), tau, delta, c_q);
  return estimate_scores_sampled(
      f, p, q, [&rng](uint64_t) { return Rng(rng.next_u64()); });
}

std::pair<std::vector<double>, std::vector<double>>
conditional_ns_identity_check(const FunctionOracle& f, double p) {
  uint32_t n = f.dimension();
  if (n > 10)
    throw unsupported_scale("conditional identity check: n must be <= 10");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("conditional identity check: p in (0, 1)");

  TruthTable t = TruthTable::tabulate(f);
  uint64_t size = t.size();

  // Left side: exact restricted noise sensitivities via the spectrum.
  std::vector<double> lhs(n);
  if (n == 1) {
    lhs[0] = 0.0;  // restrictions of a 1-variable function are constants
  } else {
    for (uint32_t i = 0; i < n; ++i)
      lhs[i] = 0.5 * (exact_ns(t.restricted(i, -1), p) +
                      exact_ns(t.restricted(i, +1), p));
  }

  // Right side: sweep the exact (x, y) channel.  The pair weight depends only
  // on the Hamming distance h: (p/2)^h * (1-p/2)^(n-h), times 2^-n for x.
  std::vector<double> pow_eq(n + 1), pow_ne(n + 1);
  pow_eq[0] = pow_ne[0] = 1.0;
  for (uint32_t k = 1; k <= n; ++k) {
    pow_eq[k] = pow_eq[k - 1] * (1.0 - p / 2.0);
    pow_ne[k] = pow_ne[k - 1] * (p / 2.0);
  }
  std::vector<double> rhs(n, 0.0);
  double point_weight = 1.0 / static_cast<double>(size);
  for (uint64_t xb = 0; xb < size; ++xb) {
    for (uint64_t yb = 0; yb < size; ++yb) {
      if (t.at(xb) == t.at(yb)) continue;
      uint64_t diff = xb ^ yb;
      auto h = static_cast<uint32_t>(std::popcount(diff));
      double w = point_weight * pow_ne[h] * pow_eq[n - h];
      for (uint32_t i = 0; i < n; ++i)
        if (!((diff >> i) & 1)) rhs[i] += w;
    }
  }
  double scale = 1.0 / (1.0 - p / 2.0);
  for (uint32_t i = 0; i < n; ++i) rhs[i] *= scale;
  return {lhs, rhs};
}

}  // namespace dtrecon
