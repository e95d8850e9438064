#include "dtrecon/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dtrecon/boolfn.hpp"

namespace dtrecon {

namespace {

void validate_constants(const Constants& k) {
  if (!(k.c_d > 0 && k.c_p > 0 && k.c_tau > 0 && k.c_q > 0 && k.c_leaf > 0 &&
        k.c_m > 0))
    throw std::invalid_argument("params: constants must be positive");
  if (!(k.kappa > 1.0))
    throw std::invalid_argument("params: kappa must exceed 1");
  if (!(k.soundness >= 1.0))
    throw std::invalid_argument("params: soundness must be >= 1");
}

uint64_t ceil_to_count(double v) {
  double c = std::ceil(v);
  if (!(c >= 1.0)) return 1;
  if (c >= 9.0e18) throw unsupported_scale("params: sample count overflows");
  return static_cast<uint64_t>(c);
}

}  // namespace

Params Params::derive(uint32_t n, uint64_t s, double eps, double delta,
                      const Constants& consts) {
  if (n < 1 || n > kMaxDimension)
    throw std::invalid_argument("params: n must be in [1, 2^20]");
  if (s < 2) throw std::invalid_argument("params: s must be >= 2");
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("params: eps must be in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("params: delta must be in (0, 1)");
  validate_constants(consts);

  Params out;
  out.n = n;
  out.s = s;
  out.eps = eps;
  out.delta = delta;
  out.consts = consts;

  double log_s = std::log2(static_cast<double>(s));
  double ls = std::max(1.0, log_s);

  double d_raw = consts.c_d * log_s * log_s * log_s / (eps * eps * eps);
  out.d = d_raw >= static_cast<double>(n)
              ? n
              : static_cast<uint32_t>(std::max(1.0, std::ceil(d_raw)));

  out.p = std::min(0.5, consts.c_p * eps / ls);
  out.tau = std::min(0.5, consts.c_tau * eps * eps * eps / (ls * ls * ls));
  return out;
}

uint64_t Params::score_samples_per_node() const {
  // ln(1/delta') with delta' = delta / 2^(d+1), kept in log form so deep
  // trees cannot underflow the budget to zero.
  double log_inv_delta =
      std::log(1.0 / delta) + (static_cast<double>(d) + 1.0) * std::log(2.0);
  double tau_half = tau / 2.0;
  double q = std::ceil(consts.c_q *
                       (std::log(2.0 * static_cast<double>(n)) + log_inv_delta) /
                       (tau_half * tau_half));
  return ceil_to_count(q);
}

uint64_t Params::leaf_samples() const {
  double log_term =
      std::log(1.0 / delta) + (static_cast<double>(d) + 2.0) * std::log(2.0);
  double q = std::ceil(consts.c_leaf * (32.0 / (eps * eps)) * log_term);
  return ceil_to_count(q);
}

uint64_t Params::per_answer_cap() const {
  uint64_t q = score_samples_per_node();
  uint64_t leaf = leaf_samples();
  return static_cast<uint64_t>(d) * 2 * q + leaf;
}

}  // namespace dtrecon
