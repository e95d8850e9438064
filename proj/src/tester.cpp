#include "dtrecon/tester.hpp"

#include <cmath>

#include "dtrecon/reconstructor.hpp"

namespace dtrecon {

TestOutcome tolerant_test(OraclePtr f, uint64_t s, double eps, double delta,
                          uint64_t seed, const Constants& consts) {
  Params params = Params::derive(f->dimension(), s, eps, delta, consts);
  double m_raw = std::ceil(consts.c_m * std::log(1.0 / delta) / (eps * eps));
  if (m_raw >= 9.0e18) throw unsupported_scale("tester: m overflows");
  auto m = static_cast<uint64_t>(std::max(1.0, m_raw));

  // A fresh reconstructor per test keeps invocations independent.
  Reconstructor recon(f, params, mix_seeds(seed, 0x7265636f6eull),
                      ReconMode::local);
  Rng point_rng(mix_seeds(seed, 0x706f696e7473ull));

  uint64_t mismatches = 0;
  Point x(f->dimension());
  for (uint64_t i = 0; i < m; ++i) {
    x.fill_random(point_rng);
    Sign b = recon.answer(x);
    if (f->query(x) != b) ++mismatches;
  }

  TestOutcome out;
  out.m = m;
  out.mismatch = static_cast<double>(mismatches) / static_cast<double>(m);
  out.threshold = consts.kappa * eps;
  out.accept = !(out.mismatch > out.threshold);
  out.d = params.d;
  out.reconstructor_queries = recon.query_stats().total;
  out.total_queries = out.reconstructor_queries + m;
  return out;
}

}  // namespace dtrecon
