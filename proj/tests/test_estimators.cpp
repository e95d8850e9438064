#include <doctest.h>

#include <cmath>

#include "dtrecon/boolfn.hpp"
#include "dtrecon/bruteforce.hpp"
#include "dtrecon/estimators.hpp"
#include "exhaustive.hpp"

using namespace dtrecon;

TEST_SUITE("estimators") {

TEST_CASE("noisy copy: degenerate rate, flip frequency, independence") {
  Rng rng(1);
  Point x(64);
  x.fill_random(rng);
  Point y = noisy_copy(x, std::pow(2.0, -40), rng);
  CHECK(y == x);

  // Flip frequency at p = 0.5 is p/2 = 0.25 per coordinate.
  const int draws = 100000;
  const uint32_t n = 16;
  Point base(n);
  base.fill_random(rng);
  std::vector<int> flips(n, 0);
  std::vector<std::vector<int>> joint(n, std::vector<int>(n, 0));
  Point noisy(n);
  for (int i = 0; i < draws; ++i) {
    noisy_copy_into(base, 0.5, rng, noisy);
    for (uint32_t a = 0; a < n; ++a) {
      if (noisy.bit(a) == base.bit(a)) continue;
      ++flips[a];
      for (uint32_t b = a + 1; b < n; ++b)
        if (noisy.bit(b) != base.bit(b)) ++joint[a][b];
    }
  }
  for (uint32_t a = 0; a < n; ++a) {
    double freq = static_cast<double>(flips[a]) / draws;
    CHECK(std::abs(freq - 0.25) <= 0.01);
  }
  // Pairwise flip correlation is ~0; covariance within 4 standard errors.
  for (uint32_t a = 0; a < n; ++a)
    for (uint32_t b = a + 1; b < n; ++b) {
      double pa = static_cast<double>(flips[a]) / draws;
      double pb = static_cast<double>(flips[b]) / draws;
      double pab = static_cast<double>(joint[a][b]) / draws;
      CHECK(std::abs(pab - pa * pb) <= 4.0 * std::sqrt(0.25 * 0.75 / draws));
    }
}

TEST_CASE("pair estimate arithmetic matches the closed form") {
  Point x(2), y(2);
  x.set(0, +1);
  x.set(1, +1);
  y.set(0, -1);
  y.set(1, +1);

  auto zero = score_estimate_from_pair(x, y, false, 0.5);
  CHECK(zero[0] == 0.0);
  CHECK(zero[1] == 0.0);

  auto eta = score_estimate_from_pair(x, y, true, 0.5);
  CHECK(eta[0] == 1.0);
  CHECK(eta[1] == doctest::Approx(1.0 - 4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("sampled estimates stay in the closed-form range") {
  Rng rng(4);
  for (double p : {0.1, 0.5, 0.9}) {
    auto f = make_table_oracle(TruthTable::random(6, rng));
    double lo = 1.0 - 1.0 / (1.0 - p / 2.0);
    for (int i = 0; i < 200; ++i) {
      auto eta = unbiased_score_sample(*f, p, rng);
      for (double v : eta) {
        CHECK(v >= lo - 1e-12);
        CHECK(v <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("unbiasedness: channel expectation equals the exact score") {
  Rng rng(10);
  for (uint32_t n : {4u, 6u, 8u}) {
    for (int t = 0; t < 5; ++t) {
      TruthTable table = TruthTable::random(n, rng);
      for (double p : {0.1, 0.5, 0.9}) {
        auto expect = testing::channel_estimator_expectation(table, p);
        for (uint32_t i = 0; i < n; ++i)
          CHECK(std::abs(expect[i] - exact_score(table, p, i)) < 1e-12);
      }
    }
  }

  // Dictator at p = 0.5: expectations are exactly (1/4, 0).
  TruthTable dict(2);
  for (uint64_t idx = 0; idx < 4; ++idx) dict.set(idx, (idx & 1) ? +1 : -1);
  auto expect = testing::channel_estimator_expectation(dict, 0.5);
  CHECK(expect[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(std::abs(expect[1]) < 1e-15);
}

TEST_CASE("constant functions give identically zero estimates") {
  auto f = make_constant(16, +1);
  Rng rng(3);
  auto est = estimate_scores(*f, 0.3, 0.2, 0.2, rng);
  for (double v : est) CHECK(v == 0.0);
}

TEST_CASE("estimate_scores: query count and sample formula") {
  auto counted = std::make_shared<CountingOracle>(make_dictator(16, 2));
  Rng rng(5);
  double tau = 0.2, delta = 0.1;
  uint64_t q = score_sample_count(16, tau, delta);
  CHECK(q == static_cast<uint64_t>(
                 std::ceil(2.0 * (std::log(32.0) + std::log(10.0)) / 0.04)));
  estimate_scores(*counted, 0.5, tau, delta, rng);
  CHECK(counted->count() == 2 * q);
}

TEST_CASE("estimate_scores concentrates on an embedded dictator") {
  // Exact scores at p = 0.5: 1/4 for the dictator coordinate, 0 elsewhere.
  auto f = make_dictator(64, 0);
  int good = 0;
  const int trials = 30;
  for (int t = 0; t < trials; ++t) {
    Rng rng(1000 + t);
    auto est = estimate_scores(*f, 0.5, 0.1, 0.1, rng);
    bool ok = est[0] >= 0.15 && est[0] <= 0.35;
    for (uint32_t i = 1; i < 64 && ok; ++i) ok = std::abs(est[i]) <= 0.1;
    if (ok) ++good;
  }
  CHECK(good >= 27);
}

TEST_CASE("conditional identity: forced-disjoint and parity cases") {
  auto dict = make_dictator(2, 0);
  auto [dl, dr] = conditional_ns_identity_check(*dict, 0.5);
  CHECK(std::abs(dl[0]) < 1e-15);
  CHECK(std::abs(dr[0]) < 1e-15);

  auto par = make_parity(2, {0, 1});
  auto [pl, pr] = conditional_ns_identity_check(*par, 0.5);
  CHECK(pl[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(pr[0] == doctest::Approx(0.25).epsilon(1e-12));

  Rng rng(6);
  for (int t = 0; t < 20; ++t) {
    auto f = make_table_oracle(TruthTable::random(6, rng));
    for (double p : {0.1, 0.5}) {
      auto [lhs, rhs] = conditional_ns_identity_check(*f, p);
      for (uint32_t i = 0; i < 6; ++i) CHECK(std::abs(lhs[i] - rhs[i]) < 1e-12);
    }
  }
}

TEST_CASE("exact scores are nonnegative") {
  Rng rng(9);
  for (uint32_t n : {4u, 6u, 8u}) {
    for (int t = 0; t < 5; ++t) {
      TruthTable table = TruthTable::random(n, rng);
      for (double p : {0.1, 0.5, 0.9})
        for (uint32_t i = 0; i < n; ++i)
          CHECK(exact_score(table, p, i) >= -1e-12);
    }
  }
}

}  // TEST_SUITE
