#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dtrecon/boolfn.hpp"
#include "dtrecon/trees.hpp"

namespace dtrecon {

/// Exhaustive sign table over 2^n points (n <= 24).  Index bit i set means
/// x_i = +1, matching Point::index().
class TruthTable {
 public:
  explicit TruthTable(uint32_t n, Sign fill = +1);
  static TruthTable tabulate(const FunctionOracle& f);
  static TruthTable random(uint32_t n, Rng& rng);

  uint32_t dimension() const { return n_; }
  uint64_t size() const { return v_.size(); }
  Sign at(uint64_t idx) const { return v_[idx]; }
  void set(uint64_t idx, Sign v);

  /// The (n-1)-dimensional table of f with x_var fixed to b; remaining
  /// coordinates keep their relative order.
  TruthTable restricted(uint32_t var, Sign b) const;

  double mean() const;
  bool constant() const;
  uint64_t count_plus() const;

 private:
  uint32_t n_;
  std::vector<int8_t> v_;
};

OraclePtr make_table_oracle(TruthTable t);

/// Coefficients f_hat(S) indexed by subset bitmask S.
struct FourierSpectrum {
  uint32_t n = 0;
  std::vector<double> coef;
};

/// Fast Walsh-Hadamard transform in n * 2^n operations (n <= 24).
FourierSpectrum wht(const TruthTable& t);
/// Exact inverse; recovers the sign table of a Boolean spectrum.
TruthTable inverse_wht(const FourierSpectrum& s);

/// Exact noise sensitivity NS_p(f) = (1/2) * sum_S (1 - (1-p)^|S|) f_hat(S)^2.
double exact_ns(const TruthTable& t, double p);
/// Exact Score_i(f, p) = NS_p(f) - E_b[NS_p(f restricted to x_i = b)].
double exact_score(const TruthTable& t, double p, uint32_t i);
std::vector<double> exact_scores(const TruthTable& t, double p);

/// Exhaustive Pr[a != b] for equal-dimension tables.
double exact_distance(const TruthTable& a, const TruthTable& b);

/// Dynamic program over subcube restrictions: serves the exact distance from
/// any subfunction of t to the best decision tree with at most k leaves, for
/// every restriction and every k <= s_max.  States are keyed by the *set* of
/// fixed coordinates with values (3^n of them), so identical subfunctions
/// reached along different paths share one entry.  Requires n <= 12,
/// s_max <= 16.
class OptTable {
 public:
  OptTable(const TruthTable& t, uint32_t s_max);

  uint32_t dimension() const { return n_; }
  uint32_t s_max() const { return s_max_; }

  /// Mismatch count of the best size<=k tree within the subcube of r.
  uint64_t mismatch_count(const Restriction& r, uint32_t k) const;
  /// Same, as a fraction of the subcube.
  double opt(const Restriction& r, uint32_t k) const;
  /// One tree attaining mismatch_count(r, k), over the free coordinates.
  DecisionTree witness(const Restriction& r, uint32_t k) const;

  uint64_t plus_count(const Restriction& r) const;
  uint64_t subcube_size(const Restriction& r) const;
  /// sign(E[f_r]) with sign(0) = +1.
  Sign majority_sign(const Restriction& r) const;

 private:
  uint32_t state_of(const Restriction& r) const;
  uint32_t best_at(uint32_t state, uint32_t k) const;
  DecisionTree witness_state(uint32_t state, uint32_t k) const;

  uint32_t n_;
  uint32_t s_max_;
  std::vector<uint32_t> pow3_;
  std::vector<uint32_t> plus_;   // +1 count per state
  std::vector<uint32_t> free_;   // free-coordinate count per state
  std::vector<uint32_t> best_;   // best_[state * s_max + (k-1)]
};

/// Exact opt_s(t) and one witness tree (n <= 12, s <= 16).
std::pair<double, DecisionTree> exact_opt(const TruthTable& t, uint32_t s);

/// The canonical top-down tree: a complete depth-d tree querying, at every
/// node, the variable of maximal exact score of the subfunction (ties to the
/// lowest index), with every leaf labeled sign(E[f_leaf]), sign(0) = +1.
/// Constant subfunctions collapse to a leaf, which leaves the computed
/// function unchanged.  Requires n <= 16, d <= n.
DecisionTree exact_topdown_tree(const TruthTable& t, uint32_t d, double p);

}  // namespace dtrecon
