#include "dtrecon/bruteforce.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace dtrecon {

TruthTable::TruthTable(uint32_t n, Sign fill) : n_(n) {
  if (n < 1 || n > 24)
    throw unsupported_scale("truth table: n must be in [1, 24]");
  if (fill != +1 && fill != -1)
    throw std::invalid_argument("truth table: fill must be -1 or +1");
  v_.assign(1ull << n, static_cast<int8_t>(fill));
}

TruthTable TruthTable::tabulate(const FunctionOracle& f) {
  TruthTable t(f.dimension());
  Point x(f.dimension());
  for (uint64_t idx = 0; idx < t.size(); ++idx) {
    x.assign_index(idx);
    t.v_[idx] = static_cast<int8_t>(f.query(x));
  }
  return t;
}

TruthTable TruthTable::random(uint32_t n, Rng& rng) {
  TruthTable t(n);
  for (auto& v : t.v_) v = static_cast<int8_t>(rng.sign());
  return t;
}

void TruthTable::set(uint64_t idx, Sign v) {
  if (v != +1 && v != -1)
    throw std::invalid_argument("truth table: value must be -1 or +1");
  v_[idx] = static_cast<int8_t>(v);
}

TruthTable TruthTable::restricted(uint32_t var, Sign b) const {
  if (n_ < 2) throw std::invalid_argument("truth table: cannot restrict n=1");
  if (var >= n_)
    throw std::invalid_argument("truth table: variable out of range");
  TruthTable out(n_ - 1);
  uint64_t low_mask = (1ull << var) - 1;
  uint64_t fixed_bit = b > 0 ? (1ull << var) : 0;
  for (uint64_t idx = 0; idx < out.size(); ++idx) {
    uint64_t full = (idx & low_mask) | ((idx & ~low_mask) << 1) | fixed_bit;
    out.v_[idx] = v_[full];
  }
  return out;
}

double TruthTable::mean() const {
  int64_t sum = 0;
  for (int8_t v : v_) sum += v;
  return static_cast<double>(sum) / static_cast<double>(size());
}

bool TruthTable::constant() const {
  for (int8_t v : v_)
    if (v != v_[0]) return false;
  return true;
}

uint64_t TruthTable::count_plus() const {
  uint64_t c = 0;
  for (int8_t v : v_)
    if (v > 0) ++c;
  return c;
}

namespace {

class TableOracle final : public FunctionOracle {
 public:
  explicit TableOracle(TruthTable t)
      : FunctionOracle(t.dimension()), t_(std::move(t)) {}

 protected:
  Sign do_query(const Point& x) const override { return t_.at(x.index()); }

 private:
  TruthTable t_;
};

}  // namespace

OraclePtr make_table_oracle(TruthTable t) {
  return std::make_shared<TableOracle>(std::move(t));
}

FourierSpectrum wht(const TruthTable& t) {
  uint32_t n = t.dimension();
  uint64_t size = t.size();
  FourierSpectrum s;
  s.n = n;
  s.coef.resize(size);
  for (uint64_t i = 0; i < size; ++i) s.coef[i] = static_cast<double>(t.at(i));
  for (uint64_t len = 1; len < size; len <<= 1) {
    for (uint64_t block = 0; block < size; block += 2 * len) {
      for (uint64_t i = block; i < block + len; ++i) {
        double a = s.coef[i];
        double b = s.coef[i + len];
        s.coef[i] = a + b;
        s.coef[i + len] = a - b;
      }
    }
  }
  // The butterfly produces sums against (-1)^{S.x} with bit 1 = +1; characters
  // prod_{i in S} x_i differ by (-1)^{|S|}.
  double inv = 1.0 / static_cast<double>(size);
  for (uint64_t mask = 0; mask < size; ++mask) {
    double sgn = (std::popcount(mask) & 1) ? -1.0 : 1.0;
    s.coef[mask] *= sgn * inv;
  }
  return s;
}

TruthTable inverse_wht(const FourierSpectrum& s) {
  uint64_t size = s.coef.size();
  std::vector<double> a(size);
  for (uint64_t mask = 0; mask < size; ++mask)
    a[mask] = (std::popcount(mask) & 1) ? -s.coef[mask] : s.coef[mask];
  for (uint64_t len = 1; len < size; len <<= 1) {
    for (uint64_t block = 0; block < size; block += 2 * len) {
      for (uint64_t i = block; i < block + len; ++i) {
        double x = a[i];
        double y = a[i + len];
        a[i] = x + y;
        a[i + len] = x - y;
      }
    }
  }
  TruthTable t(s.n);
  for (uint64_t i = 0; i < size; ++i) t.set(i, a[i] >= 0.0 ? +1 : -1);
  return t;
}

double exact_ns(const TruthTable& t, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("exact_ns: p must be in (0, 1)");
  uint32_t n = t.dimension();
  FourierSpectrum s = wht(t);
  std::vector<double> decay(n + 1);
  decay[0] = 1.0;
  for (uint32_t k = 1; k <= n; ++k) decay[k] = decay[k - 1] * (1.0 - p);
  double stab = 0.0;
  for (uint64_t mask = 0; mask < s.coef.size(); ++mask) {
    double c = s.coef[mask];
    stab += decay[std::popcount(mask)] * c * c;
  }
  return 0.5 * (1.0 - stab);
}

double exact_score(const TruthTable& t, double p, uint32_t i) {
  if (i >= t.dimension())
    throw std::invalid_argument("exact_score: variable out of range");
  if (t.dimension() == 1) {
    // Restrictions are 0-dimensional constants with zero noise sensitivity.
    return exact_ns(t, p);
  }
  double full = exact_ns(t, p);
  double lo = exact_ns(t.restricted(i, -1), p);
  double hi = exact_ns(t.restricted(i, +1), p);
  return full - 0.5 * (lo + hi);
}

std::vector<double> exact_scores(const TruthTable& t, double p) {
  std::vector<double> out(t.dimension());
  for (uint32_t i = 0; i < t.dimension(); ++i) out[i] = exact_score(t, p, i);
  return out;
}

double exact_distance(const TruthTable& a, const TruthTable& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("exact_distance: dimension mismatch");
  uint64_t mismatches = 0;
  for (uint64_t i = 0; i < a.size(); ++i)
    if (a.at(i) != b.at(i)) ++mismatches;
  return static_cast<double>(mismatches) / static_cast<double>(a.size());
}

OptTable::OptTable(const TruthTable& t, uint32_t s_max)
    : n_(t.dimension()), s_max_(s_max) {
  if (n_ > 12) throw unsupported_scale("opt table: n must be <= 12");
  if (s_max < 1 || s_max > 16)
    throw std::invalid_argument("opt table: s_max must be in [1, 16]");

  pow3_.resize(n_ + 1);
  pow3_[0] = 1;
  for (uint32_t i = 1; i <= n_; ++i) pow3_[i] = pow3_[i - 1] * 3;
  uint32_t states = pow3_[n_];

  plus_.assign(states, 0);
  free_.assign(states, 0);
  best_.assign(static_cast<size_t>(states) * s_max_, 0);

  std::vector<uint32_t> trits(n_);
  std::vector<uint32_t> free_vars(n_);
  // Children of a state (one more coordinate fixed) have larger codes, so a
  // single descending sweep sees children before parents.
  for (uint32_t code = states; code-- > 0;) {
    uint32_t rest = code;
    uint32_t free_count = 0;
    uint64_t point_bits = 0;
    for (uint32_t i = 0; i < n_; ++i) {
      uint32_t trit = rest % 3;
      rest /= 3;
      trits[i] = trit;
      if (trit == 0)
        free_vars[free_count++] = i;
      else if (trit == 2)
        point_bits |= 1ull << i;
    }
    free_[code] = free_count;

    if (free_count == 0) {
      plus_[code] = t.at(point_bits) > 0 ? 1u : 0u;
    } else {
      uint32_t i = free_vars[0];
      plus_[code] = plus_[code + pow3_[i]] + plus_[code + 2 * pow3_[i]];
    }

    uint32_t cube = 1u << free_count;
    uint32_t leaf_cost = std::min(plus_[code], cube - plus_[code]);
    uint32_t* row = &best_[static_cast<size_t>(code) * s_max_];
    row[0] = leaf_cost;
    for (uint32_t k = 2; k <= s_max_; ++k) {
      uint32_t best = leaf_cost;
      for (uint32_t fi = 0; fi < free_count; ++fi) {
        uint32_t i = free_vars[fi];
        const uint32_t* lo = &best_[static_cast<size_t>(code + pow3_[i]) * s_max_];
        const uint32_t* hi =
            &best_[static_cast<size_t>(code + 2 * pow3_[i]) * s_max_];
        for (uint32_t k0 = 1; k0 < k; ++k0) {
          uint32_t cand = lo[k0 - 1] + hi[k - k0 - 1];
          if (cand < best) best = cand;
        }
      }
      row[k - 1] = best;
    }
  }
}

uint32_t OptTable::state_of(const Restriction& r) const {
  uint32_t code = 0;
  for (const auto& [v, val] : r.assignments()) {
    if (v >= n_) throw std::invalid_argument("opt table: variable out of range");
    code += pow3_[v] * (val > 0 ? 2u : 1u);
  }
  return code;
}

uint32_t OptTable::best_at(uint32_t state, uint32_t k) const {
  if (k < 1 || k > s_max_)
    throw std::invalid_argument("opt table: k out of range");
  return best_[static_cast<size_t>(state) * s_max_ + (k - 1)];
}

uint64_t OptTable::mismatch_count(const Restriction& r, uint32_t k) const {
  return best_at(state_of(r), k);
}

double OptTable::opt(const Restriction& r, uint32_t k) const {
  uint32_t state = state_of(r);
  return static_cast<double>(best_at(state, k)) /
         static_cast<double>(1ull << free_[state]);
}

uint64_t OptTable::plus_count(const Restriction& r) const {
  return plus_[state_of(r)];
}

uint64_t OptTable::subcube_size(const Restriction& r) const {
  return 1ull << free_[state_of(r)];
}

Sign OptTable::majority_sign(const Restriction& r) const {
  uint32_t state = state_of(r);
  return 2 * plus_[state] >= (1ull << free_[state]) ? +1 : -1;
}

DecisionTree OptTable::witness_state(uint32_t state, uint32_t k) const {
  uint32_t target = best_at(state, k);
  uint32_t cube = 1u << free_[state];
  uint32_t leaf_cost = std::min(plus_[state], cube - plus_[state]);
  if (target == leaf_cost) {
    Sign label = 2 * plus_[state] >= cube ? +1 : -1;
    return DecisionTree::leaf(label);
  }
  for (uint32_t i = 0; i < n_; ++i) {
    if ((state / pow3_[i]) % 3 != 0) continue;
    uint32_t lo_state = state + pow3_[i];
    uint32_t hi_state = state + 2 * pow3_[i];
    for (uint32_t k0 = 1; k0 < k; ++k0) {
      if (best_at(lo_state, k0) + best_at(hi_state, k - k0) == target) {
        return DecisionTree::internal(i, witness_state(lo_state, k0),
                                      witness_state(hi_state, k - k0));
      }
    }
  }
  throw std::logic_error("opt table: inconsistent DP entry");
}

DecisionTree OptTable::witness(const Restriction& r, uint32_t k) const {
  return witness_state(state_of(r), k);
}

std::pair<double, DecisionTree> exact_opt(const TruthTable& t, uint32_t s) {
  OptTable ot(t, s);
  Restriction empty;
  return {ot.opt(empty, s), ot.witness(empty, s)};
}

namespace {

DecisionTree topdown_rec(const TruthTable& t,
                         const std::vector<uint32_t>& var_map, uint32_t d,
                         double p) {
  int64_t sum = 0;
  for (uint64_t i = 0; i < t.size(); ++i) sum += t.at(i);
  if (d == 0 || sum == static_cast<int64_t>(t.size()) ||
      -sum == static_cast<int64_t>(t.size()))
    return DecisionTree::leaf(sum >= 0 ? +1 : -1);

  if (t.dimension() == 1) {
    // Non-constant single-variable subfunction: split and read the two points.
    return DecisionTree::internal(var_map[0], DecisionTree::leaf(t.at(0)),
                                  DecisionTree::leaf(t.at(1)));
  }

  double full = exact_ns(t, p);
  uint32_t best_var = 0;
  double best_score = -1.0;
  std::vector<TruthTable> lo_tabs, hi_tabs;
  lo_tabs.reserve(t.dimension());
  hi_tabs.reserve(t.dimension());
  for (uint32_t j = 0; j < t.dimension(); ++j) {
    lo_tabs.push_back(t.restricted(j, -1));
    hi_tabs.push_back(t.restricted(j, +1));
    double score = full - 0.5 * (exact_ns(lo_tabs[j], p) + exact_ns(hi_tabs[j], p));
    if (score > best_score) {  // strict: ties keep the lowest index
      best_score = score;
      best_var = j;
    }
  }

  std::vector<uint32_t> child_map;
  child_map.reserve(var_map.size() - 1);
  for (uint32_t j = 0; j < var_map.size(); ++j)
    if (j != best_var) child_map.push_back(var_map[j]);

  DecisionTree left = topdown_rec(lo_tabs[best_var], child_map, d - 1, p);
  DecisionTree right = topdown_rec(hi_tabs[best_var], child_map, d - 1, p);
  return DecisionTree::internal(var_map[best_var], std::move(left),
                                std::move(right));
}

}  // namespace

DecisionTree exact_topdown_tree(const TruthTable& t, uint32_t d, double p) {
  if (t.dimension() > 16)
    throw unsupported_scale("topdown tree: n must be <= 16");
  if (d > t.dimension())
    throw std::invalid_argument("topdown tree: d must be <= n");
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("topdown tree: p must be in (0, 1)");
  std::vector<uint32_t> var_map(t.dimension());
  for (uint32_t i = 0; i < var_map.size(); ++i) var_map[i] = i;
  return topdown_rec(t, var_map, d, p);
}

}  // namespace dtrecon
