#include "dtrecon/boolfn.hpp"

#include <algorithm>
#include <bit>

namespace dtrecon {

namespace {

class ConstantOracle final : public FunctionOracle {
 public:
  ConstantOracle(uint32_t n, Sign value) : FunctionOracle(n), value_(value) {
    if (value != +1 && value != -1)
      throw std::invalid_argument("constant oracle: value must be -1 or +1");
  }

 protected:
  Sign do_query(const Point&) const override { return value_; }

 private:
  Sign value_;
};

class DictatorOracle final : public FunctionOracle {
 public:
  DictatorOracle(uint32_t n, uint32_t var) : FunctionOracle(n), var_(var) {
    if (var >= n) throw std::invalid_argument("dictator: variable out of range");
  }

 protected:
  Sign do_query(const Point& x) const override { return x.get(var_); }

 private:
  uint32_t var_;
};

class ParityOracle final : public FunctionOracle {
 public:
  ParityOracle(uint32_t n, std::vector<uint32_t> vars)
      : FunctionOracle(n), vars_(std::move(vars)) {
    for (uint32_t v : vars_)
      if (v >= n) throw std::invalid_argument("parity: variable out of range");
  }

 protected:
  Sign do_query(const Point& x) const override {
    // Product of the selected signs: -1 bits flip the product.
    int minus = 0;
    for (uint32_t v : vars_) minus ^= x.bit(v) ? 0 : 1;
    return minus ? -1 : +1;
  }

 private:
  std::vector<uint32_t> vars_;
};

class MajorityOracle final : public FunctionOracle {
 public:
  MajorityOracle(uint32_t n, std::vector<uint32_t> vars)
      : FunctionOracle(n), vars_(std::move(vars)) {
    if (vars_.empty() || vars_.size() % 2 == 0)
      throw std::invalid_argument("majority: arity must be odd");
    for (uint32_t v : vars_)
      if (v >= n) throw std::invalid_argument("majority: variable out of range");
  }

 protected:
  Sign do_query(const Point& x) const override {
    int sum = 0;
    for (uint32_t v : vars_) sum += x.get(v);
    return sum > 0 ? +1 : -1;
  }

 private:
  std::vector<uint32_t> vars_;
};

class TreeOracle final : public FunctionOracle {
 public:
  TreeOracle(uint32_t n, DecisionTree tree)
      : FunctionOracle(n), tree_(std::move(tree)) {
    if (tree_.min_dimension() > n)
      throw std::invalid_argument("tree oracle: tree reads variables >= n");
  }

 protected:
  Sign do_query(const Point& x) const override { return tree_.evaluate(x); }

 private:
  DecisionTree tree_;
};

class RestrictedOracle final : public FunctionOracle {
 public:
  RestrictedOracle(OraclePtr base, Restriction r)
      : FunctionOracle(base->dimension()),
        base_(std::move(base)),
        r_(std::move(r)) {
    for (const auto& [v, val] : r_.assignments())
      if (v >= dimension())
        throw std::invalid_argument("restrict: variable out of range");
  }

 protected:
  Sign do_query(const Point& x) const override {
    if (r_.empty()) return base_->query(x);
    thread_local Point scratch(1);
    scratch = x;
    r_.apply(scratch);
    return base_->query(scratch);
  }

 private:
  OraclePtr base_;
  Restriction r_;
};

class CorruptedOracle final : public FunctionOracle {
 public:
  CorruptedOracle(OraclePtr base, double rho, uint64_t seed)
      : FunctionOracle(base->dimension()), base_(std::move(base)), seed_(seed) {
    if (!(rho >= 0.0 && rho <= 1.0))
      throw std::invalid_argument("corrupt: rho must be in [0, 1]");
    threshold_ = static_cast<uint64_t>(rho * 9007199254740992.0);  // rho * 2^53
  }

 protected:
  Sign do_query(const Point& x) const override {
    uint64_t h = seed_;
    for (uint64_t w : x.words()) h = mix_seeds(h, w);
    bool flip = (mix_seeds(h, 0x5bf0361c621e6a1bull) >> 11) < threshold_;
    Sign v = base_->query(x);
    return flip ? -v : v;
  }

 private:
  OraclePtr base_;
  uint64_t seed_;
  uint64_t threshold_;
};

}  // namespace

OraclePtr make_constant(uint32_t n, Sign value) {
  return std::make_shared<ConstantOracle>(n, value);
}

OraclePtr make_dictator(uint32_t n, uint32_t var) {
  return std::make_shared<DictatorOracle>(n, var);
}

OraclePtr make_parity(uint32_t n, std::vector<uint32_t> vars) {
  return std::make_shared<ParityOracle>(n, std::move(vars));
}

OraclePtr make_majority(uint32_t n, std::vector<uint32_t> vars) {
  return std::make_shared<MajorityOracle>(n, std::move(vars));
}

OraclePtr make_tree_oracle(uint32_t n, DecisionTree tree) {
  return std::make_shared<TreeOracle>(n, std::move(tree));
}

OraclePtr restricted(OraclePtr f, Restriction r) {
  return std::make_shared<RestrictedOracle>(std::move(f), std::move(r));
}

OraclePtr corrupt(OraclePtr f, double rho, uint64_t seed) {
  return std::make_shared<CorruptedOracle>(std::move(f), rho, seed);
}

namespace {

DecisionTree random_tree_rec(uint64_t s, std::vector<uint32_t>& unused,
                             Rng& rng) {
  if (s == 1) return DecisionTree::leaf(rng.sign());

  // Max leaves a child subtree can hold without repeating variables.
  size_t free_after = unused.size() - 1;
  uint64_t cap = free_after >= 63 ? UINT64_MAX : (1ull << free_after);
  uint64_t lo = cap >= s ? 1 : s - cap;
  uint64_t hi = std::min<uint64_t>(s - 1, cap);
  uint64_t left = lo + rng.below(hi - lo + 1);

  size_t pick = static_cast<size_t>(rng.below(unused.size()));
  std::swap(unused[pick], unused.back());
  uint32_t var = unused.back();
  unused.pop_back();

  DecisionTree l = random_tree_rec(left, unused, rng);
  DecisionTree r = random_tree_rec(s - left, unused, rng);

  unused.push_back(var);
  return DecisionTree::internal(var, std::move(l), std::move(r));
}

}  // namespace

DecisionTree random_tree_instance(uint32_t n, uint64_t s, Rng& rng) {
  if (s < 2) throw std::invalid_argument("random tree: s must be >= 2");
  if (n < 64 && s > (1ull << n))
    throw std::invalid_argument("random tree: s exceeds 2^n");
  std::vector<uint32_t> unused(n);
  for (uint32_t i = 0; i < n; ++i) unused[i] = i;
  return random_tree_rec(s, unused, rng);
}

double exact_distance(const FunctionOracle& f, const FunctionOracle& g) {
  if (f.dimension() != g.dimension())
    throw std::invalid_argument("exact_distance: dimension mismatch");
  uint32_t n = f.dimension();
  if (n > 24) throw unsupported_scale("exact_distance: n > 24");
  uint64_t total = 1ull << n;
  uint64_t mismatches = 0;
  Point x(n);
  for (uint64_t idx = 0; idx < total; ++idx) {
    x.assign_index(idx);
    if (f.query(x) != g.query(x)) ++mismatches;
  }
  return static_cast<double>(mismatches) / static_cast<double>(total);
}

double sampled_distance(const FunctionOracle& f, const FunctionOracle& g,
                        uint64_t m, Rng& rng) {
  if (f.dimension() != g.dimension())
    throw std::invalid_argument("sampled_distance: dimension mismatch");
  if (m < 1) throw std::invalid_argument("sampled_distance: m must be >= 1");
  Point x(f.dimension());
  uint64_t mismatches = 0;
  for (uint64_t i = 0; i < m; ++i) {
    x.fill_random(rng);
    if (f.query(x) != g.query(x)) ++mismatches;
  }
  return static_cast<double>(mismatches) / static_cast<double>(m);
}

}  // namespace dtrecon
