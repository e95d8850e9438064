#include <doctest.h>

#include <cmath>

#include "dtrecon/boolfn.hpp"
#include "dtrecon/bruteforce.hpp"
#include "dtrecon/trees.hpp"

using namespace dtrecon;

TEST_SUITE("trees") {

TEST_CASE("evaluate walks to the labeled leaf") {
  DecisionTree single = DecisionTree::leaf(-1);
  Point any = Point::from_index(4, 9);
  CHECK(single.evaluate(any) == -1);

  // Root on x2 (1-based), left -1, right +1.
  DecisionTree t = DecisionTree::internal(1, DecisionTree::leaf(-1),
                                          DecisionTree::leaf(+1));
  Point x(2);
  x.set(0, +1);
  x.set(1, +1);
  CHECK(t.evaluate(x) == +1);
  x.set(1, -1);
  CHECK(t.evaluate(x) == -1);
}

TEST_CASE("evaluate agrees with exhaustive tabulation") {
  Rng rng(31);
  DecisionTree t = random_tree_instance(10, 8, rng);
  auto oracle = make_tree_oracle(10, t);
  TruthTable table = TruthTable::tabulate(*oracle);
  Point x(10);
  for (uint64_t idx = 0; idx < 1024; ++idx) {
    x.assign_index(idx);
    CHECK(t.evaluate(x) == table.at(idx));
  }
}

TEST_CASE("size and depth") {
  CHECK(DecisionTree::leaf(+1).size() == 1);
  CHECK(DecisionTree::leaf(+1).depth() == 0);

  auto complete3 = [](auto&& self, uint32_t var) -> DecisionTree {
    if (var == 3) return DecisionTree::leaf(+1);
    return DecisionTree::internal(var, self(self, var + 1),
                                  self(self, var + 1));
  };
  DecisionTree c = complete3(complete3, 0);
  CHECK(c.size() == 8);
  CHECK(c.depth() == 3);

  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    uint64_t s = 2 + rng.below(15);
    CHECK(random_tree_instance(8, s, rng).size() == s);
  }
}

TEST_CASE("serialization: canonical form and round-trip") {
  CHECK(DecisionTree::leaf(+1).serialize() == "L +1");
  DecisionTree t = DecisionTree::internal(0, DecisionTree::leaf(-1),
                                          DecisionTree::leaf(+1));
  CHECK(t.serialize() == "(x1 L -1 L +1)");

  CHECK(DecisionTree::parse("  ( x1   L -1\n  L +1 ) ") == t);

  Rng rng(77);
  for (int i = 0; i < 1000; ++i) {
    uint32_t n = 2 + static_cast<uint32_t>(rng.below(9));
    uint64_t s = 2 + rng.below(std::min<uint64_t>(1ull << n, 12) - 1);
    DecisionTree tree = random_tree_instance(n, s, rng);
    CHECK(DecisionTree::parse(tree.serialize()) == tree);
  }
}

TEST_CASE("parse rejects malformed text with a position") {
  auto check_fails = [](const char* text) {
    CHECK_THROWS_AS(DecisionTree::parse(text), parse_error);
  };
  check_fails("");
  check_fails("L");
  check_fails("L 0");
  check_fails("(x1 L +1");
  check_fails("(y1 L +1 L -1)");
  check_fails("(x0 L +1 L -1)");
  check_fails("L +1 L -1");

  try {
    DecisionTree::parse("(x1 L +1");
  } catch (const parse_error& e) {
    CHECK(e.position == 8);
  }
}

TEST_CASE("leaf weights of a complete tree sum to one") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    DecisionTree t = random_tree_instance(10, 2 + rng.below(15), rng);
    // Sum 2^-depth over leaves via the serialized structure.
    std::string text = t.serialize();
    double sum = 0.0;
    int depth = 0;
    for (size_t j = 0; j < text.size(); ++j) {
      if (text[j] == '(') ++depth;
      if (text[j] == ')') --depth;
      if (text[j] == 'L') sum += std::pow(2.0, -depth);
    }
    CHECK(std::abs(sum - 1.0) < 1e-12);
  }
}

TEST_CASE("partial tree: snapshot defaults and write-once discipline") {
  PartialTree empty(4);
  DecisionTree snap = empty.snapshot();
  CHECK(snap.size() == 1);
  CHECK(snap.evaluate(Point::from_index(4, 3)) == +1);

  PartialTree pt(2);
  pt.resolve_internal(pt.root(), 1);
  CHECK(pt.internal_resolved(pt.root()));
  CHECK(pt.variable(pt.root()) == 1);
  pt.resolve_internal(pt.root(), 1);  // idempotent
  CHECK_THROWS_AS(pt.resolve_internal(pt.root(), 0), std::logic_error);

  uint32_t right = pt.child(pt.root(), true);
  pt.resolve_internal(right, 0);
  uint32_t leaf = pt.child(right, true);
  CHECK(pt.is_leaf_slot(leaf));
  CHECK(!pt.leaf_resolved(leaf));
  pt.resolve_leaf(leaf, -1);
  pt.resolve_leaf(leaf, -1);  // idempotent
  CHECK_THROWS_AS(pt.resolve_leaf(leaf, +1), std::logic_error);

  // The resolved path x2=+1, x1=+1 evaluates to -1 in the snapshot.
  DecisionTree s = pt.snapshot();
  Point x(2);
  x.set(0, +1);
  x.set(1, +1);
  CHECK(s.evaluate(x) == -1);
  CHECK(s.depth() <= 2);
}

TEST_CASE("partial tree slot kinds are enforced") {
  PartialTree pt(1);
  CHECK_THROWS_AS(pt.leaf_resolved(pt.root()), std::logic_error);
  pt.resolve_internal(pt.root(), 0);
  uint32_t leaf = pt.child(pt.root(), false);
  CHECK_THROWS_AS(pt.resolve_internal(leaf, 0), std::logic_error);
  CHECK_THROWS_AS(pt.child(leaf, false), std::logic_error);
}

}  // TEST_SUITE
