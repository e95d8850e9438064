#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dtrecon/point.hpp"

namespace dtrecon {

struct parse_error : std::runtime_error {
  size_t position;
  parse_error(const std::string& what, size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

/// A complete binary decision tree, immutable once built.  Internal nodes
/// query a 0-based variable and descend right iff that coordinate is +1.
class DecisionTree {
 public:
  static DecisionTree leaf(Sign label);
  static DecisionTree internal(uint32_t var, DecisionTree left,
                               DecisionTree right);

  Sign evaluate(const Point& x) const;
  /// Leaf count.
  uint64_t size() const;
  /// Longest root-to-leaf path; 0 for a single leaf.
  uint32_t depth() const;
  /// Smallest n such that every queried variable index is < n (0 if no
  /// internal nodes).
  uint32_t min_dimension() const;

  /// Canonical text: leaf "L +1" / "L -1", internal "(x<i> <left> <right>)"
  /// with 1-based variable indices.
  std::string serialize() const;
  /// Whitespace-insensitive inverse of serialize(); throws parse_error.
  static DecisionTree parse(std::string_view text);

  bool operator==(const DecisionTree& other) const;

  bool is_leaf_root() const { return nodes_[root_].var < 0; }

 private:
  // var >= 0: internal node with children; var < 0: leaf carrying label.
  struct Node {
    int32_t var = -1;
    int32_t left = -1;
    int32_t right = -1;
    int8_t label = +1;
  };

  DecisionTree() = default;
  int32_t adopt(const DecisionTree& other, int32_t at);

  std::vector<Node> nodes_;
  int32_t root_ = -1;

  friend class PartialTree;
};

/// A depth-capped tree whose internal variables and leaf labels resolve
/// lazily, each write-once.  Nodes at depth == depth_cap are leaf slots;
/// shallower nodes are internal slots.
class PartialTree {
 public:
  explicit PartialTree(uint32_t depth_cap);

  uint32_t depth_cap() const { return cap_; }
  uint32_t root() const { return 0; }
  uint32_t depth(uint32_t id) const;
  bool is_leaf_slot(uint32_t id) const { return depth(id) == cap_; }

  bool internal_resolved(uint32_t id) const;
  uint32_t variable(uint32_t id) const;
  /// Write-once: re-resolving with the same variable is a no-op, with a
  /// different variable a logic_error.
  void resolve_internal(uint32_t id, uint32_t var);

  /// Child of a resolved internal node, created on first use.
  uint32_t child(uint32_t id, bool right);

  bool leaf_resolved(uint32_t id) const;
  Sign leaf_label(uint32_t id) const;
  void resolve_leaf(uint32_t id, Sign label);

  /// Number of materialized node slots.
  uint64_t node_count() const { return nodes_.size(); }

  /// Completed copy: unresolved internal slots collapse to a +1 leaf and
  /// unlabeled leaf slots become +1.  Agrees with every answer already
  /// issued through resolved paths.
  DecisionTree snapshot() const;

 private:
  struct Slot {
    int32_t var = -1;    // resolved internal variable, or -1
    int8_t label = 0;    // resolved leaf label, or 0
    int32_t left = -1;
    int32_t right = -1;
    uint32_t depth = 0;
  };

  const Slot& at(uint32_t id) const;
  Slot& at(uint32_t id);

  std::vector<Slot> nodes_;
  uint32_t cap_;
};

}  // namespace dtrecon
