#include "dtrecon/trees.hpp"

#include <algorithm>
#include <cctype>

namespace dtrecon {

DecisionTree DecisionTree::leaf(Sign label) {
  if (label != +1 && label != -1)
    throw std::invalid_argument("tree: leaf label must be -1 or +1");
  DecisionTree t;
  t.nodes_.push_back(Node{-1, -1, -1, static_cast<int8_t>(label)});
  t.root_ = 0;
  return t;
}

int32_t DecisionTree::adopt(const DecisionTree& other, int32_t at) {
  const Node& n = other.nodes_[at];
  if (n.var < 0) {
    nodes_.push_back(n);
    return static_cast<int32_t>(nodes_.size() - 1);
  }
  int32_t l = adopt(other, n.left);
  int32_t r = adopt(other, n.right);
  nodes_.push_back(Node{n.var, l, r, +1});
  return static_cast<int32_t>(nodes_.size() - 1);
}

DecisionTree DecisionTree::internal(uint32_t var, DecisionTree left,
                                    DecisionTree right) {
  DecisionTree t;
  int32_t l = t.adopt(left, left.root_);
  int32_t r = t.adopt(right, right.root_);
  t.nodes_.push_back(Node{static_cast<int32_t>(var), l, r, +1});
  t.root_ = static_cast<int32_t>(t.nodes_.size() - 1);
  return t;
}

Sign DecisionTree::evaluate(const Point& x) const {
  int32_t id = root_;
  while (nodes_[id].var >= 0) {
    const Node& n = nodes_[id];
    id = x.bit(static_cast<uint32_t>(n.var)) ? n.right : n.left;
  }
  return nodes_[id].label;
}

uint64_t DecisionTree::size() const {
  uint64_t leaves = 0;
  for (const Node& n : nodes_)
    if (n.var < 0) ++leaves;
  return leaves;
}

uint32_t DecisionTree::depth() const {
  // Iterative depth over the node vector: depths assigned root-down.
  std::vector<uint32_t> d(nodes_.size(), 0);
  uint32_t best = 0;
  std::vector<int32_t> stack{root_};
  while (!stack.empty()) {
    int32_t id = stack.back();
    stack.pop_back();
    const Node& n = nodes_[id];
    if (n.var < 0) {
      best = std::max(best, d[id]);
      continue;
    }
    d[n.left] = d[id] + 1;
    d[n.right] = d[id] + 1;
    stack.push_back(n.left);
    stack.push_back(n.right);
  }
  return best;
}

uint32_t DecisionTree::min_dimension() const {
  uint32_t n = 0;
  for (const Node& node : nodes_)
    if (node.var >= 0) n = std::max(n, static_cast<uint32_t>(node.var) + 1);
  return n;
}

std::string DecisionTree::serialize() const {
  std::string out;
  std::vector<std::pair<int32_t, int>> stack;  // (node, phase)
  stack.emplace_back(root_, 0);
  while (!stack.empty()) {
    auto& [id, phase] = stack.back();
    const Node& n = nodes_[id];
    if (n.var < 0) {
      out += n.label > 0 ? "L +1" : "L -1";
      stack.pop_back();
      continue;
    }
    if (phase == 0) {
      out += "(x";
      out += std::to_string(n.var + 1);
      out += ' ';
      phase = 1;
      stack.emplace_back(n.left, 0);
    } else if (phase == 1) {
      out += ' ';
      phase = 2;
      stack.emplace_back(n.right, 0);
    } else {
      out += ')';
      stack.pop_back();
    }
  }
  return out;
}

namespace {

struct Parser {
  std::string_view text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error(what, pos);
  }

  char peek() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    return text[pos];
  }

  Sign parse_sign() {
    skip_ws();
    if (pos + 1 >= text.size()) fail("expected signed leaf label");
    char s = text[pos];
    char d = text[pos + 1];
    if ((s != '+' && s != '-') || d != '1') fail("expected +1 or -1");
    pos += 2;
    return s == '+' ? +1 : -1;
  }

  uint64_t parse_index() {
    skip_ws();
    if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
      fail("expected variable index");
    uint64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<uint64_t>(text[pos] - '0');
      if (v > kMaxDimension) fail("variable index too large");
      ++pos;
    }
    return v;
  }

  DecisionTree parse_tree() {
    char c = peek();
    if (c == 'L') {
      ++pos;
      return DecisionTree::leaf(parse_sign());
    }
    if (c == '(') {
      ++pos;
      skip_ws();
      if (pos >= text.size() || text[pos] != 'x') fail("expected x<i>");
      ++pos;
      uint64_t idx = parse_index();
      if (idx == 0) fail("variable indices are 1-based");
      DecisionTree left = parse_tree();
      DecisionTree right = parse_tree();
      skip_ws();
      if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
      ++pos;
      return DecisionTree::internal(static_cast<uint32_t>(idx - 1),
                                    std::move(left), std::move(right));
    }
    fail("expected 'L' or '('");
  }
};

}  // namespace

DecisionTree DecisionTree::parse(std::string_view text) {
  Parser p{text};
  DecisionTree t = p.parse_tree();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing characters after tree");
  return t;
}

bool DecisionTree::operator==(const DecisionTree& other) const {
  // Structural equality; node ids may differ, so compare recursively.
  std::vector<std::pair<int32_t, int32_t>> stack{{root_, other.root_}};
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    const Node& na = nodes_[a];
    const Node& nb = other.nodes_[b];
    if ((na.var < 0) != (nb.var < 0)) return false;
    if (na.var < 0) {
      if (na.label != nb.label) return false;
      continue;
    }
    if (na.var != nb.var) return false;
    stack.emplace_back(na.left, nb.left);
    stack.emplace_back(na.right, nb.right);
  }
  return true;
}

PartialTree::PartialTree(uint32_t depth_cap) : cap_(depth_cap) {
  nodes_.push_back(Slot{});
}

const PartialTree::Slot& PartialTree::at(uint32_t id) const {
  if (id >= nodes_.size()) throw std::logic_error("partial tree: bad node id");
  return nodes_[id];
}

PartialTree::Slot& PartialTree::at(uint32_t id) {
  if (id >= nodes_.size()) throw std::logic_error("partial tree: bad node id");
  return nodes_[id];
}

uint32_t PartialTree::depth(uint32_t id) const { return at(id).depth; }

bool PartialTree::internal_resolved(uint32_t id) const {
  const Slot& s = at(id);
  if (s.depth == cap_) throw std::logic_error("partial tree: leaf slot");
  return s.var >= 0;
}

uint32_t PartialTree::variable(uint32_t id) const {
  const Slot& s = at(id);
  if (s.depth == cap_ || s.var < 0)
    throw std::logic_error("partial tree: unresolved internal node");
  return static_cast<uint32_t>(s.var);
}

void PartialTree::resolve_internal(uint32_t id, uint32_t var) {
  Slot& s = at(id);
  if (s.depth == cap_) throw std::logic_error("partial tree: leaf slot");
  if (s.var >= 0) {
    if (s.var != static_cast<int32_t>(var))
      throw std::logic_error("partial tree: node already resolved");
    return;
  }
  s.var = static_cast<int32_t>(var);
}

uint32_t PartialTree::child(uint32_t id, bool right) {
  {
    const Slot& s = at(id);
    if (s.depth == cap_ || s.var < 0)
      throw std::logic_error("partial tree: child of unresolved node");
    int32_t c = right ? s.right : s.left;
    if (c >= 0) return static_cast<uint32_t>(c);
  }
  Slot fresh;
  fresh.depth = at(id).depth + 1;
  nodes_.push_back(fresh);
  auto c = static_cast<int32_t>(nodes_.size() - 1);
  Slot& s = at(id);
  (right ? s.right : s.left) = c;
  return static_cast<uint32_t>(c);
}

bool PartialTree::leaf_resolved(uint32_t id) const {
  const Slot& s = at(id);
  if (s.depth != cap_) throw std::logic_error("partial tree: not a leaf slot");
  return s.label != 0;
}

Sign PartialTree::leaf_label(uint32_t id) const {
  const Slot& s = at(id);
  if (s.depth != cap_ || s.label == 0)
    throw std::logic_error("partial tree: unresolved leaf");
  return s.label;
}

void PartialTree::resolve_leaf(uint32_t id, Sign label) {
  if (label != +1 && label != -1)
    throw std::invalid_argument("partial tree: label must be -1 or +1");
  Slot& s = at(id);
  if (s.depth != cap_) throw std::logic_error("partial tree: not a leaf slot");
  if (s.label != 0) {
    if (s.label != label)
      throw std::logic_error("partial tree: leaf already labeled");
    return;
  }
  s.label = static_cast<int8_t>(label);
}

DecisionTree PartialTree::snapshot() const {
  DecisionTree out;
  // Post-order build; unresolved slots and absent children become +1 leaves.
  struct Frame {
    int32_t slot;  // -1 encodes "absent child"
    int phase;
  };
  std::vector<Frame> stack{{0, 0}};
  std::vector<int32_t> results;
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.slot < 0) {
      out.nodes_.push_back(DecisionTree::Node{-1, -1, -1, +1});
      results.push_back(static_cast<int32_t>(out.nodes_.size() - 1));
      stack.pop_back();
      continue;
    }
    const Slot& s = nodes_[f.slot];
    bool leafish = s.depth == cap_ || s.var < 0;
    if (leafish) {
      int8_t label = (s.depth == cap_ && s.label != 0) ? s.label : int8_t{+1};
      out.nodes_.push_back(DecisionTree::Node{-1, -1, -1, label});
      results.push_back(static_cast<int32_t>(out.nodes_.size() - 1));
      stack.pop_back();
      continue;
    }
    if (f.phase == 0) {
      f.phase = 1;
      stack.push_back(Frame{s.left, 0});
    } else if (f.phase == 1) {
      f.phase = 2;
      stack.push_back(Frame{s.right, 0});
    } else {
      int32_t r = results.back();
      results.pop_back();
      int32_t l = results.back();
      results.pop_back();
      out.nodes_.push_back(DecisionTree::Node{s.var, l, r, +1});
      results.push_back(static_cast<int32_t>(out.nodes_.size() - 1));
      stack.pop_back();
    }
  }
  out.root_ = results.back();
  return out;
}

}  // namespace dtrecon
