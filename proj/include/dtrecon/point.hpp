#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dtrecon {

class Rng;

/// Signs are plain ints constrained to {-1, +1}.
using Sign = int;

inline constexpr uint32_t kMaxDimension = 1u << 20;

/// An assignment in {-1,+1}^n, bit-packed 64 coordinates per word.
/// Stored bit 1 encodes +1; bits at positions >= n are always zero.
class Point {
 public:
  explicit Point(uint32_t n);

  uint32_t dimension() const { return n_; }

  bool bit(uint32_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1u;
  }
  Sign get(uint32_t i) const { return bit(i) ? +1 : -1; }

  void set_bit(uint32_t i, bool b) {
    check_index(i);
    uint64_t mask = 1ull << (i & 63);
    if (b)
      words_[i >> 6] |= mask;
    else
      words_[i >> 6] &= ~mask;
  }
  void set(uint32_t i, Sign v) { set_bit(i, v > 0); }

  const std::vector<uint64_t>& words() const { return words_; }

  /// Overwrites every coordinate with an independent uniform sign.
  void fill_random(Rng& rng);

  /// Packed value of the first min(n, 64) coordinates.
  uint64_t index() const { return words_[0]; }

  /// Sets the first min(n, 64) coordinates from idx; the rest become -1.
  void assign_index(uint64_t idx);
  static Point from_index(uint32_t n, uint64_t idx);

  bool operator==(const Point& other) const = default;

 private:
  void check_index(uint32_t i) const {
    if (i >= n_) throw std::invalid_argument("point: coordinate out of range");
  }
  void mask_tail();

  uint32_t n_;
  std::vector<uint64_t> words_;
};

/// An ordered, duplicate-free partial assignment.  The order mirrors a
/// root-to-node path: two restrictions with equal assignment sets but
/// different orders denote the same subfunction at different tree nodes.
class Restriction {
 public:
  Restriction() = default;

  void push(uint32_t var, Sign value);
  bool fixes(uint32_t var) const;
  Sign value_at(uint32_t var) const;
  size_t size() const { return assignments_.size(); }
  bool empty() const { return assignments_.empty(); }

  /// Overwrites the fixed coordinates of x with their assigned values.
  void apply(Point& x) const;

  const std::vector<std::pair<uint32_t, Sign>>& assignments() const {
    return assignments_;
  }

 private:
  std::vector<std::pair<uint32_t, Sign>> assignments_;
};

}  // namespace dtrecon
