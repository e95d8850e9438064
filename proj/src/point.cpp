#include "dtrecon/point.hpp"

#include "dtrecon/rng.hpp"

namespace dtrecon {

Point::Point(uint32_t n) : n_(n), words_((n + 63) / 64, 0) {
  if (n < 1 || n > kMaxDimension)
    throw std::invalid_argument("point: dimension must be in [1, 2^20]");
}

void Point::mask_tail() {
  uint32_t rem = n_ & 63;
  if (rem != 0) words_.back() &= (1ull << rem) - 1;
}

void Point::fill_random(Rng& rng) {
  for (auto& w : words_) w = rng.next_u64();
  mask_tail();
}

void Point::assign_index(uint64_t idx) {
  words_.assign(words_.size(), 0);
  words_[0] = idx;
  mask_tail();
}

Point Point::from_index(uint32_t n, uint64_t idx) {
  Point p(n);
  p.assign_index(idx);
  return p;
}

void Restriction::push(uint32_t var, Sign value) {
  if (value != +1 && value != -1)
    throw std::invalid_argument("restriction: value must be -1 or +1");
  if (fixes(var))
    throw std::invalid_argument("restriction: variable already fixed");
  assignments_.emplace_back(var, value);
}

bool Restriction::fixes(uint32_t var) const {
  for (const auto& [v, val] : assignments_)
    if (v == var) return true;
  return false;
}

Sign Restriction::value_at(uint32_t var) const {
  for (const auto& [v, val] : assignments_)
    if (v == var) return val;
  throw std::invalid_argument("restriction: variable not fixed");
}

void Restriction::apply(Point& x) const {
  for (const auto& [v, val] : assignments_) x.set(v, val);
}

}  // namespace dtrecon
