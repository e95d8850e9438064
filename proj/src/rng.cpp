#include "dtrecon/rng.hpp"

#include <cmath>

namespace dtrecon {

uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t mix_seeds(uint64_t a, uint64_t b) {
  uint64_t state = a ^ (b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2));
  uint64_t out = splitmix64(state);
  out ^= splitmix64(state);
  return out;
}

Rng::Rng(uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
  // xoshiro requires a nonzero state; splitmix output is zero for at most one
  // of the four words, so this cannot happen, but keep the guard cheap.
  if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 0x9e3779b97f4a7c15ull;
}

static inline uint64_t rotl(uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

uint64_t Rng::next_u64() {
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::next_double_open() { return 1.0 - next_double(); }

uint64_t Rng::below(uint64_t bound) {
  // Lemire's multiply-shift rejection method.
  uint64_t x = next_u64();
  __uint128_t m = static_cast<__uint128_t>(x) * bound;
  auto lo = static_cast<uint64_t>(m);
  if (lo < bound) {
    uint64_t threshold = -bound % bound;
    while (lo < threshold) {
      x = next_u64();
      m = static_cast<__uint128_t>(x) * bound;
      lo = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

bool Rng::bernoulli(double p) { return next_double() < p; }

int Rng::sign() { return (next_u64() >> 63) ? +1 : -1; }

Rng RandomTape::stream(std::string_view node_path, TapePurpose purpose,
                       uint64_t index) const {
  uint64_t h = master_;
  h = mix_seeds(h, static_cast<uint64_t>(purpose) + 0x517cc1b727220a95ull);
  h = mix_seeds(h, index);
  // Fold the path in 8-byte chunks, then the tail with its length so that
  // "" and "L" and "LL" all key distinct streams.
  uint64_t chunk = 0;
  int filled = 0;
  for (char c : node_path) {
    chunk |= static_cast<uint64_t>(static_cast<uint8_t>(c)) << (8 * filled);
    if (++filled == 8) {
      h = mix_seeds(h, chunk);
      chunk = 0;
      filled = 0;
    }
  }
  h = mix_seeds(h, chunk ^ (static_cast<uint64_t>(node_path.size()) << 56));
  return Rng(h);
}

}  // namespace dtrecon
