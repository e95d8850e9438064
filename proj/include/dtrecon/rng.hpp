#pragma once

#include <cstdint>
#include <string_view>

namespace dtrecon {

/// SplitMix64 step; also used as the mixing primitive for seed derivation.
uint64_t splitmix64(uint64_t& state);

/// Derives a fresh 64-bit seed from two values (order-sensitive).
uint64_t mix_seeds(uint64_t a, uint64_t b);

/// xoshiro256** with splitmix-expanded seeding.  Hand-rolled so that streams
/// are reproducible across platforms and standard-library versions.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  uint64_t next_u64();
  /// Uniform in [0, 1).
  double next_double();
  /// Uniform in (0, 1]; safe as a log() argument.
  double next_double_open();
  /// Uniform in {0, ..., bound-1}; bound >= 1.
  uint64_t below(uint64_t bound);
  bool bernoulli(double p);
  /// Uniform in {-1, +1}.
  int sign();

 private:
  uint64_t s_[4];
};

enum class TapePurpose : uint8_t { score = 1, leaf = 2 };

/// Seed-keyed deterministic randomness addressed by (node path, purpose,
/// sample index).  The same key yields the same stream in any process and any
/// query order; distinct keys yield independent-looking streams.
class RandomTape {
 public:
  explicit RandomTape(uint64_t master) : master_(master) {}

  uint64_t master() const { return master_; }

  /// node_path is the root-to-node string over {'L','R'} ("" for the root).
  Rng stream(std::string_view node_path, TapePurpose purpose,
             uint64_t index) const;

 private:
  uint64_t master_;
};

}  // namespace dtrecon
