#pragma once

#include <cstdint>
#include <span>
#include <string_view>

namespace netbandit {

/// Mixes a 64-bit value through the SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream key from a parent seed and a tag.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag);

/// FNV-1a over raw bytes. Stable across platforms; used for cache keys.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis = 0xcbf29ce484222325ULL);

/// Counter-based generator: draw k is a pure function of (key, k).
///
/// All distributions are implemented here rather than through <random> so that
/// a seed replays bit-identically across standard library implementations.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : key_(mix64(seed ^ 0x6a09e667f3bcc909ULL)) {}

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform();

  /// True with probability p; p <= 0 never fires, p >= 1 always fires.
  bool bernoulli(double p);

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  std::uint64_t draws() const { return counter_; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace netbandit
