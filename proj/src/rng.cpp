#include "netbandit/rng.hpp"

#include "netbandit/errors.hpp"

namespace netbandit {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
  return mix64(mix64(parent) ^ (tag * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag) {
  return derive_seed(parent, fnv1a64(tag));
}

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t basis) {
  std::uint64_t h = basis;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t CounterRng::next_u64() {
  // Two rounds so that adjacent counters decorrelate even for nearby keys.
  return mix64(mix64(key_ + counter_++ * 0x9e3779b97f4a7c15ULL) ^ key_);
}

double CounterRng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

bool CounterRng::bernoulli(double p) {
  // Always consumes one draw so the stream position is independent of p.
  const double u = uniform();
  return u < p;
}

std::uint64_t CounterRng::below(std::uint64_t bound) {
  NETBANDIT_REQUIRE(bound > 0, "CounterRng::below: bound must be positive");
  // Rejection sampling on the top of the range to remove modulo bias.
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

}  // namespace netbandit
