#pragma once

#include <cstdint>
#include <initializer_list>

namespace floc {

// Counter-based deterministic generator (splitmix64). Every random choice in
// the library flows from a 64-bit seed plus an explicit derivation path, so
// repeated runs and parallel schedules see identical streams.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Independent stream for a sub-task, e.g. {eta_index, trial}.
  Rng fork(std::initializer_list<std::uint64_t> path) const {
    return Rng(derive(state_, path));
  }

  static std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = seed;
    for (std::uint64_t p : path) s = mix(s ^ mix(p + 0x9e3779b97f4a7c15ULL));
    return mix(s);
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace floc
