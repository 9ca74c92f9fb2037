#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace hgatelda {

/// Deterministic random source. All draws go through next_u64() so the
/// sequence is identical across platforms for a given seed (standard library
/// distributions are implementation-defined and deliberately avoided).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) with 53 bits of randomness.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform index in [0, n); rejection sampling avoids modulo bias.
  std::size_t uniform_index(std::size_t n);

  /// Fisher-Yates shuffle driven by uniform_index.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

  /// Derived stream for independent sub-tasks (e.g. one per CV fold).
  /// Forking is a pure function of (seed, stream), not of draw position.
  SeededRng fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace hgatelda
