#pragma once

// Seeded random streams.  Only the mt19937_64 engine is used from <random>:
// its output sequence is fixed by the standard, while the standard
// distributions are not, so sampling helpers are implemented here to keep
// runs byte-identical across toolchains.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace toriscope {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  /// Uniform index in [0, n).
  std::size_t index(std::size_t n);

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) std::swap(items[i - 1], items[index(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed of the named stream `stream` at position `index` below `base`.
std::uint64_t derive_seed(std::uint64_t base, std::string_view stream, std::uint64_t index = 0);

/// Worker count from TORISCOPE_THREADS (default 1, never 0).
std::size_t configured_threads();

}  // namespace toriscope
