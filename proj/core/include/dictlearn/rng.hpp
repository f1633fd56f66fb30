#pragma once

#include <cstddef>
#include <cstdint>

namespace dictlearn {

/// Counter-based pseudo-random generator.
///
/// Output i is a fixed bijective mix of (key, i), where key is derived from
/// the seed and a stream id. No hidden global state, and the output sequence
/// is identical across platforms and standard libraries (unlike
/// std::uniform_real_distribution, whose algorithm is implementation-defined).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;

  /// Uniform integer in [0, n). n must be > 0.
  std::size_t uniform_index(std::size_t n) noexcept;

  /// Standard normal deviate (Box-Muller, one value per call).
  double normal() noexcept;

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dictlearn
