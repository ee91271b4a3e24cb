#pragma once

#include <array>
#include <cstdint>

namespace mppi {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3", SC'11). Stateless: the output block is a pure
/// function of (counter, key).
struct Philox4x32 {
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter generate(Counter counter, Key key) noexcept;
};

/// SplitMix64 finalizer. Used to derive independent seeds from
/// (base seed, index) pairs.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// Standard-normal stream addressed by (seed, stream). Two streams with
/// different ids never share a Philox block, so the draws for stream i do
/// not depend on how many other streams exist or in which order they are
/// consumed.
class NormalSubstream {
 public:
  NormalSubstream(std::uint64_t seed, std::uint64_t stream) noexcept;

  double next() noexcept;

 private:
  void refill() noexcept;

  Philox4x32::Key key_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<double, 2> cache_{};
  int cached_ = 0;
};

}  // namespace mppi
