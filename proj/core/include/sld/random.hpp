#pragma once

#include <cstdint>
#include <random>

namespace sld {

/// Seedable random source with a platform-independent output stream.
///
/// The raw engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard distributions are not, so uniform and normal
/// variates are derived here directly from the engine bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, count).
  std::size_t index(std::size_t count);

  /// Standard normal variate (Marsaglia polar method).
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer; decorrelates consecutive integer seeds.
std::uint64_t mix_seed(std::uint64_t value) noexcept;

/// Seed for the stream with the given index, derived from a base seed.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) noexcept {
  return mix_seed(base + stream);
}

}  // namespace sld
