#pragma once

// Counter-based random streams.
//
// Every random quantity in the library is a pure function of (key, counter):
//
//   draw(key, i) = mix64(key + (i + 1) * kGolden)
//
// where mix64 is the splitmix64 finalizer. Independent streams are keyed by
// derive_seed(master, stream_id), so trial t of a run with master seed s uses
// key derive_seed(s, t) no matter which thread executes it or in which order.

#include <cstddef>
#include <cstdint>

namespace banach {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) noexcept {
  return mix64(mix64(master) ^ (stream * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

// Reserved stream ids for auxiliary draws, kept far away from trial indices.
inline constexpr std::uint64_t kBootstrapStream = 0xB007'0000'0000'0001ULL;
inline constexpr std::uint64_t kFamilyStream = 0xFA41'0000'0000'0001ULL;

class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  static constexpr std::uint64_t at(std::uint64_t key, std::uint64_t counter) noexcept {
    return mix64(key + (counter + 1) * kGolden);
  }

  constexpr std::uint64_t next() noexcept { return at(key_, counter_++); }

  // Uniform on [0, 1) with 53 random bits.
  constexpr double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  constexpr double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

  constexpr int sign() noexcept { return (next() >> 63) ? -1 : 1; }

  // Uniform integer in [0, bound). Lemire's multiply-shift; bias < bound / 2^64.
  std::uint64_t below(std::uint64_t bound) noexcept {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * bound) >> 64);
  }

  constexpr std::uint64_t counter() const noexcept { return counter_; }
  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace banach
