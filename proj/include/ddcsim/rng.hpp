#pragma once

#include <cstdint>
#include <vector>

namespace ddcsim {

// Counter-based uniform stream: output n of stream (seed, id) is
// mix64(key + n*gamma), the splitmix64 construction. Streams for distinct
// ids are statistically independent, creation is free, and the position of
// a stream is just its counter, which makes draw-budget audits trivial.
class CounterRng {
 public:
  CounterRng() = default;
  CounterRng(std::uint64_t seed, std::uint64_t stream_id)
      : key_(derive_key(seed, stream_id)) {}

  std::uint64_t next_u64() { return mix64(key_ + ++counter_ * kGamma); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n > 0. Multiply-shift reduction; the bias is
  // below 2^-64 per draw, irrelevant next to the model's own sampling error.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  std::uint64_t position() const { return counter_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  // Two mixing rounds so that nearby (seed, id) pairs land on unrelated keys.
  static std::uint64_t derive_key(std::uint64_t seed, std::uint64_t stream_id) {
    return mix64(mix64(seed + kGamma) ^
                 mix64(stream_id * 0xD2B74407B1CE6E93ull + kGamma));
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

// In-place Fisher-Yates shuffle driven by a CounterRng.
template <typename T>
void shuffle(std::vector<T>& items, CounterRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace ddcsim
