#pragma once
#include <cmath>
#include <cstdint>

namespace meancycle {

inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer, bijective on 64-bit words
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

// counter-based draw: depends only on (seed, a, b), so any subset of a
// stream can be regenerated independently and in parallel
constexpr std::uint64_t hash_pair(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t h = mix64(seed + golden_gamma);
  h = mix64(h ^ (a * 0xD1B54A32D192ED03ull + golden_gamma));
  h = mix64(h ^ (b * 0x8CB92BA72F3D8DD7ull + golden_gamma));
  return h;
}

// top 52 bits offset by half an ulp: the offset is exactly representable
// below 2^52, so the result is strictly inside (0,1) and -log of it is
// always finite and positive
constexpr double to_unit(std::uint64_t h) noexcept {
  return (static_cast<double>(h >> 12) + 0.5) * 0x1.0p-52;
}

inline double exp1_from_hash(std::uint64_t h) noexcept { return -std::log(to_unit(h)); }

constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base + golden_gamma * (index + 1));
}

} // namespace meancycle
