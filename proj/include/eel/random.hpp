#pragma once

#include <cstdint>
#include <random>

namespace eel {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for stream (a, b) of a master seed. Streams are independent of
/// each other, so adding a stream never perturbs an existing one.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
  return mix64(mix64(mix64(master) ^ (a + 0x632be59bd9b4e019ULL)) ^
               (b + 0x85157af5ULL));
}

inline Rng make_stream(std::uint64_t master, std::uint64_t a,
                       std::uint64_t b = 0) {
  return Rng(derive_seed(master, a, b));
}

}  // namespace eel
