#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace dnaadv {

using Rng = std::mt19937_64;

// FNV-1a; stable across platforms, unlike std::hash.
constexpr std::uint64_t stable_hash(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Derives an independent stream seed from a parent seed and a stream key.
/// Used to give each sample, read or epoch its own schedule-independent RNG.
inline std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t key) {
  std::seed_seq seq{static_cast<std::uint32_t>(parent), static_cast<std::uint32_t>(parent >> 32),
                    static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

inline std::uint64_t derive_seed(std::uint64_t parent, std::string_view key) {
  return derive_seed(parent, stable_hash(key));
}

}  // namespace dnaadv
