#pragma once

// Shared pieces of the block hash. The stripe loop is the only part the
// vector variant reimplements; tail handling and the final fold run through
// these exact functions on every path, which is what keeps scalar and AVX2
// results bit-identical.

#include <cstdint>
#include <cstring>

namespace apw::kernels::detail {

inline constexpr std::uint64_t kLane[4] = {
    0x9E3779B185EBCA87ull,
    0xC2B2AE3D27D4EB4Full,
    0x165667B19E3779F9ull,
    0x27D4EB2F165667C5ull,
};
inline constexpr std::uint64_t kFold = 0x9FB21C651E98DF25ull;

inline std::uint64_t load64(const std::uint8_t* p) {
  std::uint64_t w;
  std::memcpy(&w, p, sizeof w);
  return w;
}

inline std::uint64_t rotl(std::uint64_t v, int s) { return (v << s) | (v >> (64 - s)); }

// Lane update uses only xor, 32x32->64 multiply, rotate and add: every step
// has a one-instruction AVX2 counterpart per 64-bit lane.
inline std::uint64_t lane_step(std::uint64_t acc, std::uint64_t w, std::uint64_t key) {
  std::uint64_t x = w ^ key;
  std::uint64_t prod =
      static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) * static_cast<std::uint32_t>(x >> 32);
  return (acc ^ prod) + rotl(x, 31);
}

// Bytes past the last full 32-byte stripe.
inline std::uint64_t hash_tail(const std::uint8_t* p, std::size_t n, std::uint64_t seed) {
  std::uint64_t t = seed ^ (0xA0761D6478BD642Full + n);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) t = lane_step(t, load64(p + i), kLane[(i >> 3) & 3]);
  for (; i < n; ++i) t = (t ^ p[i]) * 0x100000001B3ull;
  return t;
}

inline std::uint64_t fold_final(const std::uint64_t acc[4], std::uint64_t tail_acc, std::size_t n,
                                std::uint64_t seed) {
  std::uint64_t h = seed ^ (static_cast<std::uint64_t>(n) * kFold);
  for (int j = 0; j < 4; ++j) {
    h ^= acc[j];
    h *= kFold;
    h = rotl(h, 29);
  }
  h ^= tail_acc;
  h *= kFold;
  h ^= h >> 32;
  h *= 0xD6E8FEB86659FD93ull;
  h ^= h >> 32;
  h *= 0xD6E8FEB86659FD93ull;
  h ^= h >> 32;
  return h;
}

}  // namespace apw::kernels::detail
