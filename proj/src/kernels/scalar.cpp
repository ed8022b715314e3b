#include "apw/kernels.hpp"

#include "hash_common.hpp"

namespace apw::kernels {
namespace {

std::size_t mismatch_scalar(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

std::uint64_t hash_scalar(const std::uint8_t* p, std::size_t n, std::uint64_t seed) {
  using namespace detail;
  std::uint64_t acc[4] = {seed ^ kLane[0], seed ^ kLane[1], seed ^ kLane[2], seed ^ kLane[3]};
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32)
    for (int j = 0; j < 4; ++j) acc[j] = lane_step(acc[j], load64(p + i + 8 * j), kLane[j]);
  std::uint64_t tail = hash_tail(p + i, n - i, seed);
  return fold_final(acc, tail, n, seed);
}

void find_scalar(const std::uint8_t* hay, std::size_t hay_len, const std::uint8_t* needle,
                 std::size_t needle_len, std::vector<std::uint32_t>& out) {
  if (needle_len == 0 || hay_len < needle_len) return;
  std::size_t limit = hay_len - needle_len;
  for (std::size_t p = 0; p <= limit; ++p) {
    if (hay[p] != needle[0]) continue;
    std::size_t j = 1;
    while (j < needle_len && hay[p + j] == needle[j]) ++j;
    if (j == needle_len) out.push_back(static_cast<std::uint32_t>(p));
  }
}

}  // namespace

const Kernels& scalar() {
  static constexpr Kernels k{"scalar", mismatch_scalar, hash_scalar, find_scalar};
  return k;
}

}  // namespace apw::kernels
