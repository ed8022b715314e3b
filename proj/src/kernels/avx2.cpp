// AVX2 variants of the scanning kernels. This file is the only translation
// unit built with -mavx2; nothing here runs unless the dispatcher saw AVX2
// in cpuid first.

#include <immintrin.h>

#include "apw/kernels.hpp"
#include "hash_common.hpp"

namespace apw::kernels {
namespace {

std::size_t mismatch_avx2(const std::uint8_t* a, const std::uint8_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
    if (mask != 0xFFFFFFFFu) return i + static_cast<unsigned>(__builtin_ctz(~mask));
  }
  for (; i < n; ++i)
    if (a[i] != b[i]) return i;
  return n;
}

std::uint64_t hash_avx2(const std::uint8_t* p, std::size_t n, std::uint64_t seed) {
  using namespace detail;
  const __m256i keys = _mm256_set_epi64x(static_cast<long long>(kLane[3]), static_cast<long long>(kLane[2]),
                                         static_cast<long long>(kLane[1]), static_cast<long long>(kLane[0]));
  __m256i acc = _mm256_xor_si256(_mm256_set1_epi64x(static_cast<long long>(seed)), keys);
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    __m256i x = _mm256_xor_si256(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(p + i)), keys);
    __m256i prod = _mm256_mul_epu32(x, _mm256_srli_epi64(x, 32));
    __m256i rot = _mm256_or_si256(_mm256_slli_epi64(x, 31), _mm256_srli_epi64(x, 33));
    acc = _mm256_add_epi64(_mm256_xor_si256(acc, prod), rot);
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t tail = hash_tail(p + i, n - i, seed);
  return fold_final(lanes, tail, n, seed);
}

void find_avx2(const std::uint8_t* hay, std::size_t hay_len, const std::uint8_t* needle,
               std::size_t needle_len, std::vector<std::uint32_t>& out) {
  if (needle_len == 0 || hay_len < needle_len) return;
  std::size_t limit = hay_len - needle_len;  // last valid start, inclusive
  std::size_t p = 0;
  if (needle_len == 1) {
    const __m256i f = _mm256_set1_epi8(static_cast<char>(needle[0]));
    for (; p + 31 <= limit; p += 32) {
      __m256i chunk = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hay + p));
      unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(chunk, f)));
      while (mask) {
        unsigned b = static_cast<unsigned>(__builtin_ctz(mask));
        mask &= mask - 1;
        out.push_back(static_cast<std::uint32_t>(p + b));
      }
    }
    for (; p <= limit; ++p)
      if (hay[p] == needle[0]) out.push_back(static_cast<std::uint32_t>(p));
    return;
  }
  // First/last byte screen; candidates are verified with a full compare.
  // For p + 31 <= limit the second load ends at p + 31 + needle_len - 1
  // <= hay_len - 1, so both loads stay in bounds.
  const __m256i first = _mm256_set1_epi8(static_cast<char>(needle[0]));
  const __m256i last = _mm256_set1_epi8(static_cast<char>(needle[needle_len - 1]));
  for (; p + 31 <= limit; p += 32) {
    __m256i c0 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hay + p));
    __m256i c1 = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hay + p + needle_len - 1));
    unsigned mask = static_cast<unsigned>(_mm256_movemask_epi8(
        _mm256_and_si256(_mm256_cmpeq_epi8(c0, first), _mm256_cmpeq_epi8(c1, last))));
    while (mask) {
      unsigned b = static_cast<unsigned>(__builtin_ctz(mask));
      mask &= mask - 1;
      if (mismatch_avx2(hay + p + b, needle, needle_len) == needle_len)
        out.push_back(static_cast<std::uint32_t>(p + b));
    }
  }
  for (; p <= limit; ++p) {
    if (hay[p] != needle[0]) continue;
    std::size_t j = 1;
    while (j < needle_len && hay[p + j] == needle[j]) ++j;
    if (j == needle_len) out.push_back(static_cast<std::uint32_t>(p));
  }
}

}  // namespace

const Kernels& avx2_table() {
  static constexpr Kernels k{"avx2", mismatch_avx2, hash_avx2, find_avx2};
  return k;
}

}  // namespace apw::kernels
