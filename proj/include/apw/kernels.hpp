#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace apw::kernels {

// Byte kernels behind the scanning core. Each operation has a scalar
// reference implementation and, on x86-64 hosts with AVX2, a vectorized
// variant selected at runtime. Variants are interchangeable: identical
// outputs, bit for bit, including hash values. Little-endian hosts assumed.

using MismatchFn = std::size_t (*)(const std::uint8_t* a, const std::uint8_t* b, std::size_t n);
using BlockHashFn = std::uint64_t (*)(const std::uint8_t* data, std::size_t n, std::uint64_t seed);
using FindFn = void (*)(const std::uint8_t* hay, std::size_t hay_len,
                        const std::uint8_t* needle, std::size_t needle_len,
                        std::vector<std::uint32_t>& out);

struct Kernels {
  const char* name;
  MismatchFn mismatch;        // index of first differing byte, n if ranges equal
  BlockHashFn block_hash;     // seedable 64-bit content hash
  FindFn find_occurrences;    // appends every match position, ascending
};

const Kernels& scalar();

// Honors APW_KERNELS (scalar | avx2 | auto). Unknown or unavailable values
// fall back to scalar. Latched on first call.
const Kernels& active();

const Kernels* by_name(std::string_view name);  // nullptr when unavailable here
std::vector<const Kernels*> available();

inline bool range_equal(const Kernels& k, const std::uint8_t* a, const std::uint8_t* b,
                        std::size_t n) {
  return k.mismatch(a, b, n) == n;
}

}  // namespace apw::kernels
