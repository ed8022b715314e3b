#pragma once

// Groups all in-window positions by the length-L factor starting there.
// Hash buckets are confirmed by byte comparison; a bucket holding different
// factors (hash collision) is split, so classes are exact.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "apw/kernels.hpp"

namespace apw::detail {

// fn receives each distinct factor's ascending position list exactly once.
// Class order follows the hash sort: deterministic and identical across
// kernel variants (hashes are bit-equal by design).
inline void for_each_factor_class(std::span<const std::uint8_t> text, std::uint64_t window,
                                  std::uint32_t L, const kernels::Kernels& k,
                                  const std::function<void(std::span<const std::uint32_t>)>& fn) {
  const std::uint8_t* base = text.data();
  std::size_t count = static_cast<std::size_t>(window - L + 1);
  std::vector<std::pair<std::uint64_t, std::uint32_t>> slots(count);
  for (std::size_t p = 0; p < count; ++p)
    slots[p] = {k.block_hash(base + p, L, 0), static_cast<std::uint32_t>(p)};
  std::sort(slots.begin(), slots.end());

  std::vector<std::uint32_t> reps;
  std::vector<std::vector<std::uint32_t>> groups;
  for (std::size_t i = 0; i < count;) {
    std::size_t j = i + 1;
    while (j < count && slots[j].first == slots[i].first) ++j;
    if (j == i + 1) {
      std::uint32_t one[1] = {slots[i].second};
      fn(std::span<const std::uint32_t>(one, 1));
      i = j;
      continue;
    }
    reps.clear();
    std::size_t used = 0;
    for (std::size_t t = i; t < j; ++t) {
      std::uint32_t pos = slots[t].second;
      std::size_t g = 0;
      while (g < used && !kernels::range_equal(k, base + pos, base + reps[g], L)) ++g;
      if (g == used) {
        reps.push_back(pos);
        if (groups.size() == used) groups.emplace_back();
        groups[used].clear();
        ++used;
      }
      groups[g].push_back(pos);
    }
    for (std::size_t g = 0; g < used; ++g) fn(groups[g]);
    i = j;
  }
}

}  // namespace apw::detail
