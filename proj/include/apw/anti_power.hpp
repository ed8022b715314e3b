#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "apw/fixed_point.hpp"
#include "apw/kernels.hpp"

namespace apw {

struct AntiPowerQuery {
  std::uint64_t n;        // start position
  std::uint32_t k;        // block count, >= 1
  std::uint32_t ell_max;  // search cap on block length, >= 1
};

struct AntiPowerResult {
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t ell_max = 0;
  std::optional<std::uint32_t> min_ell;
  double ratio() const { return min_ell ? static_cast<double>(*min_ell) / k : 0.0; }
};

// True iff the k consecutive length-ell blocks of w are pairwise distinct.
// Exact: equal block hashes are confirmed by byte comparison.
bool is_anti_power(std::span<const std::uint8_t> w, std::uint32_t k, std::uint32_t ell,
                   const kernels::Kernels& kn = kernels::active());

// Smallest ell <= ell_max making x[n, n+k*ell) a k-anti-power, by exhaustive
// ascent (existence at ell says nothing about ell+1). Absence is a value.
AntiPowerResult min_block_length(FixedPointStream& stream, const AntiPowerQuery& q);

// One result per (n, k) cell, n-major then k; n range half-open [n0, n1),
// k range inclusive [k0, k1]. Deterministic regardless of jobs.
std::vector<AntiPowerResult> scan(FixedPointStream& stream, std::uint64_t n0, std::uint64_t n1,
                                  std::uint32_t k0, std::uint32_t k1, std::uint32_t ell_max,
                                  unsigned jobs = 1);

// CSV with a versioned comment line; columns n,k,min_ell,ratio.
std::string scan_to_csv(const std::vector<AntiPowerResult>& rows);

}  // namespace apw
