#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "apw/fixed_point.hpp"
#include "apw/recognizability.hpp"

namespace apw {

// (N' + 1) * m. Runs the primitivity and aperiodicity gates on the stream.
std::uint64_t proof_constant(FixedPointStream& stream, const RecognizabilityReport& report);

// Least i >= 1 with k < m^i, i.e. m^(i-1) <= k < m^i for k >= 2; k = 1 maps
// to i = 1 (the construction is vacuous there).
std::uint32_t power_bracket(std::uint32_t k, std::uint32_t m);

struct ConstructionVerdict {
  bool ok;
  std::uint32_t i;
  std::uint64_t block_len;  // N' * m^i + 1
  std::optional<std::pair<std::uint32_t, std::uint32_t>> equal_blocks;  // least (s, t) when !ok
};

// Checks the explicit witness: the k consecutive blocks of length
// N'*m^i + 1 starting at n are pairwise distinct.
ConstructionVerdict verify_construction(FixedPointStream& stream, std::uint64_t n, std::uint32_t k,
                                        std::uint64_t N_prime);

struct TheoremCell {
  std::uint64_t n = 0;
  std::uint32_t k = 0;
  std::uint32_t i = 0;
  std::uint64_t block_len = 0;  // 0 when construction not checked
  std::optional<std::uint32_t> min_ell;
  bool bound_ok = false;
  bool construction_ok = true;
  double ratio() const { return min_ell ? static_cast<double>(*min_ell) / k : 0.0; }
  bool ok() const { return bound_ok && construction_ok; }
};

struct TheoremReport {
  std::uint64_t C = 0;
  std::uint64_t n0 = 0, n1 = 0;
  std::uint32_t k0 = 0, k1 = 0;
  std::optional<std::uint64_t> N_prime;
  std::vector<TheoremCell> cells;  // n-major, then k
  std::vector<std::pair<std::uint64_t, std::uint32_t>> violations;  // (n, k) with no min_ell <= C*k
  std::uint64_t C_empirical = 0;   // max ceil(min_ell / k) over successful cells

  std::string to_csv() const;  // columns n,k,i,block_len,min_ell,ratio,ok
};

// For every cell, searches min_ell with ell_max = C*k (a violation when the
// search fails); when N_prime is given, additionally verifies the explicit
// construction. n range half-open [n0, n1), k range inclusive [k0, k1].
TheoremReport verify_bound(FixedPointStream& stream, std::uint64_t n0, std::uint64_t n1,
                           std::uint32_t k0, std::uint32_t k1, std::uint64_t C,
                           std::optional<std::uint64_t> N_prime = std::nullopt,
                           unsigned jobs = 1);

// Max over the grid of ceil(min_ell / k), each cell searched up to ell_cap.
// Throws SearchExhausted at the first (row-major) cell with no result.
std::uint64_t empirical_constant(FixedPointStream& stream, std::uint64_t n0, std::uint64_t n1,
                                 std::uint32_t k0, std::uint32_t k1, std::uint32_t ell_cap,
                                 unsigned jobs = 1);

}  // namespace apw
