#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "apw/kernels.hpp"
#include "apw/substitution.hpp"

namespace apw {

// Materialization cap in symbols: APW_MAX_WINDOW env override, default 2^24,
// hard limit 2^31 so in-window positions fit 32 bits.
std::uint64_t resource_cap();

// The one-sided fixed point x = sigma^inf(seed), materialized lazily.
// Materialization is single-writer: grow the prefix first, then any number
// of threads may read below the materialized length. Spans returned here are
// invalidated by the next ensure() call.
class FixedPointStream {
 public:
  FixedPointStream(Substitution sub, std::uint8_t seed, std::uint64_t cap = resource_cap());

  const Substitution& substitution() const { return sub_; }
  std::uint8_t seed() const { return seed_; }
  std::uint64_t size() const { return x_.size(); }  // materialized length
  std::uint64_t cap() const { return cap_; }

  void ensure(std::uint64_t n);
  std::span<const std::uint8_t> prefix_view(std::uint64_t n);
  Word prefix(std::uint64_t n);

  // x_i by base-m digit recursion; no materialization, any i.
  std::uint8_t letter_at(std::uint64_t i) const;

 private:
  Substitution sub_;
  std::uint8_t seed_;
  std::uint64_t cap_;
  std::vector<std::uint8_t> x_;
};

struct OccurrenceList {
  Word factor;
  std::uint64_t window;
  std::vector<std::uint32_t> positions;  // ascending, each verified by comparison
};

OccurrenceList occurrences(FixedPointStream& stream, std::span<const std::uint8_t> factor,
                           std::uint64_t window,
                           const kernels::Kernels& k = kernels::active());

std::uint64_t factor_complexity(FixedPointStream& stream, std::uint32_t L, std::uint64_t window,
                                const kernels::Kernels& k = kernels::active());

struct AperiodicityVerdict {
  bool periodic;   // true: complexity(n) <= n inside the window (periodicity witness)
  std::uint32_t n;  // the witness, or n_max when aperiodic up to n_max
};

AperiodicityVerdict aperiodicity_check(FixedPointStream& stream, std::uint32_t n_max,
                                       std::uint64_t window);

struct RecurrenceBound {
  std::uint32_t bound;  // smallest R: every length-R window in the scan holds every length-L factor
  bool growing;         // bound not yet stable against a half-window probe
  std::uint32_t length;
  std::uint64_t window;
};

// Throws NotRecurrentInWindow when some factor's distance from its last
// occurrence to the window end exceeds the in-window bound (the factor
// stopped recurring; the bound would be unreliable).
RecurrenceBound recurrence_bound(FixedPointStream& stream, std::uint32_t L, std::uint64_t window);

}  // namespace apw
