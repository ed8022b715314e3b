#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "apw/fixed_point.hpp"

namespace apw {

// A factor seen at both an m-aligned and a non-aligned position.
struct AlignmentCounterexample {
  Word factor;
  std::uint32_t aligned_pos;     // == 0 (mod m)
  std::uint32_t nonaligned_pos;  // != 0 (mod m)
};

struct RecognizabilityConstant {
  std::uint32_t N;
  std::uint64_t window;
  // Evidence that N-1 fails: present whenever N > 1. Deterministic pick:
  // least (aligned_pos, nonaligned_pos) over all offending factors.
  std::optional<AlignmentCounterexample> below;
};

// Least L <= L_max such that no length-L factor occurs at both parities
// (mod m) inside the window. Gates: NotPrimitive, PeriodicInput, and
// WindowTooSmall unless window >= R(L_max + m) + L_max with a stable R.
RecognizabilityConstant estimate_recognizability_constant(FixedPointStream& stream,
                                                          std::uint32_t L_max,
                                                          std::uint64_t window);

// Least l <= l_max such that every in-window occurrence q of the length-m^l
// prefix satisfies q == 0 (mod m) and x[q/m ..) matches the length-m^(l-1)
// prefix; re-verified at l+1.
std::uint32_t estimate_N1(FixedPointStream& stream, std::uint32_t l_max, std::uint64_t window);

struct RecognizabilityReport {
  std::uint32_t N;
  std::uint32_t N1;
  std::uint32_t r;        // least r >= 0 with m^(N1+r) >= N + m
  Word p;                 // prefix of length m^(N1+r)
  std::uint64_t M;        // single-factor recurrence bound for p
  std::uint64_t N_prime;  // 2*M exactly
  std::uint64_t window;
  std::optional<AlignmentCounterexample> n_counterexample;

  std::string to_text() const;  // flat key-value block
};

RecognizabilityReport derive_N_prime(FixedPointStream& stream, std::uint64_t window,
                                     std::uint32_t L_max = 64, std::uint32_t l_max = 8);

struct CongruenceCounterexample {
  Word factor;
  std::uint32_t alpha;
  std::uint32_t beta;  // (beta - alpha) % modulus != 0
};

struct PowerRecognizabilityVerdict {
  bool holds;
  std::uint32_t power;    // i
  std::uint64_t modulus;  // m^i
  std::uint64_t bound;    // factor length checked (suffices for all longer factors)
  std::uint64_t window;
  std::optional<CongruenceCounterexample> counterexample;  // least (alpha, beta)
};

// Confirms that any two in-window occurrences of any factor of length
// >= bound are congruent mod m^i.
PowerRecognizabilityVerdict check_power_recognizability(FixedPointStream& stream, std::uint32_t i,
                                                        std::uint64_t bound, std::uint64_t window);

}  // namespace apw
