#include "apw/recognizability.hpp"

#include <string>

#include "factor_census.hpp"

namespace apw {
namespace {

// Shared gate: the estimates only make sense for primitive, aperiodic input.
void require_primitive_aperiodic(FixedPointStream& stream, std::uint64_t window) {
  auto pr = stream.substitution().is_primitive();
  if (!pr.primitive) fail(Gate::NotPrimitive, "substitution is not primitive");
  std::uint32_t n_max = static_cast<std::uint32_t>(std::min<std::uint64_t>(64, window / 2));
  if (n_max == 0) n_max = 1;
  auto verdict = aperiodicity_check(stream, n_max, window);
  if (verdict.periodic)
    fail(Gate::PeriodicInput, "factor complexity at length " + std::to_string(verdict.n) +
                                  " is <= " + std::to_string(verdict.n) +
                                  " (periodicity witness); fixed point is not aperiodic");
}

// The census is exact for length-L statistics only when the window dominates
// the recurrence scale of those factors; enforced, not assumed.
void require_window_exact(FixedPointStream& stream, std::uint32_t L_probe, std::uint32_t L_max,
                          std::uint64_t window) {
  RecurrenceBound rb = recurrence_bound(stream, L_probe, window);
  if (rb.growing)
    fail(Gate::WindowTooSmall, "recurrence bound for length " + std::to_string(L_probe) +
                                   " has not stabilized at window " + std::to_string(window) +
                                   "; enlarge the window");
  if (window < static_cast<std::uint64_t>(rb.bound) + L_max)
    fail(Gate::WindowTooSmall, "window " + std::to_string(window) + " < recurrence bound " +
                                   std::to_string(rb.bound) + " + " + std::to_string(L_max) +
                                   "; the length-" + std::to_string(L_max) +
                                   " census would be incomplete");
}

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t exp, const char* what) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < exp; ++i) {
    if (v > (1ull << 62) / base)
      fail(Gate::ConstantTooLarge, std::string(what) + " overflows 64-bit range");
    v *= base;
  }
  return v;
}

}  // namespace

RecognizabilityConstant estimate_recognizability_constant(FixedPointStream& stream,
                                                          std::uint32_t L_max,
                                                          std::uint64_t window) {
  if (L_max == 0) fail(Gate::InsufficientLength, "L_max must be positive");
  const std::uint32_t m = stream.substitution().image_length();
  require_primitive_aperiodic(stream, window);
  require_window_exact(stream, L_max + m, L_max, window);

  auto view = stream.prefix_view(window);
  const kernels::Kernels& kn = kernels::active();
  std::optional<AlignmentCounterexample> below;
  for (std::uint32_t L = 1; L <= L_max; ++L) {
    std::optional<AlignmentCounterexample> worst;
    detail::for_each_factor_class(view, window, L, kn, [&](std::span<const std::uint32_t> pos) {
      std::uint32_t aligned = UINT32_MAX, nonaligned = UINT32_MAX;
      for (std::uint32_t p : pos) {
        if (p % m == 0) {
          if (aligned == UINT32_MAX) aligned = p;
        } else {
          if (nonaligned == UINT32_MAX) nonaligned = p;
        }
        if (aligned != UINT32_MAX && nonaligned != UINT32_MAX) break;
      }
      if (aligned == UINT32_MAX || nonaligned == UINT32_MAX) return;
      if (!worst || std::pair(aligned, nonaligned) <
                        std::pair(worst->aligned_pos, worst->nonaligned_pos))
        worst = AlignmentCounterexample{Word(view.begin() + pos[0], view.begin() + pos[0] + L),
                                        aligned, nonaligned};
    });
    if (!worst) return {L, window, below};
    below = std::move(worst);
  }
  fail(Gate::NoConstantFound, "no recognizability constant up to L_max = " + std::to_string(L_max) +
                                  " within window " + std::to_string(window));
}

namespace {

// Every in-window occurrence q of the length-m^l prefix is m-aligned and
// desubstitutes onto the length-m^(l-1) prefix.
bool desubstitution_holds(FixedPointStream& stream, std::uint32_t l, std::uint64_t window,
                          const kernels::Kernels& kn) {
  const std::uint32_t m = stream.substitution().image_length();
  std::uint64_t target_len = 1;
  for (std::uint32_t i = 0; i < l; ++i) target_len *= m;
  std::uint64_t parent_len = target_len / m;
  auto view = stream.prefix_view(window);
  std::vector<std::uint32_t> occ;
  kn.find_occurrences(view.data(), view.size(), view.data(), target_len, occ);
  for (std::uint32_t q : occ) {
    if (q % m != 0) return false;
    if (parent_len > 0 &&
        !kernels::range_equal(kn, view.data() + q / m, view.data(), parent_len))
      return false;
  }
  return true;
}

}  // namespace

std::uint32_t estimate_N1(FixedPointStream& stream, std::uint32_t l_max, std::uint64_t window) {
  if (l_max == 0) fail(Gate::InsufficientLength, "l_max must be positive");
  const std::uint32_t m = stream.substitution().image_length();
  require_primitive_aperiodic(stream, window);
  const kernels::Kernels& kn = kernels::active();
  for (std::uint32_t l = 1; l <= l_max; ++l) {
    std::uint64_t probe_len = checked_pow(m, l + 1, "m^(l+1)");
    if (probe_len > window)
      fail(Gate::NoConstantFound, "window " + std::to_string(window) +
                                      " admits desubstitution probes only below l = " +
                                      std::to_string(l));
    if (desubstitution_holds(stream, l, window, kn) &&
        desubstitution_holds(stream, l + 1, window, kn))
      return l;
  }
  fail(Gate::NoConstantFound,
       "no desubstitution constant up to l_max = " + std::to_string(l_max));
}

RecognizabilityReport derive_N_prime(FixedPointStream& stream, std::uint64_t window,
                                     std::uint32_t L_max, std::uint32_t l_max) {
  RecognizabilityConstant nc = estimate_recognizability_constant(stream, L_max, window);
  std::uint32_t N1 = estimate_N1(stream, l_max, window);
  const std::uint32_t m = stream.substitution().image_length();

  std::uint32_t r = 0;
  std::uint64_t p_len = checked_pow(m, N1, "m^N1");
  while (p_len < static_cast<std::uint64_t>(nc.N) + m) {
    if (p_len > (1ull << 62) / m) fail(Gate::ConstantTooLarge, "|p| overflows 64-bit range");
    p_len *= m;
    ++r;
  }
  if (p_len > window)
    fail(Gate::ConstantTooLarge, "|p| = " + std::to_string(p_len) + " exceeds the window " +
                                     std::to_string(window));

  auto view = stream.prefix_view(window);
  const kernels::Kernels& kn = kernels::active();
  std::vector<std::uint32_t> occ;
  kn.find_occurrences(view.data(), view.size(), view.data(), p_len, occ);
  // occ[0] == 0: p is the prefix itself.
  std::uint64_t M = p_len;
  for (std::size_t i = 1; i < occ.size(); ++i) {
    std::uint64_t need = static_cast<std::uint64_t>(occ[i] - occ[i - 1]) + p_len - 1;
    if (need > M) M = need;
  }
  std::uint64_t tail = window - occ.back();
  if (tail > M)
    fail(Gate::NotRecurrentInWindow, "p stops recurring " + std::to_string(tail) +
                                         " symbols before the window end (in-window bound " +
                                         std::to_string(M) + ")");

  RecognizabilityReport rep;
  rep.N = nc.N;
  rep.N1 = N1;
  rep.r = r;
  rep.p = Word(view.begin(), view.begin() + p_len);
  rep.M = M;
  rep.N_prime = 2 * M;
  rep.window = window;
  rep.n_counterexample = nc.below;
  return rep;
}

std::string RecognizabilityReport::to_text() const {
  std::string out;
  out += "N=" + std::to_string(N) + "\n";
  out += "N1=" + std::to_string(N1) + "\n";
  out += "r=" + std::to_string(r) + "\n";
  out += "p_len=" + std::to_string(p.size()) + "\n";
  out += "M=" + std::to_string(M) + "\n";
  out += "N_prime=" + std::to_string(N_prime) + "\n";
  out += "window=" + std::to_string(window) + "\n";
  return out;
}

PowerRecognizabilityVerdict check_power_recognizability(FixedPointStream& stream, std::uint32_t i,
                                                        std::uint64_t bound,
                                                        std::uint64_t window) {
  if (bound == 0) fail(Gate::InsufficientLength, "bound must be positive");
  const std::uint32_t m = stream.substitution().image_length();
  require_primitive_aperiodic(stream, window);
  std::uint64_t modulus = checked_pow(m, i, "m^i");
  PowerRecognizabilityVerdict v{true, i, modulus, bound, window, std::nullopt};
  if (modulus == 1) return v;
  if (bound > window)
    fail(Gate::WindowTooSmall, "window " + std::to_string(window) + " shorter than the bound " +
                                   std::to_string(bound));
  // Two occurrences of a longer factor are also occurrences of its
  // length-bound prefix, so the census at exactly `bound` covers all
  // factors of length >= bound.
  auto view = stream.prefix_view(window);
  const kernels::Kernels& kn = kernels::active();
  std::optional<CongruenceCounterexample> worst;
  detail::for_each_factor_class(
      view, window, static_cast<std::uint32_t>(bound), kn,
      [&](std::span<const std::uint32_t> pos) {
        std::uint32_t alpha = pos[0];
        for (std::size_t t = 1; t < pos.size(); ++t) {
          if ((pos[t] - alpha) % modulus == 0) continue;
          if (!worst || std::pair(alpha, pos[t]) < std::pair(worst->alpha, worst->beta))
            worst = CongruenceCounterexample{
                Word(view.begin() + alpha, view.begin() + alpha + bound), alpha, pos[t]};
          break;
        }
      });
  if (worst) {
    v.holds = false;
    v.counterexample = std::move(worst);
  }
  return v;
}

}  // namespace apw
