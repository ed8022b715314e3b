#include "apw/fixed_point.hpp"

#include <cstdlib>
#include <string>

#include "factor_census.hpp"

namespace apw {

std::uint64_t resource_cap() {
  static const std::uint64_t cap = [] {
    const std::uint64_t kDefault = 1ull << 24;
    const std::uint64_t kHardLimit = 1ull << 31;
    const char* env = std::getenv("APW_MAX_WINDOW");
    if (!env || !*env) return kDefault;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end || v == 0) return kDefault;
    return v > kHardLimit ? kHardLimit : static_cast<std::uint64_t>(v);
  }();
  return cap;
}

FixedPointStream::FixedPointStream(Substitution sub, std::uint8_t seed, std::uint64_t cap)
    : sub_(std::move(sub)), seed_(seed), cap_(cap) {
  if (sub_.image_length() < 2)
    fail(Gate::NonGrowing, "image length " + std::to_string(sub_.image_length()) +
                               " cannot grow a fixed point (need m >= 2)");
  if (seed_ >= sub_.alphabet_size() || sub_.image(seed_)[0] != seed_)
    fail(Gate::NoFixedPoint,
         (seed_ < sub_.alphabet_size() ? "letter " + sub_.symbol(seed_) : "letter") +
             " does not begin its own image; no fixed point from this seed");
  if (cap_ > (1ull << 31)) cap_ = 1ull << 31;
  x_.push_back(seed_);
}

void FixedPointStream::ensure(std::uint64_t n) {
  if (n <= x_.size()) return;
  if (n > cap_)
    fail(Gate::ConstantTooLarge, "prefix of length " + std::to_string(n) +
                                     " exceeds the materialization cap " + std::to_string(cap_) +
                                     " (raise APW_MAX_WINDOW to override)");
  const std::uint32_t m = sub_.image_length();
  std::uint64_t old = x_.size();
  x_.resize(n);
  // x[q*m + d] = image(x[q])[d]; q < write position always, so the source
  // letter is already materialized.
  const std::uint8_t* img = sub_.image(0).data();
  std::uint64_t q = old / m;
  std::uint32_t d = static_cast<std::uint32_t>(old % m);
  for (std::uint64_t pos = old; pos < n;) {
    const std::uint8_t* row = img + static_cast<std::size_t>(x_[q]) * m;
    while (d < m && pos < n) x_[pos++] = row[d++];
    d = 0;
    ++q;
  }
}

std::span<const std::uint8_t> FixedPointStream::prefix_view(std::uint64_t n) {
  ensure(n);
  return {x_.data(), static_cast<std::size_t>(n)};
}

Word FixedPointStream::prefix(std::uint64_t n) {
  auto v = prefix_view(n);
  return Word(v.begin(), v.end());
}

std::uint8_t FixedPointStream::letter_at(std::uint64_t i) const {
  const std::uint32_t m = sub_.image_length();
  std::uint8_t digits[64];
  int nd = 0;
  while (i > 0) {
    digits[nd++] = static_cast<std::uint8_t>(i % m);
    i /= m;
  }
  std::uint8_t a = seed_;
  while (nd > 0) a = sub_.image(a)[digits[--nd]];
  return a;
}

OccurrenceList occurrences(FixedPointStream& stream, std::span<const std::uint8_t> factor,
                           std::uint64_t window, const kernels::Kernels& k) {
  if (factor.empty()) fail(Gate::InsufficientLength, "empty factor");
  if (window < factor.size())
    fail(Gate::WindowTooSmall, "window " + std::to_string(window) + " shorter than the factor");
  auto view = stream.prefix_view(window);
  OccurrenceList out{Word(factor.begin(), factor.end()), window, {}};
  k.find_occurrences(view.data(), view.size(), factor.data(), factor.size(), out.positions);
  return out;
}

std::uint64_t factor_complexity(FixedPointStream& stream, std::uint32_t L, std::uint64_t window,
                                const kernels::Kernels& k) {
  if (L == 0) fail(Gate::InsufficientLength, "factor length must be positive");
  if (window < L)
    fail(Gate::WindowTooSmall, "window " + std::to_string(window) + " shorter than L");
  auto view = stream.prefix_view(window);
  std::uint64_t classes = 0;
  detail::for_each_factor_class(view, window, L, k,
                                [&](std::span<const std::uint32_t>) { ++classes; });
  return classes;
}

AperiodicityVerdict aperiodicity_check(FixedPointStream& stream, std::uint32_t n_max,
                                       std::uint64_t window) {
  if (n_max == 0) fail(Gate::InsufficientLength, "n_max must be positive");
  if (window < n_max)
    fail(Gate::WindowTooSmall, "window " + std::to_string(window) + " shorter than n_max");
  for (std::uint32_t n = 1; n <= n_max; ++n)
    if (factor_complexity(stream, n, window) <= n) return {true, n};
  return {false, n_max};
}

namespace {

struct RecurrenceCore {
  std::uint32_t bound;     // max over factors of max(first + L, gap + L - 1)
  std::uint32_t tail_req;  // max over factors of window - last occurrence
};

RecurrenceCore recurrence_core(std::span<const std::uint8_t> view, std::uint64_t window,
                               std::uint32_t L, const kernels::Kernels& k) {
  RecurrenceCore c{0, 0};
  detail::for_each_factor_class(view, window, L, k, [&](std::span<const std::uint32_t> pos) {
    std::uint32_t lead = pos[0] + L;
    if (lead > c.bound) c.bound = lead;
    for (std::size_t i = 1; i < pos.size(); ++i) {
      std::uint32_t need = pos[i] - pos[i - 1] + L - 1;
      if (need > c.bound) c.bound = need;
    }
    std::uint32_t tail = static_cast<std::uint32_t>(window - pos.back());
    if (tail > c.tail_req) c.tail_req = tail;
  });
  return c;
}

}  // namespace

RecurrenceBound recurrence_bound(FixedPointStream& stream, std::uint32_t L, std::uint64_t window) {
  if (L == 0) fail(Gate::InsufficientLength, "factor length must be positive");
  if (window < L)
    fail(Gate::WindowTooSmall, "window " + std::to_string(window) + " shorter than L");
  auto view = stream.prefix_view(window);
  const kernels::Kernels& k = kernels::active();
  RecurrenceCore full = recurrence_core(view, window, L, k);
  if (full.tail_req > full.bound)
    fail(Gate::NotRecurrentInWindow,
         "some length-" + std::to_string(L) + " factor stops recurring " +
             std::to_string(full.tail_req) + " symbols before the window end (in-window bound " +
             std::to_string(full.bound) + ")");
  bool growing = false;
  std::uint64_t half = window / 2;
  if (half >= 2ull * L) {
    RecurrenceCore probe = recurrence_core(view.subspan(0, half), half, L, k);
    growing = probe.tail_req > probe.bound || probe.bound != full.bound;
  }
  return {full.bound, growing, L, window};
}

}  // namespace apw
