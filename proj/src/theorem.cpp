#include "apw/theorem.hpp"

#include <algorithm>
#include <cstdio>

#include "apw/anti_power.hpp"
#include "apw/parallel.hpp"

namespace apw {
namespace {

// Same gates as the recognizability estimates: the theorem's hypotheses.
void require_gates(FixedPointStream& stream, std::uint64_t window) {
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

std::optional<std::uint32_t> ascend_cell(std::span<const std::uint8_t> view, std::uint64_t n,
                                         std::uint32_t k, std::uint64_t ell_max,
                                         const kernels::Kernels& kn) {
  for (std::uint64_t ell = 1; ell <= ell_max; ++ell) {
    if (n + k * ell > view.size()) break;
    if (is_anti_power(view.subspan(n, k * ell), k, static_cast<std::uint32_t>(ell), kn))
      return static_cast<std::uint32_t>(ell);
  }
  return std::nullopt;
}

}  // namespace

std::uint64_t proof_constant(FixedPointStream& stream, const RecognizabilityReport& report) {
  std::uint64_t gate_window = std::min<std::uint64_t>(std::max<std::uint64_t>(report.window, 256),
                                                      1ull << 14);
  require_gates(stream, gate_window);
  return (report.N_prime + 1) * stream.substitution().image_length();
}

std::uint32_t power_bracket(std::uint32_t k, std::uint32_t m) {
  std::uint32_t i = 1;
  std::uint64_t cap = m;
  while (k >= cap) {
    cap *= m;
    ++i;
  }
  return i;
}

ConstructionVerdict verify_construction(FixedPointStream& stream, std::uint64_t n, std::uint32_t k,
                                        std::uint64_t N_prime) {
  if (k == 0 || N_prime == 0) fail(Gate::InsufficientLength, "k and N_prime must be positive");
  const std::uint32_t m = stream.substitution().image_length();
  std::uint32_t i = power_bracket(k, m);
  std::uint64_t power = 1;
  for (std::uint32_t t = 0; t < i; ++t) power *= m;
  std::uint64_t block_len = N_prime * power + 1;
  ConstructionVerdict v{true, i, block_len, std::nullopt};
  if (k < 2) return v;
  auto view = stream.prefix_view(n + k * block_len);
  const kernels::Kernels& kn = kernels::active();
  const std::uint8_t* base = view.data() + n;

  std::vector<std::pair<std::uint64_t, std::uint32_t>> hs(k);
  for (std::uint32_t s = 0; s < k; ++s)
    hs[s] = {kn.block_hash(base + s * block_len, block_len, 0), s};
  std::sort(hs.begin(), hs.end());
  std::optional<std::pair<std::uint32_t, std::uint32_t>> worst;
  for (std::uint32_t a = 0; a + 1 < k; ++a)
    for (std::uint32_t b = a + 1; b < k && hs[b].first == hs[a].first; ++b)
      if (kernels::range_equal(kn, base + hs[a].second * block_len,
                               base + hs[b].second * block_len, block_len)) {
        auto pair = std::minmax(hs[a].second, hs[b].second);
        if (!worst || std::pair(pair.first, pair.second) < *worst)
          worst = std::pair(pair.first, pair.second);
      }
  if (worst) {
    v.ok = false;
    v.equal_blocks = worst;
  }
  return v;
}

TheoremReport verify_bound(FixedPointStream& stream, std::uint64_t n0, std::uint64_t n1,
                           std::uint32_t k0, std::uint32_t k1, std::uint64_t C,
                           std::optional<std::uint64_t> N_prime, unsigned jobs) {
  if (C == 0 || k0 == 0) fail(Gate::InsufficientLength, "C and k must be positive");
  TheoremReport rep;
  rep.C = C;
  rep.n0 = n0;
  rep.n1 = n1;
  rep.k0 = k0;
  rep.k1 = k1;
  rep.N_prime = N_prime;
  if (n1 <= n0 || k1 < k0) return rep;

  const std::uint32_t m = stream.substitution().image_length();
  std::uint64_t worst = (n1 - 1) + C * k1 * k1;
  if (N_prime) {
    std::uint64_t power = 1;
    for (std::uint32_t t = 0; t < power_bracket(k1, m); ++t) power *= m;
    worst = std::max(worst, (n1 - 1) + static_cast<std::uint64_t>(k1) * (*N_prime * power + 1));
  }
  auto view = stream.prefix_view(worst);
  const kernels::Kernels& kn = kernels::active();

  std::size_t kcount = k1 - k0 + 1;
  rep.cells.resize(static_cast<std::size_t>(n1 - n0) * kcount);
  parallel_for(rep.cells.size(), jobs, [&](std::size_t idx) {
    TheoremCell& cell = rep.cells[idx];
    cell.n = n0 + idx / kcount;
    cell.k = k0 + static_cast<std::uint32_t>(idx % kcount);
    cell.i = power_bracket(cell.k, m);
    cell.min_ell = ascend_cell(view, cell.n, cell.k, C * cell.k, kn);
    cell.bound_ok = cell.min_ell.has_value();
    if (N_prime) {
      std::uint64_t power = 1;
      for (std::uint32_t t = 0; t < cell.i; ++t) power *= m;
      cell.block_len = *N_prime * power + 1;
      if (cell.k >= 2) {
        const std::uint8_t* base = view.data() + cell.n;
        std::vector<std::pair<std::uint64_t, std::uint32_t>> hs(cell.k);
        for (std::uint32_t s = 0; s < cell.k; ++s)
          hs[s] = {kn.block_hash(base + s * cell.block_len, cell.block_len, 0), s};
        std::sort(hs.begin(), hs.end());
        for (std::uint32_t a = 0; a + 1 < cell.k && cell.construction_ok; ++a)
          for (std::uint32_t b = a + 1; b < cell.k && hs[b].first == hs[a].first; ++b)
            if (kernels::range_equal(kn, base + hs[a].second * cell.block_len,
                                     base + hs[b].second * cell.block_len, cell.block_len)) {
              cell.construction_ok = false;
              break;
            }
      }
    }
  });

  for (const TheoremCell& cell : rep.cells) {
    if (!cell.bound_ok) {
      rep.violations.emplace_back(cell.n, cell.k);
    } else {
      std::uint64_t c = (*cell.min_ell + cell.k - 1) / cell.k;
      if (c > rep.C_empirical) rep.C_empirical = c;
    }
  }
  return rep;
}

std::uint64_t empirical_constant(FixedPointStream& stream, std::uint64_t n0, std::uint64_t n1,
                                 std::uint32_t k0, std::uint32_t k1, std::uint32_t ell_cap,
                                 unsigned jobs) {
  if (k0 == 0 || ell_cap == 0) fail(Gate::InsufficientLength, "k and ell_cap must be positive");
  if (n1 <= n0 || k1 < k0) return 0;
  std::uint64_t worst = (n1 - 1) + static_cast<std::uint64_t>(k1) * ell_cap;
  auto view = stream.prefix_view(worst);
  const kernels::Kernels& kn = kernels::active();

  std::size_t kcount = k1 - k0 + 1;
  std::vector<std::optional<std::uint32_t>> found(static_cast<std::size_t>(n1 - n0) * kcount);
  parallel_for(found.size(), jobs, [&](std::size_t idx) {
    std::uint64_t n = n0 + idx / kcount;
    std::uint32_t k = k0 + static_cast<std::uint32_t>(idx % kcount);
    found[idx] = ascend_cell(view, n, k, ell_cap, kn);
  });

  std::uint64_t best = 0;
  for (std::size_t idx = 0; idx < found.size(); ++idx) {
    std::uint64_t n = n0 + idx / kcount;
    std::uint32_t k = k0 + static_cast<std::uint32_t>(idx % kcount);
    if (!found[idx])
      fail(Gate::SearchExhausted, "no " + std::to_string(k) + "-anti-power at n = " +
                                      std::to_string(n) + " up to ell_cap = " +
                                      std::to_string(ell_cap));
    std::uint64_t c = (*found[idx] + k - 1) / k;
    if (c > best) best = c;
  }
  return best;
}

std::string TheoremReport::to_csv() const {
  std::string out = "# apw-csv v1 verify\nn,k,i,block_len,min_ell,ratio,ok\n";
  char buf[128];
  for (const TheoremCell& cell : cells) {
    std::string block = N_prime ? std::to_string(cell.block_len) : std::string();
    if (cell.min_ell)
      std::snprintf(buf, sizeof buf, "%llu,%u,%u,%s,%u,%.6f,%d\n",
                    static_cast<unsigned long long>(cell.n), cell.k, cell.i, block.c_str(),
                    *cell.min_ell, cell.ratio(), cell.ok() ? 1 : 0);
    else
      std::snprintf(buf, sizeof buf, "%llu,%u,%u,%s,,,%d\n",
                    static_cast<unsigned long long>(cell.n), cell.k, cell.i, block.c_str(),
                    cell.ok() ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace apw
