#include "apw/anti_power.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

#include "apw/parallel.hpp"

namespace apw {
namespace {

// Pairwise distinctness of k consecutive ell-blocks at base. Blocks are
// hashed once; only equal-hash pairs get compared byte for byte.
bool blocks_distinct(const std::uint8_t* base, std::uint32_t k, std::uint32_t ell,
                     const kernels::Kernels& kn) {
  if (k < 2) return true;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> hs(k);
  for (std::uint32_t j = 0; j < k; ++j)
    hs[j] = {kn.block_hash(base + static_cast<std::size_t>(j) * ell, ell, 0), j};
  std::sort(hs.begin(), hs.end());
  for (std::uint32_t i = 0; i + 1 < k; ++i) {
    if (hs[i].first != hs[i + 1].first) continue;
    for (std::uint32_t j = i + 1; j < k && hs[j].first == hs[i].first; ++j)
      if (kernels::range_equal(kn, base + static_cast<std::size_t>(hs[i].second) * ell,
                               base + static_cast<std::size_t>(hs[j].second) * ell, ell))
        return false;
  }
  return true;
}

// Ascent over the already materialized view; pure, thread-safe.
std::optional<std::uint32_t> ascend(std::span<const std::uint8_t> view, std::uint64_t n,
                                    std::uint32_t k, std::uint32_t ell_max,
                                    const kernels::Kernels& kn) {
  for (std::uint32_t ell = 1; ell <= ell_max; ++ell) {
    if (n + static_cast<std::uint64_t>(k) * ell > view.size()) break;
    if (blocks_distinct(view.data() + n, k, ell, kn)) return ell;
  }
  return std::nullopt;
}

}  // namespace

bool is_anti_power(std::span<const std::uint8_t> w, std::uint32_t k, std::uint32_t ell,
                   const kernels::Kernels& kn) {
  if (k == 0 || ell == 0) fail(Gate::InsufficientLength, "k and ell must be positive");
  if (w.size() < static_cast<std::uint64_t>(k) * ell)
    fail(Gate::InsufficientLength, "word of length " + std::to_string(w.size()) +
                                       " cannot hold " + std::to_string(k) + " blocks of length " +
                                       std::to_string(ell));
  return blocks_distinct(w.data(), k, ell, kn);
}

AntiPowerResult min_block_length(FixedPointStream& stream, const AntiPowerQuery& q) {
  if (q.k == 0 || q.ell_max == 0) fail(Gate::InsufficientLength, "k and ell_max must be positive");
  const kernels::Kernels& kn = kernels::active();
  AntiPowerResult res{q.n, q.k, q.ell_max, std::nullopt};
  for (std::uint32_t ell = 1; ell <= q.ell_max; ++ell) {
    stream.ensure(q.n + static_cast<std::uint64_t>(q.k) * ell);  // ConstantTooLarge past the cap
    auto view = stream.prefix_view(stream.size());
    if (blocks_distinct(view.data() + q.n, q.k, ell, kn)) {
      res.min_ell = ell;
      break;
    }
  }
  return res;
}

std::vector<AntiPowerResult> scan(FixedPointStream& stream, std::uint64_t n0, std::uint64_t n1,
                                  std::uint32_t k0, std::uint32_t k1, std::uint32_t ell_max,
                                  unsigned jobs) {
  if (k0 == 0 || ell_max == 0) fail(Gate::InsufficientLength, "k and ell_max must be positive");
  if (n1 <= n0 || k1 < k0) return {};
  // Workers only read, so the worst-case prefix is materialized up front.
  std::uint64_t worst = (n1 - 1) + static_cast<std::uint64_t>(k1) * ell_max;
  auto view = stream.prefix_view(worst);
  const kernels::Kernels& kn = kernels::active();

  std::size_t kcount = k1 - k0 + 1;
  std::vector<AntiPowerResult> rows(static_cast<std::size_t>(n1 - n0) * kcount);
  parallel_for(rows.size(), jobs, [&](std::size_t idx) {
    std::uint64_t n = n0 + idx / kcount;
    std::uint32_t k = k0 + static_cast<std::uint32_t>(idx % kcount);
    rows[idx] = {n, k, ell_max, ascend(view, n, k, ell_max, kn)};
  });
  return rows;
}

std::string scan_to_csv(const std::vector<AntiPowerResult>& rows) {
  std::string out = "# apw-csv v1 scan\nn,k,min_ell,ratio\n";
  char buf[96];
  for (const AntiPowerResult& r : rows) {
    if (r.min_ell)
      std::snprintf(buf, sizeof buf, "%llu,%u,%u,%.6f\n", static_cast<unsigned long long>(r.n),
                    r.k, *r.min_ell, r.ratio());
    else
      std::snprintf(buf, sizeof buf, "%llu,%u,,\n", static_cast<unsigned long long>(r.n), r.k);
    out += buf;
  }
  return out;
}

}  // namespace apw
