#include <algorithm>
#include <functional>
#include <stdexcept>

#include "apw/recognizability.hpp"
#include "doctest.h"
#include "oracles.hpp"

using apw::FixedPointStream;
using apw::Substitution;

namespace {

const char* kThueMorse = "0 -> 01\n1 -> 10\n";
const char* kPeriodDoubling = "0 -> 01\n1 -> 00\n";
const char* kCantor = "0 -> 010\n1 -> 111\n";
const char* kSquareWave = "0 -> 01\n1 -> 01\n";
const char* kTernary = "0 -> 012\n1 -> 120\n2 -> 201\n";

FixedPointStream stream_of(const char* text) {
  return FixedPointStream(Substitution::parse_spec(text), 0);
}

apw::Gate gate_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const apw::Error& e) {
    return e.gate();
  }
  throw std::logic_error("expected an apw::Error");
}

// Counterexamples are re-verified against the raw stream, never trusted.
void check_alignment_cex(FixedPointStream& s, const apw::AlignmentCounterexample& cex,
                         std::uint32_t L) {
  std::uint32_t m = s.substitution().image_length();
  REQUIRE(cex.factor.size() == L);
  CHECK(cex.aligned_pos % m == 0);
  CHECK(cex.nonaligned_pos % m != 0);
  auto view = s.prefix_view(std::max(cex.aligned_pos, cex.nonaligned_pos) + L);
  CHECK(apw::Word(view.begin() + cex.aligned_pos, view.begin() + cex.aligned_pos + L) ==
        cex.factor);
  CHECK(apw::Word(view.begin() + cex.nonaligned_pos, view.begin() + cex.nonaligned_pos + L) ==
        cex.factor);
}

}  // namespace

TEST_CASE("alignment constant on the binary fixtures") {
  FixedPointStream tm = stream_of(kThueMorse);
  auto nc = apw::estimate_recognizability_constant(tm, 64, 1 << 16);
  CHECK(nc.N == 4);
  REQUIRE(nc.below.has_value());
  CHECK(nc.below->factor == oracle::from_digits("101"));
  CHECK(nc.below->aligned_pos == 2);
  CHECK(nc.below->nonaligned_pos == 11);
  check_alignment_cex(tm, *nc.below, 3);

  FixedPointStream pd = stream_of(kPeriodDoubling);
  nc = apw::estimate_recognizability_constant(pd, 64, 1 << 16);
  CHECK(nc.N == 3);
  REQUIRE(nc.below.has_value());
  CHECK(nc.below->factor == oracle::from_digits("00"));
  CHECK(nc.below->aligned_pos == 2);
  CHECK(nc.below->nonaligned_pos == 3);
  check_alignment_cex(pd, *nc.below, 2);
}

TEST_CASE("alignment constant on the ternary fixture") {
  FixedPointStream t = stream_of(kTernary);
  auto nc = apw::estimate_recognizability_constant(t, 64, 59049);
  CHECK(nc.N == 6);
  REQUIRE(nc.below.has_value());
  CHECK(nc.below->factor == oracle::from_digits("12012"));
  CHECK(nc.below->aligned_pos == 24);
  CHECK(nc.below->nonaligned_pos == 133);
  check_alignment_cex(t, *nc.below, 5);
}

TEST_CASE("the constant is minimal: no shorter length separates parities") {
  // Direct parity scan per length, independent of the census machinery.
  FixedPointStream tm = stream_of(kThueMorse);
  auto hay = tm.prefix(1 << 12);
  auto has_both_parities = [&](std::uint32_t L) {
    for (std::size_t p = 0; p + L <= hay.size(); ++p) {
      if (p % 2 != 0) continue;
      oracle::Word f(hay.begin() + p, hay.begin() + p + L);
      for (std::uint32_t q : oracle::find_all(hay, f))
        if (q % 2 != 0) return true;
    }
    return false;
  };
  for (std::uint32_t L = 1; L <= 3; ++L) CHECK(has_both_parities(L));
  CHECK(!has_both_parities(4));
}

TEST_CASE("alignment constant gates") {
  CHECK(gate_of([] {
          FixedPointStream c = stream_of(kCantor);
          (void)apw::estimate_recognizability_constant(c, 64, 1 << 14);
        }) == apw::Gate::NotPrimitive);
  CHECK(gate_of([] {
          FixedPointStream sw = stream_of(kSquareWave);
          (void)apw::estimate_recognizability_constant(sw, 64, 1 << 14);
        }) == apw::Gate::PeriodicInput);
  CHECK(gate_of([] {
          FixedPointStream tm = stream_of(kThueMorse);
          (void)apw::estimate_recognizability_constant(tm, 3, 1 << 16);
        }) == apw::Gate::NoConstantFound);
  CHECK(gate_of([] {
          FixedPointStream tm = stream_of(kThueMorse);
          (void)apw::estimate_recognizability_constant(tm, 512, 2048);
        }) == apw::Gate::WindowTooSmall);
}

TEST_CASE("desubstitution constant") {
  FixedPointStream tm = stream_of(kThueMorse);
  CHECK(apw::estimate_N1(tm, 8, 1 << 16) == 2);
  FixedPointStream pd = stream_of(kPeriodDoubling);
  CHECK(apw::estimate_N1(pd, 8, 1 << 16) == 1);
  FixedPointStream t = stream_of(kTernary);
  CHECK(apw::estimate_N1(t, 8, 59049) == 2);

  CHECK(gate_of([] {
          FixedPointStream s = stream_of(kThueMorse);
          (void)apw::estimate_N1(s, 1, 1 << 16);
        }) == apw::Gate::NoConstantFound);
  CHECK(gate_of([] {
          FixedPointStream s = stream_of(kThueMorse);
          (void)apw::estimate_N1(s, 8, 6);
        }) == apw::Gate::NoConstantFound);
}

TEST_CASE("full constant derivation on the binary fixtures") {
  FixedPointStream tm = stream_of(kThueMorse);
  auto rep = apw::derive_N_prime(tm, 1 << 16);
  CHECK(rep.N == 4);
  CHECK(rep.N1 == 2);
  CHECK(rep.r == 1);
  CHECK(rep.p == oracle::from_digits("01101001"));
  CHECK(rep.M == 23);
  CHECK(rep.N_prime == 46);
  CHECK(rep.window == (1 << 16));
  REQUIRE(rep.n_counterexample.has_value());
  CHECK(rep.n_counterexample->factor == oracle::from_digits("101"));
  CHECK(rep.to_text() ==
        "N=4\n"
        "N1=2\n"
        "r=1\n"
        "p_len=8\n"
        "M=23\n"
        "N_prime=46\n"
        "window=65536\n");

  FixedPointStream pd = stream_of(kPeriodDoubling);
  rep = apw::derive_N_prime(pd, 1 << 16);
  CHECK(rep.N == 3);
  CHECK(rep.N1 == 1);
  CHECK(rep.r == 2);
  CHECK(rep.p.size() == 8);
  CHECK(rep.p == pd.prefix(8));
  CHECK(rep.M == 23);
  CHECK(rep.N_prime == 46);
}

TEST_CASE("full constant derivation on the ternary fixture") {
  FixedPointStream t = stream_of(kTernary);
  auto rep = apw::derive_N_prime(t, 59049);
  CHECK(rep.N == 6);
  CHECK(rep.N1 == 2);
  CHECK(rep.r == 0);
  CHECK(rep.p.size() == 9);
  CHECK(rep.M == 53);
  CHECK(rep.N_prime == 106);
}

TEST_CASE("the recurrence constant M really bounds gaps of p") {
  FixedPointStream tm = stream_of(kThueMorse);
  auto rep = apw::derive_N_prime(tm, 1 << 16);
  auto hay = tm.prefix(1 << 16);
  auto occ = oracle::find_all(hay, rep.p);
  REQUIRE(occ.size() > 1);
  CHECK(occ.front() == 0);
  std::uint64_t m_check = rep.p.size();
  for (std::size_t i = 1; i < occ.size(); ++i)
    m_check = std::max<std::uint64_t>(m_check, occ[i] - occ[i - 1] + rep.p.size() - 1);
  CHECK(m_check == rep.M);
  CHECK(std::vector<std::uint32_t>(occ.begin(), occ.begin() + 4) ==
        std::vector<std::uint32_t>{0, 12, 24, 40});
}

TEST_CASE("images of p desubstitute onto p") {
  // Occurrences of the l-th image of p sit on m^l-aligned positions and
  // project onto occurrences of p.
  for (const char* text : {kThueMorse, kPeriodDoubling}) {
    FixedPointStream s = stream_of(text);
    auto rep = apw::derive_N_prime(s, 1 << 16);
    std::uint32_t m = s.substitution().image_length();
    auto hay = s.prefix(1 << 16);
    apw::Word img = rep.p;
    std::uint64_t mod = 1;
    for (std::uint32_t l = 1; l <= 2; ++l) {
      img = s.substitution().apply(img);
      mod *= m;
      auto occ = oracle::find_all(hay, img);
      REQUIRE(!occ.empty());
      bool all_align = true, all_project = true;
      for (std::uint32_t q : occ) {
        if (q % mod != 0) all_align = false;
        for (std::size_t j = 0; j < rep.p.size(); ++j)
          if (hay[q / mod + j] != rep.p[j]) all_project = false;
      }
      CHECK(all_align);
      CHECK(all_project);
    }
  }
}

TEST_CASE("congruence of long factors modulo m^i") {
  FixedPointStream tm = stream_of(kThueMorse);
  for (std::uint32_t i : {1u, 2u}) {
    auto v = apw::check_power_recognizability(tm, i, 46ull << i, 1 << 14);
    CHECK(v.holds);
    CHECK(v.modulus == (1ull << i));
    CHECK(!v.counterexample.has_value());
  }
  FixedPointStream pd = stream_of(kPeriodDoubling);
  for (std::uint32_t i : {1u, 2u}) CHECK(apw::check_power_recognizability(pd, i, 46ull << i, 1 << 14).holds);

  // Strictly stronger threshold: N + m already forces congruence mod m.
  CHECK(apw::check_power_recognizability(tm, 1, 6, 1 << 14).holds);
  CHECK(apw::check_power_recognizability(pd, 1, 5, 1 << 14).holds);

  // i = 0 is vacuous.
  CHECK(apw::check_power_recognizability(tm, 0, 1, 1 << 14).holds);
}

TEST_CASE("congruence failure yields the least counterexample") {
  FixedPointStream tm = stream_of(kThueMorse);
  auto v = apw::check_power_recognizability(tm, 1, 1, 1 << 10);
  CHECK(!v.holds);
  REQUIRE(v.counterexample.has_value());
  CHECK(v.counterexample->factor == oracle::from_digits("0"));
  CHECK(v.counterexample->alpha == 0);
  CHECK(v.counterexample->beta == 3);
  CHECK((v.counterexample->beta - v.counterexample->alpha) % 2 == 1);
}

TEST_CASE("congruence gates") {
  CHECK(gate_of([] {
          FixedPointStream tm = stream_of(kThueMorse);
          (void)apw::check_power_recognizability(tm, 1, 2048, 1024);
        }) == apw::Gate::WindowTooSmall);
  CHECK(gate_of([] {
          FixedPointStream c = stream_of(kCantor);
          (void)apw::check_power_recognizability(c, 1, 4, 1 << 10);
        }) == apw::Gate::NotPrimitive);
}
