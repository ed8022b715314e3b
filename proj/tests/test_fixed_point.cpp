#include <bit>

#include "apw/fixed_point.hpp"
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

FixedPointStream stream_of(const char* text, std::uint8_t seed = 0) {
  return FixedPointStream(Substitution::parse_spec(text), seed);
}

oracle::Rules rules_of(const Substitution& s) {
  oracle::Rules r;
  for (std::uint32_t a = 0; a < s.alphabet_size(); ++a) {
    auto img = s.image(static_cast<std::uint8_t>(a));
    r.emplace_back(img.begin(), img.end());
  }
  return r;
}

}  // namespace

TEST_CASE("prefix goldens") {
  CHECK(stream_of(kThueMorse).prefix(16) == oracle::from_digits("0110100110010110"));
  CHECK(stream_of(kPeriodDoubling).prefix(32) ==
        oracle::from_digits("01000101010001000100010101000101"));
  CHECK(stream_of(kCantor).prefix(9) == oracle::from_digits("010111010"));
  CHECK(stream_of(kTernary).prefix(9) == oracle::from_digits("012120201"));
  CHECK(stream_of(kThueMorse, 1).prefix(16) == oracle::from_digits("1001011001101001"));
}

TEST_CASE("prefix equals the oracle expansion on every fixture") {
  for (const char* text : {kThueMorse, kPeriodDoubling, kCantor, kSquareWave, kTernary}) {
    FixedPointStream s = stream_of(text);
    CHECK(s.prefix(2000) == oracle::prefix(rules_of(s.substitution()), 0, 2000));
  }
}

TEST_CASE("applying the substitution to a prefix gives the longer prefix") {
  for (const char* text : {kThueMorse, kPeriodDoubling, kCantor, kTernary}) {
    FixedPointStream s = stream_of(text);
    std::uint32_t m = s.substitution().image_length();
    for (std::uint64_t n : {0ull, 1ull, 2ull, 3ull, 5ull, 16ull, 100ull, 255ull, 256ull, 1000ull,
                            4095ull, 10000ull})
      CHECK(s.substitution().apply(s.prefix(n)) == s.prefix(m * n));
  }
}

TEST_CASE("letter_at matches the materialized prefix") {
  for (const char* text : {kThueMorse, kPeriodDoubling, kCantor, kTernary}) {
    FixedPointStream s = stream_of(text);
    auto view = s.prefix_view(10000);
    bool all = true;
    for (std::uint64_t i = 0; i < view.size(); ++i)
      if (s.letter_at(i) != view[i]) {
        all = false;
        break;
      }
    CHECK(all);
  }
}

TEST_CASE("letter_at closed forms") {
  // Thue-Morse letter i is the bit-count parity of i.
  FixedPointStream tm = stream_of(kThueMorse);
  for (std::uint64_t i : {0ull, 1ull, 2ull, 7ull, 100ull, 65535ull, 1ull << 40, (1ull << 40) + 3})
    CHECK(tm.letter_at(i) == std::popcount(i) % 2);
  // Complement fixed point from the other seed.
  FixedPointStream tm1 = stream_of(kThueMorse, 1);
  for (std::uint64_t i = 0; i < 64; ++i) CHECK(tm1.letter_at(i) == 1 - tm.letter_at(i));

  CHECK(stream_of(kCantor).letter_at(4) == 1);
}

TEST_CASE("stream gates") {
  CHECK_THROWS_AS(FixedPointStream(Substitution::parse_spec("0 -> 0\n"), 0), apw::Error);
  try {
    FixedPointStream(Substitution::parse_spec("0 -> 0\n"), 0);
  } catch (const apw::Error& e) {
    CHECK(e.gate() == apw::Gate::NonGrowing);
  }
  CHECK_THROWS_AS(FixedPointStream(Substitution::parse_spec(kPeriodDoubling), 1), apw::Error);
  try {
    FixedPointStream(Substitution::parse_spec(kPeriodDoubling), 1);
  } catch (const apw::Error& e) {
    CHECK(e.gate() == apw::Gate::NoFixedPoint);
  }
}

TEST_CASE("materialization cap") {
  FixedPointStream s(Substitution::parse_spec(kThueMorse), 0, 64);
  CHECK(s.prefix_view(64).size() == 64);
  CHECK_THROWS_AS(s.ensure(65), apw::Error);
  try {
    s.ensure(65);
  } catch (const apw::Error& e) {
    CHECK(e.gate() == apw::Gate::ConstantTooLarge);
  }
}

TEST_CASE("occurrences: verified positions, golden lists") {
  FixedPointStream tm = stream_of(kThueMorse);
  auto list = apw::occurrences(tm, oracle::from_digits("0110"), 16);
  CHECK(list.positions == std::vector<std::uint32_t>{0, 6, 12});
  CHECK(apw::occurrences(tm, oracle::from_digits("000"), 4096).positions.empty());

  // Every reported position re-verified against the raw prefix, and the
  // whole list against the naive scan.
  auto hay = tm.prefix(4096);
  for (const char* f : {"0", "01", "0110", "10010110", "011010011001"}) {
    auto factor = oracle::from_digits(f);
    auto got = apw::occurrences(tm, factor, 4096).positions;
    CHECK(got == oracle::find_all(hay, factor));
  }

  CHECK_THROWS_AS((void)apw::occurrences(tm, apw::Word{}, 16), apw::Error);
  CHECK_THROWS_AS((void)apw::occurrences(tm, oracle::from_digits("01010"), 4), apw::Error);
  try {
    (void)apw::occurrences(tm, oracle::from_digits("01010"), 4);
  } catch (const apw::Error& e) {
    CHECK(e.gate() == apw::Gate::WindowTooSmall);
  }
}

TEST_CASE("factor complexity matches the set-based count") {
  FixedPointStream tm = stream_of(kThueMorse);
  CHECK(apw::factor_complexity(tm, 1, 64) == 2);
  CHECK(apw::factor_complexity(tm, 2, 64) == 4);
  auto hay = tm.prefix(256);
  for (std::uint32_t L = 1; L <= 8; ++L)
    CHECK(apw::factor_complexity(tm, L, 256) == oracle::complexity(hay, L));

  FixedPointStream sw = stream_of(kSquareWave);
  CHECK(apw::factor_complexity(sw, 3, 64) == 2);

  // Nondecreasing in L while the window stays exact for both lengths.
  FixedPointStream pd = stream_of(kPeriodDoubling);
  std::uint64_t prev = 0;
  for (std::uint32_t L = 1; L <= 16; ++L) {
    std::uint64_t cur = apw::factor_complexity(pd, L, 4096);
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("aperiodicity check") {
  FixedPointStream tm = stream_of(kThueMorse);
  auto v = apw::aperiodicity_check(tm, 64, 1 << 14);
  CHECK(!v.periodic);
  CHECK(v.n == 64);

  FixedPointStream sw = stream_of(kSquareWave);
  v = apw::aperiodicity_check(sw, 64, 1 << 14);
  CHECK(v.periodic);
  CHECK(v.n == 2);
}

TEST_CASE("recurrence bound goldens") {
  FixedPointStream tm = stream_of(kThueMorse);
  auto rb = apw::recurrence_bound(tm, 1, 4096);
  CHECK(rb.bound == 3);
  CHECK(!rb.growing);
  CHECK(apw::recurrence_bound(tm, 18, 4096).bound == 161);

  FixedPointStream pd = stream_of(kPeriodDoubling);
  rb = apw::recurrence_bound(pd, 1, 4096);
  CHECK(rb.bound == 4);
  CHECK(!rb.growing);

  FixedPointStream sw = stream_of(kSquareWave);
  rb = apw::recurrence_bound(sw, 2, 64);
  CHECK(rb.bound == 3);
}

TEST_CASE("recurrence stabilizes on primitive fixtures, never on the branching one") {
  for (const char* text : {kThueMorse, kPeriodDoubling}) {
    FixedPointStream s = stream_of(text);
    std::uint32_t first = apw::recurrence_bound(s, 1, 1024).bound;
    for (std::uint64_t w : {4096ull, 16384ull}) {
      auto rb = apw::recurrence_bound(s, 1, w);
      CHECK(rb.bound == first);
      CHECK(!rb.growing);
    }
  }

  // The non-primitive fixture has ever-longer 1-runs: every tested window is
  // either tail-dominated (throws) or still growing.
  FixedPointStream c = stream_of(kCantor);
  auto rb = apw::recurrence_bound(c, 1, 243);
  CHECK(rb.bound == 82);
  CHECK(rb.growing);
  for (std::uint64_t w : {729ull, 2187ull}) {
    bool flagged = false;
    try {
      flagged = apw::recurrence_bound(c, 1, w).growing;
    } catch (const apw::Error& e) {
      CHECK(e.gate() == apw::Gate::NotRecurrentInWindow);
      flagged = true;
    }
    CHECK(flagged);
  }
  CHECK_THROWS_AS((void)apw::recurrence_bound(c, 1, 364), apw::Error);
}
