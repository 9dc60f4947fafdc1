#include <gtest/gtest.h>

#include "oracles.hpp"
#include "slpkit/matching.hpp"
#include "support.hpp"

using namespace slpkit;
using namespace slpkit::testing;

namespace {

CostFn random_costs(Rng& g, std::uint32_t sp, std::uint32_t st, bool wild) {
  CostFn c(sp, st);
  for (auto& v : c.table) v = static_cast<std::int64_t>(uni(g, 0, 9));
  if (wild) {
    c.wildcard = static_cast<Sym>(uni(g, 0, sp - 1));
    for (Sym t = 0; t < st; ++t) c.at(*c.wildcard, t) = 0;
  }
  return c;
}

Str s01(const char* s) {
  Str o;
  for (; *s; ++s) o.push_back(*s == '*' ? 2 : *s - '0');
  return o;
}

}  // namespace

TEST(Gpm, DecompressedExamples) {
  CostFn h = CostFn::hamming(2);
  EXPECT_EQ(gpm_decompressed(s01("0101"), s01("11"), h).min_cost, 1);
  MatchResult id = gpm_decompressed(s01("0110"), s01("0110"), h);
  EXPECT_EQ(id.min_cost, 0);
  EXPECT_EQ(id.best_offset, 0u);
  CostFn w = CostFn::wildcard_match(2);
  EXPECT_EQ(gpm_decompressed(s01("0110"), s01("*"), w).min_cost, 0);
  try {
    gpm_decompressed(s01("01"), s01("011"), h);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::PatternLongerThanText);
  }
}

TEST(Gpm, CompressedExamples) {
  CostFn h = CostFn::hamming(2);
  Slp t = from_literal(s01("0101"), Alphabet(2));
  EXPECT_EQ(gpm_compressed(t, s01("11"), h).min_cost, 1);
  Slp r = repeat(from_literal(s01("01"), Alphabet(2)), 8);
  EXPECT_EQ(gpm_compressed(r, s01("11"), h).min_cost, 1);
  CostFn w = CostFn::wildcard_match(2);
  EXPECT_EQ(gpm_compressed(r, s01("****"), w).min_cost, 0);
}

TEST(Gpm, NttAgreesWithBruteForce) {
  Rng g(21);
  MatchOptions force;
  force.direct_cells = 0;
  force.direct_pattern = 0;
  for (int it = 0; it < 60; ++it) {
    std::uint32_t st = static_cast<std::uint32_t>(uni(g, 1, 4)), sp = static_cast<std::uint32_t>(uni(g, 1, 4));
    Str T = random_str(g, uni(g, 1, 700), st);
    Str P = random_str(g, uni(g, 1, T.size()), sp);
    CostFn c = random_costs(g, sp, st, uni(g, 0, 1));
    if (it % 7 == 0)
      for (auto& v : c.table) v *= 1000000007;  // large entries still exact
    auto want = oracle::best_alignment(T, P, c);
    auto got = gpm_decompressed(T, P, c, force);
    ASSERT_EQ(got.min_cost, want.cost);
    ASSERT_EQ(got.best_offset, want.offset);
  }
}

TEST(Gpm, NttLongTransform) {
  // transform length 2^24, beyond what a 2^23-root prime supports
  Rng g(24);
  const std::size_t N = (std::size_t{1} << 23) + 5;
  Str T(N);
  for (std::size_t i = 0; i < N; ++i) T[i] = static_cast<Sym>((i * 2654435761u >> 7) % 3 == 0);
  Str P = random_str(g, 300, 2);
  MatchOptions force;
  force.direct_cells = 0;
  force.direct_pattern = 0;
  CostFn c(2, 2);
  c.at(0, 1) = 1;  // one active text symbol keeps the transform count low
  auto all = alignment_costs(T, P, c, force);
  for (std::size_t k = 0; k < 2000; ++k) {
    std::size_t i = k < 1000 ? k : all.size() - 1 - (k - 1000) * 7;
    std::int64_t want = 0;
    for (std::size_t j = 0; j < P.size(); ++j) want += P[j] == 0 && T[i + j] == 1;
    ASSERT_EQ(all[i], want) << "offset " << i;
  }
}

TEST(Gpm, CompressedAgreesWithBruteForce) {
  Rng g(22);
  for (int it = 0; it < 400; ++it) {
    std::uint32_t st = static_cast<std::uint32_t>(uni(g, 1, 4)), sp = static_cast<std::uint32_t>(uni(g, 1, 4));
    Slp T = random_slp(g, st, uni(g, 1, 40), 3000);
    Str t = eval(T);
    Str P = random_str(g, uni(g, 1, std::min<std::size_t>(t.size(), 40)), sp);
    CostFn c = random_costs(g, sp, st, uni(g, 0, 1));
    auto want = oracle::best_alignment(t, P, c);
    GpmStats stt;
    auto got = gpm_compressed(T, P, c, {}, &stt);
    ASSERT_EQ(got.min_cost, want.cost);
    ASSERT_EQ(got.best_offset, want.offset);
    ASSERT_LT(stt.max_keys_per_rule, 2 * P.size());
  }
}

TEST(Gpm, ConstantShift) {
  Rng g(23);
  for (int it = 0; it < 100; ++it) {
    Slp T = random_slp(g, 3, uni(g, 1, 30), 2000);
    Str P = random_str(g, uni(g, 1, std::min<std::uint64_t>(T.length(), 30)), 3);
    CostFn c = random_costs(g, 3, 3, false);
    CostFn c2 = c;
    std::int64_t k = static_cast<std::int64_t>(uni(g, 1, 5));
    for (auto& v : c2.table) v += k;
    auto a = gpm_compressed(T, P, c), b = gpm_compressed(T, P, c2);
    ASSERT_EQ(b.min_cost, a.min_cost + k * static_cast<std::int64_t>(P.size()));
    ASSERT_EQ(b.best_offset, a.best_offset);
  }
}

TEST(Gpm, HugeText) {
  // N = 2^41 with a short periodic pattern
  Slp body = from_literal(s01("0110100"), Alphabet(2));
  Slp T = repeat(body, std::uint64_t{1} << 38);
  Str P;
  for (int i = 0; i < 64; ++i) P.push_back((i * 7 + 3) % 5 == 0);
  auto r = gpm_compressed(T, P, CostFn::hamming(2));
  Str small = eval(repeat(body, 64));
  auto want = oracle::best_alignment(small, P, [](Sym a, Sym b) { return std::int64_t{a != b}; });
  EXPECT_EQ(r.min_cost, want.cost);
  EXPECT_EQ(r.best_offset, want.offset);
}

TEST(Wildcard, Examples) {
  Alphabet t01 = Alphabet::of("01"), p01 = Alphabet::of("01*");
  EXPECT_TRUE(wildcard_match(from_literal("0101", t01), from_literal("1*1", p01)));
  EXPECT_TRUE(wildcard_match(from_literal("0101", t01), from_literal("****", p01)));
  EXPECT_FALSE(wildcard_match(from_literal("000", t01), from_literal("11", p01)));
}

TEST(Wildcard, AgreesWithScanner) {
  Rng g(24);
  Alphabet t01 = Alphabet::of("01"), p01 = Alphabet::of("01*");
  for (int it = 0; it < 300; ++it) {
    Slp T = random_slp(g, 2, uni(g, 1, 30), 2000);
    Str t = eval(T);
    Str p = random_str(g, uni(g, 1, std::min<std::size_t>(t.size(), 12)), 3);
    bool want = false;
    for (std::size_t i = 0; i + p.size() <= t.size() && !want; ++i) {
      bool ok = true;
      for (std::size_t j = 0; j < p.size() && ok; ++j) ok = p[j] == 2 || p[j] == t[i + j];
      want = ok;
    }
    SlpBuilder bt(t01, false);
    Slp T2 = bt.build(bt.import(T));
    ASSERT_EQ(wildcard_match(T2, from_literal(p, p01)), want);
  }
}

TEST(SubstringHd, Examples) {
  Alphabet a = Alphabet::of("01");
  EXPECT_EQ(substring_hd(from_literal("0101", a), from_literal("0011", a)), 2);
  EXPECT_EQ(substring_hd(from_literal("0110", a), from_literal("11", a)), 0);
  EXPECT_EQ(substring_hd(from_literal("1111", a), from_literal("00", a)), 2);
  try {
    substring_hd(from_literal("0101", a), from_literal("ab", Alphabet::of("abc")));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AlphabetMismatch);
  }
}

TEST(Costs, TextForm) {
  CostFn c = CostFn::wildcard_match(2);
  std::string t = emit_costs(c);
  EXPECT_EQ(t, "costs 3 2\n0 1\n1 0\n0 0\nwildcard 2\n");
  CostFn d = parse_costs(t);
  EXPECT_EQ(d.table, c.table);
  EXPECT_EQ(d.wildcard, c.wildcard);
  EXPECT_THROW(parse_costs("costs 2 2\n0 1\n"), Error);
  EXPECT_THROW(parse_costs("costs 1 1\n3\nwildcard 0\n"), Error);
}
