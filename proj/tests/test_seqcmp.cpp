#include <gtest/gtest.h>

#include "oracles.hpp"
#include "slpkit/seqcmp.hpp"
#include "support.hpp"

using namespace slpkit;
using namespace slpkit::testing;

namespace {

Str subseq_of(Rng& g, const Str& t, std::size_t m) {
  std::vector<std::size_t> idx(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) idx[i] = i;
  std::shuffle(idx.begin(), idx.end(), g);
  idx.resize(std::min(m, t.size()));
  std::sort(idx.begin(), idx.end());
  Str p;
  for (auto i : idx) p.push_back(t[i]);
  return p;
}

}  // namespace

TEST(Subsequence, AvlMatchesOracle) {
  Rng g(11);
  for (int it = 0; it < 400; ++it) {
    std::uint32_t sigma = static_cast<std::uint32_t>(uni(g, 1, 4));
    Slp T = random_slp(g, sigma, uni(g, 1, 30), 400);
    Str t = eval(T);
    Str p = uni(g, 0, 1) ? subseq_of(g, t, uni(g, 1, 20)) : random_str(g, uni(g, 1, 12), sigma);
    if (uni(g, 0, 3) == 0 && !p.empty()) p[uni(g, 0, p.size() - 1)] = static_cast<Sym>(uni(g, 0, sigma - 1));
    EXPECT_EQ(subsequence_avl(T, p), oracle::is_subsequence(p, t)) << it;
  }
}

TEST(Subsequence, RecursiveMatchesOracle) {
  Rng g(12);
  int yes = 0;
  for (int it = 0; it < 600; ++it) {
    std::uint32_t sigma = static_cast<std::uint32_t>(uni(g, 1, 3));
    Slp T = random_slp(g, sigma, uni(g, 1, 30), 500);
    Str t = eval(T);
    Str p = uni(g, 0, 1) ? subseq_of(g, t, uni(g, 1, 200)) : random_str(g, uni(g, 1, 40), sigma);
    if (uni(g, 0, 2) == 0) p[uni(g, 0, p.size() - 1)] = static_cast<Sym>(uni(g, 0, sigma - 1));
    Slp P = uni(g, 0, 1) ? from_literal(p, Alphabet(sigma)) : chain_slp(p, sigma);
    bool want = oracle::is_subsequence(p, t);
    yes += want;
    EXPECT_EQ(subsequence_recursive(P, T), want) << it;
  }
  EXPECT_GT(yes, 100);
}

TEST(Subsequence, CompressedPatternAndText) {
  Rng g(13);
  for (int it = 0; it < 300; ++it) {
    Slp P = random_slp(g, 2, uni(g, 1, 20), 300);
    Slp T = random_slp(g, 2, uni(g, 1, 30), 3000);
    EXPECT_EQ(subsequence_recursive(P, T), oracle::is_subsequence(eval(P), eval(T))) << it;
  }
}

TEST(Subsequence, HugeRepetitions) {
  Alphabet a = Alphabet::of("ab");
  Slp T = repeat(from_literal("ab", a), std::uint64_t{1} << 40);
  Slp P = repeat(from_literal("ba", a), (std::uint64_t{1} << 40) - 1);
  EXPECT_TRUE(subsequence_recursive(P, T));
  Slp P2 = repeat(from_literal("ba", a), std::uint64_t{1} << 40);
  EXPECT_FALSE(subsequence_recursive(P2, T));
  EXPECT_TRUE(subsequence_avl(T, {1, 1, 0, 0, 1}));
}

TEST(Subsequence, Errors) {
  Alphabet a(2);
  Slp T = from_literal(Str{0, 1}, a);
  try {
    subsequence_avl(T, {2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AlphabetMismatch);
  }
}

TEST(Hamming, MatchesOracle) {
  Rng g(21);
  for (int it = 0; it < 400; ++it) {
    std::uint32_t sigma = static_cast<std::uint32_t>(uni(g, 2, 4));
    Slp P = random_slp(g, sigma, uni(g, 1, 30), 2000);
    Str p = eval(P);
    Slp T;
    if (uni(g, 0, 1)) {
      Str t = p;
      for (auto& c : t)
        if (uni(g, 0, 4) == 0) c = static_cast<Sym>(uni(g, 0, sigma - 1));
      T = from_literal(t, Alphabet(sigma));
    } else {
      // another grammar of the same length: shifted concatenation
      std::uint64_t cut = uni(g, 0, p.size() - 1);
      Str t(p.begin() + static_cast<long>(cut), p.end());
      t.insert(t.end(), p.begin(), p.begin() + static_cast<long>(cut));
      T = chain_slp(t, sigma);
    }
    EXPECT_EQ(hamming_recursive(P, T), oracle::hamming(p, eval(T))) << it;
  }
}

TEST(Hamming, LargePeriodic) {
  Alphabet a(2);
  const std::uint64_t n = std::uint64_t{1} << 30;
  Slp P = repeat(from_literal(Str{0, 1, 1}, a), n);
  Slp T = repeat(from_literal(Str{0, 1, 0}, a), n);
  RecursionStats st;
  EXPECT_EQ(hamming_recursive(P, T, &st), n);
  EXPECT_GT(st.memo_entries, 0u);
  try {
    hamming_recursive(P, repeat(from_literal(Str{0, 1}, a), n));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnequalLength);
  }
}

TEST(Disjointness, ThreeRoutesAgree) {
  Rng g(31);
  int disjoint = 0;
  for (int it = 0; it < 400; ++it) {
    std::size_t n = uni(g, 1, 200);
    Str p(n), t(n);
    std::uint64_t dens = uni(g, 2, 12);
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = uni(g, 0, dens) == 0;
      t[i] = uni(g, 0, dens) == 0;
    }
    bool want = true;
    for (std::size_t i = 0; i < n; ++i) want = want && !(p[i] && t[i]);
    disjoint += want;
    Slp P = from_literal(p, Alphabet(2)), T = chain_slp(t, 2);
    auto r = disjointness_all(P, T);
    EXPECT_EQ(r.via_hamming, want);
    EXPECT_EQ(r.via_subsequence, want);
    ASSERT_TRUE(r.via_scan.has_value());
    EXPECT_EQ(*r.via_scan, want);
    EXPECT_EQ(disjointness(P, T), want);
  }
  EXPECT_GT(disjoint, 50);
  EXPECT_LT(disjoint, 350);
}

TEST(Disjointness, GadgetStrings) {
  Alphabet a(2);
  auto [p, t] = disj_to_subsequence(from_literal(Str{0, 1}, a), from_literal(Str{1, 0}, a));
  EXPECT_EQ(eval(p), (Str{0, 1, 0}));
  EXPECT_EQ(eval(t), (Str{0, 1, 0}));
  auto [hp, ht, n] = disj_to_hamming(from_literal(Str{0, 1}, a), from_literal(Str{1, 0}, a));
  EXPECT_EQ(eval(hp), (Str{0, 1, 1, 0, 0, 0}));
  EXPECT_EQ(eval(ht), (Str{1, 1, 1, 0, 0, 1}));
  EXPECT_EQ(n, 2u);
  try {
    disjointness(from_literal(Str{2}, Alphabet(3)), from_literal(Str{0}, Alphabet(3)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NonBinaryAlphabet);
  }
}

TEST(Lcs, BitParallelMatchesTable) {
  Rng g(41);
  for (int it = 0; it < 300; ++it) {
    std::uint32_t sigma = static_cast<std::uint32_t>(uni(g, 1, 5));
    Str x = random_str(g, uni(g, 0, 300), sigma), y = random_str(g, uni(g, 0, 300), sigma);
    auto r = lcs_dp(x, y);
    EXPECT_EQ(r.L, oracle::lcs(x, y)) << it;
    EXPECT_EQ(static_cast<std::int64_t>(r.delta), oracle::lcs_delta(x, y));
  }
}

TEST(Lcs, CellCap) {
  Str x(1000, 0), y(1000, 0);
  EXPECT_EQ(lcs_dp(x, y).L, 1000u);
  try {
    lcs_dp(x, y, 999'999);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}
