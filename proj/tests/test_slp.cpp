#include <gtest/gtest.h>

#include <cmath>

#include "slpkit/slp.hpp"
#include "support.hpp"

using namespace slpkit;
using namespace slpkit::testing;

namespace {

// S1->0, S2->1, S3->S1S2, S4->S3S2, S5->S3S1, S6->S5S4
Slp small_slp() {
  return parse_slp("S1 = \"0\"\nS2 = \"1\"\nS3 = S1 S2\nS4 = S3 S2\nS5 = S3 S1\nS6 = S5 S4\n");
}

std::string str(const Str& s) {
  std::string o;
  for (Sym c : s) o += static_cast<char>('0' + c);
  return o;
}

}  // namespace

TEST(Slp, SmallSlpEvaluates) {
  Slp s = small_slp();
  EXPECT_EQ(render(s), "010011");
  auto st = stats(s);
  EXPECT_EQ(st.N, 6u);
  EXPECT_EQ(st.n, 6u);
  EXPECT_EQ(char_at(s, 1), 0u);
  EXPECT_EQ(char_at(s, 6), 1u);
}

TEST(Slp, FromLiteral) {
  Slp one = from_literal("0", Alphabet::of("01"));
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(render(one), "0");
  Slp s = from_literal("01011", Alphabet::of("01"));
  EXPECT_EQ(render(s), "01011");
  EXPECT_LE(s.size(), 10u);
  EXPECT_THROW(from_literal(Str{}, Alphabet(2)), Error);
  try {
    from_literal(Str{}, Alphabet(2));
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EmptyString);
  }
  try {
    from_literal(Str{0, 3}, Alphabet(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::SymbolOutOfRange);
  }
}

TEST(Slp, SingleTerminalStats) {
  Slp a = from_literal("a", Alphabet::of("a"));
  EXPECT_EQ(render(a), "a");
  EXPECT_EQ(stats(a).N, 1u);
  EXPECT_EQ(stats(a).depth, 0u);
}

TEST(Slp, RepeatSmall) {
  Alphabet ab = Alphabet::of("ab");
  EXPECT_EQ(render(repeat(from_literal("ab", ab), 3)), "ababab");
  EXPECT_EQ(render(repeat(from_literal("ab", ab), 4)), "abababab");
  Slp a = from_literal("a", ab);
  Slp r1 = repeat(a, 1);
  EXPECT_EQ(r1.size(), a.size());
  EXPECT_EQ(render(r1), "a");
}

TEST(Slp, RepeatLarge) {
  Slp z = from_literal(Str{0}, Alphabet(2));
  Slp r = repeat(z, std::uint64_t{1} << 20);
  EXPECT_EQ(stats(r).N, std::uint64_t{1} << 20);
  EXPECT_LE(r.size() - z.size(), 42u);
  Slp big = repeat(from_literal("a", Alphabet::of("a")), std::uint64_t{1} << 40);
  EXPECT_EQ(stats(big).N, std::uint64_t{1} << 40);
}

TEST(Slp, RepeatOverflow) {
  Slp z = from_literal(Str{0, 1}, Alphabet(2));
  try {
    repeat(z, std::uint64_t{1} << 62);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::LengthOverflow);
  }
}

TEST(Slp, RepeatMatchesNaive) {
  Rng g(7);
  for (int it = 0; it < 200; ++it) {
    Str body = random_str(g, uni(g, 1, 5), 3);
    std::uint64_t k = uni(g, 1, 300);
    Str want;
    for (std::uint64_t i = 0; i < k; ++i) want.insert(want.end(), body.begin(), body.end());
    Slp b = from_literal(body, Alphabet(3));
    Slp r = repeat(b, k);
    EXPECT_EQ(eval(r), want);
    double lg = std::ceil(std::log2(static_cast<double>(k)));
    EXPECT_LE(static_cast<double>(r.size() - b.size()), 3 * lg + 2);
  }
}

TEST(Slp, Concat) {
  Alphabet al = Alphabet::of("abcd");
  Slp c = concat(from_literal("ab", al), from_literal("cd", al));
  EXPECT_EQ(render(c), "abcd");
  Slp f = small_slp();
  Slp z = from_literal(Str{0}, f.alphabet());
  Slp fz = concat(f, z);
  EXPECT_EQ(render(fz), "0100110");
  EXPECT_EQ(fz.size(), f.size() + z.size() + 1);
}

TEST(Slp, BalanceChain) {
  Slp ch = chain_slp(Str(8, 0), 1);
  EXPECT_EQ(stats(ch).depth, 7u);
  Slp b = balance(ch);
  EXPECT_EQ(eval(b), eval(ch));
  EXPECT_TRUE(b.is_avl());
  EXPECT_LE(stats(b).depth, 11u);
}

TEST(Slp, BalanceSmallSlp) {
  Slp b = balance(small_slp());
  EXPECT_EQ(render(b), "010011");
  EXPECT_TRUE(b.is_avl());
  Slp bb = balance(b);
  EXPECT_EQ(eval(bb), eval(b));
}

TEST(Slp, BalanceRandom) {
  Rng g(11);
  for (int it = 0; it < 300; ++it) {
    Slp s = random_slp(g, 3, uni(g, 1, 60), 4000);
    Slp b = balance(s);
    ASSERT_EQ(eval(b), eval(s));
    ASSERT_TRUE(b.is_avl());
    double N = static_cast<double>(s.length());
    ASSERT_LE(stats(b).depth, 3 * std::log2(N) + 2);
    ASSERT_EQ(&s.balanced(), &s.balanced());
    ASSERT_EQ(eval(s.balanced()), eval(s));
  }
}

TEST(Slp, CharAtRandom) {
  Rng g(3);
  for (int it = 0; it < 100; ++it) {
    Slp s = random_slp(g, 4, uni(g, 1, 50), 10000);
    Str e = eval(s);
    for (int q = 0; q < 50; ++q) {
      std::uint64_t i = uni(g, 1, e.size());
      ASSERT_EQ(char_at(s, i), e[i - 1]);
    }
  }
  Slp r = repeat(from_literal("ab", Alphabet::of("ab")), std::uint64_t{1} << 30);
  EXPECT_EQ(char_at(r, std::uint64_t{1} << 31), 1u);
  EXPECT_THROW(char_at(r, 0), Error);
  EXPECT_THROW(char_at(r, (std::uint64_t{1} << 31) + 1), Error);
}

TEST(Slp, TooLarge) {
  Slp r = repeat(from_literal("ab", Alphabet::of("ab")), 1000);
  try {
    eval(r, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

TEST(SlpText, RoundTrip) {
  Slp f = small_slp();
  std::string t = emit_slp(f);
  EXPECT_EQ(t, "S1 = \"0\"\nS2 = \"1\"\nS3 = S1 S2\nS4 = S3 S2\nS5 = S3 S1\nS6 = S5 S4\n");
  Slp g = parse_slp(t);
  EXPECT_EQ(g.rules(), f.rules());
  EXPECT_EQ(emit_slp(g), t);

  Slp abc = from_literal("cab", Alphabet::of("abc"));
  Slp back = parse_slp(emit_slp(abc), &abc.alphabet());
  EXPECT_EQ(back, abc);
  EXPECT_EQ(render(back), "cab");

  Rng rg(5);
  for (int it = 0; it < 100; ++it) {
    Slp s = random_slp(rg, 5, uni(rg, 1, 40), 1000);
    Slp p = parse_slp(emit_slp(s), &s.alphabet());
    ASSERT_EQ(p, s);
  }
}

TEST(SlpText, ReadsSmallExample) {
  // S1->0 S2->1 S3->S1S2 S4->S3S3 S5->S4S2
  Slp s = parse_slp("# example\nS1 = \"0\"\nS2 = \"1\"\nS3 = S1 S2\nS4 = S3 S3\nS5 = S4 S2\n");
  EXPECT_EQ(render(s), "01011");
}

TEST(SlpText, Errors) {
  try {
    parse_slp("S1 = \"0\"\nS2 = \"1\"\nS3 = S9 S1\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ForwardReference);
  }
  try {
    parse_slp("S1 = \"0\"\nS2 = \"1\"\nS3 S1 S2\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_THROW(parse_slp("S2 = \"0\"\n"), Error);
  EXPECT_THROW(parse_slp(""), Error);
}

TEST(Slp, Substitute) {
  Slp s = from_literal(Str{0, 1, 1, 0}, Alphabet(2));
  Slp t = substitute(s, {{2}, {0, 1}}, Alphabet(3));
  EXPECT_EQ(eval(t), (Str{2, 0, 1, 0, 1, 2}));
  (void)str;
}
