#include <gtest/gtest.h>

#include <array>
#include <functional>

#include "cyk.hpp"
#include "slpkit/cfg.hpp"
#include "slpkit/rna.hpp"
#include "support.hpp"

using namespace slpkit;
using namespace slpkit::testing;

namespace {

// S -> a S b | eps
Cfg anbn() {
  Cfg g;
  g.terminals = Alphabet::of("ab");
  auto S = g.add_nt("S");
  g.start = S;
  g.add(S, {Cfg::T(0), Cfg::N(S), Cfg::T(1)});
  g.add(S, {});
  return g;
}

Cfg random_cfg(Rng& r, std::uint32_t sigma) {
  Cfg g;
  g.terminals = Alphabet(sigma);
  std::uint32_t n = static_cast<std::uint32_t>(uni(r, 1, 4));
  for (std::uint32_t i = 0; i < n; ++i) g.add_nt("N" + std::to_string(i));
  std::size_t np = uni(r, 1, 9);
  for (std::size_t p = 0; p < np; ++p) {
    std::vector<GSym> body;
    std::size_t len = uni(r, 0, 4);
    for (std::size_t k = 0; k < len; ++k)
      body.push_back(uni(r, 0, 1) ? Cfg::T(static_cast<Sym>(uni(r, 0, sigma - 1)))
                                  : Cfg::N(static_cast<std::uint32_t>(uni(r, 0, n - 1))));
    g.add(static_cast<std::uint32_t>(uni(r, 0, n - 1)), body);
  }
  return g;
}

// random derivation, bounded; empty optional on failure
bool derive(Rng& r, const Cfg& g, std::uint32_t nt, int depth, Str& out) {
  if (depth > 12 || out.size() > 60) return false;
  std::vector<std::size_t> cand;
  for (std::size_t p = 0; p < g.prods.size(); ++p)
    if (g.prods[p].lhs == nt) cand.push_back(p);
  if (cand.empty()) return false;
  const auto& P = g.prods[cand[uni(r, 0, cand.size() - 1)]];
  for (auto& s : P.rhs) {
    if (!s.nt)
      out.push_back(s.id);
    else if (!derive(r, g, s.id, depth + 1, out))
      return false;
  }
  return true;
}

// all non-crossing matchings, exhaustive
std::uint64_t brute_fold(const Str& t, const PairedAlphabet& pa) {
  std::function<std::uint64_t(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) -> std::uint64_t {
    if (j <= i + 1) return 0;
    std::uint64_t best = go(i + 1, j);  // i unpaired
    for (std::size_t k = i + 1; k < j; ++k)
      if (pa.bar[t[i]] == t[k]) best = std::max(best, 1 + go(i + 1, k) + go(k + 1, j));
    return best;
  };
  // brute force over matchings by explicit enumeration of pair sets
  std::uint64_t best = 0;
  std::vector<int> partner(t.size(), -1);
  std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t i, std::uint64_t cnt) {
    if (i == t.size()) {
      best = std::max(best, cnt);
      return;
    }
    if (partner[i] != -1) return rec(i + 1, cnt);
    rec(i + 1, cnt);
    for (std::size_t k = i + 1; k < t.size(); ++k) {
      if (partner[k] != -1 || pa.bar[t[i]] != t[k]) continue;
      // (i,k) must not cross any existing pair (a,b) with a < i
      bool ok = true;
      for (std::size_t a = 0; a < i && ok; ++a)
        if (partner[a] > static_cast<int>(a)) {
          std::size_t b = static_cast<std::size_t>(partner[a]);
          if ((a < i && i < b && b < k)) ok = false;
        }
      if (!ok) continue;
      partner[i] = static_cast<int>(k);
      partner[k] = static_cast<int>(i);
      rec(i + 1, cnt + 1);
      partner[i] = partner[k] = -1;
    }
  };
  rec(0, 0);
  (void)go;
  return best;
}

}  // namespace

TEST(Cfg, Examples) {
  Cfg g = anbn();
  EXPECT_TRUE(cfg_recognize(Str{0, 0, 1, 1}, g));
  EXPECT_FALSE(cfg_recognize(Str{0, 1, 0, 1}, g));
  EXPECT_TRUE(cfg_recognize(Str{}, g));
  try {
    cfg_recognize(Str{2}, g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UndeclaredSymbol);
  }
}

TEST(Cfg, NullableChains) {
  // S -> A A x ; A -> B ; B -> eps | y
  Cfg g;
  g.terminals = Alphabet::of("xy");
  auto S = g.add_nt("S"), A = g.add_nt("A"), B = g.add_nt("B");
  g.start = S;
  g.add(S, {Cfg::N(A), Cfg::N(A), Cfg::T(0)});
  g.add(A, {Cfg::N(B)});
  g.add(B, {});
  g.add(B, {Cfg::T(1)});
  EXPECT_TRUE(cfg_recognize(Str{0}, g));
  EXPECT_TRUE(cfg_recognize(Str{1, 0}, g));
  EXPECT_TRUE(cfg_recognize(Str{1, 1, 0}, g));
  EXPECT_FALSE(cfg_recognize(Str{1, 1, 1, 0}, g));
}

TEST(Cfg, AgreesWithCyk) {
  Rng r(41);
  int positives = 0;
  for (int it = 0; it < 300; ++it) {
    std::uint32_t sigma = static_cast<std::uint32_t>(uni(r, 1, 3));
    Cfg g = random_cfg(r, sigma);
    auto cnf = oracle::to_cnf(g);
    for (int q = 0; q < 4; ++q) {
      Str w;
      if (q % 2 == 0 || !derive(r, g, g.start, 0, w)) w = random_str(r, uni(r, 0, 12), sigma);
      bool want = oracle::cyk(w, cnf);
      positives += want;
      ASSERT_EQ(cfg_recognize(w, g), want) << emit_grammar(g);
    }
  }
  EXPECT_GT(positives, 100);
}

TEST(Cfg, LongStringsAgreeWithCyk) {
  Rng r(42);
  for (int it = 0; it < 200; ++it) {
    Cfg g = random_cfg(r, 2);
    Str w;
    if (!derive(r, g, g.start, 0, w) || w.size() < 20) w = random_str(r, uni(r, 20, 60), 2);
    ASSERT_EQ(cfg_recognize(w, g), oracle::cyk(w, oracle::to_cnf(g)));
  }
}

TEST(Cfg, TextForm) {
  Cfg g = anbn();
  std::string t = emit_grammar(g);
  EXPECT_EQ(t, "start S\nS -> a S b\nS ->\n");
  Cfg h = parse_grammar(t, Alphabet::of("ab"));
  EXPECT_EQ(h.prods, g.prods);
  EXPECT_EQ(h.size(), 3u);
  EXPECT_THROW(parse_grammar("start S\nS -> a c\n", Alphabet::of("ab")), Error);
}

TEST(Rna, Examples) {
  // a = 0, abar = 1, b = 2, bbar = 3
  PairedAlphabet pa = PairedAlphabet::complementary_pairs(2);
  EXPECT_EQ(rna_fold(Str{0, 1}, pa), 1u);
  EXPECT_EQ(rna_fold(Str{0, 0, 1, 1}, pa), 2u);
  EXPECT_EQ(rna_fold(Str{0, 2, 1, 3}, pa), 1u);
  EXPECT_EQ(rna_fold(Str{0, 1, 0}, pa), 1u);  // shared endpoint counts as crossing
  PairedAlphabet w3 = pa;
  for (auto& w : w3.weight) w = 3;
  EXPECT_EQ(wrna_fold(Str{0, 1}, w3), 3u);
  EXPECT_EQ(wrna_fold_direct(Str{0, 1}, w3), 3u);
  FoldOptions small;
  small.max_len = 4;
  try {
    wrna_fold(Str{0, 1}, w3, small);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooLarge);
  }
}

TEST(Rna, AgreesWithExhaustive) {
  Rng r(43);
  for (int it = 0; it < 300; ++it) {
    PairedAlphabet pa = PairedAlphabet::complementary_pairs(static_cast<std::uint32_t>(uni(r, 1, 2)));
    Str t = random_str(r, uni(r, 0, 14), pa.base.size);
    ASSERT_EQ(rna_fold(t, pa), brute_fold(t, pa));
  }
}

TEST(Rna, ReverseBarSymmetry) {
  Rng r(44);
  for (int it = 0; it < 200; ++it) {
    PairedAlphabet pa = PairedAlphabet::complementary_pairs(static_cast<std::uint32_t>(uni(r, 1, 3)));
    Str t = random_str(r, uni(r, 0, 200), pa.base.size);
    Str rb(t.rbegin(), t.rend());
    for (auto& c : rb) c = pa.bar[c];
    ASSERT_EQ(rna_fold(t, pa), rna_fold(rb, pa));
  }
}

TEST(Rna, WeightedRoutesAgree) {
  Rng r(45);
  for (int it = 0; it < 250; ++it) {
    PairedAlphabet pa = PairedAlphabet::complementary_pairs(static_cast<std::uint32_t>(uni(r, 1, 3)));
    for (Sym s = 0; s < pa.base.size; s += 2) pa.weight[s] = pa.weight[s + 1] = uni(r, 1, it % 5 == 0 ? 40 : 4);
    Str t = random_str(r, uni(r, 0, it % 5 == 0 ? 12 : 30), pa.base.size);
    ASSERT_EQ(wrna_fold(t, pa), wrna_fold_direct(t, pa));
  }
  // all weights 1: weighted equals plain
  PairedAlphabet pa = PairedAlphabet::complementary_pairs(2);
  Str t = random_str(r, 100, 4);
  EXPECT_EQ(wrna_fold(t, pa), rna_fold(t, pa));
}

TEST(Rna, PairingTextForm) {
  PairedAlphabet pa = parse_pairing("pairs\na A\nb B\nweights\na 3\nA 3\n");
  EXPECT_EQ(pa.base.size, 4u);
  EXPECT_EQ(pa.bar[pa.base.find("a").value()], pa.base.find("A").value());
  EXPECT_EQ(pa.weight[pa.base.find("A").value()], 3u);
  PairedAlphabet back = parse_pairing(emit_pairing(pa));
  EXPECT_EQ(emit_pairing(back), emit_pairing(pa));
  EXPECT_THROW(parse_pairing("pairs\na A\nweights\na 3\n"), Error);  // asymmetric weight
  Str s = parse_tokens("a A", pa.base);
  EXPECT_EQ(rna_fold(s, pa), 1u);
}
