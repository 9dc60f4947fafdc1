#include <benchmark/benchmark.h>

#include <random>

#include "slpkit/automata.hpp"
#include "slpkit/cfg.hpp"
#include "slpkit/matching.hpp"
#include "slpkit/rna.hpp"
#include "slpkit/seqcmp.hpp"

using namespace slpkit;

namespace {

const Alphabet kAb = Alphabet::of("ab");

// (ab)^(2^(e-1)), length 2^e, about e rules
Slp ab_power(std::uint32_t e) { return repeat(from_literal("ab", kAb), std::uint64_t{1} << (e - 1)); }

Str random_bits(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Str s(n);
  for (auto& c : s) c = rng() & 1;
  return s;
}

Dfa mod8() {
  std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>> tr;
  for (std::uint32_t s = 0; s < 8; ++s) {
    tr.emplace_back(s, 0, s);
    tr.emplace_back(s, 1, (s + 1) % 8);
  }
  return Dfa::complete(8, 2, 0, {0}, tr);
}

Nfa contains_abbaaba() {
  const Str w = {0, 1, 1, 0, 0, 1, 0};
  const std::uint32_t q = 8;
  std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>> e;
  for (Sym a : {0u, 1u}) {
    e.emplace_back(0, a, 0);
    e.emplace_back(q - 1, a, q - 1);
  }
  for (std::uint32_t i = 0; i < w.size(); ++i) e.emplace_back(i, w[i], i + 1);
  return Nfa::make(q, 2, 0, {q - 1}, e);
}

void BM_DfaCompressed(benchmark::State& st) {
  Slp T = ab_power(static_cast<std::uint32_t>(st.range(0)));
  Dfa d = mod8();
  for (auto _ : st) benchmark::DoNotOptimize(dfa_accept(T, d));
  st.counters["N"] = static_cast<double>(T.length());
}
BENCHMARK(BM_DfaCompressed)->DenseRange(10, 60, 10);

void BM_DfaDecompressed(benchmark::State& st) {
  Slp T = ab_power(static_cast<std::uint32_t>(st.range(0)));
  Dfa d = mod8();
  for (auto _ : st) benchmark::DoNotOptimize(accept_decompressed(eval(T), d));
  st.counters["N"] = static_cast<double>(T.length());
}
BENCHMARK(BM_DfaDecompressed)->DenseRange(10, 22, 4);

void BM_NfaCompressed(benchmark::State& st) {
  Slp T = ab_power(static_cast<std::uint32_t>(st.range(0)));
  Nfa n = contains_abbaaba();
  for (auto _ : st) benchmark::DoNotOptimize(nfa_accept(T, n));
}
BENCHMARK(BM_NfaCompressed)->DenseRange(10, 60, 25);

void BM_GpmCompressed(benchmark::State& st) {
  Slp T = ab_power(static_cast<std::uint32_t>(st.range(0)));
  Str p = random_bits(static_cast<std::size_t>(st.range(1)), 3);
  CostFn c = CostFn::hamming(2);
  for (auto _ : st) benchmark::DoNotOptimize(gpm_compressed(T, p, c).min_cost);
}
BENCHMARK(BM_GpmCompressed)->ArgsProduct({{16, 32, 48}, {8, 32}});

void BM_SubstringHd(benchmark::State& st) {
  Slp T = ab_power(static_cast<std::uint32_t>(st.range(0)));
  Slp P = from_literal(random_bits(64, 5), kAb);
  for (auto _ : st) benchmark::DoNotOptimize(substring_hd(T, P));
}
BENCHMARK(BM_SubstringHd)->DenseRange(12, 36, 12);

void BM_Hamming(benchmark::State& st) {
  Slp T = ab_power(static_cast<std::uint32_t>(st.range(0)));
  Slp P = substitute(T, {Str{1}, Str{0}}, kAb);
  for (auto _ : st) benchmark::DoNotOptimize(hamming_recursive(P, T));
}
BENCHMARK(BM_Hamming)->DenseRange(10, 60, 25);

void BM_Subsequence(benchmark::State& st) {
  Slp T = ab_power(static_cast<std::uint32_t>(st.range(0)));
  Slp P = repeat(from_literal("ba", kAb), 16);
  for (auto _ : st) benchmark::DoNotOptimize(subsequence_recursive(P, T));
}
BENCHMARK(BM_Subsequence)->DenseRange(10, 30, 10);

void BM_LcsDp(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  Str x = random_bits(n, 7), y = random_bits(n, 8);
  for (auto _ : st) benchmark::DoNotOptimize(lcs_dp(x, y).L);
}
BENCHMARK(BM_LcsDp)->RangeMultiplier(4)->Range(256, 4096);

void BM_RnaFold(benchmark::State& st) {
  PairedAlphabet pa = PairedAlphabet::complementary_pairs(2);
  std::mt19937_64 rng(9);
  Str s(static_cast<std::size_t>(st.range(0)));
  for (auto& c : s) c = rng() % 4;
  for (auto _ : st) benchmark::DoNotOptimize(rna_fold(s, pa));
}
BENCHMARK(BM_RnaFold)->RangeMultiplier(2)->Range(64, 512);

void BM_CfgDyck(benchmark::State& st) {
  Alphabet t = Alphabet::of("()");
  Cfg g = parse_grammar("start S\nS -> ( S ) S\nS ->\n", t);
  Str s;
  for (std::int64_t i = 0; i < st.range(0) / 2; ++i) s.push_back(0);
  for (std::int64_t i = 0; i < st.range(0) / 2; ++i) s.push_back(1);
  for (auto _ : st) benchmark::DoNotOptimize(cfg_recognize(s, g));
}
BENCHMARK(BM_CfgDyck)->RangeMultiplier(2)->Range(32, 256);

}  // namespace

BENCHMARK_MAIN();
