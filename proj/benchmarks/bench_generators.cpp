#include <benchmark/benchmark.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "slpkit/hardness.hpp"

using namespace slpkit;

namespace {

std::vector<BitVec> random_vectors(std::size_t n, std::uint32_t d, std::mt19937_64& rng) {
  std::vector<BitVec> v(n, BitVec(d));
  for (auto& x : v)
    for (auto& b : x) b = rng() % 3 == 0;
  return v;
}

Graph random_graph(std::uint32_t V, std::mt19937_64& rng) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t u = 0; u < V; ++u)
    for (std::uint32_t v = u + 1; v < V; ++v)
      if (rng() % 2) e.emplace_back(u, v);
  return Graph::make(V, e);
}

GenOptions big() {
  GenOptions o;
  o.uncertified = true;
  return o;
}

void BM_GenDfaFromOv(benchmark::State& st) {
  std::mt19937_64 rng(1);
  OvInstance in;
  in.d = 16;
  in.A = random_vectors(static_cast<std::size_t>(st.range(0)), in.d, rng);
  in.B = random_vectors(static_cast<std::size_t>(st.range(0)), in.d, rng);
  for (auto _ : st) benchmark::DoNotOptimize(gen_dfa_from_ov(in, big()));
}
BENCHMARK(BM_GenDfaFromOv)->RangeMultiplier(4)->Range(16, 1024);

void BM_GenWildcardFromKov(benchmark::State& st) {
  std::mt19937_64 rng(2);
  KovInstance in;
  in.d = 8;
  in.k = 2;
  in.A = random_vectors(static_cast<std::size_t>(st.range(0)), in.d, rng);
  for (auto _ : st) benchmark::DoNotOptimize(gen_wildcard_pm_from_kov(in, 1, 1, big()));
}
BENCHMARK(BM_GenWildcardFromKov)->RangeMultiplier(4)->Range(4, 256);

void BM_GenCfgFromClique(benchmark::State& st) {
  std::mt19937_64 rng(3);
  Graph g = random_graph(static_cast<std::uint32_t>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(gen_cfg_from_clique(g, 1, big()));
}
BENCHMARK(BM_GenCfgFromClique)->RangeMultiplier(2)->Range(4, 32);

void BM_GenNfaFromClique(benchmark::State& st) {
  std::mt19937_64 rng(4);
  Graph g = random_graph(static_cast<std::uint32_t>(st.range(0)), rng);
  for (auto _ : st) benchmark::DoNotOptimize(gen_nfa_from_clique(g, 1, 1, big()));
}
BENCHMARK(BM_GenNfaFromClique)->RangeMultiplier(2)->Range(4, 32);

void BM_GenHammingFromKsum(benchmark::State& st) {
  std::mt19937_64 rng(5);
  KsumInstance in;
  in.k_arity = 3;
  in.t = 96;
  std::vector<std::int64_t> pool(128);
  std::iota(pool.begin(), pool.end(), 0);
  std::shuffle(pool.begin(), pool.end(), rng);
  in.Z.assign(pool.begin(), pool.begin() + st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(gen_hamming_from_ksum(in, 1, big()));
}
BENCHMARK(BM_GenHammingFromKsum)->RangeMultiplier(2)->Range(4, 32);

}  // namespace
