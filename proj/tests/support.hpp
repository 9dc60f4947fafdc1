#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "slpkit/slp.hpp"

namespace slpkit::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uni(Rng& g, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(g);
}

inline Str random_str(Rng& g, std::size_t n, std::uint32_t sigma) {
  Str s(n);
  for (auto& c : s) c = static_cast<Sym>(uni(g, 0, sigma - 1));
  return s;
}

// Random DAG grammar; the last rule has length in [1, max_len] and tends
// to be long and repetitive because rules reuse earlier rules.
inline Slp random_slp(Rng& g, std::uint32_t sigma, std::size_t rules, std::uint64_t max_len) {
  SlpBuilder b{Alphabet(sigma), false};
  std::vector<std::uint32_t> hs;
  std::uint32_t nt = static_cast<std::uint32_t>(uni(g, 1, sigma));
  for (std::uint32_t i = 0; i < nt; ++i) hs.push_back(b.term(static_cast<Sym>(uni(g, 0, sigma - 1))));
  std::uint32_t last = hs.back();
  for (std::size_t k = 0; k < rules; ++k) {
    std::uint32_t l = hs[uni(g, 0, hs.size() - 1)];
    std::uint32_t r = hs[uni(g, 0, hs.size() - 1)];
    // bias towards recent rules so the start grows
    if (uni(g, 0, 2) == 0) l = hs.back();
    if (b.len(l) + b.len(r) > max_len) continue;
    last = b.cat(l, r);
    hs.push_back(last);
  }
  return b.build(last);
}

// Chain S_{i+1} = S_i a (left-leaning), depth len-1.
inline Slp chain_slp(const Str& s, std::uint32_t sigma) {
  SlpBuilder b{Alphabet(sigma)};
  std::uint32_t acc = SlpBuilder::kEps;
  for (Sym c : s) acc = b.cat(acc, b.term(c));
  return b.build(acc);
}

}  // namespace slpkit::testing
