#pragma once

#include <cstdint>
#include <optional>
#include <tuple>
#include <utility>

#include "slpkit/slp.hpp"

namespace slpkit {

// P is a subsequence of eval(T); greedy leftmost navigation on the
// balanced form of T with a per-rule symbol-presence table.
bool subsequence_avl(const Slp& T, const Str& P);
// Both sides compressed; memoized on (pattern rule, text rule, offset).
bool subsequence_recursive(const Slp& P, const Slp& T);

struct RecursionStats {
  std::uint64_t memo_entries = 0;
};

std::uint64_t hamming_recursive(const Slp& P, const Slp& T, RecursionStats* st = nullptr);

// Bit-string pairs: true iff no position has a 1 in both.
bool disjointness(const Slp& P, const Slp& T);

struct DisjointnessReport {
  bool via_hamming = false;
  bool via_subsequence = false;
  std::optional<bool> via_scan;  // only when decompression fits
};
DisjointnessReport disjointness_all(const Slp& P, const Slp& T, std::uint64_t max_decompress = std::uint64_t{1} << 24);

// P: 0 -> "0", 1 -> "10"; T: 0 -> "10", 1 -> "0". P' subsequence of T' iff disjoint.
std::pair<Slp, Slp> disj_to_subsequence(const Slp& P, const Slp& T);
// P: 0 -> 011, 1 -> 000; T: 0 -> 001, 1 -> 111. Hamming > N iff intersecting.
std::tuple<Slp, Slp, std::uint64_t> disj_to_hamming(const Slp& P, const Slp& T);

struct LcsReport {
  std::uint64_t L = 0;
  std::uint64_t delta = 0;  // |X| + |Y| - 2L
};

// Bit-parallel formulation of the classic LCS table.
LcsReport lcs_dp(const Str& X, const Str& Y, std::uint64_t max_cells = 4'000'000'000ULL);

}  // namespace slpkit
