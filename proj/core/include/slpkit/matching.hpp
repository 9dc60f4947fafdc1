#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "slpkit/slp.hpp"

namespace slpkit {

struct CostFn {
  std::uint32_t sigma_p = 0;
  std::uint32_t sigma_t = 0;
  std::vector<std::int64_t> table;  // row-major sigma_p x sigma_t
  std::optional<Sym> wildcard;      // pattern symbol with an all-zero row

  CostFn() = default;
  CostFn(std::uint32_t sp, std::uint32_t st) : sigma_p(sp), sigma_t(st), table(std::size_t{sp} * st, 0) {}

  std::int64_t operator()(Sym p, Sym t) const { return table[std::size_t{p} * sigma_t + t]; }
  std::int64_t& at(Sym p, Sym t) { return table[std::size_t{p} * sigma_t + t]; }
  std::int64_t max_cost() const;
  void validate() const;

  static CostFn hamming(std::uint32_t sigma);
  // pattern alphabet = text alphabet plus one wildcard symbol (index sigma)
  static CostFn wildcard_match(std::uint32_t sigma);
};

struct MatchResult {
  std::int64_t min_cost = 0;
  std::uint64_t best_offset = 0;
  bool operator==(const MatchResult&) const = default;
};

struct MatchOptions {
  std::uint64_t max_pattern = std::uint64_t{1} << 26;
  // below this many cells (N*M) the direct method is used
  std::uint64_t direct_cells = std::uint64_t{1} << 22;
  // patterns up to this length are scanned directly whatever N is
  std::uint64_t direct_pattern = 256;
};

// Exact per-symbol correlation, two-prime NTT with CRT or direct.
MatchResult gpm_decompressed(const Str& T, const Str& P, const CostFn& cost, const MatchOptions& opt = {});
// Every offset's total cost (size N-M+1).
std::vector<std::int64_t> alignment_costs(const Str& T, const Str& P, const CostFn& cost, const MatchOptions& opt = {});

struct GpmStats {
  std::uint64_t fixmatch_keys = 0;
  std::uint64_t max_keys_per_rule = 0;
};

MatchResult gpm_compressed(const Slp& T, const Str& P, const CostFn& cost, const MatchOptions& opt = {},
                           GpmStats* st = nullptr);

// Pattern wildcard is the glyph "*" of slpP's alphabet unless given.
bool wildcard_match(const Slp& T, const Slp& P, std::optional<Sym> wildcard = std::nullopt,
                    const MatchOptions& opt = {});
std::int64_t substring_hd(const Slp& T, const Slp& P, const MatchOptions& opt = {});

// cost table text form
std::string emit_costs(const CostFn& c);
CostFn parse_costs(std::string_view text);

}  // namespace slpkit
