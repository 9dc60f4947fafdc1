#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slpkit/slp.hpp"

namespace slpkit {

struct PairedAlphabet {
  Alphabet base;
  std::vector<Sym> bar;               // involution
  std::vector<std::uint64_t> weight;  // positive, w(a) == w(bar a)

  PairedAlphabet() = default;
  // symbols 2i and 2i+1 are complementary; unit weights
  static PairedAlphabet complementary_pairs(std::uint32_t pairs);
  std::uint64_t max_weight() const;
  void validate() const;
};

struct FoldOptions {
  std::uint64_t max_len = 20000;  // cap on the (expanded) string length
};

// Maximum non-crossing matching of complementary positions; a position
// takes part in at most one pair.
std::uint64_t rna_fold(const Str& text, const PairedAlphabet& pa, const FoldOptions& opt = {});
// Expands every symbol a to a^{w(a)} and folds.
std::uint64_t wrna_fold(const Str& text, const PairedAlphabet& pa, const FoldOptions& opt = {});
// Same value without expansion: interval DP over the weighted symbols.
// Requires bar to have no fixed points; intended for small inputs.
std::uint64_t wrna_fold_direct(const Str& text, const PairedAlphabet& pa);
Str expand_weights(const Str& text, const PairedAlphabet& pa, std::uint64_t max_len);

// "pairs" section of "a b" lines, "weights" section of "a w" lines.
std::string emit_pairing(const PairedAlphabet& pa);
PairedAlphabet parse_pairing(std::string_view text);

// whitespace-separated glyph tokens
Str parse_tokens(std::string_view text, const Alphabet& a);
std::string emit_tokens(const Str& s, const Alphabet& a);

}  // namespace slpkit
