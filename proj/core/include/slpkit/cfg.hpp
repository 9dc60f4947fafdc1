#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "slpkit/slp.hpp"

namespace slpkit {

struct GSym {
  bool nt = false;
  std::uint32_t id = 0;  // terminal symbol or nonterminal index
  bool operator==(const GSym&) const = default;
};

struct Production {
  std::uint32_t lhs = 0;
  std::vector<GSym> rhs;  // empty = epsilon
  bool operator==(const Production&) const = default;
};

struct Cfg {
  Alphabet terminals;
  std::vector<std::string> nonterminals;
  std::uint32_t start = 0;
  std::vector<Production> prods;

  std::uint32_t add_nt(std::string name);
  void add(std::uint32_t lhs, std::vector<GSym> rhs) { prods.push_back({lhs, std::move(rhs)}); }
  static GSym T(Sym s) { return {false, s}; }
  static GSym N(std::uint32_t x) { return {true, x}; }

  std::size_t size() const;  // sum of right-hand side lengths
  std::vector<char> nullable() const;
  void validate() const;
};

// Earley recognition with the nullable-prediction fix.
bool cfg_recognize(const Str& text, const Cfg& g);

// "start <NT>" then "NT -> sym ..." lines; a token is a nonterminal iff it
// has a production. Other tokens are glyphs of `terminals`.
std::string emit_grammar(const Cfg& g);
Cfg parse_grammar(std::string_view text, const Alphabet& terminals);

}  // namespace slpkit
