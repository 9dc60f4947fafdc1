#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slpkit/error.hpp"

namespace slpkit {

using Sym = std::uint32_t;
using Str = std::vector<Sym>;

// Longest representable string. Lengths above this are LengthOverflow.
inline constexpr std::uint64_t kMaxLen = (std::uint64_t{1} << 63) - 1;

struct Alphabet {
  std::uint32_t size = 1;
  std::vector<std::string> glyphs;  // empty = print symbols as decimal

  Alphabet() = default;
  explicit Alphabet(std::uint32_t n) : size(n) {}
  Alphabet(std::uint32_t n, std::vector<std::string> g);

  // Glyph list as alphabet; "01" -> {"0","1"}
  static Alphabet of(std::string_view chars);

  std::string glyph(Sym s) const;
  std::optional<Sym> find(std::string_view g) const;
  void validate() const;
  bool operator==(const Alphabet&) const = default;
};

// Terminal: left = symbol, right = kTerm.
struct Rule {
  static constexpr std::uint32_t kTerm = 0xffffffffu;
  std::uint32_t left = 0;
  std::uint32_t right = kTerm;
  bool terminal() const { return right == kTerm; }
  Sym sym() const { return left; }
  bool operator==(const Rule&) const = default;
};

struct SlpStats {
  std::uint64_t N = 0;
  std::uint64_t n = 0;
  std::uint32_t depth = 0;
};

class SlpBuilder;

// Immutable. Start symbol is the last rule.
class Slp {
 public:
  Slp() = default;

  std::size_t size() const { return rules_.size(); }
  bool empty() const { return rules_.empty(); }
  std::uint32_t start() const { return static_cast<std::uint32_t>(rules_.size() - 1); }
  const Rule& rule(std::size_t i) const { return rules_[i]; }
  const std::vector<Rule>& rules() const { return rules_; }
  std::uint64_t len(std::size_t i) const { return len_[i]; }
  std::uint32_t depth(std::size_t i) const { return depth_[i]; }
  std::uint64_t length() const { return len_.back(); }
  const Alphabet& alphabet() const { return alpha_; }

  bool is_avl() const;
  // AVL-balanced equivalent, computed once and shared between copies.
  const Slp& balanced() const;

  // Structural equality (rules and alphabet).
  bool operator==(const Slp& o) const { return rules_ == o.rules_ && alpha_ == o.alpha_; }

 private:
  friend class SlpBuilder;
  struct Cache;

  std::vector<Rule> rules_;
  std::vector<std::uint64_t> len_;
  std::vector<std::uint32_t> depth_;
  Alphabet alpha_;
  std::shared_ptr<Cache> cache_;
};

// Mutable rule arena. Handles are rule indices; kEps stands for the empty
// string and disappears under concatenation, so generators can write
// 0^0 without special cases. build(kEps) is an error.
class SlpBuilder {
 public:
  static constexpr std::uint32_t kEps = 0xfffffffeu;

  explicit SlpBuilder(Alphabet a, bool share_terminals = true);

  std::uint32_t term(Sym s);
  std::uint32_t cat(std::uint32_t l, std::uint32_t r);
  std::uint32_t cat(std::initializer_list<std::uint32_t> xs);
  std::uint32_t cat(const std::vector<std::uint32_t>& xs);
  std::uint32_t pow(std::uint32_t x, std::uint64_t k);
  std::uint32_t literal(const Str& s);  // balanced tree over the symbols
  std::uint32_t import(const Slp& s);   // copies rules, returns root handle

  std::uint64_t len(std::uint32_t h) const;
  std::uint32_t depth(std::uint32_t h) const;
  std::size_t size() const { return rules_.size(); }
  const Alphabet& alphabet() const { return alpha_; }

  // Keeps only rules reachable from root, renumbered; root becomes last.
  Slp build(std::uint32_t root) const;
  // Keeps every rule; the last added rule is the start.
  Slp build_all() const;

 private:
  std::uint32_t push(Rule r, std::uint64_t len, std::uint32_t depth);

  Alphabet alpha_;
  bool share_;
  std::vector<Rule> rules_;
  std::vector<std::uint64_t> len_;
  std::vector<std::uint32_t> depth_;
  std::vector<std::uint32_t> term_of_;
};

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

Slp from_literal(const Str& text, const Alphabet& alpha);
Slp from_literal(std::string_view text, const Alphabet& alpha);  // one glyph per char
Str eval(const Slp& s, std::uint64_t max_len = std::uint64_t{1} << 26);
Str eval_rule(const Slp& s, std::uint32_t i, std::uint64_t max_len = std::uint64_t{1} << 26);
std::string render(const Slp& s, std::uint64_t max_len = std::uint64_t{1} << 26);
SlpStats stats(const Slp& s);
Slp repeat(const Slp& body, std::uint64_t k);
Slp concat(const Slp& a, const Slp& b);
Slp balance(const Slp& s);
Sym char_at(const Slp& s, std::uint64_t i);  // 1-based
// Replaces every terminal a by images[a] (each nonempty).
Slp substitute(const Slp& s, const std::vector<Str>& images, const Alphabet& out);

// Text form.
std::string emit_slp(const Slp& s);
Slp parse_slp(std::string_view text, const Alphabet* alpha = nullptr);

}  // namespace slpkit
