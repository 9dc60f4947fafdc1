#pragma once

#include <cstdint>
#include <string_view>
#include <tuple>
#include <variant>
#include <vector>

#include "slpkit/slp.hpp"

namespace slpkit {

struct Dfa {
  std::uint32_t q = 0;
  std::uint32_t sigma = 0;
  std::uint32_t start = 0;
  std::vector<char> accepting;       // size q
  std::vector<std::uint32_t> delta;  // q x sigma, row-major by state

  std::uint32_t next(std::uint32_t s, Sym a) const { return delta[std::size_t{s} * sigma + a]; }

  // Missing transitions go to a fresh absorbing rejecting state (added
  // only when something is missing).
  static Dfa complete(std::uint32_t q, std::uint32_t sigma, std::uint32_t start, const std::vector<std::uint32_t>& accept,
                      const std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>>& trans);
  void validate() const;
};

// Bit-packed square boolean matrix.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::uint32_t n) : n_(n), w_((n + 63) / 64), bits_(std::size_t{n} * w_, 0) {}

  std::uint32_t n() const { return n_; }
  std::uint32_t words() const { return w_; }
  bool get(std::uint32_t i, std::uint32_t j) const { return (row(i)[j / 64] >> (j % 64)) & 1; }
  void set(std::uint32_t i, std::uint32_t j) { row(i)[j / 64] |= std::uint64_t{1} << (j % 64); }
  std::uint64_t* row(std::uint32_t i) { return bits_.data() + std::size_t{i} * w_; }
  const std::uint64_t* row(std::uint32_t i) const { return bits_.data() + std::size_t{i} * w_; }

  // this * o (row i of the result is the OR of rows k of o with this[i][k])
  BitMatrix operator*(const BitMatrix& o) const;
  bool operator==(const BitMatrix& o) const { return n_ == o.n_ && bits_ == o.bits_; }

 private:
  std::uint32_t n_ = 0, w_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct Nfa {
  std::uint32_t q = 0;
  std::uint32_t sigma = 0;
  std::uint32_t start = 0;
  std::vector<char> accepting;
  std::vector<BitMatrix> trans;  // one per symbol

  static Nfa make(std::uint32_t q, std::uint32_t sigma, std::uint32_t start, const std::vector<std::uint32_t>& accept,
                  const std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>>& edges);
  std::size_t transition_count() const;
  void validate() const;
};

using Automaton = std::variant<Dfa, Nfa>;

bool dfa_accept(const Slp& T, const Dfa& dfa);
bool nfa_accept(const Slp& T, const Nfa& nfa);
bool accept_decompressed(const Str& text, const Dfa& dfa);
bool accept_decompressed(const Str& text, const Nfa& nfa);
bool accept(const Slp& T, const Automaton& a);
bool accept_decompressed(const Str& text, const Automaton& a);

// Transition function / matrix of one rule, for composition checks.
std::vector<std::uint32_t> dfa_rule_function(const Slp& T, const Dfa& dfa, std::uint32_t rule);
BitMatrix nfa_rule_matrix(const Slp& T, const Nfa& nfa, std::uint32_t rule);

// Subset construction over reachable subsets.
Dfa determinize(const Nfa& nfa, std::uint32_t max_states = 1u << 16);

// Text form: "dfa|nfa q sigma start", "accept s...", then "s a t" lines.
std::string emit_automaton(const Automaton& a);
Automaton parse_automaton(std::string_view text);

}  // namespace slpkit
