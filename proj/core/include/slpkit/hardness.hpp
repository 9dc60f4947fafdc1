#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "slpkit/automata.hpp"
#include "slpkit/cfg.hpp"
#include "slpkit/rna.hpp"
#include "slpkit/seqcmp.hpp"
#include "slpkit/slp.hpp"

namespace slpkit {

using BitVec = std::vector<std::uint8_t>;

// ---- source instances

struct OvInstance {
  std::uint32_t d = 0;
  std::vector<BitVec> A, B;
  void validate() const;
};

// Tuples are drawn with repetition, in lexicographic index order.
struct KovInstance {
  std::uint32_t d = 0;
  std::uint32_t k = 1;
  std::vector<BitVec> A;
  void validate() const;
};

struct Graph {
  std::uint32_t V = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // u < v, sorted, unique

  static Graph make(std::uint32_t V, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges);
  void validate() const;
  bool adjacent(std::uint32_t u, std::uint32_t v) const;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> non_edges() const;
  std::vector<std::uint32_t> neighbors(std::uint32_t v) const;
  // all c-cliques as sorted vertex lists, lexicographic
  std::vector<std::vector<std::uint32_t>> cliques(std::uint32_t c, std::uint64_t cap = 10'000'000) const;
};

// Summands are drawn from Z with repetition.
struct KsumInstance {
  std::vector<std::int64_t> Z;
  std::int64_t t = 0;
  std::uint32_t k_arity = 3;
  std::int64_t R = 0;  // 0 = max(Z)
  void validate() const;
  std::int64_t bound() const;
};

using Source = std::variant<OvInstance, KovInstance, Graph, KsumInstance>;

struct SolveCaps {
  std::uint64_t max_tuples = 10'000'000;
  std::uint32_t max_vertices = 12;
};

bool solve_source(const OvInstance& s, const SolveCaps& caps = {});
bool solve_source(const KovInstance& s, const SolveCaps& caps = {});
bool solve_source(const Graph& g, std::uint32_t k, const SolveCaps& caps = {});
bool solve_source(const KsumInstance& s, const SolveCaps& caps = {});

// Text forms: "ov d" / "kov d k" / "graph V" / "ksum k t" headers.
Source parse_source(std::string_view text);
std::string emit_source(const Source& s);

// ---- generated instances

enum class Cmp { Le, Ge };

struct Expected {
  bool threshold_form = false;
  std::uint64_t threshold = 0;
  Cmp cmp = Cmp::Le;
  std::optional<bool> answer;  // source truth; empty when uncertified and unsolved

  // target value -> yes/no under this threshold
  bool holds(std::uint64_t value) const { return cmp == Cmp::Le ? value <= threshold : value >= threshold; }
};

struct Payload {
  std::map<std::string, Slp> slps;  // text, pattern, x, y
  std::optional<Automaton> automaton;
  std::optional<Cfg> grammar;
  std::optional<PairedAlphabet> pairing;
};

struct GeneratedInstance {
  std::string reduction;
  Payload payload;
  Expected expected;
  std::vector<std::pair<std::string, std::string>> provenance;

  std::string prov(const std::string& key) const;  // "" when absent
};

struct GenOptions {
  bool uncertified = false;
  std::uint64_t max_decompress = std::uint64_t{1} << 26;
  SolveCaps caps;
  // padding knobs (honoured where the reduction has a garbage channel)
  std::uint64_t pad_text_length = 0;
  std::uint32_t pad_slp_size = 0;
  std::uint32_t pad_states = 0;
};

void write_bundle(const std::filesystem::path& dir, const GeneratedInstance& g);
GeneratedInstance read_bundle(const std::filesystem::path& dir);
std::string emit_expected(const Expected& e);
Expected parse_expected(std::string_view text);

// ---- tuplify

// eval = concat over l in [d], over k-tuples (i_1..i_k) of A in lex order,
// of S(b[l] * a_i1[l] * ... * a_ik[l]). S0, S1 share an alphabet and length.
Slp tuplify(const KovInstance& A, const BitVec& b, const Slp& S0, const Slp& S1);
std::uint32_t tuplify_into(SlpBuilder& sb, const std::vector<BitVec>& A, std::uint32_t d, std::uint32_t k, const BitVec& b,
                           std::uint32_t s0, std::uint32_t s1);

// ---- automata from OV / clique

GeneratedInstance gen_dfa_from_ov(const OvInstance& inst, const GenOptions& opt = {});
GeneratedInstance gen_nfa_from_clique(const Graph& g, std::uint32_t kappa, std::uint32_t kappa2, const GenOptions& opt = {});

// ---- pattern matching

GeneratedInstance gen_wildcard_pm_from_kov(const KovInstance& inst, std::uint32_t k1, std::uint32_t k2,
                                           const GenOptions& opt = {});
// Guarded coordinate strings; x = 2 is the wildcard on the pattern side.
Str hd_text_gadget(Sym y);
Str hd_pattern_gadget(Sym x);
// Threshold M = |P|, "le". expected answer from wildcard_match unless given.
GeneratedInstance pm_to_substring_hd(const Slp& T, const Slp& P, std::optional<bool> answer = std::nullopt);
GeneratedInstance gen_substring_hd_from_kov(const KovInstance& inst, std::uint32_t k1, std::uint32_t k2,
                                            const GenOptions& opt = {});

// ---- LCS framework

// delta = LCS distance |X| + |Y| - 2 LCS
std::uint64_t lcs_distance(const Str& X, const Str& Y);

// Lambda: 1-based (i, j) pairs, strictly increasing on both sides.
std::uint64_t alignment_cost(const std::vector<Str>& Xs, const std::vector<Str>& Ys,
                             const std::vector<std::pair<std::uint32_t, std::uint32_t>>& lambda);

struct AlignmentGadget {
  Slp X, Y;
  std::uint64_t C = 0;
  std::uint64_t kappa1 = 0, kappa2 = 0;
};

// Three fresh symbols sigma, rho, mu are appended after alphabet_size.
AlignmentGadget lcs_alignment_gadget(const std::vector<Str>& Xs, const std::vector<Str>& Ys, std::uint32_t alphabet_size,
                                     bool compressible = true);

struct LcsConstants {
  std::uint64_t delta0 = 0, delta1 = 0, gamma = 0;
  std::uint64_t kappa1[3] = {0, 0, 0}, kappa2[3] = {0, 0, 0};
  std::uint64_t n1 = 0, m1 = 0;  // tuple-gadget sizes d A^k1 and (d-1) A^k1 + 1
  std::uint64_t C = 0, C1 = 0, C2 = 0;  // C, C', C''
  std::uint64_t delta_orth = 0, delta_non = 0, threshold = 0;
};

// The gadget tower for one k-OV source; vectors are augmented by one
// coordinate (0 for the a/b side, 1 for the c side).
class LcsPipeline {
 public:
  LcsPipeline(const KovInstance& inst, std::uint32_t k1, std::uint32_t k2);

  const LcsConstants& constants() const { return c_; }
  static Str coord_x(bool one);
  static Str coord_y(bool one);

  const std::vector<BitVec>& bvecs() const { return bs_; }  // A0^(k2)
  const std::vector<BitVec>& cvecs() const { return cs_; }  // A1^(k2)
  // some tuple a of A0^(k1) with (a, b, c) orthogonal
  bool orthogonal(const BitVec& b, const BitVec& c) const;

  Slp tg_x(const BitVec& b) const;
  Slp tg_y(const BitVec& c) const;
  Slp tg_norm() const;
  Slp ntg_x(const BitVec& b) const;
  Slp ntg_y(const BitVec& c) const;
  std::pair<Slp, Slp> final_xy() const;

  std::uint32_t d() const { return d_; }

 private:
  struct Ctx;
  std::uint32_t h_tg_x(Ctx& cx, const BitVec& b) const;
  std::uint32_t h_tg_y(Ctx& cx, const BitVec& c) const;
  std::uint32_t h_tg_norm(Ctx& cx) const;
  std::uint32_t h_ntg_x(Ctx& cx, const BitVec& b) const;
  std::uint32_t h_ntg_y(Ctx& cx, const BitVec& c) const;

  std::uint32_t d_, k1_, k2_;
  std::vector<BitVec> A0_;
  std::vector<BitVec> bs_, cs_;
  LcsConstants c_;
};

GeneratedInstance gen_lcs_from_kov(const KovInstance& inst, std::uint32_t k1, std::uint32_t k2, const GenOptions& opt = {});

// ---- CFG and RNA from clique

GeneratedInstance gen_cfg_from_clique(const Graph& g, std::uint32_t k, const GenOptions& opt = {});
// Incl^(d)_S over V: 1 at tuple index i iff S is contained in U(i)
Slp clique_incl(std::uint32_t V, std::uint32_t d, const std::vector<std::uint32_t>& S);
// Adj^(d)_v: 1 iff v is adjacent to every vertex of U(i)
Slp clique_adj(const Graph& g, std::uint32_t d, std::uint32_t v);

struct GuardResult {
  Str text;            // weighted string over pa.base
  PairedAlphabet pa;   // input pairing plus 5, 5~, 6, 6~, 7, 7~
  std::uint64_t rho = 0;
  std::uint64_t W = 0;
};
// grid[a][b]; W = 0 picks the largest cell weight.
GuardResult rna_guard(const std::vector<std::vector<Str>>& grid, const PairedAlphabet& pa, std::uint64_t W = 0);

// 48-symbol layout: digit 0..7, bar flag, copy 0..2
Sym rna_sym(std::uint32_t digit, bool bar, std::uint32_t copy);
PairedAlphabet rna_clique_alphabet(std::uint64_t A, std::uint64_t W);
// Gadget strings for tuple index i (0-based).
Str rna_r(const Graph& g, std::uint32_t k, std::uint64_t i, std::uint32_t copy);
Str rna_p(const Graph& g, std::uint32_t k, std::uint64_t i, std::uint32_t copy);
Str rna_q(const Graph& g, std::uint32_t k, std::uint64_t i, std::uint32_t copy);
GeneratedInstance gen_rna_from_clique(const Graph& g, std::uint32_t k, const GenOptions& opt = {});

// ---- subsequence / disjointness

GeneratedInstance gen_subsequence_from_clique(const Graph& g, std::uint32_t k, const GenOptions& opt = {});
GeneratedInstance gen_disjointness_from_ksum(const KsumInstance& inst, std::uint32_t k, const GenOptions& opt = {});
// composed with the disjointness gadgets
GeneratedInstance gen_subsequence_from_ksum(const KsumInstance& inst, std::uint32_t k, const GenOptions& opt = {});
GeneratedInstance gen_hamming_from_ksum(const KsumInstance& inst, std::uint32_t k, const GenOptions& opt = {});

// ---- target-side solving

struct TargetResult {
  bool answer = false;
  std::optional<std::uint64_t> value;  // threshold reductions
};

// Solves the generated instance with the module algorithms (compressed
// routes), or with decompress-and-solve when oracle is set.
TargetResult solve_target(const GeneratedInstance& g, bool oracle = false,
                          std::uint64_t max_decompress = std::uint64_t{1} << 26);

}  // namespace slpkit
