#include <algorithm>

#include "hardness_util.hpp"
#include "slpkit/matching.hpp"

namespace slpkit {

using detail::finish;
using detail::ipow;
using detail::prov;

namespace {

using Edge = std::tuple<std::uint32_t, Sym, std::uint32_t>;

std::uint64_t builder_size(const Slp& s) { return s.size(); }

}  // namespace

// ---- DFA acceptance from OV
//
// T = (! concat_i # a_i)^|B| over {0,1,#,!}. Block j of the automaton checks
// b_j against every a_i in turn.

GeneratedInstance gen_dfa_from_ov(const OvInstance& inst, const GenOptions& opt) {
  inst.validate();
  if (inst.A.empty() || inst.B.empty()) fail(Errc::InvalidArgument, "ov: both vector sets must be nonempty");
  const bool pad = detail::padded(opt);
  const Alphabet alpha = Alphabet::of(pad ? "01#!_" : "01#!");
  const Sym kHash = 2, kBang = 3, kPad = 4;
  const std::uint32_t d = inst.d, B = static_cast<std::uint32_t>(inst.B.size());

  SlpBuilder sb(alpha);
  std::vector<std::uint32_t> groups;
  for (const auto& a : inst.A) {
    Str bits(a.begin(), a.end());
    groups.push_back(sb.cat(sb.term(kHash), sb.literal(bits)));
  }
  std::uint32_t T = sb.pow(sb.cat(sb.term(kBang), sb.cat(groups)), B);
  if (pad) T = sb.cat(detail::pad_prefix(sb, kPad, opt), T);

  auto z = [&](std::uint32_t j, std::uint32_t k) { return B + 1 + (j - 1) * (d + 2) + k; };  // k = d+1 is fail
  const std::uint32_t q = B + 1 + B * (d + 2) + opt.pad_states;
  std::vector<Edge> tr;
  std::vector<std::uint32_t> acc;
  tr.emplace_back(0, kBang, 1);
  if (pad) tr.emplace_back(0, kPad, 0);
  for (std::uint32_t j = 1; j <= B; ++j) {
    const BitVec& b = inst.B[j - 1];
    const std::uint32_t zf = z(j, d + 1);
    tr.emplace_back(j, kHash, z(j, 0));
    for (std::uint32_t k = 1; k <= d; ++k) {
      tr.emplace_back(z(j, k - 1), 0, z(j, k));
      tr.emplace_back(z(j, k - 1), 1, b[k - 1] ? zf : z(j, k));
    }
    for (Sym s = 0; s < alpha.size; ++s) tr.emplace_back(z(j, d), s, z(j, d));
    acc.push_back(z(j, d));
    tr.emplace_back(zf, 0, zf);
    tr.emplace_back(zf, 1, zf);
    tr.emplace_back(zf, kHash, z(j, 0));
    if (j < B) tr.emplace_back(zf, kBang, j + 1);
  }
  Dfa dfa = Dfa::complete(q, alpha.size, 0, acc, tr);

  GeneratedInstance g;
  g.reduction = "dfa-ov";
  g.payload.slps.emplace("text", sb.build(T));
  g.payload.automaton = dfa;
  g.expected.answer = detail::source_answer([&] { return solve_source(inst, opt.caps); }, opt);
  prov(g, "source_digest", detail::digest(emit_source(inst)));
  prov(g, "A", inst.A.size());
  prov(g, "B", inst.B.size());
  prov(g, "d", d);
  prov(g, "n", builder_size(g.payload.slps.at("text")));
  prov(g, "q", dfa.q);
  finish(g, g.payload.slps.at("text").length(), opt);
  return g;
}

// ---- NFA acceptance from clique
//
// Vertex names are 0-based indices in max(1, ceil(log2 V)) bits.

namespace {

std::uint32_t name_bits(std::uint32_t V) {
  std::uint32_t b = 1;
  while ((std::uint64_t{1} << b) < V) ++b;
  return b;
}

Str vertex_name(std::uint32_t v, std::uint32_t bits) {
  Str s(bits);
  for (std::uint32_t i = 0; i < bits; ++i) s[i] = (v >> (bits - 1 - i)) & 1;
  return s;
}

bool compatible(const Graph& g, const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  for (auto u : a)
    for (auto v : b)
      if (!g.adjacent(u, v)) return false;
  return true;
}

}  // namespace

GeneratedInstance gen_nfa_from_clique(const Graph& g, std::uint32_t kappa, std::uint32_t kappa2, const GenOptions& opt) {
  g.validate();
  if (kappa == 0 || kappa2 == 0) fail(Errc::InvalidArgument, "nfa-clique: kappa, kappa' must be >= 1");
  if (g.V == 0) fail(Errc::InvalidArgument, "nfa-clique: empty graph");
  const bool pad = detail::padded(opt);
  const Alphabet alpha = Alphabet::of(pad ? "01#$_" : "01#$");
  const Sym kHash = 2, kDollar = 3, kPad = 4;
  const std::uint32_t bits = name_bits(g.V);
  const auto C = g.cliques(kappa);
  const auto C2 = g.cliques(kappa2);
  const std::uint32_t m = static_cast<std::uint32_t>(C.size());

  SlpBuilder sb(alpha);
  std::vector<std::uint32_t> names(g.V);
  for (std::uint32_t v = 0; v < g.V; ++v) names[v] = sb.literal(vertex_name(v, bits));
  std::vector<std::uint32_t> parts{sb.term(kDollar)};
  for (const auto& c : C2) {
    std::vector<std::uint32_t> row;
    for (auto u : c) row.push_back(names[u]);
    std::uint32_t cg = sb.pow(sb.cat(row), kappa);
    parts.push_back(sb.cat(sb.pow(sb.cat(sb.term(kHash), cg), std::uint64_t{m} + 4), sb.term(kDollar)));
  }
  std::uint32_t T = sb.cat(parts);
  if (pad) T = sb.cat(detail::pad_prefix(sb, kPad, opt), T);

  // states: s = 0, s_i = i, t_i = m + i, t = 2m + 1, then gadget states
  std::uint32_t q = 2 * m + 2;
  const std::uint32_t s0 = 0, tacc = 2 * m + 1;
  std::vector<Edge> tr;
  auto fresh = [&] { return q++; };
  // CG_F(C): NG_F(u) kappa' times for each u in C; the text side repeats
  // the kappa'-clique kappa times, so position (i, j) tests u_i against u'_j
  auto gadget = [&](const std::vector<std::uint32_t>& c) {
    std::uint32_t start = fresh(), cur = start;
    for (auto u : c)
      for (std::uint32_t round = 0; round < kappa2; ++round) {
        std::uint32_t end = fresh();
        for (auto w : g.neighbors(u)) {
          Str nm = vertex_name(w, bits);
          std::uint32_t at = cur;
          for (std::uint32_t i = 0; i + 1 < bits; ++i) {
            std::uint32_t nx = fresh();
            tr.emplace_back(at, nm[i], nx);
            at = nx;
          }
          tr.emplace_back(at, nm[bits - 1], end);
        }
        cur = end;
      }
    return std::make_pair(start, cur);
  };
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> cg(4);
  for (std::uint32_t r = 0; r < 4; ++r)
    for (const auto& c : C) cg[r].push_back(gadget(c));

  for (Sym s = 0; s < alpha.size; ++s) {
    tr.emplace_back(s0, s, s0);
    tr.emplace_back(tacc, s, tacc);
  }
  if (m > 0) tr.emplace_back(s0, kDollar, 1);
  for (std::uint32_t i = 1; i <= m; ++i) {
    const std::uint32_t si = i, ti = m + i;
    tr.emplace_back(si, 0, si);
    tr.emplace_back(si, 1, si);
    tr.emplace_back(si, kHash, cg[0][i - 1].first);
    if (i < m) tr.emplace_back(si, kHash, si + 1);
    for (std::uint32_t r = 0; r + 1 < 4; ++r)
      for (std::uint32_t j = 1; j <= m; ++j)
        if (compatible(g, C[i - 1], C[j - 1])) tr.emplace_back(cg[r][i - 1].second, kHash, cg[r + 1][j - 1].first);
    tr.emplace_back(cg[3][i - 1].second, kHash, ti);
    tr.emplace_back(ti, 0, ti);
    tr.emplace_back(ti, 1, ti);
    if (i < m) tr.emplace_back(ti, kHash, ti + 1);
  }
  if (m > 0) tr.emplace_back(2 * m, kDollar, tacc);
  q += opt.pad_states;
  Nfa nfa = Nfa::make(q, alpha.size, s0, {tacc}, tr);

  GeneratedInstance out;
  out.reduction = "nfa-clique";
  out.payload.slps.emplace("text", sb.build(T));
  out.payload.automaton = std::move(nfa);
  out.expected.answer = detail::source_answer([&] { return solve_source(g, 3 * kappa + kappa2, opt.caps); }, opt);
  prov(out, "source_digest", detail::digest(emit_source(g)));
  prov(out, "V", g.V);
  prov(out, "kappa", kappa);
  prov(out, "kappa2", kappa2);
  prov(out, "k", 3 * kappa + kappa2);
  prov(out, "name_bits", bits);
  prov(out, "m", m);
  prov(out, "n", out.payload.slps.at("text").size());
  prov(out, "q", q);
  finish(out, out.payload.slps.at("text").length(), opt);
  return out;
}

// ---- wildcard pattern matching from k-OV
//
// T = concat over k2-tuples (lex) of 1^(A^k1) tuplify(A, k1, AND of the tuple)
// P = 0 (*^(A^k1 - 1) 0)^(d-1)

GeneratedInstance gen_wildcard_pm_from_kov(const KovInstance& inst, std::uint32_t k1, std::uint32_t k2,
                                           const GenOptions& opt) {
  inst.validate();
  if (k1 == 0 || k2 == 0 || k1 + k2 != inst.k)
    fail(Errc::InvalidArgument, "wpm-kov: need k1, k2 >= 1 with k1 + k2 = k");
  const std::uint64_t A = inst.A.size(), K1 = ipow(A, k1), K2 = ipow(A, k2);
  const std::uint32_t d = inst.d;

  SlpBuilder tb(Alphabet::of("01"));
  const std::uint32_t zero = tb.term(0), one = tb.term(1);
  const std::uint32_t ones = tb.pow(one, K1);
  std::vector<std::uint32_t> blocks;
  if (detail::padded(opt)) blocks.push_back(detail::pad_prefix(tb, 1, opt));
  for (std::uint64_t idx = 0; idx < K2; ++idx) {
    BitVec b(d, 1);
    for (auto i : detail::tuple_of(idx, static_cast<std::uint32_t>(A), k2))
      for (std::uint32_t l = 0; l < d; ++l) b[l] &= inst.A[i][l];
    blocks.push_back(tb.cat(ones, tuplify_into(tb, inst.A, d, k1, b, zero, one)));
  }
  Slp T = tb.build(tb.cat(blocks));

  SlpBuilder pb(Alphabet::of("01*"));
  std::uint32_t pz = pb.term(0);
  std::uint32_t gap = pb.cat(pb.pow(pb.term(2), K1 - 1), pz);
  Slp P = pb.build(pb.cat(pz, pb.pow(gap, d - 1)));

  GeneratedInstance g;
  g.reduction = "wpm-kov";
  g.payload.slps.emplace("text", std::move(T));
  g.payload.slps.emplace("pattern", std::move(P));
  g.expected.answer = detail::source_answer([&] { return solve_source(inst, opt.caps); }, opt);
  prov(g, "source_digest", detail::digest(emit_source(inst)));
  prov(g, "A", A);
  prov(g, "d", d);
  prov(g, "k1", k1);
  prov(g, "k2", k2);
  prov(g, "n_text", g.payload.slps.at("text").size());
  prov(g, "n_pattern", g.payload.slps.at("pattern").size());
  prov(g, "M", g.payload.slps.at("pattern").length());
  finish(g, g.payload.slps.at("text").length(), opt);
  return g;
}

// ---- substring Hamming distance

Str hd_text_gadget(Sym y) {
  if (y > 1) fail(Errc::InvalidArgument, "text gadget symbol must be 0/1");
  return y == 0 ? Str{1, 0, 0, 2, 3, 4} : Str{0, 1, 0, 2, 3, 4};
}

Str hd_pattern_gadget(Sym x) {
  switch (x) {
    case 0: return {1, 0, 1, 2, 3, 4};
    case 1: return {0, 1, 1, 2, 3, 4};
    case 2: return {0, 0, 0, 2, 3, 4};
    default: fail(Errc::InvalidArgument, "pattern gadget symbol must be 0, 1 or the wildcard");
  }
}

namespace {

std::pair<Slp, Slp> hd_substitute(const Slp& T, const Slp& P) {
  for (const Rule& r : T.rules())
    if (r.terminal() && r.sym() > 1) fail(Errc::NonBinaryAlphabet, "substring HD: text must be binary");
  auto w = P.alphabet().find("*");
  std::vector<Str> pimg(P.alphabet().size, hd_pattern_gadget(2));
  for (Sym s = 0; s < P.alphabet().size; ++s) {
    if (w && s == *w) continue;
    bool used = std::any_of(P.rules().begin(), P.rules().end(), [&](const Rule& r) { return r.terminal() && r.sym() == s; });
    if (s > 1 && used) fail(Errc::AlphabetMismatch, "substring HD: pattern symbol other than 0, 1, *");
    if (s <= 1) pimg[s] = hd_pattern_gadget(s);
  }
  std::vector<Str> timg(T.alphabet().size, hd_text_gadget(0));
  if (timg.size() > 1) timg[1] = hd_text_gadget(1);
  Alphabet out = Alphabet::of("01234");
  return {substitute(T, timg, out), substitute(P, pimg, out)};
}

}  // namespace

GeneratedInstance pm_to_substring_hd(const Slp& T, const Slp& P, std::optional<bool> answer) {
  auto [t, p] = hd_substitute(T, P);
  GeneratedInstance g;
  g.reduction = "shd-kov";
  g.expected.threshold_form = true;
  g.expected.threshold = P.length();
  g.expected.cmp = Cmp::Le;
  g.expected.answer = answer ? answer : std::optional<bool>(wildcard_match(T, P));
  g.payload.slps.emplace("text", std::move(t));
  g.payload.slps.emplace("pattern", std::move(p));
  prov(g, "M", P.length());
  return g;
}

GeneratedInstance gen_substring_hd_from_kov(const KovInstance& inst, std::uint32_t k1, std::uint32_t k2,
                                            const GenOptions& opt) {
  GeneratedInstance w = gen_wildcard_pm_from_kov(inst, k1, k2, opt);
  auto [t, p] = hd_substitute(w.payload.slps.at("text"), w.payload.slps.at("pattern"));
  GeneratedInstance g;
  g.reduction = "shd-kov";
  g.expected.threshold_form = true;
  g.expected.threshold = w.payload.slps.at("pattern").length();
  g.expected.cmp = Cmp::Le;
  g.expected.answer = w.expected.answer;
  const std::uint64_t N = t.length();
  g.payload.slps.emplace("text", std::move(t));
  g.payload.slps.emplace("pattern", std::move(p));
  for (const auto& [k, v] : w.provenance)
    if (k != "N" && k != "certified" && k != "n_text" && k != "n_pattern") g.provenance.emplace_back(k, v);
  prov(g, "n_text", g.payload.slps.at("text").size());
  prov(g, "n_pattern", g.payload.slps.at("pattern").size());
  finish(g, N, opt);
  return g;
}

}  // namespace slpkit
