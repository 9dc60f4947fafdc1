#include <algorithm>

#include "hardness_util.hpp"

namespace slpkit {

using detail::finish;
using detail::ipow;
using detail::prov;

namespace {

bool in_tuple(const std::vector<std::uint32_t>& u, std::uint32_t v) { return std::find(u.begin(), u.end(), v) != u.end(); }

}  // namespace

Slp clique_incl(std::uint32_t V, std::uint32_t d, const std::vector<std::uint32_t>& S) {
  Graph g;
  g.V = V;
  std::vector<std::uint32_t> s = S;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (auto v : s)
    if (v >= V) fail(Errc::InvalidArgument, "incl: vertex out of range");
  SlpBuilder sb(Alphabet::of("01"));
  detail::TupleSlps ts(sb, g, sb.term(0), sb.term(1));
  return sb.build(ts.incl(s, d));
}

Slp clique_adj(const Graph& g, std::uint32_t d, std::uint32_t v) {
  if (v >= g.V) fail(Errc::InvalidArgument, "adj: vertex out of range");
  SlpBuilder sb(Alphabet::of("01"));
  detail::TupleSlps ts(sb, g, sb.term(0), sb.term(1));
  return sb.build(ts.adj(v, d));
}

// ---- CFG parsing from 3k-clique
//
// The text is x^P T_C T_B T_B T_B' y^P T_C T_B T_B' T_B' T_C z^P with
// P = V^k. T_C rows are the tuple tests (non-edges, and for k >= 2 the
// repeated-vertex rows); T_B rows list membership, T_B' (reversed) adjacency.

GeneratedInstance gen_cfg_from_clique(const Graph& g, std::uint32_t k, const GenOptions& opt) {
  g.validate();
  if (k == 0 || g.V == 0) fail(Errc::InvalidArgument, "cfg-clique: need k >= 1 and V >= 1");
  const bool pad = detail::padded(opt);
  const Alphabet alpha = Alphabet::of(pad ? "01#$xyz_" : "01#$xyz");
  const Sym k0 = 0, k1 = 1, kH = 2, kD = 3, kx = 4, ky = 5, kz = 6, kPad = 7;
  const std::uint64_t P = ipow(g.V, k);

  SlpBuilder sb(alpha);
  detail::TupleSlps ts(sb, g, sb.term(k0), sb.term(k1));
  const std::uint32_t rD = sb.pow(sb.term(kD), P), rH = sb.pow(sb.term(kH), P);
  std::vector<std::uint32_t> rows;
  rows.push_back(rD);
  for (auto e : detail::clique_test_pairs(g, k)) rows.push_back(detail::test_pair_row(ts, e, k));
  rows.push_back(rD);
  const std::uint32_t TC = sb.cat(rows);
  rows = {rH};
  for (std::uint32_t v = 0; v < g.V; ++v) rows.push_back(ts.incl({v}, k));
  rows.push_back(rH);
  const std::uint32_t TB = sb.cat(rows);
  rows = {rH};
  for (std::uint32_t v = g.V; v-- > 0;) rows.push_back(ts.adj(v, k));
  rows.push_back(rH);
  const std::uint32_t TB2 = sb.cat(rows);
  std::uint32_t T = sb.cat({sb.pow(sb.term(kx), P), TC, TB, TB, TB2, sb.pow(sb.term(ky), P), TC, TB, TB2, TB2, TC,
                            sb.pow(sb.term(kz), P)});
  if (pad) T = sb.cat(detail::pad_prefix(sb, kPad, opt), T);

  Cfg G;
  G.terminals = alpha;
  const std::uint32_t S = G.add_nt("S");
  G.start = S;
  const std::uint32_t X = G.add_nt("X");
  // X derives exactly the strings of length P - 1 over the 7 real terminals
  const std::uint64_t pm1 = P - 1;
  std::uint32_t top = 0;
  while (top < 63 && (pm1 >> (top + 1)) != 0) ++top;
  std::vector<std::uint32_t> Xd;
  for (std::uint32_t d = 0; d <= top; ++d) Xd.push_back(G.add_nt("X" + std::to_string(d)));
  for (Sym s = 0; s < 7; ++s) G.add(Xd[0], {Cfg::T(s)});
  for (std::uint32_t d = 1; d <= top; ++d) G.add(Xd[d], {Cfg::N(Xd[d - 1]), Cfg::N(Xd[d - 1])});
  std::vector<GSym> xr;
  for (std::uint32_t d = 0; d <= top; ++d)
    if ((pm1 >> d) & 1) xr.push_back(Cfg::N(Xd[d]));
  G.add(X, xr);  // empty when P = 1
  const std::uint32_t C = G.add_nt("C"), Ct = G.add_nt("Ct");
  G.add(C, {Cfg::T(kD), Cfg::N(X), Cfg::N(Ct)});
  G.add(Ct, {Cfg::T(k0), Cfg::N(X), Cfg::N(Ct)});
  G.add(Ct, {Cfg::T(kD)});
  auto bgroup = [&](const std::string& pre, std::uint32_t out) {
    const std::uint32_t Bin = G.add_nt(pre + "Bin"), B = G.add_nt(pre + "B");
    G.add(Bin, {Cfg::T(kH), Cfg::N(X), Cfg::N(B), Cfg::N(X), Cfg::T(kH)});
    for (auto [l, r] : {std::pair{k1, k1}, {k0, k1}, {k0, k0}})
      G.add(B, {Cfg::T(l), Cfg::N(X), Cfg::N(B), Cfg::N(X), Cfg::T(r)});
    G.add(B, {Cfg::T(kH), Cfg::N(out), Cfg::T(kH)});
    return Bin;
  };
  const std::uint32_t tBout = G.add_nt("tBout");
  G.add(tBout, {Cfg::T(kH), Cfg::N(tBout)});
  G.add(tBout, {});
  const std::uint32_t tBin = bgroup("t", tBout);
  const std::uint32_t Bout = G.add_nt("Bout");
  const std::uint32_t Bin = bgroup("", Bout);
  G.add(Bout, {Cfg::N(X), Cfg::N(tBin), Cfg::N(X), Cfg::T(ky), Cfg::N(X), Cfg::N(C), Cfg::N(X), Cfg::N(tBin), Cfg::N(X)});
  G.add(S, {Cfg::T(kx), Cfg::N(S)});
  G.add(S, {Cfg::N(S), Cfg::T(kz)});
  G.add(S, {Cfg::N(X), Cfg::N(C), Cfg::N(X), Cfg::N(Bin), Cfg::N(X), Cfg::N(C), Cfg::N(X)});
  if (pad) {
    const std::uint32_t S0 = G.add_nt("S0");
    G.add(S0, {Cfg::T(kPad), Cfg::N(S0)});
    G.add(S0, {Cfg::N(S)});
    G.start = S0;
  }
  G.validate();

  GeneratedInstance out;
  out.reduction = "cfg-clique";
  out.payload.slps.emplace("text", sb.build(T));
  out.payload.grammar = std::move(G);
  out.expected.answer = detail::source_answer([&] { return solve_source(g, 3 * k, opt.caps); }, opt);
  prov(out, "source_digest", detail::digest(emit_source(g)));
  prov(out, "V", g.V);
  prov(out, "k", k);
  prov(out, "clique_size", 3 * k);
  prov(out, "n", out.payload.slps.at("text").size());
  prov(out, "grammar_size", out.payload.grammar->size());
  finish(out, out.payload.slps.at("text").length(), opt);
  return out;
}

// ---- RNA folding

GuardResult rna_guard(const std::vector<std::vector<Str>>& grid, const PairedAlphabet& pa, std::uint64_t W) {
  pa.validate();
  if (grid.empty() || grid[0].empty()) fail(Errc::InvalidArgument, "guard: empty grid");
  const std::uint64_t A = grid.size(), B = grid[0].size();
  std::uint64_t wmax = 1;
  for (const auto& row : grid) {
    if (row.size() != B) fail(Errc::InvalidArgument, "guard: ragged grid");
    for (const auto& cell : row) {
      std::uint64_t w = 0;
      for (Sym s : cell) {
        if (s >= pa.base.size) fail(Errc::SymbolOutOfRange, "guard: cell symbol outside the alphabet");
        w = checked_add(w, pa.weight[s]);
      }
      wmax = std::max(wmax, w);
    }
  }
  std::vector<bool> seen(pa.base.size, false);
  for (const auto& row : grid)
    for (const auto& cell : row)
      for (Sym s : cell) seen[s] = true;
  for (Sym s = 0; s < pa.base.size; ++s)
    if (seen[s] && seen[pa.bar[s]]) fail(Errc::InvalidArgument, "guard: grid symbols must not match each other");
  if (W == 0) W = wmax;
  if (wmax > W) fail(Errc::WeightBoundViolated, "guard: cell weight " + std::to_string(wmax) + " exceeds W");

  GuardResult r;
  r.W = W;
  r.rho = checked_mul(checked_mul(checked_add(checked_mul(8, A), 12), A), checked_mul(B, W));
  const std::uint32_t n = pa.base.size;
  std::vector<std::string> glyphs;
  for (Sym s = 0; s < n; ++s) glyphs.push_back(pa.base.glyph(s));
  for (const char* gl : {"G5", "G5~", "G6", "G6~", "G7", "G7~"}) glyphs.emplace_back(gl);
  r.pa.base = Alphabet(n + 6, glyphs);
  r.pa.bar = pa.bar;
  r.pa.weight = pa.weight;
  const std::uint64_t w57 = checked_mul(checked_mul(4, A), W), w6 = 2 * w57;
  for (std::uint32_t i = 0; i < 3; ++i) {
    r.pa.bar.push_back(n + 2 * i + 1);
    r.pa.bar.push_back(n + 2 * i);
    std::uint64_t w = i == 1 ? w6 : w57;
    r.pa.weight.push_back(w);
    r.pa.weight.push_back(w);
  }
  r.pa.validate();
  const Sym s5 = n, b5 = n + 1, s6 = n + 2, b6 = n + 3, s7 = n + 4, b7 = n + 5;
  Str& t = r.text;
  auto rep = [&](std::initializer_list<Sym> unit, std::uint64_t times) {
    for (std::uint64_t i = 0; i < times; ++i) t.insert(t.end(), unit.begin(), unit.end());
  };
  rep({s5}, B);
  rep({s6, b5}, B);
  for (const auto& row : grid) {
    for (const auto& cell : row) {
      t.push_back(b6);
      t.insert(t.end(), cell.begin(), cell.end());
    }
    rep({s6}, B);
  }
  rep({b6}, B);
  rep({s7, s6}, B);
  rep({b7}, B);
  return r;
}

Sym rna_sym(std::uint32_t digit, bool bar, std::uint32_t copy) {
  if (digit > 7 || copy > 2) fail(Errc::InvalidArgument, "rna symbol out of range");
  return copy * 16 + digit * 2 + (bar ? 1 : 0);
}

PairedAlphabet rna_clique_alphabet(std::uint64_t A, std::uint64_t W) {
  PairedAlphabet pa;
  std::vector<std::string> g(48);
  pa.bar.resize(48);
  pa.weight.resize(48);
  for (std::uint32_t c = 0; c < 3; ++c)
    for (std::uint32_t dg = 0; dg < 8; ++dg)
      for (int b = 0; b < 2; ++b) {
        Sym s = rna_sym(dg, b, c);
        g[s] = std::to_string(dg) + (b ? "~" : "") + std::string(c, '\'');
        pa.bar[s] = s ^ 1;
        pa.weight[s] = dg < 5 ? 1 : (dg == 6 ? checked_mul(checked_mul(8, A), W) : checked_mul(checked_mul(4, A), W));
      }
  pa.base = Alphabet(48, std::move(g));
  pa.validate();
  return pa;
}

namespace {

std::vector<std::uint32_t> tuple_at(const Graph& g, std::uint32_t k, std::uint64_t i) {
  if (g.V == 0 || i >= ipow(g.V, k)) fail(Errc::InvalidArgument, "tuple index out of range");
  return detail::tuple_of(i, g.V, k);
}

}  // namespace

Str rna_r(const Graph& g, std::uint32_t k, std::uint64_t i, std::uint32_t copy) {
  auto u = tuple_at(g, k, i);
  Str s;
  for (auto [a, b] : detail::clique_test_pairs(g, k)) {
    bool hit = a == b ? std::count(u.begin(), u.end(), a) >= 2 : (in_tuple(u, a) && in_tuple(u, b));
    s.push_back(rna_sym(hit ? 0 : 1, true, copy));
  }
  return s;
}

Str rna_p(const Graph& g, std::uint32_t k, std::uint64_t i, std::uint32_t copy) {
  auto u = tuple_at(g, k, i);
  Str s;
  for (std::uint32_t v = 0; v < g.V; ++v) {
    s.push_back(rna_sym(2, false, copy));
    if (!in_tuple(u, v)) s.push_back(rna_sym(3, false, copy));
    s.push_back(rna_sym(4, false, copy));
  }
  return s;
}

Str rna_q(const Graph& g, std::uint32_t k, std::uint64_t i, std::uint32_t copy) {
  auto u = tuple_at(g, k, i);
  Str s;
  // mirrored so that the block of v nests against p's block of v
  for (std::uint32_t v = g.V; v-- > 0;) {
    bool all = std::all_of(u.begin(), u.end(), [&](std::uint32_t w) { return g.adjacent(v, w); });
    s.push_back(rna_sym(4, true, copy));
    s.push_back(rna_sym(all ? 2 : 3, true, copy));
  }
  return s;
}

// Three guarded grids x, y, z over copies 0, 1, 2 of the digits:
// x rows r, p, p'; y rows r', q', p''; z rows r'', q'', q.
GeneratedInstance gen_rna_from_clique(const Graph& g, std::uint32_t k, const GenOptions& opt) {
  g.validate();
  if (k == 0 || g.V == 0) fail(Errc::InvalidArgument, "rna-clique: need k >= 1 and V >= 1");
  const auto pairs = detail::clique_test_pairs(g, k);
  const std::uint64_t E = pairs.size(), V = g.V, A = E + 2 * V, B = ipow(g.V, k), W = 3;
  const PairedAlphabet pa = rna_clique_alphabet(A, W);
  const std::uint64_t rho = checked_mul(checked_mul(checked_add(checked_mul(8, A), 12), A), checked_mul(B, W));

  SlpBuilder sb(pa.base);
  auto t = [&](std::uint32_t dg, bool bar, std::uint32_t c) { return sb.term(rna_sym(dg, bar, c)); };
  auto seq = [&](std::initializer_list<std::uint32_t> hs) { return sb.cat(hs); };
  struct Fam {
    std::unique_ptr<detail::TupleSlps> r, p, q;
  };
  // fam[c][cc]: cells over digit copy cc inside the guard of copy c
  Fam fam[3][3];
  auto make_fam = [&](std::uint32_t c, std::uint32_t cc) {
    Fam& f = fam[c][cc];
    if (f.r) return;
    const std::uint32_t b6 = t(6, true, c);
    // Incl = 1 means both endpoints are present: the bad bit 0~
    f.r = std::make_unique<detail::TupleSlps>(sb, g, seq({b6, t(1, true, cc)}), seq({b6, t(0, true, cc)}));
    f.p = std::make_unique<detail::TupleSlps>(sb, g, seq({b6, t(2, false, cc), t(3, false, cc), t(4, false, cc)}),
                                              seq({b6, t(2, false, cc), t(4, false, cc)}));
    f.q = std::make_unique<detail::TupleSlps>(sb, g, seq({b6, t(4, true, cc), t(3, true, cc)}),
                                              seq({b6, t(4, true, cc), t(2, true, cc)}));
  };
  enum Kind { R, Pk, Qk };
  // guard for copy c with row blocks (kind, copy)
  auto guard = [&](std::uint32_t c, std::initializer_list<std::pair<Kind, std::uint32_t>> blocks) {
    const std::uint32_t s6B = sb.pow(t(6, false, c), B);
    std::vector<std::uint32_t> parts{sb.pow(t(5, false, c), B), sb.pow(seq({t(6, false, c), t(5, true, c)}), B)};
    for (auto [kind, cc] : blocks) {
      make_fam(c, cc);
      Fam& f = fam[c][cc];
      if (kind == R)
        for (auto e : pairs) parts.push_back(sb.cat(detail::test_pair_row(*f.r, e, k), s6B));
      for (std::uint32_t i = 0; i < g.V && kind != R; ++i) {
        const std::uint32_t v = kind == Pk ? i : g.V - 1 - i;
        parts.push_back(sb.cat(kind == Pk ? f.p->incl({v}, k) : f.q->adj(v, k), s6B));
      }
    }
    parts.push_back(sb.pow(t(6, true, c), B));
    parts.push_back(sb.pow(seq({t(7, false, c), t(6, false, c)}), B));
    parts.push_back(sb.pow(t(7, true, c), B));
    return sb.cat(parts);
  };
  std::vector<std::uint32_t> top;
  if (detail::padded(opt)) top.push_back(detail::pad_prefix(sb, rna_sym(1, false, 0), opt));
  top.push_back(sb.pow(t(1, false, 0), E));
  top.push_back(guard(0, {{R, 0}, {Pk, 0}, {Pk, 1}}));
  top.push_back(sb.pow(t(1, false, 1), E));
  top.push_back(guard(1, {{R, 1}, {Qk, 1}, {Pk, 2}}));
  top.push_back(sb.pow(t(1, false, 2), E));
  top.push_back(guard(2, {{R, 2}, {Qk, 2}, {Qk, 0}}));
  Slp T = sb.build(sb.cat(top));

  std::uint64_t wlen = 0;
  {
    // expanded length, per rule
    std::vector<std::uint64_t> wl(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) {
      const Rule& r = T.rule(i);
      wl[i] = r.terminal() ? pa.weight[r.sym()] : checked_add(wl[r.left], wl[r.right]);
    }
    wlen = wl.back();
  }

  GeneratedInstance out;
  out.reduction = "rna-clique";
  out.expected.threshold_form = true;
  out.expected.threshold = checked_add(checked_mul(3, rho), 6 * V + 3 * E);
  out.expected.cmp = Cmp::Ge;
  out.expected.answer = detail::source_answer([&] { return solve_source(g, 3 * k, opt.caps); }, opt);
  out.payload.pairing = pa;
  prov(out, "source_digest", detail::digest(emit_source(g)));
  prov(out, "V", V);
  prov(out, "k", k);
  prov(out, "clique_size", 3 * k);
  prov(out, "test_rows", E);
  prov(out, "A", A);
  prov(out, "B", B);
  prov(out, "W", W);
  prov(out, "rho", rho);
  prov(out, "n", T.size());
  prov(out, "weighted_length", wlen);
  out.payload.slps.emplace("text", std::move(T));
  finish(out, wlen, opt);
  return out;
}

// ---- subsequence from 2h-clique

GeneratedInstance gen_subsequence_from_clique(const Graph& g, std::uint32_t k, const GenOptions& opt) {
  g.validate();
  if (k < 2 || k % 2) fail(Errc::InvalidArgument, "subseq-clique: k must be even and >= 2");
  const std::uint32_t h = k / 2;
  const auto C = g.cliques(h);
  if (C.empty()) fail(Errc::NoHalfClique, "graph has no clique of size " + std::to_string(h));
  const std::uint64_t Q = C.size();
  std::vector<std::string> glyphs;
  for (std::uint32_t v = 0; v < g.V; ++v) glyphs.push_back("v" + std::to_string(v));
  glyphs.emplace_back("#");
  glyphs.emplace_back("$");
  const bool pad = detail::padded(opt);
  if (pad) glyphs.emplace_back("_");
  const Sym kH = g.V, kD = g.V + 1, kPad = g.V + 2;
  SlpBuilder sb(Alphabet(static_cast<std::uint32_t>(glyphs.size()), glyphs));
  const std::uint32_t H = sb.term(kH), D = sb.term(kD);

  std::vector<std::uint32_t> cg, cgn;
  for (const auto& c : C) {
    std::vector<std::uint32_t> row;
    for (auto v : c) row.push_back(sb.term(v));
    row.push_back(H);
    cg.push_back(sb.pow(sb.cat(row), h));
    std::vector<std::uint32_t> nb;
    for (auto v : c) {
      for (auto w : g.neighbors(v)) nb.push_back(sb.term(w));
      nb.push_back(H);
    }
    cgn.push_back(sb.cat(nb));
  }
  std::vector<std::uint32_t> L;
  for (std::uint32_t v = 0; v < g.V; ++v) L.push_back(sb.term(v));
  L.push_back(H);
  const std::uint32_t Z = sb.pow(sb.cat(L), h);

  std::vector<std::uint32_t> pp;
  for (auto x : cg) pp.push_back(sb.cat(x, D));
  std::uint32_t P = sb.pow(sb.cat(pp), Q);
  std::vector<std::uint32_t> tp;
  for (std::uint64_t j = 0; j + 1 < Q; ++j) tp.push_back(sb.pow(sb.cat({cgn[j], D, Z, D}), Q));
  tp.push_back(sb.pow(sb.cat({cgn[Q - 1], D, Z, D}), Q - 1));
  tp.push_back(sb.cat(cgn[Q - 1], D));
  std::uint32_t T = sb.cat(tp);
  if (pad) {
    std::uint32_t pre = detail::pad_prefix(sb, kPad, opt);
    P = sb.cat(pre, P);
    T = sb.cat(pre, T);
  }
  GeneratedInstance out;
  out.reduction = "subseq-clique";
  out.payload.slps.emplace("pattern", sb.build(P));
  out.payload.slps.emplace("text", sb.build(T));
  out.expected.answer = detail::source_answer([&] { return solve_source(g, k, opt.caps); }, opt);
  prov(out, "source_digest", detail::digest(emit_source(g)));
  prov(out, "V", g.V);
  prov(out, "k", k);
  prov(out, "Q", Q);
  prov(out, "n_text", out.payload.slps.at("text").size());
  prov(out, "n_pattern", out.payload.slps.at("pattern").size());
  finish(out, out.payload.slps.at("text").length(), opt);
  return out;
}

// ---- disjointness from k-SUM
//
// Arity 2k+1. Values and target are scaled by s = k(k+1) so that t/k and
// R k/(k+1) are integers. P places S_k (sums of k values of B) in blocks of
// R' r^k; T places Y_k (sums of k values of C, over a base of all of C).

GeneratedInstance gen_disjointness_from_ksum(const KsumInstance& inst, std::uint32_t k, const GenOptions& opt) {
  inst.validate();
  if (k == 0 || inst.k_arity != 2 * k + 1) fail(Errc::InvalidArgument, "disj-ksum: arity must be 2k + 1");
  if (inst.t < 0) fail(Errc::InvalidArgument, "disj-ksum: negative target");
  const std::uint64_t s = std::uint64_t{k} * (k + 1);
  const std::uint64_t Rs = checked_mul(static_cast<std::uint64_t>(inst.bound()), s);
  const std::uint64_t ts = checked_mul(static_cast<std::uint64_t>(inst.t), s);
  std::vector<std::int64_t> z = inst.Z;
  std::sort(z.begin(), z.end());
  std::vector<std::uint64_t> Bv, Cv;
  for (auto a : z) {
    const std::uint64_t as = static_cast<std::uint64_t>(a) * s;
    Bv.push_back(ts / k + Rs - as);
    Cv.push_back(Rs / (k + 1) * k + as);
  }
  std::sort(Bv.begin(), Bv.end());
  std::sort(Cv.begin(), Cv.end());
  const std::uint64_t mx = std::max(Bv.back(), Cv.back());
  const std::uint64_t Rp = std::max(checked_mul(2, Rs), checked_add(checked_mul(10ULL * k, mx), 1));
  const std::uint64_t r = z.size();
  const std::uint64_t rk = ipow(r, k);
  const std::uint64_t N = checked_mul(Rp, ipow(r, 2 * k));

  SlpBuilder sb(Alphabet::of("01"));
  detail::Runs zeros(sb);
  const std::uint32_t one = sb.term(1);
  auto spread = [&](std::uint32_t inner, const std::vector<std::uint64_t>& vals, std::uint64_t block) {
    std::vector<std::uint32_t> parts;
    const std::uint64_t len = sb.len(inner);
    for (std::size_t w = 0; w < vals.size(); ++w) {
      parts.push_back(zeros(0, vals[w]));
      parts.push_back(inner);
      if (w + 1 < vals.size()) parts.push_back(zeros(0, block - vals[w] - len));
    }
    return sb.cat(parts);
  };
  // pattern
  std::uint32_t Si = one;
  std::uint64_t blk = Rp;  // R' r^(i-1)
  for (std::uint32_t i = 1; i <= k; ++i) {
    Si = spread(Si, Bv, blk);
    if (i < k) blk = checked_mul(blk, r);
  }
  const std::uint64_t Sblock = checked_mul(Rp, rk);
  std::uint32_t S = sb.cat(Si, zeros(0, Sblock - sb.len(Si)));
  std::uint32_t P = sb.pow(S, rk);
  // text
  std::vector<std::uint32_t> yp;
  std::uint64_t prev = 0;
  for (std::size_t i = 0; i < Cv.size(); ++i) {
    if (i > 0 && Cv[i] == Cv[i - 1]) continue;
    yp.push_back(zeros(0, Cv[i] - prev));
    yp.push_back(one);
    prev = Cv[i] + 1;
  }
  const std::uint32_t Yp = sb.cat(yp);
  std::uint32_t Y = sb.cat(sb.pow(sb.cat(Yp, zeros(0, Rp - sb.len(Yp))), rk - 1), Yp);
  blk = checked_mul(Rp, rk);  // R' r^(k+i-1)
  for (std::uint32_t i = 1; i <= k; ++i) {
    Y = spread(Y, Cv, blk);
    if (i < k) blk = checked_mul(blk, r);
  }
  std::uint32_t T = sb.cat(Y, zeros(0, N - sb.len(Y)));
  if (detail::padded(opt)) {
    std::uint32_t pre = detail::pad_prefix(sb, 0, opt);
    P = sb.cat(pre, P);
    T = sb.cat(pre, T);
  }
  GeneratedInstance out;
  out.reduction = "disj-ksum";
  out.payload.slps.emplace("pattern", sb.build(P));
  out.payload.slps.emplace("text", sb.build(T));
  if (out.payload.slps.at("pattern").length() != out.payload.slps.at("text").length())
    fail(Errc::UnequalLength, "disj-ksum: internal length mismatch");
  out.expected.answer = detail::source_answer([&] { return solve_source(inst, opt.caps); }, opt);
  prov(out, "source_digest", detail::digest(emit_source(inst)));
  prov(out, "k", k);
  prov(out, "r", r);
  prov(out, "scale", s);
  prov(out, "R_scaled", Rs);
  prov(out, "R_prime", Rp);
  prov(out, "n_text", out.payload.slps.at("text").size());
  prov(out, "n_pattern", out.payload.slps.at("pattern").size());
  finish(out, out.payload.slps.at("text").length(), opt);
  return out;
}

namespace {

GeneratedInstance recompose(const GeneratedInstance& d, std::string name, Slp P, Slp T, const GenOptions& opt) {
  GeneratedInstance g;
  g.reduction = std::move(name);
  g.expected = d.expected;
  for (const auto& [k, v] : d.provenance)
    if (k != "N" && k != "certified" && k != "n_text" && k != "n_pattern") g.provenance.emplace_back(k, v);
  const std::uint64_t N = T.length();
  prov(g, "n_text", T.size());
  prov(g, "n_pattern", P.size());
  g.payload.slps.emplace("pattern", std::move(P));
  g.payload.slps.emplace("text", std::move(T));
  finish(g, N, opt);
  return g;
}

}  // namespace

GeneratedInstance gen_subsequence_from_ksum(const KsumInstance& inst, std::uint32_t k, const GenOptions& opt) {
  GeneratedInstance d = gen_disjointness_from_ksum(inst, k, opt);
  auto [p, t] = disj_to_subsequence(d.payload.slps.at("pattern"), d.payload.slps.at("text"));
  return recompose(d, "subseq-ksum", std::move(p), std::move(t), opt);
}

GeneratedInstance gen_hamming_from_ksum(const KsumInstance& inst, std::uint32_t k, const GenOptions& opt) {
  GeneratedInstance d = gen_disjointness_from_ksum(inst, k, opt);
  auto [p, t, n] = disj_to_hamming(d.payload.slps.at("pattern"), d.payload.slps.at("text"));
  GeneratedInstance g = recompose(d, "hamming-ksum", std::move(p), std::move(t), opt);
  g.expected.threshold_form = true;
  g.expected.threshold = n + 1;
  g.expected.cmp = Cmp::Ge;
  return g;
}

}  // namespace slpkit
