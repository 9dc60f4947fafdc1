#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "hardness_util.hpp"
#include "slpkit/matching.hpp"

namespace slpkit {

using detail::ipow;

// ---- source types

void OvInstance::validate() const {
  if (d == 0) fail(Errc::InvalidArgument, "ov: d must be >= 1");
  if (A.empty() || B.empty()) fail(Errc::InvalidArgument, "ov: both vector sets must be nonempty");
  for (const auto* set : {&A, &B})
    for (const auto& v : *set) {
      if (v.size() != d) fail(Errc::InvalidArgument, "ov: vector of length " + std::to_string(v.size()) + ", want d");
      for (auto x : v)
        if (x > 1) fail(Errc::InvalidArgument, "ov: entries must be 0/1");
    }
}

void KovInstance::validate() const {
  if (d == 0) fail(Errc::InvalidArgument, "kov: d must be >= 1");
  if (k == 0) fail(Errc::InvalidArgument, "kov: k must be >= 1");
  if (A.empty()) fail(Errc::InvalidArgument, "kov: empty vector set");
  for (const auto& v : A) {
    if (v.size() != d) fail(Errc::InvalidArgument, "kov: vector of length " + std::to_string(v.size()) + ", want d");
    for (auto x : v)
      if (x > 1) fail(Errc::InvalidArgument, "kov: entries must be 0/1");
  }
}

Graph Graph::make(std::uint32_t V, std::vector<std::pair<std::uint32_t, std::uint32_t>> edges) {
  Graph g;
  g.V = V;
  for (auto& [u, v] : edges) {
    if (u == v) fail(Errc::InvalidArgument, "graph: self-loop");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.edges = std::move(edges);
  g.validate();
  return g;
}

void Graph::validate() const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto [u, v] = edges[i];
    if (u >= v || v >= V) fail(Errc::InvalidArgument, "graph: bad edge");
    if (i > 0 && !(edges[i - 1] < edges[i])) fail(Errc::InvalidArgument, "graph: edges not sorted/unique");
  }
}

bool Graph::adjacent(std::uint32_t u, std::uint32_t v) const {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> Graph::non_edges() const {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t u = 0; u < V; ++u)
    for (std::uint32_t v = u + 1; v < V; ++v)
      if (!adjacent(u, v)) out.emplace_back(u, v);
  return out;
}

std::vector<std::uint32_t> Graph::neighbors(std::uint32_t v) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t u = 0; u < V; ++u)
    if (adjacent(u, v)) out.push_back(u);
  return out;
}

std::vector<std::vector<std::uint32_t>> Graph::cliques(std::uint32_t c, std::uint64_t cap) const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t from) {
    if (cur.size() == c) {
      if (out.size() >= cap) fail(Errc::TooLarge, "clique list exceeds cap");
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = from; v < V; ++v) {
      bool ok = true;
      for (auto u : cur) ok = ok && adjacent(u, v);
      if (!ok) continue;
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

void KsumInstance::validate() const {
  if (Z.empty()) fail(Errc::InvalidArgument, "ksum: empty set");
  if (k_arity < 1) fail(Errc::InvalidArgument, "ksum: arity must be >= 1");
  for (auto z : Z)
    if (z < 0) fail(Errc::InvalidArgument, "ksum: values must be >= 0");
  std::set<std::int64_t> seen(Z.begin(), Z.end());
  if (seen.size() != Z.size()) fail(Errc::InvalidArgument, "ksum: values must be distinct");
  if (R != 0 && R < *std::max_element(Z.begin(), Z.end())) fail(Errc::InvalidArgument, "ksum: R below max(Z)");
}

std::int64_t KsumInstance::bound() const {
  if (R != 0) return R;
  return Z.empty() ? 0 : *std::max_element(Z.begin(), Z.end());
}

// ---- brute-force solvers

bool solve_source(const OvInstance& s, const SolveCaps& caps) {
  s.validate();
  if (s.A.size() * s.B.size() > caps.max_tuples) fail(Errc::TooLarge, "ov: too many pairs to check");
  for (const auto& a : s.A)
    for (const auto& b : s.B) {
      bool orth = true;
      for (std::uint32_t l = 0; l < s.d && orth; ++l) orth = !(a[l] & b[l]);
      if (orth) return true;
    }
  return false;
}

bool solve_source(const KovInstance& s, const SolveCaps& caps) {
  s.validate();
  if (ipow(s.A.size(), s.k) > caps.max_tuples) fail(Errc::TooLarge, "kov: too many tuples to check");
  // DFS over tuples with the running coordinate-wise AND
  std::function<bool(std::uint32_t, const BitVec&)> rec = [&](std::uint32_t depth, const BitVec& acc) {
    if (std::all_of(acc.begin(), acc.end(), [](auto x) { return x == 0; })) return true;
    if (depth == s.k) return false;
    BitVec nxt(s.d);
    for (const auto& a : s.A) {
      for (std::uint32_t l = 0; l < s.d; ++l) nxt[l] = acc[l] & a[l];
      if (rec(depth + 1, nxt)) return true;
    }
    return false;
  };
  return rec(0, BitVec(s.d, 1));
}

bool solve_source(const Graph& g, std::uint32_t k, const SolveCaps& caps) {
  g.validate();
  if (g.V > caps.max_vertices) fail(Errc::TooLarge, "graph: more vertices than the solver cap");
  if (k == 0) return true;
  std::vector<std::uint32_t> cur;
  std::function<bool(std::uint32_t)> rec = [&](std::uint32_t from) {
    if (cur.size() == k) return true;
    for (std::uint32_t v = from; v < g.V; ++v) {
      bool ok = true;
      for (auto u : cur) ok = ok && g.adjacent(u, v);
      if (!ok) continue;
      cur.push_back(v);
      if (rec(v + 1)) return true;
      cur.pop_back();
    }
    return false;
  };
  return rec(0);
}

bool solve_source(const KsumInstance& s, const SolveCaps& caps) {
  s.validate();
  if (ipow(s.Z.size(), s.k_arity) > caps.max_tuples) fail(Errc::TooLarge, "ksum: too many tuples to check");
  std::vector<std::int64_t> z = s.Z;
  std::sort(z.begin(), z.end());
  // multisets in nondecreasing index order
  std::function<bool(std::size_t, std::uint32_t, std::int64_t)> rec = [&](std::size_t from, std::uint32_t left,
                                                                         std::int64_t sum) {
    if (left == 0) return sum == s.t;
    for (std::size_t i = from; i < z.size(); ++i) {
      if (sum + z[i] * static_cast<std::int64_t>(left) > s.t) break;
      if (rec(i, left - 1, sum + z[i])) return true;
    }
    return false;
  };
  return rec(0, s.k_arity, 0);
}

// ---- source text form

namespace {

std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream is{std::string(text)};
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

[[noreturn]] void serr(std::size_t ln, const std::string& m) {
  fail(Errc::ParseError, "source line " + std::to_string(ln) + ": " + m);
}

BitVec parse_bits(const std::string& s, std::size_t ln) {
  BitVec v;
  for (char c : s) {
    if (c == ' ' || c == '\t') continue;
    if (c != '0' && c != '1') serr(ln, "expected 0/1 digits");
    v.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return v;
}

std::string bits_str(const BitVec& v) {
  std::string s;
  for (auto x : v) s += static_cast<char>('0' + x);
  return s;
}

}  // namespace

Source parse_source(std::string_view text) {
  auto lines = lines_of(text);
  std::size_t i = 0;
  auto skip = [&] {
    while (i < lines.size() && (trim(lines[i]).empty() || trim(lines[i])[0] == '%')) ++i;
  };
  skip();
  if (i >= lines.size()) fail(Errc::ParseError, "empty source");
  std::istringstream hs(lines[i]);
  std::string kind;
  hs >> kind;
  std::size_t hl = ++i;
  auto header_int = [&](auto& v, const char* what) {
    if (!(hs >> v)) serr(hl, std::string("missing ") + what);
  };
  if (kind == "ov") {
    OvInstance s;
    header_int(s.d, "d");
    // A block, blank line(s), B block
    while (i < lines.size() && trim(lines[i]).empty()) ++i;
    int block = 0;
    bool in_block = false;
    for (; i < lines.size(); ++i) {
      std::string t = trim(lines[i]);
      if (!t.empty() && t[0] == '%') continue;
      if (t.empty()) {
        if (in_block) ++block;
        in_block = false;
        continue;
      }
      if (block > 1) serr(i + 1, "more than two vector blocks");
      in_block = true;
      (block == 0 ? s.A : s.B).push_back(parse_bits(t, i + 1));
    }
    s.validate();
    return s;
  }
  if (kind == "kov") {
    KovInstance s;
    header_int(s.d, "d");
    header_int(s.k, "k");
    for (; i < lines.size(); ++i) {
      std::string t = trim(lines[i]);
      if (t.empty() || t[0] == '%') continue;
      s.A.push_back(parse_bits(t, i + 1));
    }
    s.validate();
    return s;
  }
  if (kind == "graph") {
    std::uint32_t V = 0;
    header_int(V, "V");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
    for (; i < lines.size(); ++i) {
      std::string t = trim(lines[i]);
      if (t.empty() || t[0] == '%') continue;
      std::istringstream ls(t);
      std::uint32_t u, v;
      std::string extra;
      if (!(ls >> u >> v) || (ls >> extra)) serr(i + 1, "expected 'u v'");
      e.emplace_back(u, v);
    }
    return Graph::make(V, std::move(e));
  }
  if (kind == "ksum") {
    KsumInstance s;
    header_int(s.k_arity, "k");
    header_int(s.t, "t");
    std::int64_t R = 0;
    if (hs >> R) s.R = R;
    for (; i < lines.size(); ++i) {
      std::string t = trim(lines[i]);
      if (t.empty() || t[0] == '%') continue;
      std::istringstream ls(t);
      std::int64_t z;
      while (ls >> z) s.Z.push_back(z);
      if (!ls.eof()) serr(i + 1, "expected integers");
    }
    s.validate();
    return s;
  }
  serr(hl, "unknown source kind '" + kind + "'");
}

std::string emit_source(const Source& src) {
  std::ostringstream os;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, OvInstance>) {
          os << "ov " << s.d << '\n';
          for (const auto& a : s.A) os << bits_str(a) << '\n';
          os << '\n';
          for (const auto& b : s.B) os << bits_str(b) << '\n';
        } else if constexpr (std::is_same_v<T, KovInstance>) {
          os << "kov " << s.d << ' ' << s.k << '\n';
          for (const auto& a : s.A) os << bits_str(a) << '\n';
        } else if constexpr (std::is_same_v<T, Graph>) {
          os << "graph " << s.V << '\n';
          for (auto [u, v] : s.edges) os << u << ' ' << v << '\n';
        } else {
          os << "ksum " << s.k_arity << ' ' << s.t;
          if (s.R != 0) os << ' ' << s.R;
          os << '\n';
          for (auto z : s.Z) os << z << '\n';
        }
      },
      src);
  return os.str();
}

// ---- bundles

std::string GeneratedInstance::prov(const std::string& key) const {
  for (const auto& [k, v] : provenance)
    if (k == key) return v;
  return "";
}

std::string emit_expected(const Expected& e) {
  std::string ans = e.answer ? (*e.answer ? "yes" : "no") : "unknown";
  if (e.threshold_form)
    return "threshold " + std::to_string(e.threshold) + (e.cmp == Cmp::Le ? " le" : " ge") + "\nanswer " + ans + "\n";
  return std::string(e.answer ? (*e.answer ? "accept" : "reject") : "unknown") + "\n";
}

Expected parse_expected(std::string_view text) {
  std::istringstream is{std::string(text)};
  Expected e;
  std::string w;
  if (!(is >> w)) fail(Errc::ParseError, "expected: empty");
  if (w == "accept" || w == "reject" || w == "unknown") {
    if (w != "unknown") e.answer = (w == "accept");
    return e;
  }
  if (w != "threshold") fail(Errc::ParseError, "expected: unknown form '" + w + "'");
  e.threshold_form = true;
  std::string cmp, key, ans;
  if (!(is >> e.threshold >> cmp)) fail(Errc::ParseError, "expected: bad threshold line");
  if (cmp != "le" && cmp != "ge") fail(Errc::ParseError, "expected: comparison must be le/ge");
  e.cmp = cmp == "le" ? Cmp::Le : Cmp::Ge;
  if (is >> key) {
    if (key != "answer" || !(is >> ans)) fail(Errc::ParseError, "expected: bad answer line");
    if (ans == "yes") e.answer = true;
    else if (ans == "no") e.answer = false;
    else if (ans != "unknown") fail(Errc::ParseError, "expected: answer must be yes/no/unknown");
  }
  return e;
}

namespace {

std::string emit_alpha(const Alphabet& a) {
  std::string s = "alphabet " + std::to_string(a.size) + "\n";
  for (const auto& g : a.glyphs) {
    if (g.find_first_of(" \t\r\n") != std::string::npos) fail(Errc::InvalidArgument, "glyph contains whitespace");
    s += g + "\n";
  }
  return s;
}

Alphabet parse_alpha(std::string_view text) {
  auto lines = lines_of(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  std::istringstream hs(i < lines.size() ? lines[i] : "");
  std::string w;
  std::uint32_t n = 0;
  if (!(hs >> w >> n) || w != "alphabet") fail(Errc::ParseError, "alphabet file: missing 'alphabet N'");
  std::vector<std::string> g;
  for (++i; i < lines.size(); ++i) {
    std::string t = trim(lines[i]);
    if (!t.empty()) g.push_back(t);
  }
  if (g.empty()) return Alphabet(n);
  if (g.size() != n) fail(Errc::ParseError, "alphabet file: glyph count differs from size");
  return Alphabet(n, std::move(g));
}

void put(const std::filesystem::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::binary);
  if (!os) fail(Errc::InvalidArgument, "cannot write " + p.string());
  os << s;
}

std::string get(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) fail(Errc::InvalidArgument, "cannot read " + p.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

void write_bundle(const std::filesystem::path& dir, const GeneratedInstance& g) {
  std::filesystem::create_directories(dir);
  for (const auto& [name, s] : g.payload.slps) {
    put(dir / ("payload." + name + ".slp"), emit_slp(s));
    put(dir / ("payload." + name + ".alpha"), emit_alpha(s.alphabet()));
  }
  if (g.payload.automaton) put(dir / "payload.automaton", emit_automaton(*g.payload.automaton));
  if (g.payload.grammar) {
    put(dir / "payload.grammar", emit_grammar(*g.payload.grammar));
    put(dir / "payload.grammar.alpha", emit_alpha(g.payload.grammar->terminals));
  }
  if (g.payload.pairing) put(dir / "payload.pairing", emit_pairing(*g.payload.pairing));
  put(dir / "expected.txt", emit_expected(g.expected));
  std::string pv = "reduction=" + g.reduction + "\n";
  for (const auto& [k, v] : g.provenance) pv += k + "=" + v + "\n";
  put(dir / "provenance.txt", pv);
}

GeneratedInstance read_bundle(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) fail(Errc::InvalidArgument, "not a bundle directory: " + dir.string());
  GeneratedInstance g;
  for (const auto& ent : std::filesystem::directory_iterator(dir)) {
    std::string fn = ent.path().filename().string();
    const std::string pre = "payload.", suf = ".slp";
    if (fn.size() > pre.size() + suf.size() && fn.compare(0, pre.size(), pre) == 0 &&
        fn.compare(fn.size() - suf.size(), suf.size(), suf) == 0) {
      std::string name = fn.substr(pre.size(), fn.size() - pre.size() - suf.size());
      Alphabet a = parse_alpha(get(dir / ("payload." + name + ".alpha")));
      g.payload.slps.emplace(name, parse_slp(get(ent.path()), &a));
    }
  }
  if (std::filesystem::exists(dir / "payload.automaton"))
    g.payload.automaton = parse_automaton(get(dir / "payload.automaton"));
  if (std::filesystem::exists(dir / "payload.grammar")) {
    Alphabet a = parse_alpha(get(dir / "payload.grammar.alpha"));
    g.payload.grammar = parse_grammar(get(dir / "payload.grammar"), a);
  }
  if (std::filesystem::exists(dir / "payload.pairing")) {
    g.payload.pairing = parse_pairing(get(dir / "payload.pairing"));
    auto t = g.payload.slps.find("text");
    if (t != g.payload.slps.end() && !(t->second.alphabet() == g.payload.pairing->base))
      fail(Errc::AlphabetMismatch, "pairing and text alphabets differ");
  }
  g.expected = parse_expected(get(dir / "expected.txt"));
  for (const auto& line : lines_of(get(dir / "provenance.txt"))) {
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    std::string k = line.substr(0, eq), v = line.substr(eq + 1);
    if (k == "reduction")
      g.reduction = v;
    else
      g.provenance.emplace_back(k, v);
  }
  if (g.reduction.empty()) fail(Errc::ParseError, "bundle provenance lacks a reduction name");
  return g;
}

// ---- tuplify
//
// Test_l = P0^(k) when b[l] = 0, else List_l^(1), with
// List^(j) = concat_i (a_i[l] = 0 ? P0^(k-j) : List^(j+1)), List^(k+1) = S1,
// P0^(j) = (P0^(j-1))^|A|, P0^(0) = S0.

std::uint32_t tuplify_into(SlpBuilder& sb, const std::vector<BitVec>& A, std::uint32_t d, std::uint32_t k, const BitVec& b,
                           std::uint32_t s0, std::uint32_t s1) {
  if (A.empty() || k == 0) fail(Errc::InvalidArgument, "tuplify: need k >= 1 and a nonempty set");
  if (b.size() != d) fail(Errc::InvalidArgument, "tuplify: b has the wrong length");
  if (sb.len(s0) != sb.len(s1)) fail(Errc::UnequalLength, "tuplify: S0 and S1 differ in length");
  std::vector<std::uint32_t> p0(k + 1);
  p0[0] = s0;
  for (std::uint32_t j = 1; j <= k; ++j) p0[j] = sb.pow(p0[j - 1], A.size());
  std::vector<std::uint32_t> tests;
  for (std::uint32_t l = 0; l < d; ++l) {
    if (!b[l]) {
      tests.push_back(p0[k]);
      continue;
    }
    std::uint32_t list = s1;  // List^(k+1)
    for (std::uint32_t j = k; j >= 1; --j) {
      std::vector<std::uint32_t> parts;
      for (const auto& a : A) parts.push_back(a[l] ? list : p0[k - j]);
      list = sb.cat(parts);
    }
    tests.push_back(list);
  }
  return sb.cat(tests);
}

Slp tuplify(const KovInstance& A, const BitVec& b, const Slp& S0, const Slp& S1) {
  A.validate();
  if (!(S0.alphabet() == S1.alphabet())) fail(Errc::AlphabetMismatch, "tuplify: S0 and S1 alphabets differ");
  SlpBuilder sb(S0.alphabet());
  std::uint32_t s0 = sb.import(S0), s1 = sb.import(S1);
  return sb.build(tuplify_into(sb, A.A, A.d, A.k, b, s0, s1));
}

// ---- target side

namespace {

const Slp& slp_of(const GeneratedInstance& g, const std::string& name) {
  auto f = g.payload.slps.find(name);
  if (f == g.payload.slps.end()) fail(Errc::InvalidArgument, g.reduction + ": payload lacks '" + name + "'");
  return f->second;
}

// quadratic table; beyond this the fold is not attempted
constexpr std::uint64_t kFoldCap = 60000;

bool greedy_subseq(const Str& p, const Str& t) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < t.size() && i < p.size(); ++j)
    if (t[j] == p[i]) ++i;
  return i == p.size();
}

std::uint64_t plain_hamming(const Str& a, const Str& b) {
  if (a.size() != b.size()) fail(Errc::UnequalLength, "hamming: lengths differ");
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += a[i] != b[i];
  return c;
}

}  // namespace

TargetResult solve_target(const GeneratedInstance& g, bool oracle, std::uint64_t max_decompress) {
  const std::string& r = g.reduction;
  const std::uint64_t cap = max_decompress;
  TargetResult out;
  auto threshold = [&](std::uint64_t v) {
    out.value = v;
    out.answer = g.expected.holds(v);
  };
  if (r == "dfa-ov" || r == "nfa-clique") {
    if (!g.payload.automaton) fail(Errc::InvalidArgument, r + ": payload lacks an automaton");
    const Slp& T = slp_of(g, "text");
    out.answer = oracle ? accept_decompressed(eval(T, cap), *g.payload.automaton) : accept(T, *g.payload.automaton);
  } else if (r == "wpm-kov") {
    const Slp& T = slp_of(g, "text");
    const Slp& P = slp_of(g, "pattern");
    if (oracle) {
      auto w = P.alphabet().find("*");
      if (!w) fail(Errc::AlphabetMismatch, "pattern alphabet has no wildcard glyph");
      CostFn c(P.alphabet().size, T.alphabet().size);
      for (Sym p = 0; p < c.sigma_p; ++p)
        for (Sym t = 0; t < c.sigma_t; ++t) c.at(p, t) = (p == *w) ? 0 : (p != t);
      c.wildcard = *w;
      Str t = eval(T, cap), p = eval(P, cap);
      out.answer = p.size() <= t.size() && gpm_decompressed(t, p, c).min_cost == 0;
    } else {
      out.answer = wildcard_match(T, P);
    }
  } else if (r == "shd-kov") {
    const Slp& T = slp_of(g, "text");
    const Slp& P = slp_of(g, "pattern");
    if (oracle)
      threshold(static_cast<std::uint64_t>(
          gpm_decompressed(eval(T, cap), eval(P, cap), CostFn::hamming(T.alphabet().size)).min_cost));
    else
      threshold(static_cast<std::uint64_t>(substring_hd(T, P)));
  } else if (r == "lcs-kov") {
    Str x = eval(slp_of(g, "x"), cap), y = eval(slp_of(g, "y"), cap);
    threshold(lcs_dp(x, y).delta);
  } else if (r == "cfg-clique") {
    if (!g.payload.grammar) fail(Errc::InvalidArgument, r + ": payload lacks a grammar");
    out.answer = cfg_recognize(eval(slp_of(g, "text"), cap), *g.payload.grammar);
  } else if (r == "rna-clique") {
    if (!g.payload.pairing) fail(Errc::InvalidArgument, r + ": payload lacks a pairing");
    Str t = eval(slp_of(g, "text"), cap);
    FoldOptions fo;
    fo.max_len = std::min<std::uint64_t>(cap, kFoldCap);
    threshold(oracle ? rna_fold(expand_weights(t, *g.payload.pairing, cap), *g.payload.pairing, fo)
                     : wrna_fold(t, *g.payload.pairing, fo));
  } else if (r == "subseq-clique" || r == "subseq-ksum") {
    const Slp& T = slp_of(g, "text");
    const Slp& P = slp_of(g, "pattern");
    bool sub = oracle ? greedy_subseq(eval(P, cap), eval(T, cap)) : subsequence_recursive(P, T);
    // from k-SUM the subsequence relation certifies disjointness (no solution)
    out.answer = r == "subseq-ksum" ? !sub : sub;
  } else if (r == "disj-ksum") {
    const Slp& T = slp_of(g, "text");
    const Slp& P = slp_of(g, "pattern");
    bool dis;
    if (oracle) {
      Str p = eval(P, cap), t = eval(T, cap);
      if (p.size() != t.size()) fail(Errc::UnequalLength, "disjointness inputs differ in length");
      dis = true;
      for (std::size_t i = 0; i < p.size() && dis; ++i) dis = !(p[i] == 1 && t[i] == 1);
    } else {
      dis = disjointness(P, T);
    }
    out.answer = !dis;
  } else if (r == "hamming-ksum") {
    const Slp& T = slp_of(g, "text");
    const Slp& P = slp_of(g, "pattern");
    threshold(oracle ? plain_hamming(eval(P, cap), eval(T, cap)) : hamming_recursive(P, T));
  } else {
    fail(Errc::InvalidArgument, "unknown reduction '" + r + "'");
  }
  return out;
}

}  // namespace slpkit
