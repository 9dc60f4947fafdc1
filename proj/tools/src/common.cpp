#include "common.hpp"

#include <algorithm>
#include <iostream>
#include <set>
#include <sstream>

namespace slpkit::cli {

namespace fs = std::filesystem;

std::string read_file(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) throw Usage("cannot read " + p.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& s) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw Usage("cannot write " + p.string());
  os << s;
}

Alphabet read_alpha(const fs::path& p) {
  std::istringstream is(read_file(p));
  std::string word;
  std::uint32_t n = 0;
  if (!(is >> word >> n) || word != "alphabet") fail(Errc::ParseError, p.string() + ": expected 'alphabet N'");
  std::vector<std::string> glyphs;
  for (std::string g; is >> g;) glyphs.push_back(g);
  if (glyphs.empty()) return Alphabet(n);
  if (glyphs.size() != n) fail(Errc::ParseError, p.string() + ": glyph count differs from size");
  return Alphabet(n, std::move(glyphs));
}

std::string emit_alpha_file(const Alphabet& a) {
  std::string s = "alphabet " + std::to_string(a.size) + "\n";
  for (const auto& g : a.glyphs) s += g + "\n";
  return s;
}

std::optional<Alphabet> sibling_alpha(const fs::path& p) {
  for (fs::path c : {fs::path(p).replace_extension(".alpha"), fs::path(p.string() + ".alpha")})
    if (c != p && fs::exists(c)) return read_alpha(c);
  return std::nullopt;
}

namespace {

bool looks_like_rules(const std::string& text) {
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    auto a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    return line[a] == 'S' && line.find('=') != std::string::npos;
  }
  return false;
}

}  // namespace

namespace {

std::vector<std::string> literal_tokens(const fs::path& p, const std::string& text) {
  std::vector<std::string> toks;
  if (text.find_first_of(" \t") != std::string::npos) {
    std::istringstream is(text);
    for (std::string t; is >> t;) toks.push_back(t);
  } else {
    for (char c : text)
      if (c != '\n' && c != '\r') toks.emplace_back(1, c);
  }
  if (toks.empty()) fail(Errc::ParseError, p.string() + ": empty string");
  return toks;
}

// same rule as parse_slp: canonical decimal, at most 2^20
bool numeral(const std::string& g) {
  if (g.empty() || g.size() > 7 || !std::all_of(g.begin(), g.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return false;
  return std::to_string(std::stoul(g)) == g && std::stoul(g) <= (1u << 20);
}

}  // namespace

std::set<std::string> file_glyphs(const fs::path& p) {
  if (auto a = sibling_alpha(p)) {
    if (a->glyphs.empty()) fail(Errc::ParseError, p.string() + ": alphabet file has no glyphs");
    return {a->glyphs.begin(), a->glyphs.end()};
  }
  const std::string text = read_file(p);
  if (looks_like_rules(text)) {
    const Alphabet a = parse_slp(text).alphabet();
    if (!a.glyphs.empty()) return {a.glyphs.begin(), a.glyphs.end()};
    std::set<std::string> g;
    for (Sym s = 0; s < a.size; ++s) g.insert(std::to_string(s));
    return g;
  }
  auto toks = literal_tokens(p, text);
  return {toks.begin(), toks.end()};
}

// numerals stand for themselves ("1" alone is still symbol 1); anything else is sorted
Alphabet infer_alphabet(const std::set<std::string>& glyphs) {
  if (!glyphs.empty() && std::all_of(glyphs.begin(), glyphs.end(), numeral)) {
    std::uint32_t hi = 0;
    for (const auto& g : glyphs) hi = std::max<std::uint32_t>(hi, static_cast<std::uint32_t>(std::stoul(g)));
    return Alphabet(hi + 1);
  }
  return Alphabet(static_cast<std::uint32_t>(glyphs.size()), {glyphs.begin(), glyphs.end()});
}

Slp load_slp(const fs::path& p, const std::optional<Alphabet>& forced) {
  const std::string text = read_file(p);
  std::optional<Alphabet> alpha = forced ? forced : sibling_alpha(p);
  if (!alpha) alpha = infer_alphabet(file_glyphs(p));
  if (looks_like_rules(text)) return parse_slp(text, &*alpha);
  Str s;
  for (const auto& t : literal_tokens(p, text)) {
    auto v = alpha->find(t);
    if (!v) fail(Errc::SymbolOutOfRange, p.string() + ": glyph '" + t + "' not in the alphabet");
    s.push_back(*v);
  }
  return from_literal(s, *alpha);
}

StatsSink::StatsSink(const std::string& where, std::ostream& err) {
  if (where.empty()) return;
  on_ = true;
  if (where == "-") {
    os_ = &err;
    return;
  }
  file_.open(where, std::ios::app);
  if (!file_) throw Usage("cannot open stats file " + where);
  os_ = &file_;
}

void StatsSink::put(const nlohmann::json& j) {
  if (on_) *os_ << j.dump() << '\n' << std::flush;
}

GenOptions gen_options(const Globals& g) {
  GenOptions o;
  o.uncertified = g.uncertified;
  o.max_decompress = g.max_decompress;
  return o;
}

// ---- reductions

namespace {

template <class T>
const T& as(const Source& s, const char* what) {
  if (!std::holds_alternative<T>(s)) throw Usage(std::string("reduction needs a ") + what + " source");
  return std::get<T>(s);
}

std::pair<std::uint32_t, std::uint32_t> pm_split(const KovInstance& s, const GenParams& p) {
  std::uint32_t k1 = p.k1.value_or(p.k2 ? s.k - std::min(*p.k2, s.k) : std::max(1u, s.k / 2));
  std::uint32_t k2 = p.k2.value_or(s.k - std::min(k1, s.k));
  return {k1, k2};
}

std::pair<std::uint32_t, std::uint32_t> lcs_split(const KovInstance& s, const GenParams& p) {
  std::uint32_t k2 = p.k2.value_or(std::max(1u, (s.k - 1) / 2));
  std::uint32_t k1 = p.k1.value_or(s.k >= 2 * k2 ? s.k - 2 * k2 : 0);
  return {k1, k2};
}

std::uint32_t ksum_k(const KsumInstance& s, const GenParams& p) { return p.k.value_or((s.k_arity - 1) / 2); }

}  // namespace

const std::vector<Reduction>& reductions() {
  static const std::vector<Reduction> all = {
      {"dfa-ov", SourceKind::Ov,
       [](const Source& s, const GenParams&, const GenOptions& o) { return gen_dfa_from_ov(as<OvInstance>(s, "ov"), o); }},
      {"wpm-kov", SourceKind::Kov,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         const auto& k = as<KovInstance>(s, "kov");
         auto [k1, k2] = pm_split(k, p);
         return gen_wildcard_pm_from_kov(k, k1, k2, o);
       }},
      {"shd-kov", SourceKind::Kov,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         const auto& k = as<KovInstance>(s, "kov");
         auto [k1, k2] = pm_split(k, p);
         return gen_substring_hd_from_kov(k, k1, k2, o);
       }},
      {"lcs-kov", SourceKind::Kov,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         const auto& k = as<KovInstance>(s, "kov");
         auto [k1, k2] = lcs_split(k, p);
         return gen_lcs_from_kov(k, k1, k2, o);
       }},
      {"nfa-clique", SourceKind::Graph,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         return gen_nfa_from_clique(as<Graph>(s, "graph"), p.kappa.value_or(1), p.kappa2.value_or(1), o);
       }},
      {"cfg-clique", SourceKind::Graph,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         return gen_cfg_from_clique(as<Graph>(s, "graph"), p.k.value_or(1), o);
       }},
      {"rna-clique", SourceKind::Graph,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         return gen_rna_from_clique(as<Graph>(s, "graph"), p.k.value_or(1), o);
       }},
      {"subseq-clique", SourceKind::Graph,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         return gen_subsequence_from_clique(as<Graph>(s, "graph"), p.k.value_or(4), o);
       }},
      {"disj-ksum", SourceKind::Ksum,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         const auto& k = as<KsumInstance>(s, "ksum");
         return gen_disjointness_from_ksum(k, ksum_k(k, p), o);
       }},
      {"subseq-ksum", SourceKind::Ksum,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         const auto& k = as<KsumInstance>(s, "ksum");
         return gen_subsequence_from_ksum(k, ksum_k(k, p), o);
       }},
      {"hamming-ksum", SourceKind::Ksum,
       [](const Source& s, const GenParams& p, const GenOptions& o) {
         const auto& k = as<KsumInstance>(s, "ksum");
         return gen_hamming_from_ksum(k, ksum_k(k, p), o);
       }},
  };
  return all;
}

const Reduction* find_reduction(const std::string& name) {
  for (const auto& r : reductions())
    if (r.name == name) return &r;
  return nullptr;
}

std::string kind_name(SourceKind k) {
  switch (k) {
    case SourceKind::Ov: return "ov";
    case SourceKind::Kov: return "kov";
    case SourceKind::Graph: return "graph";
    case SourceKind::Ksum: return "ksum";
  }
  return "?";
}

SourceKind kind_of(const Source& s) { return static_cast<SourceKind>(s.index()); }

Source random_source(SourceKind kind, const RandomShape& sh, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  auto vec = [&](std::uint32_t d) {
    BitVec v(d);
    for (auto& x : v) x = coin(rng);
    return v;
  };
  switch (kind) {
    case SourceKind::Ov: {
      OvInstance s;
      s.d = sh.dim;
      for (std::uint32_t i = 0; i < sh.vectors; ++i) s.A.push_back(vec(sh.dim));
      for (std::uint32_t i = 0; i < sh.vectors; ++i) s.B.push_back(vec(sh.dim));
      return s;
    }
    case SourceKind::Kov: {
      KovInstance s;
      s.d = sh.dim;
      s.k = sh.arity;
      for (std::uint32_t i = 0; i < sh.vectors; ++i) s.A.push_back(vec(sh.dim));
      return s;
    }
    case SourceKind::Graph: {
      std::bernoulli_distribution edge(sh.edge_prob);
      std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
      for (std::uint32_t u = 0; u < sh.vertices; ++u)
        for (std::uint32_t v = u + 1; v < sh.vertices; ++v)
          if (edge(rng)) e.emplace_back(u, v);
      return Graph::make(sh.vertices, std::move(e));
    }
    case SourceKind::Ksum: {
      KsumInstance s;
      s.k_arity = sh.arity;
      std::vector<std::int64_t> pool;
      for (std::int64_t v = 0; v <= sh.max_value; ++v) pool.push_back(v);
      std::shuffle(pool.begin(), pool.end(), rng);
      pool.resize(std::min<std::size_t>(pool.size(), std::max<std::uint32_t>(1, sh.values)));
      std::sort(pool.begin(), pool.end());
      s.Z = pool;
      std::uniform_int_distribution<std::int64_t> t(0, sh.arity * sh.max_value);
      s.t = t(rng);
      return s;
    }
  }
  throw Usage("unknown source kind");
}

}  // namespace slpkit::cli
