#include "slpkit/cfg.hpp"

#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

namespace slpkit {

std::uint32_t Cfg::add_nt(std::string name) {
  nonterminals.push_back(std::move(name));
  return static_cast<std::uint32_t>(nonterminals.size() - 1);
}

std::size_t Cfg::size() const {
  std::size_t s = 0;
  for (auto& p : prods) s += p.rhs.size();
  return s;
}

std::vector<char> Cfg::nullable() const {
  std::vector<char> nul(nonterminals.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& p : prods) {
      if (nul[p.lhs]) continue;
      bool all = true;
      for (auto& s : p.rhs) all = all && s.nt && nul[s.id];
      if (all) nul[p.lhs] = 1, changed = true;
    }
  }
  return nul;
}

void Cfg::validate() const {
  if (start >= nonterminals.size()) fail(Errc::UndeclaredSymbol, "start is not a declared nonterminal");
  for (auto& p : prods) {
    if (p.lhs >= nonterminals.size()) fail(Errc::UndeclaredSymbol, "production for an undeclared nonterminal");
    for (auto& s : p.rhs) {
      if (s.nt && s.id >= nonterminals.size()) fail(Errc::UndeclaredSymbol, "undeclared nonterminal in a body");
      if (!s.nt && s.id >= terminals.size) fail(Errc::UndeclaredSymbol, "undeclared terminal in a body");
    }
  }
}

// ---- Earley

namespace {

struct Item {
  std::uint32_t prod, dot, origin;
};

std::uint64_t key(const Item& it) {
  return (std::uint64_t{it.prod} << 40) ^ (std::uint64_t{it.dot} << 24) ^ it.origin;
}

}  // namespace

bool cfg_recognize(const Str& text, const Cfg& g) {
  g.validate();
  for (Sym c : text)
    if (c >= g.terminals.size) fail(Errc::UndeclaredSymbol, "text symbol " + std::to_string(c) + " is not a terminal");
  if (g.prods.size() >= (1u << 23) || text.size() >= (1u << 24)) fail(Errc::TooLarge, "grammar or text too large");
  const auto nul = g.nullable();
  std::vector<std::vector<std::uint32_t>> by_lhs(g.nonterminals.size());
  for (std::uint32_t p = 0; p < g.prods.size(); ++p) by_lhs[g.prods[p].lhs].push_back(p);

  const std::size_t N = text.size();
  std::vector<std::vector<Item>> sets(N + 1);
  std::vector<std::unordered_set<std::uint64_t>> seen(N + 1);
  // waiting[i][B]: items in set i whose next symbol is nonterminal B
  std::vector<std::map<std::uint32_t, std::vector<Item>>> waiting(N + 1);

  auto add = [&](std::size_t i, Item it) {
    if (seen[i].insert(key(it)).second) sets[i].push_back(it);
  };
  for (auto p : by_lhs[g.start]) add(0, {p, 0, 0});

  for (std::size_t i = 0; i <= N; ++i) {
    for (std::size_t w = 0; w < sets[i].size(); ++w) {
      Item it = sets[i][w];
      const Production& P = g.prods[it.prod];
      if (it.dot == P.rhs.size()) {
        auto f = waiting[it.origin].find(P.lhs);
        if (f == waiting[it.origin].end()) continue;
        // copy: completing into the same set may append to this list
        auto wl = f->second;
        for (const Item& x : wl) add(i, {x.prod, x.dot + 1, x.origin});
        continue;
      }
      const GSym& s = P.rhs[it.dot];
      if (s.nt) {
        waiting[i][s.id].push_back(it);
        for (auto q : by_lhs[s.id]) add(i, {q, 0, static_cast<std::uint32_t>(i)});
        if (nul[s.id]) add(i, {it.prod, it.dot + 1, it.origin});
      } else if (i < N && text[i] == s.id) {
        add(i + 1, {it.prod, it.dot + 1, it.origin});
      }
    }
    if (i > 0) {  // set i-1 is no longer needed for scanning
      std::unordered_set<std::uint64_t>().swap(seen[i - 1]);
    }
  }
  for (const Item& it : sets[N])
    if (it.origin == 0 && g.prods[it.prod].lhs == g.start && it.dot == g.prods[it.prod].rhs.size()) return true;
  return false;
}

// ---- text form

std::string emit_grammar(const Cfg& g) {
  g.validate();
  std::set<std::string> glyphs;
  for (Sym s = 0; s < g.terminals.size; ++s) glyphs.insert(g.terminals.glyph(s));
  for (auto& n : g.nonterminals)
    if (glyphs.count(n)) fail(Errc::InvalidArgument, "nonterminal name '" + n + "' collides with a terminal glyph");
  std::ostringstream os;
  os << "start " << g.nonterminals[g.start] << '\n';
  for (auto& p : g.prods) {
    os << g.nonterminals[p.lhs] << " ->";
    for (auto& s : p.rhs) os << ' ' << (s.nt ? g.nonterminals[s.id] : g.terminals.glyph(s.id));
    os << '\n';
  }
  return os.str();
}

Cfg parse_grammar(std::string_view text, const Alphabet& terminals) {
  struct Line {
    std::size_t no;
    std::string lhs;
    std::vector<std::string> rhs;
  };
  std::istringstream is{std::string(text)};
  std::string line, start_name;
  std::vector<Line> lines;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    std::istringstream ls(line);
    std::string t1, t2;
    ls >> t1 >> t2;
    if (t1 == "start") {
      if (t2.empty() || !start_name.empty()) fail(Errc::ParseError, "line " + std::to_string(ln) + ": bad start line");
      start_name = t2;
      continue;
    }
    if (t2 != "->") fail(Errc::ParseError, "line " + std::to_string(ln) + ": expected 'NT -> ...'");
    Line L{ln, t1, {}};
    std::string tok;
    while (ls >> tok) L.rhs.push_back(tok);
    lines.push_back(std::move(L));
  }
  if (start_name.empty()) fail(Errc::ParseError, "missing start line");
  Cfg g;
  g.terminals = terminals;
  std::map<std::string, std::uint32_t> nt;
  for (auto& L : lines)
    if (!nt.count(L.lhs)) nt[L.lhs] = g.add_nt(L.lhs);
  if (!nt.count(start_name)) {
    nt[start_name] = g.add_nt(start_name);  // no productions: empty language
  }
  g.start = nt[start_name];
  for (auto& L : lines) {
    Production p{nt[L.lhs], {}};
    for (auto& tok : L.rhs) {
      auto f = nt.find(tok);
      if (f != nt.end()) {
        p.rhs.push_back(Cfg::N(f->second));
      } else {
        auto s = terminals.find(tok);
        if (!s) fail(Errc::UndeclaredSymbol, "line " + std::to_string(L.no) + ": undeclared symbol '" + tok + "'");
        p.rhs.push_back(Cfg::T(*s));
      }
    }
    g.prods.push_back(std::move(p));
  }
  return g;
}

}  // namespace slpkit
