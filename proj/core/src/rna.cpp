#include "slpkit/rna.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

namespace slpkit {

PairedAlphabet PairedAlphabet::complementary_pairs(std::uint32_t pairs) {
  PairedAlphabet pa;
  pa.base = Alphabet(2 * pairs);
  for (Sym s = 0; s < 2 * pairs; ++s) pa.bar.push_back(s ^ 1u);
  pa.weight.assign(2 * pairs, 1);
  return pa;
}

std::uint64_t PairedAlphabet::max_weight() const {
  std::uint64_t m = 0;
  for (auto w : weight) m = std::max(m, w);
  return m;
}

void PairedAlphabet::validate() const {
  base.validate();
  if (bar.size() != base.size || weight.size() != base.size) fail(Errc::InvalidArgument, "pairing shape");
  for (Sym s = 0; s < base.size; ++s) {
    if (bar[s] >= base.size || bar[bar[s]] != s) fail(Errc::InvalidArgument, "pairing is not an involution");
    if (weight[s] == 0) fail(Errc::InvalidArgument, "weights must be positive");
    if (weight[s] != weight[bar[s]]) fail(Errc::InvalidArgument, "w(a) must equal w(bar a)");
  }
}

namespace {

void check_text(const Str& t, const PairedAlphabet& pa) {
  for (Sym c : t)
    if (c >= pa.base.size) fail(Errc::UndeclaredSymbol, "symbol " + std::to_string(c) + " not in the paired alphabet");
}

// dp over half-open substrings; row i holds dp[i][j] for j in [i, N].
template <class V>
std::uint64_t nussinov(const Str& T, const PairedAlphabet& pa) {
  const std::size_t N = T.size();
  if (N < 2) return 0;
  std::vector<std::size_t> off(N + 2);
  off[0] = 0;
  for (std::size_t i = 0; i <= N; ++i) off[i + 1] = off[i] + (N - i + 1);
  std::vector<V> dp(off[N + 1], 0);
  auto at = [&](std::size_t i, std::size_t j) -> V& { return dp[off[i] + (j - i)]; };

  std::vector<std::vector<std::uint32_t>> pos(pa.base.size);
  for (std::size_t k = 0; k < N; ++k) pos[T[k]].push_back(static_cast<std::uint32_t>(k));

  for (std::size_t i = N; i-- > 0;) {
    V* row = &at(i, i);
    const V* below = &at(i + 1, i + 1);  // dp[i+1][j] at below[j - i - 1]
    row[0] = 0;
    std::copy(below, below + (N - i), row + 1);
    const auto& ps = pos[pa.bar[T[i]]];
    for (auto it = std::upper_bound(ps.begin(), ps.end(), static_cast<std::uint32_t>(i)); it != ps.end(); ++it) {
      std::size_t k = *it;
      V v = static_cast<V>(below[k - i - 1] + 1);
      const V* rk = &at(k + 1, k + 1);  // dp[k+1][j] at rk[j - k - 1]
      V* out = row + (k + 1 - i);
      std::size_t cnt = N - k;
      for (std::size_t x = 0; x < cnt; ++x) {
        V c = static_cast<V>(v + rk[x]);
        out[x] = out[x] < c ? c : out[x];
      }
    }
  }
  return at(0, N);
}

}  // namespace

std::uint64_t rna_fold(const Str& text, const PairedAlphabet& pa, const FoldOptions& opt) {
  pa.validate();
  check_text(text, pa);
  if (text.size() > opt.max_len)
    fail(Errc::TooLarge, "string of length " + std::to_string(text.size()) + " exceeds the folding cap");
  if (text.size() < 65536 * 2) return nussinov<std::uint16_t>(text, pa);
  return nussinov<std::uint32_t>(text, pa);
}

Str expand_weights(const Str& text, const PairedAlphabet& pa, std::uint64_t max_len) {
  pa.validate();
  check_text(text, pa);
  std::uint64_t total = 0;
  for (Sym c : text) total = checked_add(total, pa.weight[c]);
  if (total > max_len) fail(Errc::TooLarge, "expanded length " + std::to_string(total) + " exceeds the cap");
  Str out;
  out.reserve(total);
  for (Sym c : text) out.insert(out.end(), pa.weight[c], c);
  return out;
}

std::uint64_t wrna_fold(const Str& text, const PairedAlphabet& pa, const FoldOptions& opt) {
  return rna_fold(expand_weights(text, pa, opt.max_len), pa, opt);
}

// Runs of a symbol a behave like one vertex of capacity w(a) in a
// non-crossing multigraph where arcs may share endpoints. G(i, j, a, b)
// is the best value inside positions i..j when i has a copies and j has
// b copies left; K is the same with no i-j arcs allowed.
namespace {

class WeightedFold {
 public:
  WeightedFold(const Str& t, const PairedAlphabet& pa) : t_(t), pa_(pa) {
    for (Sym c : t) cap_.push_back(pa.weight[c]);
  }

  std::uint64_t solve() {
    if (t_.size() < 2) return 0;
    std::size_t n = t_.size() - 1;
    return G(0, n, cap_[0], cap_[n]);
  }

 private:
  bool pairs(std::size_t i, std::size_t j) const { return pa_.bar[t_[i]] == t_[j]; }

  std::uint64_t key(std::size_t i, std::size_t j, std::uint64_t a, std::uint64_t b, bool k) const {
    return ((((std::uint64_t{i} * t_.size() + j) * 1024 + a) * 1024 + b) << 1) | k;
  }

  std::uint64_t G(std::size_t i, std::size_t j, std::uint64_t a, std::uint64_t b) {
    if (i >= j) return 0;
    auto kk = key(i, j, a, b, false);
    if (auto f = memo_.find(kk); f != memo_.end()) return f->second;
    std::uint64_t best = 0;
    std::uint64_t mm = pairs(i, j) ? std::min(a, b) : 0;
    for (std::uint64_t m = 0; m <= mm; ++m) best = std::max(best, m + K(i, j, a - m, b - m));
    memo_[kk] = best;
    return best;
  }

  std::uint64_t K(std::size_t i, std::size_t j, std::uint64_t a, std::uint64_t b) {
    auto kk = key(i, j, a, b, true);
    if (auto f = memo_.find(kk); f != memo_.end()) return f->second;
    std::uint64_t best = G(i + 1, j, i + 1 == j ? b : cap_[i + 1], b);
    if (a > 0) {
      for (std::size_t k = i + 1; k < j; ++k) {
        if (!pairs(i, k)) continue;
        std::uint64_t ck = cap_[k];
        for (std::uint64_t m = 1; m <= std::min(a, ck); ++m)
          for (std::uint64_t x = 0; x + m <= ck; ++x)
            best = std::max(best, m + G(i, k, a - m, x) + G(k, j, ck - m - x, b));
      }
    }
    memo_[kk] = best;
    return best;
  }

  const Str& t_;
  const PairedAlphabet& pa_;
  std::vector<std::uint64_t> cap_;
  std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

}  // namespace

std::uint64_t wrna_fold_direct(const Str& text, const PairedAlphabet& pa) {
  pa.validate();
  check_text(text, pa);
  for (Sym s = 0; s < pa.base.size; ++s)
    if (pa.bar[s] == s) fail(Errc::InvalidArgument, "direct weighted fold needs a fixed-point-free pairing");
  if (pa.max_weight() >= 1024 || text.size() > 4096) fail(Errc::TooLarge, "direct weighted fold is for small inputs");
  WeightedFold f(text, pa);
  return f.solve();
}

// ---- text forms

std::string emit_pairing(const PairedAlphabet& pa) {
  pa.validate();
  std::ostringstream os;
  os << "pairs\n";
  for (Sym s = 0; s < pa.base.size; ++s)
    if (s <= pa.bar[s]) os << pa.base.glyph(s) << ' ' << pa.base.glyph(pa.bar[s]) << '\n';
  os << "weights\n";
  for (Sym s = 0; s < pa.base.size; ++s) os << pa.base.glyph(s) << ' ' << pa.weight[s] << '\n';
  return os.str();
}

PairedAlphabet parse_pairing(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<std::pair<std::string, std::uint64_t>> weights;
  int sec = 0;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    std::istringstream ls(line);
    std::string x, y, extra;
    ls >> x;
    if (x == "pairs") { sec = 1; continue; }
    if (x == "weights") { sec = 2; continue; }
    auto bad = [&](const std::string& m) { fail(Errc::ParseError, "line " + std::to_string(ln) + ": " + m); };
    if (!(ls >> y) || (ls >> extra)) bad("expected two tokens");
    if (sec == 1) {
      pairs.emplace_back(x, y);
    } else if (sec == 2) {
      std::uint64_t w = 0;
      try {
        w = std::stoull(y);
      } catch (...) {
        bad("bad weight");
      }
      weights.emplace_back(x, w);
    } else {
      bad("expected 'pairs' section first");
    }
  }
  std::vector<std::string> glyphs;
  std::map<std::string, Sym> id;
  auto intern = [&](const std::string& g) {
    auto [it, fresh] = id.emplace(g, static_cast<Sym>(glyphs.size()));
    if (fresh) glyphs.push_back(g);
    return it->second;
  };
  std::vector<std::pair<Sym, Sym>> ps;
  for (auto& [x, y] : pairs) {
    Sym a = intern(x);
    ps.emplace_back(a, intern(y));
  }
  PairedAlphabet pa;
  const auto n = static_cast<std::uint32_t>(glyphs.size());
  if (n == 0) fail(Errc::ParseError, "no pairs");
  pa.base = Alphabet(n, glyphs);
  constexpr Sym kNone = 0xffffffffu;
  pa.bar.assign(n, kNone);
  for (auto [x, y] : ps) {
    if ((pa.bar[x] != kNone && pa.bar[x] != y) || (pa.bar[y] != kNone && pa.bar[y] != x))
      fail(Errc::ParseError, "symbol paired twice");
    pa.bar[x] = y;
    pa.bar[y] = x;
  }
  pa.weight.assign(n, 1);
  for (auto& [g, w] : weights) {
    auto f = id.find(g);
    if (f == id.end()) fail(Errc::UndeclaredSymbol, "weight for unpaired symbol '" + g + "'");
    pa.weight[f->second] = w;
  }
  pa.validate();
  return pa;
}

Str parse_tokens(std::string_view text, const Alphabet& a) {
  std::istringstream is{std::string(text)};
  std::string tok;
  Str out;
  while (is >> tok) {
    auto s = a.find(tok);
    if (!s) fail(Errc::UndeclaredSymbol, "unknown symbol '" + tok + "'");
    out.push_back(*s);
  }
  return out;
}

std::string emit_tokens(const Str& s, const Alphabet& a) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ' ';
    out += a.glyph(s[i]);
  }
  return out + "\n";
}

}  // namespace slpkit
