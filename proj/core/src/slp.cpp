#include "slpkit/slp.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <unordered_map>

namespace slpkit {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::EmptyString: return "EmptyString";
    case Errc::SymbolOutOfRange: return "SymbolOutOfRange";
    case Errc::TooLarge: return "TooLarge";
    case Errc::LengthOverflow: return "LengthOverflow";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::ParseError: return "ParseError";
    case Errc::ForwardReference: return "ForwardReference";
    case Errc::PatternLongerThanText: return "PatternLongerThanText";
    case Errc::AlphabetMismatch: return "AlphabetMismatch";
    case Errc::UndeclaredSymbol: return "UndeclaredSymbol";
    case Errc::UnequalLength: return "UnequalLength";
    case Errc::NonBinaryAlphabet: return "NonBinaryAlphabet";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::InvalidAlignment: return "InvalidAlignment";
    case Errc::WeightBoundViolated: return "WeightBoundViolated";
    case Errc::NoHalfClique: return "NoHalfClique";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > kMaxLen || b > kMaxLen - a) fail(Errc::LengthOverflow, "length exceeds 2^63-1");
  return a + b;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > kMaxLen / a) fail(Errc::LengthOverflow, "length exceeds 2^63-1");
  return a * b;
}

// ---- Alphabet

Alphabet::Alphabet(std::uint32_t n, std::vector<std::string> g) : size(n), glyphs(std::move(g)) {
  validate();
  // decimal glyphs are the default rendering; keep one canonical form
  bool plain = true;
  for (std::size_t i = 0; i < glyphs.size() && plain; ++i) plain = glyphs[i] == std::to_string(i);
  if (plain) glyphs.clear();
}

Alphabet Alphabet::of(std::string_view chars) {
  std::vector<std::string> g;
  for (char c : chars) g.emplace_back(1, c);
  auto n = static_cast<std::uint32_t>(g.size());
  return Alphabet(n, std::move(g));
}

std::string Alphabet::glyph(Sym s) const {
  if (s < glyphs.size()) return glyphs[s];
  return std::to_string(s);
}

std::optional<Sym> Alphabet::find(std::string_view g) const {
  if (glyphs.empty()) {
    Sym v = 0;
    auto [p, ec] = std::from_chars(g.data(), g.data() + g.size(), v);
    if (ec != std::errc() || p != g.data() + g.size() || v >= size) return std::nullopt;
    return v;
  }
  for (std::size_t i = 0; i < glyphs.size(); ++i)
    if (glyphs[i] == g) return static_cast<Sym>(i);
  return std::nullopt;
}

void Alphabet::validate() const {
  if (size < 1) fail(Errc::InvalidArgument, "alphabet size must be >= 1");
  if (!glyphs.empty()) {
    if (glyphs.size() != size) fail(Errc::InvalidArgument, "glyph map size differs from alphabet size");
    std::set<std::string> seen(glyphs.begin(), glyphs.end());
    if (seen.size() != glyphs.size()) fail(Errc::InvalidArgument, "glyph map is not injective");
  }
}

// ---- Slp

struct Slp::Cache {
  std::once_flag once;
  std::unique_ptr<Slp> balanced;
};

bool Slp::is_avl() const {
  for (const Rule& r : rules_) {
    if (r.terminal()) continue;
    std::int64_t a = depth_[r.left], b = depth_[r.right];
    if (a - b > 1 || b - a > 1) return false;
  }
  return true;
}

const Slp& Slp::balanced() const {
  if (!cache_) fail(Errc::InvalidArgument, "empty SLP");
  std::call_once(cache_->once, [this] {
    cache_->balanced = std::make_unique<Slp>(is_avl() ? *this : balance(*this));
  });
  return *cache_->balanced;
}

// ---- SlpBuilder

SlpBuilder::SlpBuilder(Alphabet a, bool share_terminals) : alpha_(std::move(a)), share_(share_terminals) {
  alpha_.validate();
  term_of_.assign(alpha_.size, Rule::kTerm);
}

std::uint32_t SlpBuilder::push(Rule r, std::uint64_t len, std::uint32_t depth) {
  if (rules_.size() >= 0xfffffff0u) fail(Errc::TooLarge, "too many rules");
  rules_.push_back(r);
  len_.push_back(len);
  depth_.push_back(depth);
  return static_cast<std::uint32_t>(rules_.size() - 1);
}

std::uint32_t SlpBuilder::term(Sym s) {
  if (s >= alpha_.size) fail(Errc::SymbolOutOfRange, "symbol " + std::to_string(s));
  if (share_ && term_of_[s] != Rule::kTerm) return term_of_[s];
  std::uint32_t h = push(Rule{s, Rule::kTerm}, 1, 0);
  if (share_) term_of_[s] = h;
  return h;
}

std::uint32_t SlpBuilder::cat(std::uint32_t l, std::uint32_t r) {
  if (l == kEps) return r;
  if (r == kEps) return l;
  if (l >= rules_.size() || r >= rules_.size()) fail(Errc::IndexOutOfRange, "bad rule handle");
  std::uint64_t n = checked_add(len_[l], len_[r]);
  return push(Rule{l, r}, n, 1 + std::max(depth_[l], depth_[r]));
}

std::uint32_t SlpBuilder::cat(std::initializer_list<std::uint32_t> xs) {
  std::uint32_t acc = kEps;
  for (auto x : xs) acc = cat(acc, x);
  return acc;
}

std::uint32_t SlpBuilder::cat(const std::vector<std::uint32_t>& xs) {
  std::uint32_t acc = kEps;
  for (auto x : xs) acc = cat(acc, x);
  return acc;
}

// Squaring chain for the high bit, then one concat per further set bit.
std::uint32_t SlpBuilder::pow(std::uint32_t x, std::uint64_t k) {
  if (k == 0 || x == kEps) return kEps;
  checked_mul(len(x), k);
  std::uint32_t acc = kEps;
  std::uint32_t p = x;
  while (true) {
    if (k & 1) acc = cat(acc, p);
    k >>= 1;
    if (!k) break;
    p = cat(p, p);
  }
  return acc;
}

std::uint32_t SlpBuilder::literal(const Str& s) {
  if (s.empty()) return kEps;
  std::vector<std::uint32_t> level;
  level.reserve(s.size());
  for (Sym c : s) level.push_back(term(c));
  while (level.size() > 1) {
    std::vector<std::uint32_t> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(cat(level[i], level[i + 1]));
    if (level.size() % 2) next.push_back(level.back());
    level.swap(next);
  }
  return level[0];
}

std::uint32_t SlpBuilder::import(const Slp& s) {
  if (s.empty()) fail(Errc::EmptyString, "empty SLP");
  if (s.alphabet().size > alpha_.size) fail(Errc::AlphabetMismatch, "imported alphabet is larger");
  std::vector<std::uint32_t> map(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rule& r = s.rule(i);
    map[i] = r.terminal() ? term(r.sym()) : cat(map[r.left], map[r.right]);
  }
  return map.back();
}

std::uint64_t SlpBuilder::len(std::uint32_t h) const { return h == kEps ? 0 : len_[h]; }
std::uint32_t SlpBuilder::depth(std::uint32_t h) const { return h == kEps ? 0 : depth_[h]; }

Slp SlpBuilder::build(std::uint32_t root) const {
  if (root == kEps) fail(Errc::EmptyString, "SLP would generate the empty string");
  if (root >= rules_.size()) fail(Errc::IndexOutOfRange, "bad root handle");
  std::vector<char> live(root + 1, 0);
  live[root] = 1;
  for (std::uint32_t i = root + 1; i-- > 0;) {
    if (!live[i] || rules_[i].terminal()) continue;
    live[rules_[i].left] = live[rules_[i].right] = 1;
  }
  Slp out;
  out.alpha_ = alpha_;
  std::vector<std::uint32_t> idx(root + 1, Rule::kTerm);
  for (std::uint32_t i = 0; i <= root; ++i) {
    if (!live[i]) continue;
    Rule r = rules_[i];
    if (!r.terminal()) r = Rule{idx[r.left], idx[r.right]};
    idx[i] = static_cast<std::uint32_t>(out.rules_.size());
    out.rules_.push_back(r);
    out.len_.push_back(len_[i]);
    out.depth_.push_back(depth_[i]);
  }
  out.cache_ = std::make_shared<Slp::Cache>();
  return out;
}

Slp SlpBuilder::build_all() const {
  if (rules_.empty()) fail(Errc::EmptyString, "no rules");
  Slp out;
  out.alpha_ = alpha_;
  out.rules_ = rules_;
  out.len_ = len_;
  out.depth_ = depth_;
  out.cache_ = std::make_shared<Slp::Cache>();
  return out;
}

// ---- operations

Slp from_literal(const Str& text, const Alphabet& alpha) {
  if (text.empty()) fail(Errc::EmptyString, "from_literal of empty text");
  SlpBuilder b(alpha);
  return b.build(b.literal(text));
}

Slp from_literal(std::string_view text, const Alphabet& alpha) {
  Str s;
  for (char c : text) {
    auto v = alpha.find(std::string_view(&c, 1));
    if (!v) fail(Errc::SymbolOutOfRange, std::string("glyph '") + c + "'");
    s.push_back(*v);
  }
  return from_literal(s, alpha);
}

Str eval_rule(const Slp& s, std::uint32_t i, std::uint64_t max_len) {
  if (s.len(i) > max_len)
    fail(Errc::TooLarge, "decompressed length " + std::to_string(s.len(i)) + " exceeds " + std::to_string(max_len));
  Str out;
  out.reserve(s.len(i));
  std::vector<std::uint32_t> st{i};
  while (!st.empty()) {
    std::uint32_t x = st.back();
    st.pop_back();
    const Rule& r = s.rule(x);
    if (r.terminal()) {
      out.push_back(r.sym());
    } else {
      st.push_back(r.right);
      st.push_back(r.left);
    }
  }
  return out;
}

Str eval(const Slp& s, std::uint64_t max_len) {
  if (s.empty()) fail(Errc::EmptyString, "empty SLP");
  return eval_rule(s, s.start(), max_len);
}

std::string render(const Slp& s, std::uint64_t max_len) {
  std::string out;
  for (Sym c : eval(s, max_len)) out += s.alphabet().glyph(c);
  return out;
}

SlpStats stats(const Slp& s) {
  if (s.empty()) fail(Errc::EmptyString, "empty SLP");
  return SlpStats{s.length(), s.size(), s.depth(s.start())};
}

Slp repeat(const Slp& body, std::uint64_t k) {
  if (k == 0) fail(Errc::InvalidArgument, "repeat count must be >= 1");
  checked_mul(body.length(), k);
  SlpBuilder b(body.alphabet(), false);
  std::uint32_t root = b.pow(b.import(body), k);
  (void)root;
  return b.build_all();
}

Slp concat(const Slp& a, const Slp& bb) {
  if (!(a.alphabet() == bb.alphabet())) fail(Errc::AlphabetMismatch, "concat of SLPs over different alphabets");
  SlpBuilder b(a.alphabet(), false);
  std::uint32_t x = b.import(a);
  std::uint32_t y = b.import(bb);
  b.cat(x, y);
  return b.build_all();
}

Sym char_at(const Slp& s, std::uint64_t i) {
  if (s.empty() || i < 1 || i > s.length())
    fail(Errc::IndexOutOfRange, "index " + std::to_string(i));
  std::uint64_t pos = i - 1;
  std::uint32_t x = s.start();
  while (!s.rule(x).terminal()) {
    const Rule& r = s.rule(x);
    if (pos < s.len(r.left)) {
      x = r.left;
    } else {
      pos -= s.len(r.left);
      x = r.right;
    }
  }
  return s.rule(x).sym();
}

Slp substitute(const Slp& s, const std::vector<Str>& images, const Alphabet& out) {
  if (images.size() < s.alphabet().size) fail(Errc::InvalidArgument, "missing symbol images");
  SlpBuilder b(out);
  std::vector<std::uint32_t> img(images.size(), SlpBuilder::kEps);
  std::vector<std::uint32_t> map(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rule& r = s.rule(i);
    if (r.terminal()) {
      if (images[r.sym()].empty()) fail(Errc::EmptyString, "empty symbol image");
      if (img[r.sym()] == SlpBuilder::kEps) img[r.sym()] = b.literal(images[r.sym()]);
      map[i] = img[r.sym()];
    } else {
      map[i] = b.cat(map[r.left], map[r.right]);
    }
  }
  return b.build(map.back());
}

// ---- AVL balancing
//
// Each original rule becomes an AVL node; Concat(l, r) becomes the
// persistent AVL join of the images of l and r. Nodes are hash-consed.

namespace {

class AvlArena {
 public:
  explicit AvlArena(const Alphabet& a) : b_(a) {}

  std::uint32_t leaf(Sym s) { return b_.term(s); }

  std::uint32_t join(std::uint32_t a, std::uint32_t c) {
    std::int64_t ha = h(a), hc = h(c);
    if (ha - hc <= 1 && hc - ha <= 1) return mk(a, c);
    if (ha > hc) {
      auto [al, ar] = kids(a);
      std::uint32_t m = join(ar, c);
      if (h(m) <= h(al) + 1) return mk(al, m);
      auto [ml, mr] = kids(m);
      if (h(mr) >= h(ml)) return mk(mk(al, ml), mr);
      auto [mll, mlr] = kids(ml);
      return mk(mk(al, mll), mk(mlr, mr));
    }
    auto [cl, cr] = kids(c);
    std::uint32_t m = join(a, cl);
    if (h(m) <= h(cr) + 1) return mk(m, cr);
    auto [ml, mr] = kids(m);
    if (h(ml) >= h(mr)) return mk(ml, mk(mr, cr));
    auto [mrl, mrr] = kids(mr);
    return mk(mk(ml, mrl), mk(mrr, cr));
  }

  Slp build(std::uint32_t root) const { return b_.build(root); }

 private:
  std::int64_t h(std::uint32_t x) const { return b_.depth(x); }
  std::pair<std::uint32_t, std::uint32_t> kids(std::uint32_t x) {
    const Rule& r = rules_.at(x);
    return {r.left, r.right};
  }
  std::uint32_t mk(std::uint32_t l, std::uint32_t r) {
    std::uint64_t key = (std::uint64_t{l} << 32) | r;
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::uint32_t x = b_.cat(l, r);
    memo_.emplace(key, x);
    rules_.emplace(x, Rule{l, r});
    return x;
  }

  SlpBuilder b_;
  std::unordered_map<std::uint64_t, std::uint32_t> memo_;
  std::unordered_map<std::uint32_t, Rule> rules_;
};

}  // namespace

Slp balance(const Slp& s) {
  if (s.empty()) fail(Errc::EmptyString, "empty SLP");
  AvlArena arena(s.alphabet());
  std::vector<std::uint32_t> img(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rule& r = s.rule(i);
    img[i] = r.terminal() ? arena.leaf(r.sym()) : arena.join(img[r.left], img[r.right]);
  }
  return arena.build(img.back());
}

// ---- text form

namespace {

std::string quote(const std::string& g) {
  std::string out = "\"";
  for (char c : g) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string emit_slp(const Slp& s) {
  std::ostringstream os;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Rule& r = s.rule(i);
    os << 'S' << (i + 1) << " = ";
    if (r.terminal())
      os << quote(s.alphabet().glyph(r.sym()));
    else
      os << 'S' << (r.left + 1) << " S" << (r.right + 1);
    os << '\n';
  }
  return os.str();
}

namespace {

struct RawRule {
  bool term;
  std::string glyph;
  std::uint64_t l, r;
};

[[noreturn]] void perr(std::size_t line, const std::string& msg) {
  fail(Errc::ParseError, "line " + std::to_string(line) + ": " + msg);
}

std::uint64_t parse_ref(std::string_view tok, std::size_t line) {
  if (tok.size() < 2 || tok[0] != 'S') perr(line, "expected rule reference, got '" + std::string(tok) + "'");
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size() || v == 0) perr(line, "bad rule reference '" + std::string(tok) + "'");
  return v;
}

}  // namespace

Slp parse_slp(std::string_view text, const Alphabet* alpha) {
  std::vector<RawRule> raw;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t e = text.find('\n', pos);
    if (e == std::string_view::npos) e = text.size();
    std::string_view line = text.substr(pos, e - pos);
    pos = e + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t a = line.find_first_not_of(" \t");
    if (a == std::string_view::npos || line[a] == '#') continue;
    line = line.substr(a);
    std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) perr(line_no, "missing '='");
    std::string_view lhs = line.substr(0, eq);
    while (!lhs.empty() && (lhs.back() == ' ' || lhs.back() == '\t')) lhs.remove_suffix(1);
    std::uint64_t k = parse_ref(lhs, line_no);
    if (k != raw.size() + 1) perr(line_no, "expected S" + std::to_string(raw.size() + 1));
    std::string_view rhs = line.substr(eq + 1);
    std::size_t b = rhs.find_first_not_of(" \t");
    if (b == std::string_view::npos) perr(line_no, "empty right-hand side");
    rhs = rhs.substr(b);
    RawRule rr{};
    if (rhs[0] == '"') {
      std::size_t i = 1;
      std::string g;
      for (; i < rhs.size() && rhs[i] != '"'; ++i) {
        if (rhs[i] == '\\' && i + 1 < rhs.size()) ++i;
        g += rhs[i];
      }
      if (i >= rhs.size()) perr(line_no, "unterminated glyph");
      if (rhs.substr(i + 1).find_first_not_of(" \t") != std::string_view::npos) perr(line_no, "trailing text");
      if (g.empty()) perr(line_no, "empty glyph");
      rr.term = true;
      rr.glyph = g;
    } else {
      std::istringstream is{std::string(rhs)};
      std::string t1, t2, t3;
      is >> t1 >> t2;
      if (t2.empty() || (is >> t3)) perr(line_no, "concat needs exactly two references");
      rr.term = false;
      rr.l = parse_ref(t1, line_no);
      rr.r = parse_ref(t2, line_no);
      if (rr.l >= k || rr.r >= k)
        fail(Errc::ForwardReference, "line " + std::to_string(line_no) + ": S" + std::to_string(k) +
                                         " refers to a rule that is not earlier");
    }
    raw.push_back(std::move(rr));
  }
  if (raw.empty()) fail(Errc::ParseError, "no rules");

  Alphabet al;
  if (alpha) {
    al = *alpha;
  } else {
    std::set<std::string> gs;
    for (auto& r : raw)
      if (r.term) gs.insert(r.glyph);
    bool numeric = true;
    std::uint64_t mx = 0;
    for (auto& g : gs) {
      std::uint64_t v = 0;
      auto [p, ec] = std::from_chars(g.data(), g.data() + g.size(), v);
      if (ec != std::errc() || p != g.data() + g.size() || std::to_string(v) != g || v > 1u << 20) {
        numeric = false;
        break;
      }
      mx = std::max(mx, v);
    }
    if (numeric)
      al = Alphabet(static_cast<std::uint32_t>(mx + 1));
    else
      al = Alphabet(static_cast<std::uint32_t>(gs.size()), {gs.begin(), gs.end()});
  }

  SlpBuilder bld(al, false);
  line_no = 0;
  for (auto& r : raw) {
    ++line_no;
    if (r.term) {
      auto v = al.find(r.glyph);
      if (!v) fail(Errc::SymbolOutOfRange, "glyph \"" + r.glyph + "\" not in alphabet");
      bld.term(*v);
    } else {
      bld.cat(static_cast<std::uint32_t>(r.l - 1), static_cast<std::uint32_t>(r.r - 1));
    }
  }
  return bld.build_all();
}

}  // namespace slpkit
