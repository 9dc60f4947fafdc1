#include "slpkit/seqcmp.hpp"

#include <algorithm>
#include <unordered_map>

namespace slpkit {

namespace {

constexpr std::uint64_t kNone = ~std::uint64_t{0};

// contains[x] bitset over the alphabet
class Presence {
 public:
  explicit Presence(const Slp& s) : s_(s), w_((s.alphabet().size + 63) / 64), bits_(s.size() * w_, 0) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Rule& r = s.rule(i);
      std::uint64_t* b = &bits_[i * w_];
      if (r.terminal()) {
        b[r.sym() / 64] |= std::uint64_t{1} << (r.sym() % 64);
      } else {
        for (std::size_t k = 0; k < w_; ++k) b[k] = bits_[r.left * w_ + k] | bits_[r.right * w_ + k];
      }
    }
  }

  bool has(std::uint32_t x, Sym a) const {
    if (a >= s_.alphabet().size) return false;
    return (bits_[x * w_ + a / 64] >> (a % 64)) & 1;
  }

  // first position >= from in rule x holding a, or kNone
  std::uint64_t find(std::uint32_t x, std::uint64_t from, Sym a) const {
    if (from >= s_.len(x) || !has(x, a)) return kNone;
    const Rule& r = s_.rule(x);
    if (r.terminal()) return 0;
    std::uint64_t Ll = s_.len(r.left);
    if (from < Ll) {
      std::uint64_t p = find(r.left, from, a);
      if (p != kNone) return p;
    }
    std::uint64_t p = find(r.right, from > Ll ? from - Ll : 0, a);
    return p == kNone ? kNone : p + Ll;
  }

 private:
  const Slp& s_;
  std::size_t w_;
  std::vector<std::uint64_t> bits_;
};

struct Key {
  std::uint32_t i, j;
  std::int64_t d;
  bool operator==(const Key&) const = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    std::uint64_t h = (std::uint64_t{k.i} << 32) ^ k.j;
    h ^= static_cast<std::uint64_t>(k.d) * 0x9E3779B97F4A7C15ULL;
    h ^= h >> 29;
    return static_cast<std::size_t>(h * 0xBF58476D1CE4E5B9ULL);
  }
};

void require_binary(const Slp& s) {
  for (const Rule& r : s.rules())
    if (r.terminal() && r.sym() > 1) fail(Errc::NonBinaryAlphabet, "disjointness needs bit strings");
}

}  // namespace

bool subsequence_avl(const Slp& T, const Str& P) {
  if (T.empty()) fail(Errc::EmptyString, "empty text");
  for (Sym c : P)
    if (c >= T.alphabet().size) fail(Errc::AlphabetMismatch, "pattern symbol outside the text alphabet");
  const Slp& B = T.balanced();
  Presence pr(B);
  std::uint64_t pos = 0;
  for (Sym c : P) {
    std::uint64_t p = pr.find(B.start(), pos, c);
    if (p == kNone) return false;
    pos = p + 1;
  }
  return true;
}

// ---- recursive subsequence
//
// sub(i, j, p, t): pattern rule i with its first p symbols already matched,
// text rule j with its first t symbols already consumed (p == 0 or t == 0).
// Returns {true, text prefix length used} when the rest of P_i fits, else
// {false, pattern prefix length matched} with T_j exhausted.

namespace {

struct SubRes {
  bool done;
  std::uint64_t v;
};

class Subseq {
 public:
  Subseq(const Slp& P, const Slp& T) : P_(P), T_(T), pr_(T) {}

  SubRes run() { return sub(P_.start(), T_.start(), 0, 0); }

 private:
  SubRes sub(std::uint32_t i, std::uint32_t j, std::uint64_t p, std::uint64_t t) {
    const std::uint64_t Li = P_.len(i), Lj = T_.len(j);
    if (t >= Lj) return {false, p};
    Key k{i, j, static_cast<std::int64_t>(p) - static_cast<std::int64_t>(t)};
    if (auto f = memo_.find(k); f != memo_.end()) return f->second;
    SubRes res{};
    const Rule& ri = P_.rule(i);
    const Rule& rj = T_.rule(j);
    if (ri.terminal()) {
      std::uint64_t q = pr_.find(j, t, ri.sym());
      res = q == kNone ? SubRes{false, 0} : SubRes{true, q + 1};
    } else if (rj.terminal()) {
      Sym c = at(i, p);
      if (c == rj.sym())
        res = p + 1 == Li ? SubRes{true, 1} : SubRes{false, p + 1};
      else
        res = {false, p};
    } else if (Li - p >= Lj - t) {
      const std::uint64_t Ll = P_.len(ri.left);
      if (p >= Ll) {
        SubRes r = sub(ri.right, j, p - Ll, 0);
        res = r.done ? r : SubRes{false, r.v + Ll};
      } else {
        SubRes r1 = sub(ri.left, j, p, t);
        if (!r1.done) {
          res = r1;
        } else {
          SubRes r2 = sub(ri.right, j, 0, r1.v);
          res = r2.done ? r2 : SubRes{false, r2.v + Ll};
        }
      }
    } else {
      const std::uint64_t Tl = T_.len(rj.left);
      if (t >= Tl) {
        SubRes r = sub(i, rj.right, p, t - Tl);
        res = r.done ? SubRes{true, r.v + Tl} : r;
      } else {
        SubRes r1 = sub(i, rj.left, p, t);
        if (r1.done) {
          res = r1;
        } else {
          SubRes r2 = sub(i, rj.right, r1.v, 0);
          res = r2.done ? SubRes{true, r2.v + Tl} : r2;
        }
      }
    }
    memo_.emplace(k, res);
    return res;
  }

  // symbol at 0-based position p of pattern rule i
  Sym at(std::uint32_t i, std::uint64_t p) const {
    while (!P_.rule(i).terminal()) {
      const Rule& r = P_.rule(i);
      if (p < P_.len(r.left)) {
        i = r.left;
      } else {
        p -= P_.len(r.left);
        i = r.right;
      }
    }
    return P_.rule(i).sym();
  }

  const Slp& P_;
  const Slp& T_;
  Presence pr_;
  std::unordered_map<Key, SubRes, KeyHash> memo_;
};

}  // namespace

bool subsequence_recursive(const Slp& P, const Slp& T) {
  if (P.empty() || T.empty()) fail(Errc::EmptyString, "empty input");
  if (P.length() > T.length()) return false;
  Subseq s(P.balanced(), T.balanced());
  return s.run().done;
}

// ---- recursive Hamming
//
// ham(i, j, d): mismatches between T_j and P_i shifted to start at offset
// d of T_j, over their overlap only. The longer side is split.

namespace {

class Ham {
 public:
  Ham(const Slp& P, const Slp& T) : P_(P), T_(T) {}

  std::uint64_t ham(std::uint32_t i, std::uint32_t j, std::int64_t d) {
    const std::int64_t Li = static_cast<std::int64_t>(P_.len(i)), Lj = static_cast<std::int64_t>(T_.len(j));
    if (d >= Lj || d + Li <= 0) return 0;
    const Rule& ri = P_.rule(i);
    const Rule& rj = T_.rule(j);
    if (ri.terminal() && rj.terminal()) return ri.sym() != rj.sym();
    Key k{i, j, d};
    if (auto f = memo_.find(k); f != memo_.end()) return f->second;
    std::uint64_t v;
    if (rj.terminal() || (!ri.terminal() && Li >= Lj)) {
      v = ham(ri.left, j, d) + ham(ri.right, j, d + static_cast<std::int64_t>(P_.len(ri.left)));
    } else {
      v = ham(i, rj.left, d) + ham(i, rj.right, d - static_cast<std::int64_t>(T_.len(rj.left)));
    }
    memo_.emplace(k, v);
    return v;
  }

  std::size_t entries() const { return memo_.size(); }

 private:
  const Slp& P_;
  const Slp& T_;
  std::unordered_map<Key, std::uint64_t, KeyHash> memo_;
};

}  // namespace

std::uint64_t hamming_recursive(const Slp& P, const Slp& T, RecursionStats* st) {
  if (P.empty() || T.empty()) fail(Errc::EmptyString, "empty input");
  if (P.length() != T.length())
    fail(Errc::UnequalLength, std::to_string(P.length()) + " vs " + std::to_string(T.length()));
  const Slp& BP = P.balanced();
  const Slp& BT = T.balanced();
  Ham h(BP, BT);
  std::uint64_t v = h.ham(BP.start(), BT.start(), 0);
  if (st) st->memo_entries = h.entries();
  return v;
}

// ---- disjointness

std::pair<Slp, Slp> disj_to_subsequence(const Slp& P, const Slp& T) {
  require_binary(P);
  require_binary(T);
  if (P.length() != T.length()) fail(Errc::UnequalLength, "disjointness inputs differ in length");
  Alphabet a(2);
  return {substitute(P, {{0}, {1, 0}}, a), substitute(T, {{1, 0}, {0}}, a)};
}

std::tuple<Slp, Slp, std::uint64_t> disj_to_hamming(const Slp& P, const Slp& T) {
  require_binary(P);
  require_binary(T);
  if (P.length() != T.length()) fail(Errc::UnequalLength, "disjointness inputs differ in length");
  Alphabet a(2);
  return {substitute(P, {{0, 1, 1}, {0, 0, 0}}, a), substitute(T, {{0, 0, 1}, {1, 1, 1}}, a), P.length()};
}

bool disjointness(const Slp& P, const Slp& T) {
  auto [p, t, n] = disj_to_hamming(P, T);
  return hamming_recursive(p, t) <= n;
}

DisjointnessReport disjointness_all(const Slp& P, const Slp& T, std::uint64_t max_decompress) {
  DisjointnessReport r;
  r.via_hamming = disjointness(P, T);
  auto [ps, ts] = disj_to_subsequence(P, T);
  r.via_subsequence = subsequence_recursive(ps, ts);
  if (P.length() <= max_decompress) {
    Str a = eval(P, max_decompress), b = eval(T, max_decompress);
    bool dis = true;
    for (std::size_t i = 0; i < a.size() && dis; ++i) dis = !(a[i] == 1 && b[i] == 1);
    r.via_scan = dis;
  }
  return r;
}

// ---- LCS
//
// Row-bit formulation: V holds one bit per position of X; a zero bit marks
// a position where the LCS length increases. For each y,
// V <- (V + (V & M_y)) | (V & ~M_y).

LcsReport lcs_dp(const Str& X, const Str& Y, std::uint64_t max_cells) {
  const std::uint64_t n = X.size(), m = Y.size();
  if (n != 0 && m > max_cells / n) fail(Errc::TooLarge, "LCS table exceeds the cell cap");
  if (n == 0 || m == 0) return {0, n + m};
  const std::size_t W = (n + 63) / 64;
  std::unordered_map<Sym, std::vector<std::uint64_t>> masks;
  for (std::size_t i = 0; i < n; ++i) {
    auto& mk = masks[X[i]];
    if (mk.empty()) mk.assign(W, 0);
    mk[i / 64] |= std::uint64_t{1} << (i % 64);
  }
  std::vector<std::uint64_t> V(W, ~std::uint64_t{0});
  std::vector<std::uint64_t> zero(W, 0);
  for (Sym y : Y) {
    auto f = masks.find(y);
    const std::uint64_t* M = f == masks.end() ? zero.data() : f->second.data();
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < W; ++k) {
      std::uint64_t v = V[k], u = v & M[k];
      std::uint64_t s = v + u;
      std::uint64_t c1 = s < v;
      std::uint64_t s2 = s + carry;
      std::uint64_t c2 = s2 < s;
      carry = c1 | c2;
      V[k] = s2 | (v & ~M[k]);
    }
  }
  std::uint64_t L = 0;
  for (std::size_t i = 0; i < n; ++i) L += !((V[i / 64] >> (i % 64)) & 1);
  return {L, n + m - 2 * L};
}

}  // namespace slpkit
