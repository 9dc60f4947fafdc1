#pragma once

// internal helpers shared by the hardness sources

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "slpkit/hardness.hpp"

namespace slpkit::detail {

inline std::uint64_t ipow(std::uint64_t a, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = checked_mul(r, a);
  return r;
}

// digits of idx in base `base`, most significant first
inline std::vector<std::uint32_t> tuple_of(std::uint64_t idx, std::uint32_t base, std::uint32_t k) {
  std::vector<std::uint32_t> t(k);
  for (std::uint32_t i = k; i-- > 0;) {
    t[i] = static_cast<std::uint32_t>(idx % base);
    idx /= base;
  }
  return t;
}

inline std::string digest(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 15];
    h >>= 4;
  }
  return out;
}

template <class T>
void prov(GeneratedInstance& g, const std::string& k, const T& v) {
  if constexpr (std::is_convertible_v<T, std::string>)
    g.provenance.emplace_back(k, std::string(v));
  else
    g.provenance.emplace_back(k, std::to_string(v));
}

// Source answer, or empty when the source is past the solver caps and
// uncertified output was requested.
inline std::optional<bool> source_answer(const std::function<bool()>& f, const GenOptions& opt) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == Errc::TooLarge && opt.uncertified) return std::nullopt;
    throw;
  }
}

// Cap on the decompressed size the oracle side would need.
inline void finish(GeneratedInstance& g, std::uint64_t N, const GenOptions& opt) {
  bool fits = N <= opt.max_decompress;
  if (!fits && !opt.uncertified)
    fail(Errc::TooLarge, g.reduction + ": target size " + std::to_string(N) + " exceeds the decompression cap " +
                             std::to_string(opt.max_decompress) + " (use uncertified output)");
  prov(g, "N", N);
  prov(g, "certified", (fits && g.expected.answer) ? "yes" : "no");
}

// padding chain: s rules, no sharing
inline std::uint32_t pad_chain(SlpBuilder& sb, Sym s, std::uint32_t rules) {
  std::uint32_t acc = SlpBuilder::kEps;
  if (rules == 0) return acc;
  std::uint32_t t = sb.term(s);
  acc = t;
  for (std::uint32_t i = 1; i < rules; ++i) acc = sb.cat(acc, t);
  return acc;
}

inline std::uint32_t pad_prefix(SlpBuilder& sb, Sym s, const GenOptions& opt) {
  return sb.cat(sb.pow(sb.term(s), opt.pad_text_length), pad_chain(sb, s, opt.pad_slp_size));
}

inline bool padded(const GenOptions& opt) { return opt.pad_text_length > 0 || opt.pad_slp_size > 0; }

// memoized runs sym^n
class Runs {
 public:
  explicit Runs(SlpBuilder& sb) : sb_(sb) {}
  std::uint32_t operator()(Sym s, std::uint64_t n) {
    if (n == 0) return SlpBuilder::kEps;
    auto key = std::make_pair(s, n);
    if (auto f = memo_.find(key); f != memo_.end()) return f->second;
    std::uint32_t h = sb_.pow(sb_.term(s), n);
    memo_.emplace(key, h);
    return h;
  }

 private:
  SlpBuilder& sb_;
  std::map<std::pair<Sym, std::uint64_t>, std::uint32_t> memo_;
};

// Incl / Twice / Adj families over the lexicographic k-tuples of V, with
// arbitrary handles standing in for the bits 0 and 1.
class TupleSlps {
 public:
  TupleSlps(SlpBuilder& sb, const Graph& g, std::uint32_t zero, std::uint32_t one)
      : sb_(sb), g_(g), zero_(zero), one_(one) {}

  std::uint32_t zeros(std::uint32_t d) {
    if (auto f = zeros_.find(d); f != zeros_.end()) return f->second;
    return zeros_[d] = sb_.pow(zero_, ipow(g_.V, d));
  }

  // 1 iff every vertex of S (sorted, may be empty) occurs in the tuple
  std::uint32_t incl(std::vector<std::uint32_t> S, std::uint32_t d) {
    auto key = std::make_pair(S, d);
    if (auto f = incl_.find(key); f != incl_.end()) return f->second;
    std::uint32_t h;
    if (d == 0) {
      h = S.empty() ? one_ : zero_;
    } else if (S.size() > d) {
      h = zeros(d);
    } else {
      std::vector<std::uint32_t> parts;
      for (std::uint32_t v = 0; v < g_.V; ++v) {
        std::vector<std::uint32_t> rest;
        for (auto u : S)
          if (u != v) rest.push_back(u);
        parts.push_back(incl(rest, d - 1));
      }
      h = sb_.cat(parts);
    }
    incl_.emplace(key, h);
    return h;
  }

  // 1 iff v occurs at least twice
  std::uint32_t twice(std::uint32_t v, std::uint32_t d) {
    auto key = std::make_pair(v, d);
    if (auto f = twice_.find(key); f != twice_.end()) return f->second;
    std::uint32_t h;
    if (d < 2) {
      h = zeros(d);
    } else {
      std::vector<std::uint32_t> parts;
      for (std::uint32_t u = 0; u < g_.V; ++u) parts.push_back(u == v ? incl({v}, d - 1) : twice(v, d - 1));
      h = sb_.cat(parts);
    }
    twice_.emplace(key, h);
    return h;
  }

  // 1 iff v is adjacent to every vertex of the tuple
  std::uint32_t adj(std::uint32_t v, std::uint32_t d) {
    auto key = std::make_pair(v, d);
    if (auto f = adj_.find(key); f != adj_.end()) return f->second;
    std::uint32_t h;
    if (d == 0) {
      h = one_;
    } else {
      std::vector<std::uint32_t> parts;
      for (std::uint32_t u = 0; u < g_.V; ++u) parts.push_back(g_.adjacent(u, v) ? adj(v, d - 1) : zeros(d - 1));
      h = sb_.cat(parts);
    }
    adj_.emplace(key, h);
    return h;
  }

 private:
  SlpBuilder& sb_;
  const Graph& g_;
  std::uint32_t zero_, one_;
  std::map<std::uint32_t, std::uint32_t> zeros_;
  std::map<std::pair<std::vector<std::uint32_t>, std::uint32_t>, std::uint32_t> incl_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> twice_, adj_;
};

// For k >= 2 a tuple may repeat a vertex; the pairs {v, v} are then
// checked like non-edges so that only k distinct vertices pass.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> clique_test_pairs(const Graph& g, std::uint32_t k) {
  auto ne = g.non_edges();
  if (k >= 2)
    for (std::uint32_t v = 0; v < g.V; ++v) ne.emplace_back(v, v);
  return ne;
}

inline std::uint32_t test_pair_row(TupleSlps& ts, std::pair<std::uint32_t, std::uint32_t> e, std::uint32_t k) {
  if (e.first == e.second) return ts.twice(e.first, k);
  return ts.incl({e.first, e.second}, k);
}

}  // namespace slpkit::detail
