#include "slpkit/matching.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <unordered_map>

namespace slpkit {

std::int64_t CostFn::max_cost() const {
  std::int64_t m = 0;
  for (auto c : table) m = std::max(m, c);
  return m;
}

void CostFn::validate() const {
  if (sigma_p == 0 || sigma_t == 0) fail(Errc::InvalidArgument, "cost table with empty alphabet");
  if (table.size() != std::size_t{sigma_p} * sigma_t) fail(Errc::InvalidArgument, "cost table has wrong shape");
  for (auto c : table)
    if (c < 0) fail(Errc::InvalidArgument, "negative cost");
  if (wildcard) {
    if (*wildcard >= sigma_p) fail(Errc::InvalidArgument, "wildcard outside pattern alphabet");
    for (Sym t = 0; t < sigma_t; ++t)
      if ((*this)(*wildcard, t) != 0) fail(Errc::InvalidArgument, "wildcard row must be all zero");
  }
}

CostFn CostFn::hamming(std::uint32_t sigma) {
  CostFn c(sigma, sigma);
  for (Sym p = 0; p < sigma; ++p)
    for (Sym t = 0; t < sigma; ++t) c.at(p, t) = p != t;
  return c;
}

CostFn CostFn::wildcard_match(std::uint32_t sigma) {
  CostFn c(sigma + 1, sigma);
  for (Sym p = 0; p < sigma; ++p)
    for (Sym t = 0; t < sigma; ++t) c.at(p, t) = p != t;
  c.wildcard = sigma;
  return c;
}

// ---- decompressed baseline

namespace {

// both are c 2^27 + 1; primitive roots 31 and 3
constexpr std::uint32_t kP1 = 2013265921, kP2 = 2281701377;
constexpr std::size_t kMaxNtt = std::size_t{1} << 27;

std::uint32_t root_of(std::uint32_t mod) { return mod == kP1 ? 31 : 3; }

std::uint32_t pw(std::uint64_t b, std::uint64_t e, std::uint32_t m) {
  std::uint64_t r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

void ntt(std::vector<std::uint32_t>& a, bool inv, std::uint32_t mod) {
  std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pw(root_of(mod), (mod - 1) / len, mod);
    if (inv) w = pw(w, mod - 2, mod);
    std::vector<std::uint32_t> ws(len / 2);
    ws[0] = 1;
    for (std::size_t k = 1; k < len / 2; ++k) ws[k] = static_cast<std::uint32_t>(ws[k - 1] * w % mod);
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        // mod > 2^31, so sums need 64 bits
        const std::uint64_t u = a[i + k];
        const std::uint64_t v = std::uint64_t{a[i + k + len / 2]} * ws[k] % mod;
        a[i + k] = static_cast<std::uint32_t>(u + v >= mod ? u + v - mod : u + v);
        a[i + k + len / 2] = static_cast<std::uint32_t>(u >= v ? u - v : u + mod - v);
      }
    }
  }
  if (inv) {
    std::uint64_t ni = pw(n, mod - 2, mod);
    for (auto& x : a) x = static_cast<std::uint32_t>(x * ni % mod);
  }
}

// sum over text symbols of correlation(indicator_t(T), cost(P[.], t)) mod `mod`
std::vector<std::uint32_t> correlate(const Str& T, const Str& P, const CostFn& cost, std::uint32_t mod,
                                     std::size_t L) {
  std::vector<std::uint32_t> acc(L, 0), a(L), b(L);
  for (Sym t = 0; t < cost.sigma_t; ++t) {
    bool any_t = false, any_c = false;
    for (Sym c : T) any_t |= c == t;
    for (Sym p : P) any_c |= cost(p, t) != 0;
    if (!any_t || !any_c) continue;
    std::fill(a.begin(), a.end(), 0);
    std::fill(b.begin(), b.end(), 0);
    for (std::size_t x = 0; x < T.size(); ++x) a[x] = T[x] == t;
    for (std::size_t j = 0; j < P.size(); ++j) b[P.size() - 1 - j] = static_cast<std::uint32_t>(cost(P[j], t) % mod);
    ntt(a, false, mod);
    ntt(b, false, mod);
    for (std::size_t i = 0; i < L; ++i) acc[i] = static_cast<std::uint32_t>((acc[i] + std::uint64_t{a[i]} * b[i]) % mod);
  }
  ntt(acc, true, mod);
  return acc;
}

void check_inputs(std::uint64_t N, const Str& P, const CostFn& cost, const MatchOptions& opt) {
  cost.validate();
  if (P.empty()) fail(Errc::EmptyString, "empty pattern");
  if (P.size() > N) fail(Errc::PatternLongerThanText, "pattern length " + std::to_string(P.size()) +
                                                          " exceeds text length " + std::to_string(N));
  if (P.size() > opt.max_pattern) fail(Errc::TooLarge, "pattern exceeds the configured cap");
  for (Sym p : P)
    if (p >= cost.sigma_p) fail(Errc::AlphabetMismatch, "pattern symbol outside cost table");
}

}  // namespace

std::vector<std::int64_t> alignment_costs(const Str& T, const Str& P, const CostFn& cost, const MatchOptions& opt) {
  check_inputs(T.size(), P, cost, opt);
  for (Sym t : T)
    if (t >= cost.sigma_t) fail(Errc::AlphabetMismatch, "text symbol outside cost table");
  std::size_t N = T.size(), M = P.size();
  std::vector<std::int64_t> out(N - M + 1, 0);
  // exactness: every total is at most M * max_cost; the two primes cover about 4.6e18
  long double bound = static_cast<long double>(M) * static_cast<long double>(cost.max_cost());
  bool fits = bound < 4.0e18L;
  std::size_t L = 1;
  while (L < N + M - 1) L <<= 1;
  if (static_cast<std::uint64_t>(N) * M <= opt.direct_cells || M <= opt.direct_pattern || !fits || L > kMaxNtt) {
    for (std::size_t i = 0; i + M <= N; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < M; ++j) s += cost(P[j], T[i + j]);
      out[i] = s;
    }
    return out;
  }
  auto r1 = correlate(T, P, cost, kP1, L);
  auto r2 = correlate(T, P, cost, kP2, L);
  // CRT: x = r1 + kP1 * ((r2 - r1) * inv(kP1) mod kP2)
  const std::uint64_t inv1 = pw(kP1, kP2 - 2, kP2);
  for (std::size_t i = 0; i + M <= N; ++i) {
    std::uint64_t a = r1[i + M - 1], b = r2[i + M - 1];
    std::uint64_t d = (b + kP2 - a % kP2) % kP2 * inv1 % kP2;
    out[i] = static_cast<std::int64_t>(a + std::uint64_t{kP1} * d);
  }
  return out;
}

MatchResult gpm_decompressed(const Str& T, const Str& P, const CostFn& cost, const MatchOptions& opt) {
  auto all = alignment_costs(T, P, cost, opt);
  MatchResult r{all[0], 0};
  for (std::size_t i = 1; i < all.size(); ++i)
    if (all[i] < r.min_cost) r = {all[i], i};
  return r;
}

// ---- compressed

namespace {

class Gpm {
 public:
  Gpm(const Slp& T, const Str& P, const CostFn& c)
      : T_(T), P_(P), c_(c), M_(static_cast<std::int64_t>(P.size())), keys_(T.size(), 0) {}

  // Cost of P placed at offset d relative to rule x, over the overlap only.
  std::int64_t fix(std::uint32_t x, std::int64_t d) {
    std::int64_t L = static_cast<std::int64_t>(T_.len(x));
    if (d >= L || d + M_ <= 0) return 0;
    const Rule& r = T_.rule(x);
    if (r.terminal()) return c_(P_[static_cast<std::size_t>(-d)], r.sym());
    std::int64_t slot;
    if (L < M_)
      slot = d + M_;
    else if (d <= 0)
      slot = d + M_;
    else if (d > L - M_)
      slot = d - (L - M_) + M_;
    else
      slot = -1;
    if (slot < 0) return fix_raw(r, d);  // not reached from Match
    std::uint64_t key = std::uint64_t{x} * static_cast<std::uint64_t>(2 * M_ + 1) + static_cast<std::uint64_t>(slot);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::int64_t v = fix_raw(r, d);
    memo_.emplace(key, v);
    max_new_ = std::max<std::uint64_t>(max_new_, ++keys_[x]);
    return v;
  }

  MatchResult run(GpmStats* st) {
    const std::size_t n = T_.size();
    std::vector<MatchResult> best(n);
    std::vector<char> has(n, 0);
    std::uint64_t M = static_cast<std::uint64_t>(M_);
    for (std::uint32_t i = 0; i < n; ++i) {
      const Rule& r = T_.rule(i);
      std::uint64_t L = T_.len(i);
      if (L < M) continue;
      if (r.terminal()) {  // M == 1
        best[i] = {c_(P_[0], r.sym()), 0};
        has[i] = 1;
        continue;
      }
      std::uint64_t Ll = T_.len(r.left);
      MatchResult b{std::numeric_limits<std::int64_t>::max(), 0};
      bool any = false;
      if (has[r.left]) b = best[r.left], any = true;
      std::uint64_t lo = Ll + 1 > M ? Ll + 1 - M : 0;
      std::uint64_t hi = std::min(Ll - 1, L - M);
      for (std::uint64_t s = lo; s <= hi && lo <= hi; ++s) {
        std::int64_t sd = static_cast<std::int64_t>(s);
        std::int64_t v = fix(r.left, sd) + fix(r.right, sd - static_cast<std::int64_t>(Ll));
        if (!any || v < b.min_cost) b = {v, s}, any = true;
      }
      if (has[r.right] && (!any || best[r.right].min_cost < b.min_cost))
        b = {best[r.right].min_cost, best[r.right].best_offset + Ll}, any = true;
      best[i] = b;
      has[i] = any;
    }
    if (st) {
      st->fixmatch_keys = memo_.size();
      st->max_keys_per_rule = max_new_;
    }
    return best[T_.start()];
  }

 private:
  std::int64_t fix_raw(const Rule& r, std::int64_t d) {
    return fix(r.left, d) + fix(r.right, d - static_cast<std::int64_t>(T_.len(r.left)));
  }

  const Slp& T_;
  const Str& P_;
  const CostFn& c_;
  std::int64_t M_;
  std::unordered_map<std::uint64_t, std::int64_t> memo_;
  std::vector<std::uint32_t> keys_;  // memo entries per rule
  std::uint64_t max_new_ = 0;
};

}  // namespace

MatchResult gpm_compressed(const Slp& T, const Str& P, const CostFn& cost, const MatchOptions& opt, GpmStats* st) {
  if (T.empty()) fail(Errc::EmptyString, "empty text");
  check_inputs(T.length(), P, cost, opt);
  if (T.alphabet().size > cost.sigma_t) fail(Errc::AlphabetMismatch, "text alphabet larger than cost table");
  Gpm g(T, P, cost);
  return g.run(st);
}

bool wildcard_match(const Slp& T, const Slp& P, std::optional<Sym> wildcard, const MatchOptions& opt) {
  if (P.length() > T.length()) fail(Errc::PatternLongerThanText, "pattern longer than text");
  if (!wildcard) wildcard = P.alphabet().find("*");
  Str p = eval(P, opt.max_pattern);
  std::uint32_t st = T.alphabet().size;
  CostFn c(P.alphabet().size, st);
  for (Sym a = 0; a < c.sigma_p; ++a)
    for (Sym t = 0; t < st; ++t) c.at(a, t) = (wildcard && a == *wildcard) ? 0 : (a != t);
  c.wildcard = wildcard;
  return gpm_compressed(T, p, c, opt).min_cost == 0;
}

std::int64_t substring_hd(const Slp& T, const Slp& P, const MatchOptions& opt) {
  if (T.alphabet().size != P.alphabet().size) fail(Errc::AlphabetMismatch, "text and pattern alphabets differ");
  if (P.length() > T.length()) fail(Errc::PatternLongerThanText, "pattern longer than text");
  Str p = eval(P, opt.max_pattern);
  return gpm_compressed(T, p, CostFn::hamming(T.alphabet().size), opt).min_cost;
}

// ---- text form

std::string emit_costs(const CostFn& c) {
  std::ostringstream os;
  os << "costs " << c.sigma_p << ' ' << c.sigma_t << '\n';
  for (Sym p = 0; p < c.sigma_p; ++p) {
    for (Sym t = 0; t < c.sigma_t; ++t) os << (t ? " " : "") << c(p, t);
    os << '\n';
  }
  if (c.wildcard) os << "wildcard " << *c.wildcard << '\n';
  return os.str();
}

CostFn parse_costs(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  std::size_t ln = 0;
  CostFn c;
  bool header = false;
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++ln;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    std::istringstream ls(line);
    auto bad = [&](const std::string& m) { fail(Errc::ParseError, "line " + std::to_string(ln) + ": " + m); };
    if (!header) {
      std::string kw;
      ls >> kw >> c.sigma_p >> c.sigma_t;
      if (kw != "costs" || !ls || c.sigma_p == 0 || c.sigma_t == 0) bad("expected 'costs <sigmaP> <sigmaT>'");
      c.table.assign(std::size_t{c.sigma_p} * c.sigma_t, 0);
      header = true;
      continue;
    }
    if (line.compare(a, 8, "wildcard") == 0) {
      std::string kw;
      Sym w;
      ls >> kw >> w;
      if (!ls) bad("expected 'wildcard <index>'");
      c.wildcard = w;
      continue;
    }
    if (rows >= c.sigma_p) bad("too many rows");
    for (Sym t = 0; t < c.sigma_t; ++t) {
      std::int64_t v;
      if (!(ls >> v)) bad("expected " + std::to_string(c.sigma_t) + " integers");
      c.at(static_cast<Sym>(rows), t) = v;
    }
    std::string extra;
    if (ls >> extra) bad("trailing text");
    ++rows;
  }
  if (!header) fail(Errc::ParseError, "missing 'costs' header");
  if (rows != c.sigma_p) fail(Errc::ParseError, "expected " + std::to_string(c.sigma_p) + " rows");
  c.validate();
  return c;
}

}  // namespace slpkit
