#include "slpkit/automata.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <sstream>

namespace slpkit {

// ---- Dfa

Dfa Dfa::complete(std::uint32_t q, std::uint32_t sigma, std::uint32_t start, const std::vector<std::uint32_t>& accept,
                  const std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>>& trans) {
  if (q == 0 || sigma == 0) fail(Errc::InvalidArgument, "automaton needs at least one state and symbol");
  constexpr std::uint32_t kNone = 0xffffffffu;
  std::vector<std::uint32_t> d(std::size_t{q} * sigma, kNone);
  for (auto [s, a, t] : trans) {
    if (s >= q || t >= q) fail(Errc::InvalidArgument, "transition state out of range");
    if (a >= sigma) fail(Errc::SymbolOutOfRange, "transition symbol out of range");
    auto& slot = d[std::size_t{s} * sigma + a];
    if (slot != kNone && slot != t) fail(Errc::InvalidArgument, "two transitions for one (state, symbol) in a DFA");
    slot = t;
  }
  bool missing = std::find(d.begin(), d.end(), kNone) != d.end();
  Dfa out;
  out.q = q + (missing ? 1 : 0);
  out.sigma = sigma;
  out.start = start;
  out.accepting.assign(out.q, 0);
  for (auto s : accept) {
    if (s >= q) fail(Errc::InvalidArgument, "accepting state out of range");
    out.accepting[s] = 1;
  }
  if (missing) {
    for (auto& x : d)
      if (x == kNone) x = q;
    for (Sym a = 0; a < sigma; ++a) d.push_back(q);
  }
  out.delta = std::move(d);
  out.validate();
  return out;
}

void Dfa::validate() const {
  if (start >= q) fail(Errc::InvalidArgument, "start state out of range");
  if (accepting.size() != q || delta.size() != std::size_t{q} * sigma) fail(Errc::InvalidArgument, "DFA shape");
  for (auto t : delta)
    if (t >= q) fail(Errc::InvalidArgument, "DFA transition out of range");
}

// ---- BitMatrix

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
  BitMatrix c(n_);
  for (std::uint32_t i = 0; i < n_; ++i) {
    const std::uint64_t* a = row(i);
    std::uint64_t* out = c.row(i);
    for (std::uint32_t wi = 0; wi < w_; ++wi) {
      std::uint64_t bits = a[wi];
      while (bits) {
        std::uint32_t k = wi * 64 + static_cast<std::uint32_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* b = o.row(k);
        for (std::uint32_t x = 0; x < w_; ++x) out[x] |= b[x];
      }
    }
  }
  return c;
}

// ---- Nfa

Nfa Nfa::make(std::uint32_t q, std::uint32_t sigma, std::uint32_t start, const std::vector<std::uint32_t>& accept,
              const std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>>& edges) {
  if (q == 0 || sigma == 0) fail(Errc::InvalidArgument, "automaton needs at least one state and symbol");
  Nfa n;
  n.q = q;
  n.sigma = sigma;
  n.start = start;
  n.accepting.assign(q, 0);
  for (auto s : accept) {
    if (s >= q) fail(Errc::InvalidArgument, "accepting state out of range");
    n.accepting[s] = 1;
  }
  n.trans.assign(sigma, BitMatrix(q));
  for (auto [s, a, t] : edges) {
    if (s >= q || t >= q) fail(Errc::InvalidArgument, "transition state out of range");
    if (a >= sigma) fail(Errc::SymbolOutOfRange, "transition symbol out of range");
    n.trans[a].set(s, t);
  }
  n.validate();
  return n;
}

std::size_t Nfa::transition_count() const {
  std::size_t c = 0;
  for (auto& m : trans)
    for (std::uint32_t i = 0; i < q; ++i)
      for (std::uint32_t w = 0; w < m.words(); ++w) c += std::popcount(m.row(i)[w]);
  return c;
}

void Nfa::validate() const {
  if (start >= q) fail(Errc::InvalidArgument, "start state out of range");
  if (accepting.size() != q || trans.size() != sigma) fail(Errc::InvalidArgument, "NFA shape");
  for (auto& m : trans)
    if (m.n() != q) fail(Errc::InvalidArgument, "NFA matrix dimension");
}

// ---- acceptance

namespace {

void check_alpha(const Slp& T, std::uint32_t sigma) {
  if (T.empty()) fail(Errc::EmptyString, "empty text");
  for (const Rule& r : T.rules())
    if (r.terminal() && r.sym() >= sigma)
      fail(Errc::AlphabetMismatch, "text symbol " + std::to_string(r.sym()) + " outside automaton alphabet");
}

// last rule index that reads each rule (rules are only needed until then)
std::vector<std::uint32_t> last_use(const Slp& T) {
  std::vector<std::uint32_t> lu(T.size(), 0);
  for (std::uint32_t i = 0; i < T.size(); ++i) {
    const Rule& r = T.rule(i);
    if (!r.terminal()) lu[r.left] = lu[r.right] = i;
  }
  lu[T.start()] = T.start();
  return lu;
}

std::vector<std::vector<std::uint32_t>> dfa_functions(const Slp& T, const Dfa& dfa, std::uint32_t upto) {
  std::vector<std::vector<std::uint32_t>> f(upto + 1);
  auto lu = last_use(T);
  for (std::uint32_t i = 0; i <= upto; ++i) {
    const Rule& r = T.rule(i);
    auto& fi = f[i];
    fi.resize(dfa.q);
    if (r.terminal()) {
      for (std::uint32_t s = 0; s < dfa.q; ++s) fi[s] = dfa.next(s, r.sym());
    } else {
      const auto& fl = f[r.left];
      const auto& fr = f[r.right];
      for (std::uint32_t s = 0; s < dfa.q; ++s) fi[s] = fr[fl[s]];
      for (auto c : {r.left, r.right})
        if (lu[c] == i && c != upto) std::vector<std::uint32_t>().swap(f[c]);
    }
  }
  return f;
}

std::vector<BitMatrix> nfa_matrices(const Slp& T, const Nfa& nfa, std::uint32_t upto) {
  std::vector<BitMatrix> m(upto + 1);
  auto lu = last_use(T);
  for (std::uint32_t i = 0; i <= upto; ++i) {
    const Rule& r = T.rule(i);
    if (r.terminal()) {
      m[i] = nfa.trans[r.sym()];
    } else {
      m[i] = m[r.left] * m[r.right];
      for (auto c : {r.left, r.right})
        if (lu[c] == i && c != upto) m[c] = BitMatrix();
    }
  }
  return m;
}

}  // namespace

bool dfa_accept(const Slp& T, const Dfa& dfa) {
  check_alpha(T, dfa.sigma);
  auto f = dfa_functions(T, dfa, T.start());
  return dfa.accepting[f[T.start()][dfa.start]];
}

bool nfa_accept(const Slp& T, const Nfa& nfa) {
  check_alpha(T, nfa.sigma);
  auto m = nfa_matrices(T, nfa, T.start());
  const BitMatrix& A = m[T.start()];
  for (std::uint32_t t = 0; t < nfa.q; ++t)
    if (nfa.accepting[t] && A.get(nfa.start, t)) return true;
  return false;
}

std::vector<std::uint32_t> dfa_rule_function(const Slp& T, const Dfa& dfa, std::uint32_t rule) {
  check_alpha(T, dfa.sigma);
  return dfa_functions(T, dfa, rule)[rule];
}

BitMatrix nfa_rule_matrix(const Slp& T, const Nfa& nfa, std::uint32_t rule) {
  check_alpha(T, nfa.sigma);
  return nfa_matrices(T, nfa, rule)[rule];
}

bool accept_decompressed(const Str& text, const Dfa& dfa) {
  std::uint32_t s = dfa.start;
  for (Sym a : text) {
    if (a >= dfa.sigma) fail(Errc::AlphabetMismatch, "text symbol outside automaton alphabet");
    s = dfa.next(s, a);
  }
  return dfa.accepting[s];
}

bool accept_decompressed(const Str& text, const Nfa& nfa) {
  std::uint32_t W = (nfa.q + 63) / 64;
  std::vector<std::uint64_t> cur(W, 0), nxt(W);
  cur[nfa.start / 64] |= std::uint64_t{1} << (nfa.start % 64);
  for (Sym a : text) {
    if (a >= nfa.sigma) fail(Errc::AlphabetMismatch, "text symbol outside automaton alphabet");
    std::fill(nxt.begin(), nxt.end(), 0);
    const BitMatrix& M = nfa.trans[a];
    for (std::uint32_t wi = 0; wi < W; ++wi) {
      std::uint64_t bits = cur[wi];
      while (bits) {
        std::uint32_t k = wi * 64 + static_cast<std::uint32_t>(std::countr_zero(bits));
        bits &= bits - 1;
        const std::uint64_t* row = M.row(k);
        for (std::uint32_t x = 0; x < W; ++x) nxt[x] |= row[x];
      }
    }
    cur.swap(nxt);
  }
  for (std::uint32_t t = 0; t < nfa.q; ++t)
    if (nfa.accepting[t] && ((cur[t / 64] >> (t % 64)) & 1)) return true;
  return false;
}

bool accept(const Slp& T, const Automaton& a) {
  return std::visit([&](const auto& x) {
    if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Dfa>)
      return dfa_accept(T, x);
    else
      return nfa_accept(T, x);
  }, a);
}

bool accept_decompressed(const Str& text, const Automaton& a) {
  return std::visit([&](const auto& x) { return accept_decompressed(text, x); }, a);
}

Dfa determinize(const Nfa& nfa, std::uint32_t max_states) {
  using Set = std::vector<std::uint64_t>;
  std::uint32_t W = (nfa.q + 63) / 64;
  std::map<Set, std::uint32_t> id;
  std::vector<Set> sets;
  Set s0(W, 0);
  s0[nfa.start / 64] |= std::uint64_t{1} << (nfa.start % 64);
  id[s0] = 0;
  sets.push_back(s0);
  std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>> tr;
  for (std::uint32_t i = 0; i < sets.size(); ++i) {
    for (Sym a = 0; a < nfa.sigma; ++a) {
      Set nx(W, 0);
      for (std::uint32_t k = 0; k < nfa.q; ++k)
        if ((sets[i][k / 64] >> (k % 64)) & 1) {
          const std::uint64_t* row = nfa.trans[a].row(k);
          for (std::uint32_t x = 0; x < W; ++x) nx[x] |= row[x];
        }
      auto [it, fresh] = id.emplace(nx, static_cast<std::uint32_t>(sets.size()));
      if (fresh) {
        if (sets.size() >= max_states) fail(Errc::TooLarge, "subset construction exceeds state cap");
        sets.push_back(nx);
      }
      tr.emplace_back(i, a, it->second);
    }
  }
  std::vector<std::uint32_t> acc;
  for (std::uint32_t i = 0; i < sets.size(); ++i)
    for (std::uint32_t t = 0; t < nfa.q; ++t)
      if (nfa.accepting[t] && ((sets[i][t / 64] >> (t % 64)) & 1)) {
        acc.push_back(i);
        break;
      }
  return Dfa::complete(static_cast<std::uint32_t>(sets.size()), nfa.sigma, 0, acc, tr);
}

// ---- text form

std::string emit_automaton(const Automaton& a) {
  std::ostringstream os;
  if (auto* d = std::get_if<Dfa>(&a)) {
    os << "dfa " << d->q << ' ' << d->sigma << ' ' << d->start << '\n' << "accept";
    for (std::uint32_t s = 0; s < d->q; ++s)
      if (d->accepting[s]) os << ' ' << s;
    os << '\n';
    for (std::uint32_t s = 0; s < d->q; ++s)
      for (Sym c = 0; c < d->sigma; ++c) os << s << ' ' << c << ' ' << d->next(s, c) << '\n';
  } else {
    const Nfa& n = std::get<Nfa>(a);
    os << "nfa " << n.q << ' ' << n.sigma << ' ' << n.start << '\n' << "accept";
    for (std::uint32_t s = 0; s < n.q; ++s)
      if (n.accepting[s]) os << ' ' << s;
    os << '\n';
    for (std::uint32_t s = 0; s < n.q; ++s)
      for (Sym c = 0; c < n.sigma; ++c)
        for (std::uint32_t t = 0; t < n.q; ++t)
          if (n.trans[c].get(s, t)) os << s << ' ' << c << ' ' << t << '\n';
  }
  return os.str();
}

Automaton parse_automaton(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line, kind;
  std::uint32_t q = 0, sigma = 0, start = 0;
  std::vector<std::uint32_t> acc;
  std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>> tr;
  int stage = 0;
  std::size_t ln = 0;
  while (std::getline(is, line)) {
    ++ln;
    std::size_t a = line.find_first_not_of(" \t\r");
    if (a == std::string::npos || line[a] == '#') continue;
    std::istringstream ls(line);
    auto bad = [&](const std::string& m) { fail(Errc::ParseError, "line " + std::to_string(ln) + ": " + m); };
    if (stage == 0) {
      ls >> kind >> q >> sigma >> start;
      if (!ls || (kind != "dfa" && kind != "nfa")) bad("expected 'dfa|nfa q sigma start'");
      stage = 1;
    } else if (stage == 1) {
      std::string kw;
      ls >> kw;
      if (kw != "accept") bad("expected 'accept' line");
      std::string tok;
      while (ls >> tok) {
        try {
          acc.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        } catch (...) {
          bad("bad state '" + tok + "'");
        }
      }
      stage = 2;
    } else {
      std::uint32_t s, t;
      Sym c;
      ls >> s >> c >> t;
      std::string extra;
      if (!ls || (ls >> extra)) bad("expected 's a t'");
      tr.emplace_back(s, c, t);
    }
  }
  if (stage < 2) fail(Errc::ParseError, "incomplete automaton");
  if (kind == "dfa") return Dfa::complete(q, sigma, start, acc, tr);
  return Nfa::make(q, sigma, start, acc, tr);
}

}  // namespace slpkit
