#include <algorithm>

#include "commands.hpp"
#include "slpkit/automata.hpp"
#include "slpkit/cfg.hpp"
#include "slpkit/rna.hpp"
#include "slpkit/seqcmp.hpp"

namespace slpkit::cli {

namespace fs = std::filesystem;

namespace {

struct Loaded {
  std::uint64_t n = 0, N = 0;
  void count(const Slp& s) {
    n += s.size();
    N = checked_add(N, s.length());
  }
};

std::string yes_no(bool b) { return b ? "accept" : "reject"; }

// with no alphabet file on either side, both sides share one alphabet
// inferred from their glyphs; a side with its own file keeps it and the
// other side follows it. "*" is the wildcard when asked for.
std::pair<Slp, Slp> load_two(const fs::path& tp, const fs::path& pp, const std::optional<Alphabet>& forced,
                             bool wildcard) {
  auto with_star = [&](Alphabet a) {
    if (!wildcard || a.find("*")) return a;
    std::vector<std::string> g = a.glyphs;
    if (g.empty())
      for (Sym s = 0; s < a.size; ++s) g.push_back(std::to_string(s));
    g.emplace_back("*");
    return Alphabet(static_cast<std::uint32_t>(g.size()), g);
  };
  std::optional<Alphabet> ta = forced ? forced : sibling_alpha(tp);
  if (sibling_alpha(pp)) return {load_slp(tp, ta), load_slp(pp)};
  if (ta) return {load_slp(tp, ta), load_slp(pp, with_star(*ta))};
  std::set<std::string> g = file_glyphs(tp);
  g.merge(file_glyphs(pp));
  g.erase("*");
  Alphabet shared = infer_alphabet(g);
  return {load_slp(tp, shared), load_slp(pp, with_star(shared))};
}

Automaton load_automaton(const fs::path& p) { return parse_automaton(read_file(p)); }

// plain glyph-equality costs between pattern and text alphabets
CostFn glyph_costs(const Slp& P, const Slp& T, std::optional<Sym> wildcard) {
  CostFn c(P.alphabet().size, T.alphabet().size);
  for (Sym p = 0; p < c.sigma_p; ++p)
    for (Sym t = 0; t < c.sigma_t; ++t) c.at(p, t) = (wildcard && p == *wildcard) ? 0 : (p != t);
  c.wildcard = wildcard;
  return c;
}

bool greedy_subsequence(const Str& p, const Str& t) {
  std::size_t i = 0;
  for (std::size_t j = 0; j < t.size() && i < p.size(); ++j)
    if (t[j] == p[i]) ++i;
  return i == p.size();
}

PairedAlphabet load_pairing(const fs::path& p) { return parse_pairing(read_file(p)); }

Str load_fold_text(const fs::path& p, const PairedAlphabet& pa, std::uint64_t cap, Loaded& ld) {
  const std::string text = read_file(p);
  auto a = text.find_first_not_of(" \t\r\n");
  if (a != std::string::npos && text[a] == 'S' && text.find('=') != std::string::npos) {
    Slp s = parse_slp(text, &pa.base);
    ld.count(s);
    return eval(s, cap);
  }
  Str s = parse_tokens(text, pa.base);
  ld.n += s.size();
  ld.N += s.size();
  return s;
}

struct Algo {
  std::string name;
  std::size_t files;
  std::string usage;
};

const std::vector<Algo>& algos() {
  static const std::vector<Algo> a = {
      {"dfa-accept", 2, "TEXT DFA"},
      {"nfa-accept", 2, "TEXT NFA"},
      {"accept", 2, "TEXT AUTOMATON"},
      {"gpm", 3, "TEXT PATTERN COSTS"},
      {"wildcard-pm", 2, "TEXT PATTERN"},
      {"substring-hd", 2, "TEXT PATTERN"},
      {"cfg", 2, "TEXT GRAMMAR"},
      {"rna-fold", 2, "TEXT PAIRING"},
      {"wrna-fold", 2, "TEXT PAIRING"},
      {"subsequence", 2, "PATTERN TEXT"},
      {"subsequence-avl", 2, "PATTERN TEXT"},
      {"hamming", 2, "P T"},
      {"disjointness", 2, "P T"},
      {"lcs", 2, "X Y"},
      {"bundle", 1, "DIR"},
  };
  return a;
}

}  // namespace

std::string solve_algorithms_help() {
  std::string s;
  for (const auto& a : algos()) s += "  " + a.name + " " + a.usage + "\n";
  return s;
}

int cmd_solve(Context& ctx, const SolveArgs& args) {
  auto it = std::find_if(algos().begin(), algos().end(), [&](const Algo& a) { return a.name == args.algorithm; });
  if (it == algos().end()) throw Usage("unknown algorithm '" + args.algorithm + "'; known:\n" + solve_algorithms_help());
  if (args.files.size() != it->files)
    throw Usage(args.algorithm + " expects " + std::to_string(it->files) + " file(s): " + it->usage);
  const std::string& A = args.algorithm;
  const auto& f = args.files;
  const std::uint64_t cap = ctx.g.max_decompress;
  const bool oracle = args.oracle;
  std::optional<Alphabet> forced;
  if (!args.alpha.empty()) forced = read_alpha(args.alpha);

  Loaded ld;
  nlohmann::json extra = nlohmann::json::object();
  std::string result;
  Timer timer;

  if (A == "dfa-accept" || A == "nfa-accept" || A == "accept") {
    Slp T = load_slp(f[0], forced);
    ld.count(T);
    Automaton au = load_automaton(f[1]);
    if (A == "dfa-accept" && !std::holds_alternative<Dfa>(au)) throw Usage("dfa-accept needs a dfa file");
    if (A == "nfa-accept" && !std::holds_alternative<Nfa>(au)) throw Usage("nfa-accept needs an nfa file");
    std::visit([&](const auto& m) { extra["q"] = m.q; }, au);
    result = yes_no(oracle ? accept_decompressed(eval(T, cap), au) : accept(T, au));
  } else if (A == "gpm") {
    auto [T, P] = load_two(f[0], f[1], forced, false);
    ld.count(T);
    ld.count(P);
    CostFn c = parse_costs(read_file(f[2]));
    Str p = eval(P, cap);
    MatchResult m = oracle ? gpm_decompressed(eval(T, cap), p, c) : gpm_compressed(T, p, c);
    extra["offset"] = m.best_offset;
    result = std::to_string(m.min_cost);
  } else if (A == "wildcard-pm" || A == "substring-hd") {
    const bool wc = A == "wildcard-pm";
    auto [T, P] = load_two(f[0], f[1], forced, wc);
    ld.count(T);
    ld.count(P);
    if (oracle) {
      std::optional<Sym> w = wc ? P.alphabet().find("*") : std::nullopt;
      Str t = eval(T, cap), p = eval(P, cap);
      if (p.size() > t.size()) throw Usage("pattern longer than text");
      auto m = gpm_decompressed(t, p, glyph_costs(P, T, w));
      result = wc ? yes_no(m.min_cost == 0) : std::to_string(m.min_cost);
    } else {
      result = wc ? yes_no(wildcard_match(T, P)) : std::to_string(substring_hd(T, P));
    }
  } else if (A == "cfg") {
    Slp T = load_slp(f[0], forced);
    ld.count(T);
    Cfg G = parse_grammar(read_file(f[1]), T.alphabet());
    extra["grammar"] = G.size();
    result = yes_no(cfg_recognize(eval(T, cap), G));
  } else if (A == "rna-fold" || A == "wrna-fold") {
    PairedAlphabet pa = load_pairing(f[1]);
    Str t = load_fold_text(f[0], pa, cap, ld);
    FoldOptions fo;
    fo.max_len = cap;
    std::uint64_t v = 0;
    if (A == "rna-fold")
      v = rna_fold(t, pa, fo);
    else
      v = oracle ? rna_fold(expand_weights(t, pa, cap), pa, fo) : wrna_fold(t, pa, fo);
    result = std::to_string(v);
  } else if (A == "subsequence" || A == "subsequence-avl" || A == "hamming" || A == "disjointness") {
    auto [T, P] = load_two(f[1], f[0], forced, false);
    ld.count(P);
    ld.count(T);
    if (oracle) {
      Str p = eval(P, cap), t = eval(T, cap);
      if (A == "hamming") {
        if (p.size() != t.size()) fail(Errc::UnequalLength, "hamming: lengths differ");
        std::uint64_t d = 0;
        for (std::size_t i = 0; i < p.size(); ++i) d += p[i] != t[i];
        result = std::to_string(d);
      } else if (A == "disjointness") {
        if (p.size() != t.size()) fail(Errc::UnequalLength, "disjointness: lengths differ");
        bool dis = true;
        for (std::size_t i = 0; i < p.size() && dis; ++i) dis = !(p[i] == 1 && t[i] == 1);
        result = yes_no(dis);
      } else {
        result = yes_no(greedy_subsequence(p, t));
      }
    } else if (A == "subsequence") {
      result = yes_no(subsequence_recursive(P, T));
    } else if (A == "subsequence-avl") {
      result = yes_no(subsequence_avl(T, eval(P, cap)));
    } else if (A == "hamming") {
      result = std::to_string(hamming_recursive(P, T));
    } else {
      result = yes_no(disjointness(P, T));
    }
  } else if (A == "lcs") {
    auto [X, Y] = load_two(f[0], f[1], forced, false);
    ld.count(X);
    ld.count(Y);
    LcsReport r = lcs_dp(eval(X, cap), eval(Y, cap));
    extra["lcs"] = r.L;
    result = std::to_string(r.delta);
  } else if (A == "bundle") {
    GeneratedInstance g = read_bundle(f[0]);
    for (const auto& [k, s] : g.payload.slps) ld.count(s);
    TargetResult r = solve_target(g, oracle, cap);
    extra["reduction"] = g.reduction;
    extra["answer"] = r.answer;
    result = r.value ? std::to_string(*r.value) : yes_no(r.answer);
  }

  const double secs = timer.seconds();
  ctx.out << result << '\n';
  StatsSink sink(ctx.g.stats, ctx.err);
  nlohmann::json j = {{"command", "solve"}, {"algorithm", A}, {"route", oracle ? "decompressed" : "compressed"},
                      {"n", ld.n},         {"N", ld.N},      {"time", secs},
                      {"result", result}};
  j.update(extra);
  sink.put(j);
  return kOk;
}

}  // namespace slpkit::cli
