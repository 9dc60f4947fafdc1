#include <algorithm>
#include <cstdio>
#include <sstream>

#include "commands.hpp"
#include "slpkit/automata.hpp"
#include "slpkit/seqcmp.hpp"

namespace slpkit::cli {

namespace {

const Alphabet& ab() {
  static const Alphabet a = Alphabet::of("ab");
  return a;
}

Slp make_text(const std::string& gen, std::uint64_t scale, std::mt19937_64& rng) {
  if (gen == "ab-power") {
    if (scale < 1 || scale > 62) throw Usage("ab-power scale is log2 N in [1, 62]");
    return repeat(from_literal("ab", ab()), std::uint64_t{1} << (scale - 1));
  }
  if (gen == "fib") {
    if (scale < 1 || scale > 88) throw Usage("fib scale is the word index in [1, 88]");
    SlpBuilder sb(ab());
    std::uint32_t prev = sb.term(1), cur = sb.term(0);
    if (scale == 1) return sb.build(prev);
    for (std::uint64_t i = 2; i < scale; ++i) {
      std::uint32_t nx = sb.cat(cur, prev);
      prev = cur;
      cur = nx;
    }
    return sb.build(cur);
  }
  if (gen == "random") {
    if (scale < 1 || scale > (std::uint64_t{1} << 26)) throw Usage("random scale is the length in [1, 2^26]");
    std::bernoulli_distribution coin(0.5);
    Str s(scale);
    for (auto& c : s) c = coin(rng);
    return from_literal(s, ab());
  }
  throw Usage("unknown generator '" + gen + "' (ab-power, fib, random)");
}

Slp swapped(const Slp& t) { return substitute(t, {Str{1}, Str{0}}, ab()); }

Str short_pattern(std::size_t len) {
  Str p;
  const Str unit = {0, 1, 1, 0};
  while (p.size() < len) p.push_back(unit[p.size() % unit.size()]);
  return p;
}

// b-count modulo 8
Dfa mod8_dfa() {
  std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>> tr;
  for (std::uint32_t s = 0; s < 8; ++s) {
    tr.emplace_back(s, 0, s);
    tr.emplace_back(s, 1, (s + 1) % 8);
  }
  return Dfa::complete(8, 2, 0, {0}, tr);
}

// contains "abbaaba"
Nfa factor_nfa() {
  const Str w = {0, 1, 1, 0, 0, 1, 0};
  std::vector<std::tuple<std::uint32_t, Sym, std::uint32_t>> e;
  const std::uint32_t q = static_cast<std::uint32_t>(w.size()) + 1;
  for (Sym a : {0u, 1u}) {
    e.emplace_back(0, a, 0);
    e.emplace_back(q - 1, a, q - 1);
  }
  for (std::uint32_t i = 0; i < w.size(); ++i) e.emplace_back(i, w[i], i + 1);
  return Nfa::make(q, 2, 0, {q - 1}, e);
}

struct Case {
  std::function<std::string()> compressed;
  std::function<std::string()> decompressed;
};

Case make_case(const std::string& algo, const Slp& T, std::uint64_t cap) {
  auto yn = [](bool b) { return std::string(b ? "accept" : "reject"); };
  if (algo == "dfa-accept") {
    auto d = std::make_shared<Dfa>(mod8_dfa());
    return {[=] { return yn(dfa_accept(T, *d)); }, [=] { return yn(accept_decompressed(eval(T, cap), *d)); }};
  }
  if (algo == "nfa-accept") {
    auto n = std::make_shared<Nfa>(factor_nfa());
    return {[=] { return yn(nfa_accept(T, *n)); }, [=] { return yn(accept_decompressed(eval(T, cap), *n)); }};
  }
  if (algo == "gpm" || algo == "substring-hd") {
    Str p = short_pattern(std::min<std::uint64_t>(32, T.length()));
    CostFn c = CostFn::hamming(2);
    auto dec = [=] { return std::to_string(gpm_decompressed(eval(T, cap), p, c).min_cost); };
    if (algo == "gpm") return {[=] { return std::to_string(gpm_compressed(T, p, c).min_cost); }, dec};
    Slp P = from_literal(p, ab());
    return {[=] { return std::to_string(substring_hd(T, P)); }, dec};
  }
  if (algo == "hamming" || algo == "disjointness") {
    Slp P = swapped(T);
    if (algo == "hamming")
      return {[=] { return std::to_string(hamming_recursive(P, T)); },
              [=] {
                Str p = eval(P, cap), t = eval(T, cap);
                std::uint64_t d = 0;
                for (std::size_t i = 0; i < p.size(); ++i) d += p[i] != t[i];
                return std::to_string(d);
              }};
    return {[=] { return yn(disjointness(P, T)); },
            [=] {
              Str p = eval(P, cap), t = eval(T, cap);
              bool dis = true;
              for (std::size_t i = 0; i < p.size() && dis; ++i) dis = !(p[i] && t[i]);
              return yn(dis);
            }};
  }
  if (algo == "subsequence") {
    Slp P = repeat(from_literal("ab", ab()), 32);
    return {[=] { return yn(subsequence_recursive(P, T)); },
            [=] {
              Str p = eval(P, cap), t = eval(T, cap);
              std::size_t i = 0;
              for (std::size_t j = 0; j < t.size() && i < p.size(); ++j) i += t[j] == p[i];
              return yn(i == p.size());
            }};
  }
  throw Usage("unknown bench algorithm '" + algo + "' (dfa-accept, nfa-accept, gpm, substring-hd, hamming, disjointness, subsequence)");
}

double median_time(const std::function<std::string()>& f, std::uint32_t runs, std::string& answer) {
  std::vector<double> ts;
  for (std::uint32_t i = 0; i < runs; ++i) {
    Timer t;
    answer = f();
    ts.push_back(t.seconds());
  }
  std::sort(ts.begin(), ts.end());
  return ts[ts.size() / 2];
}

std::string fmt_time(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", s);
  return buf;
}

}  // namespace

int cmd_bench(Context& ctx, const BenchArgs& a) {
  std::istringstream is(read_file(a.suite));
  struct Line {
    std::string name, gen, algo;
    std::uint64_t scale;
  };
  std::vector<Line> lines;
  std::size_t no = 0;
  for (std::string line; std::getline(is, line);) {
    ++no;
    auto h = line.find('#');
    if (h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    Line l;
    if (!(ls >> l.name)) continue;
    std::string extra;
    if (!(ls >> l.gen >> l.scale >> l.algo) || (ls >> extra))
      throw Usage(a.suite + ":" + std::to_string(no) + ": expected 'case generator scale algorithm'");
    lines.push_back(l);
  }
  ctx.out << "case,n,N,t_compressed,t_decompress_solve,answer_compressed,answer_decompressed\n";
  StatsSink sink(ctx.g.stats, ctx.err);
  int code = kOk;
  const std::uint32_t runs = std::max(1u, a.runs);
  for (const auto& l : lines) {
    std::mt19937_64 rng(ctx.g.seed);
    Slp T = make_text(l.gen, l.scale, rng);
    Case c = make_case(l.algo, T, ctx.g.max_decompress);
    std::string ac, ad = "-";
    const double tc = median_time(c.compressed, runs, ac);
    std::string td = "infeasible";
    if (T.length() <= ctx.g.max_decompress) {
      td = fmt_time(median_time(c.decompressed, runs, ad));
      if (ad != ac) code = kDisagree;
    }
    ctx.out << l.name << ',' << T.size() << ',' << T.length() << ',' << fmt_time(tc) << ',' << td << ',' << ac << ','
            << ad << '\n'
            << std::flush;
    sink.put({{"command", "bench"}, {"case", l.name}, {"n", T.size()}, {"N", T.length()}, {"t_compressed", tc},
              {"t_decompress_solve", td}});
  }
  return code;
}

}  // namespace slpkit::cli
