#include <sstream>

#include "commands.hpp"
#include "slpkit/automata.hpp"
#include "slpkit/cfg.hpp"
#include "slpkit/rna.hpp"

namespace slpkit::cli {

namespace fs = std::filesystem;

namespace {

SourceKind parse_kind(const std::string& k) {
  for (auto s : {SourceKind::Ov, SourceKind::Kov, SourceKind::Graph, SourceKind::Ksum})
    if (kind_name(s) == k) return s;
  throw Usage("unknown source kind '" + k + "' (ov, kov, graph, ksum)");
}

}  // namespace

int cmd_gen(Context& ctx, const GenArgs& a) {
  std::mt19937_64 rng(ctx.g.seed);
  if (a.reduction == "source") {
    if (a.kind.empty()) throw Usage("gen source needs --kind");
    Source s = random_source(parse_kind(a.kind), a.shape, rng);
    std::string text = emit_source(s);
    if (a.out_dir.empty())
      ctx.out << text;
    else
      write_file(a.out_dir, text);
    return kOk;
  }
  const Reduction* r = find_reduction(a.reduction);
  if (!r) throw Usage("unknown reduction '" + a.reduction + "'");
  if (a.out_dir.empty()) throw Usage("gen needs -o DIR");
  Source src = a.source.empty() ? random_source(r->kind, a.shape, rng) : parse_source(read_file(a.source));
  if (kind_of(src) != r->kind) throw Usage(r->name + " needs a " + kind_name(r->kind) + " source");
  if (!a.source_out.empty()) write_file(a.source_out, emit_source(src));
  GenOptions opt = gen_options(ctx.g);
  opt.pad_text_length = a.pad_text;
  opt.pad_slp_size = a.pad_slp;
  opt.pad_states = a.pad_states;
  Timer t;
  GeneratedInstance g = r->gen(src, a.params, opt);
  const double secs = t.seconds();
  write_bundle(a.out_dir, g);
  ctx.out << g.reduction << ' ' << emit_expected(g.expected).substr(0, emit_expected(g.expected).find('\n')) << " -> "
          << a.out_dir << '\n';
  StatsSink sink(ctx.g.stats, ctx.err);
  nlohmann::json j = {{"command", "gen"}, {"reduction", g.reduction}, {"time", secs}};
  for (const auto& [k, v] : g.provenance) j["prov"][k] = v;
  sink.put(j);
  return kOk;
}

int cmd_fmt(Context& ctx, const FmtArgs& a) {
  const std::string& k = a.kind;
  std::optional<Alphabet> alpha;
  if (!a.alpha.empty()) alpha = read_alpha(a.alpha);
  std::string text;
  if (k == "bundle") {
    if (a.out.empty()) throw Usage("fmt bundle needs -o DIR");
    write_bundle(a.out, read_bundle(a.file));
    return kOk;
  }
  const std::string in = read_file(a.file);
  if (k == "slp") {
    if (!alpha) alpha = sibling_alpha(a.file);
    text = emit_slp(parse_slp(in, alpha ? &*alpha : nullptr));
  } else if (k == "automaton") {
    text = emit_automaton(parse_automaton(in));
  } else if (k == "grammar") {
    if (!alpha) alpha = sibling_alpha(a.file);
    if (!alpha) throw Usage("fmt grammar needs --alpha (terminal alphabet)");
    text = emit_grammar(parse_grammar(in, *alpha));
  } else if (k == "pairing") {
    text = emit_pairing(parse_pairing(in));
  } else if (k == "costs") {
    text = emit_costs(parse_costs(in));
  } else if (k == "source") {
    text = emit_source(parse_source(in));
  } else if (k == "expected") {
    text = emit_expected(parse_expected(in));
  } else if (k == "alphabet") {
    text = emit_alpha_file(read_alpha(a.file));
  } else {
    throw Usage("unknown format '" + k + "' (slp, automaton, grammar, pairing, costs, source, expected, alphabet, bundle)");
  }
  if (a.out.empty())
    ctx.out << text;
  else
    write_file(a.out, text);
  return kOk;
}

}  // namespace slpkit::cli
