#include "slpkit_cli/cli.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

namespace slpkit::cli {

namespace {

void add_params(CLI::App* s, GenParams& p) {
  s->add_option("--k", p.k, "clique tuple size (cfg/rna), clique size (subseq-clique), or k-SUM half-arity");
  s->add_option("--k1", p.k1, "first tuple split for k-OV reductions");
  s->add_option("--k2", p.k2, "second tuple split for k-OV reductions");
  s->add_option("--kappa", p.kappa, "NFA clique part size");
  s->add_option("--kappa2", p.kappa2, "NFA second clique part size");
}

void add_shape(CLI::App* s, RandomShape& r) {
  s->add_option("--vectors", r.vectors, "random source: vectors per set");
  s->add_option("--dim", r.dim, "random source: dimension");
  s->add_option("--arity", r.arity, "random source: k-OV tuple size or k-SUM arity");
  s->add_option("--vertices", r.vertices, "random source: graph vertices");
  s->add_option("--edge-prob", r.edge_prob, "random source: edge probability")->check(CLI::Range(0.0, 1.0));
  s->add_option("--values", r.values, "random source: k-SUM set size");
  s->add_option("--max-value", r.max_value, "random source: largest k-SUM value")->check(CLI::NonNegativeNumber);
}

std::string reduction_list() {
  std::string s;
  for (const auto& r : reductions()) s += (s.empty() ? "" : ", ") + r.name;
  return s;
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Context ctx{{}, out, err};
  CLI::App app{"slpkit: algorithms on grammar-compressed strings and hardness instance generators"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", ctx.g.seed, "random seed (all randomness derives from it)");
  app.add_option("--jobs", ctx.g.jobs, "worker threads for verify")->check(CLI::PositiveNumber);
  app.add_option("--max-decompress", ctx.g.max_decompress, "largest string length expanded explicitly");
  app.add_flag("--uncertified", ctx.g.uncertified, "allow generating instances too large to verify");
  app.add_option("--stats", ctx.g.stats, "append JSON-lines statistics to this file ('-' = stderr)");

  SolveArgs sa;
  auto* solve = app.add_subcommand("solve", "run one algorithm; prints accept, reject or an integer");
  solve->add_option("algorithm", sa.algorithm, "algorithm name")->required();
  solve->add_option("files", sa.files, "input files")->required();
  solve->add_flag("--oracle", sa.oracle, "decompress and solve instead of the compressed route");
  solve->add_option("--alpha", sa.alpha, "alphabet file for the first input");
  solve->footer("algorithms:\n" + solve_algorithms_help());

  GenArgs ga;
  auto* gen = app.add_subcommand("gen", "generate a reduction instance bundle (or a random source)");
  gen->add_option("reduction", ga.reduction, "reduction name, or 'source'")->required();
  gen->add_option("source", ga.source, "source file; omitted = random source from --seed");
  gen->add_option("-o,--out", ga.out_dir, "output bundle directory (file for 'gen source')");
  gen->add_option("--kind", ga.kind, "source kind for 'gen source': ov, kov, graph, ksum");
  gen->add_option("--source-out", ga.source_out, "also write the source used");
  gen->add_option("--pad-text", ga.pad_text, "padding: extra text length");
  gen->add_option("--pad-slp", ga.pad_slp, "padding: extra SLP rules");
  gen->add_option("--pad-states", ga.pad_states, "padding: extra automaton states");
  add_params(gen, ga.params);
  add_shape(gen, ga.shape);
  gen->footer("reductions: " + reduction_list());

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check generated instances against the source solver; CSV report");
  verify->add_option("--reduction", va.reduction, "reduction name");
  verify->add_option("sources", va.sources, "source files");
  verify->add_option("--bundle", va.bundles, "bundle directories to re-check");
  verify->add_option("--random", va.random, "number of random sources to draw");
  verify->add_flag("--timings", va.timings, "add timing columns (makes output run-dependent)");
  verify->add_flag("!--no-oracle", va.oracle, "skip the decompress-and-solve cross-check");
  add_params(verify, va.params);
  add_shape(verify, va.shape);
  verify->footer("reductions: " + reduction_list());

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "time compressed vs decompress-and-solve; CSV table");
  bench->add_option("suite", ba.suite, "suite file: 'case generator scale algorithm' lines")->required();
  bench->add_option("--runs", ba.runs, "repetitions per cell (median reported)");

  FmtArgs fa;
  auto* fmt = app.add_subcommand("fmt", "parse and re-emit a file in canonical form");
  fmt->add_option("kind", fa.kind, "slp, automaton, grammar, pairing, costs, source, expected, alphabet, bundle")
      ->required();
  fmt->add_option("file", fa.file, "input file or bundle directory")->required();
  fmt->add_option("--alpha", fa.alpha, "alphabet file (slp, grammar)");
  fmt->add_option("-o,--out", fa.out, "output path (default stdout)");

  std::vector<std::string> args(argv.begin() + (argv.empty() ? 0 : 1), argv.end());
  std::reverse(args.begin(), args.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    if (solve->parsed()) return cmd_solve(ctx, sa);
    if (gen->parsed()) return cmd_gen(ctx, ga);
    if (verify->parsed()) return cmd_verify(ctx, va);
    if (bench->parsed()) return cmd_bench(ctx, ba);
    if (fmt->parsed()) return cmd_fmt(ctx, fa);
  } catch (const Usage& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace slpkit::cli
