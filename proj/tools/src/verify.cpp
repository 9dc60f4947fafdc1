#include <atomic>
#include <iomanip>
#include <sstream>
#include <thread>

#include "commands.hpp"

namespace slpkit::cli {

namespace {

struct Job {
  std::string label;
  const Reduction* red = nullptr;
  std::optional<Source> source;
  std::string bundle;
  bool random = false;
};

struct Row {
  std::string label, reduction;
  std::string source = "-", target = "-", oracle = "-", value = "-", status;
  std::uint64_t n = 0, N = 0, m = 0, M = 0, q = 0, grammar = 0;
  double t_gen = 0, t_solve = 0, t_oracle = 0;
  std::string error;
};

std::string yn(bool b) { return b ? "yes" : "no"; }

void sizes(Row& r, const GeneratedInstance& g) {
  for (const char* k : {"text", "x"})
    if (auto it = g.payload.slps.find(k); it != g.payload.slps.end()) {
      r.n = it->second.size();
      r.N = it->second.length();
    }
  for (const char* k : {"pattern", "y"})
    if (auto it = g.payload.slps.find(k); it != g.payload.slps.end()) {
      r.m = it->second.size();
      r.M = it->second.length();
    }
  if (g.payload.automaton) std::visit([&](const auto& a) { r.q = a.q; }, *g.payload.automaton);
  if (g.payload.grammar) r.grammar = g.payload.grammar->size();
}

Row run_job(const Job& job, const VerifyArgs& va, const Globals& gl) {
  Row r;
  r.label = job.label;
  GeneratedInstance g;
  try {
    Timer tg;
    if (job.source) {
      r.reduction = job.red->name;
      g = job.red->gen(*job.source, va.params, gen_options(gl));
    } else {
      g = read_bundle(job.bundle);
      r.reduction = g.reduction;
    }
    r.t_gen = tg.seconds();
  } catch (const Error& e) {
    r.status = job.random ? "skip" : "error";
    r.error = e.what();
    return r;
  }
  sizes(r, g);
  if (g.expected.answer) r.source = yn(*g.expected.answer);
  // generated instances are solved only when certified; bundles always
  const bool try_target = job.bundle.size() || g.prov("certified") == "yes";
  bool bad = false;
  if (try_target) {
    try {
      Timer ts;
      TargetResult t = solve_target(g, false, gl.max_decompress);
      r.t_solve = ts.seconds();
      r.target = yn(t.answer);
      if (t.value) r.value = std::to_string(*t.value);
      if (g.expected.answer && t.answer != *g.expected.answer) bad = true;
      if (va.oracle) {
        Timer to;
        TargetResult o = solve_target(g, true, gl.max_decompress);
        r.t_oracle = to.seconds();
        r.oracle = yn(o.answer);
        if (o.answer != t.answer || o.value != t.value) bad = true;
      }
    } catch (const Error& e) {
      if (e.code() != Errc::TooLarge) {
        r.status = "error";
        r.error = e.what();
        return r;
      }
      if (r.target == "-") r.target = "skipped";
    }
  } else {
    r.target = "skipped";
  }
  if (bad)
    r.status = "no";
  else if (r.source == "-" || r.target == "skipped")
    r.status = "unchecked";
  else
    r.status = "yes";
  return r;
}

}  // namespace

int cmd_verify(Context& ctx, const VerifyArgs& va) {
  std::vector<Job> jobs;
  const Reduction* red = nullptr;
  if (!va.reduction.empty()) {
    red = find_reduction(va.reduction);
    if (!red) throw Usage("unknown reduction '" + va.reduction + "'");
  }
  if ((!va.sources.empty() || va.random) && !red) throw Usage("verify needs --reduction for source inputs");
  for (const auto& s : va.sources) {
    Source src = parse_source(read_file(s));
    if (kind_of(src) != red->kind) throw Usage(red->name + " needs a " + kind_name(red->kind) + " source: " + s);
    jobs.push_back({s, red, std::move(src), "", false});
  }
  for (std::uint64_t i = 0; i < va.random; ++i) {
    std::seed_seq seq{static_cast<std::uint32_t>(ctx.g.seed), static_cast<std::uint32_t>(ctx.g.seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
    std::mt19937_64 rng(seq);
    jobs.push_back({"random#" + std::to_string(i), red, random_source(red->kind, va.shape, rng), "", true});
  }
  for (const auto& b : va.bundles) jobs.push_back({b, nullptr, std::nullopt, b, false});
  if (jobs.empty()) throw Usage("verify: nothing to do (give sources, --random N, or --bundle DIR)");

  std::vector<Row> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) rows[i] = run_job(jobs[i], va, ctx.g);
  };
  const unsigned nthreads = std::max(1u, std::min<unsigned>(ctx.g.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  ctx.out << "id,case,reduction,source,target,oracle,value,agree,n,N,m,M,q,grammar";
  if (va.timings) ctx.out << ",t_generate,t_solve,t_oracle";
  ctx.out << '\n';
  StatsSink sink(ctx.g.stats, ctx.err);
  int code = kOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    ctx.out << i << ',' << r.label << ',' << r.reduction << ',' << r.source << ',' << r.target << ',' << r.oracle << ','
            << r.value << ',' << r.status << ',' << r.n << ',' << r.N << ',' << r.m << ',' << r.M << ',' << r.q << ','
            << r.grammar;
    if (va.timings) {
      std::ostringstream ts;
      ts << std::fixed << std::setprecision(6) << ',' << r.t_gen << ',' << r.t_solve << ',' << r.t_oracle;
      ctx.out << ts.str();
    }
    ctx.out << '\n';
    if (!r.error.empty()) ctx.err << r.label << ": " << r.error << '\n';
    if (r.status == "no") code = std::max(code, kDisagree);
    if (r.status == "error") code = kUsage;
    sink.put({{"command", "verify"}, {"id", i},           {"case", r.label},       {"reduction", r.reduction},
              {"agree", r.status},   {"t_generate", r.t_gen}, {"t_solve", r.t_solve}, {"t_oracle", r.t_oracle}});
  }
  return code;
}

}  // namespace slpkit::cli
