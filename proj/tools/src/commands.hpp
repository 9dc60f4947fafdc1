#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "common.hpp"
#include "slpkit_cli/cli.hpp"

namespace slpkit::cli {

struct Context {
  Globals g;
  std::ostream& out;
  std::ostream& err;
};

struct SolveArgs {
  std::string algorithm;
  std::vector<std::string> files;
  bool oracle = false;
  std::string alpha;
};

struct GenArgs {
  std::string reduction;
  std::string source;  // empty: draw a random source
  std::string out_dir;
  std::string source_out;
  GenParams params;
  RandomShape shape;
  std::string kind;  // for "gen source"
  std::uint64_t pad_text = 0;
  std::uint32_t pad_slp = 0, pad_states = 0;
};

struct VerifyArgs {
  std::string reduction;
  std::vector<std::string> sources;
  std::vector<std::string> bundles;
  std::uint64_t random = 0;
  GenParams params;
  RandomShape shape;
  bool timings = false;
  bool oracle = true;
};

struct BenchArgs {
  std::string suite;
  std::uint32_t runs = 3;
};

struct FmtArgs {
  std::string kind;
  std::string file;
  std::string alpha;
  std::string out;
};

int cmd_solve(Context& ctx, const SolveArgs& a);
int cmd_gen(Context& ctx, const GenArgs& a);
int cmd_verify(Context& ctx, const VerifyArgs& a);
int cmd_bench(Context& ctx, const BenchArgs& a);
int cmd_fmt(Context& ctx, const FmtArgs& a);

std::string solve_algorithms_help();

}  // namespace slpkit::cli
