#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "slpkit/hardness.hpp"
#include "slpkit/matching.hpp"

namespace slpkit::cli {

struct Globals {
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  std::uint64_t max_decompress = std::uint64_t{1} << 26;
  bool uncertified = false;
  std::string stats;  // JSON-lines sidecar path, "-" = stderr
};

// bad invocation; maps to exit 2 like library errors
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::filesystem::path& p);
void write_file(const std::filesystem::path& p, const std::string& s);

// Alphabet from an explicit file, else a sibling "<stem>.alpha" or
// "<file>.alpha", else none.
std::optional<Alphabet> sibling_alpha(const std::filesystem::path& p);
Alphabet read_alpha(const std::filesystem::path& p);
std::string emit_alpha_file(const Alphabet& a);

// An SLP file ("S1 = ..." rules) or a literal string file (one glyph per
// character, or whitespace-separated tokens when there is any space).
Slp load_slp(const std::filesystem::path& p, const std::optional<Alphabet>& forced = std::nullopt);
std::set<std::string> file_glyphs(const std::filesystem::path& p);
Alphabet infer_alphabet(const std::set<std::string>& glyphs);

class StatsSink {
 public:
  StatsSink(const std::string& where, std::ostream& err);
  void put(const nlohmann::json& j);
  explicit operator bool() const { return on_; }

 private:
  bool on_ = false;
  std::ostream* os_ = nullptr;
  std::ofstream file_;
};

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

// ---- reductions shared by gen and verify

enum class SourceKind { Ov, Kov, Graph, Ksum };

struct GenParams {
  std::optional<std::uint32_t> k, k1, k2, kappa, kappa2;
};

struct Reduction {
  std::string name;
  SourceKind kind;
  std::function<GeneratedInstance(const Source&, const GenParams&, const GenOptions&)> gen;
};

const std::vector<Reduction>& reductions();
const Reduction* find_reduction(const std::string& name);
std::string kind_name(SourceKind k);
SourceKind kind_of(const Source& s);

struct RandomShape {
  std::uint32_t vectors = 3, dim = 3, arity = 3;
  std::uint32_t vertices = 4;
  double edge_prob = 0.5;
  std::uint32_t values = 3;
  std::int64_t max_value = 4;
};

Source random_source(SourceKind kind, const RandomShape& shape, std::mt19937_64& rng);

GenOptions gen_options(const Globals& g);

}  // namespace slpkit::cli
