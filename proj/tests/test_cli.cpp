#include <gtest/gtest.h>
#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "slpkit/seqcmp.hpp"
#include "slpkit_cli/cli.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace slpkit;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "slpkit");
  std::ostringstream out, err;
  int code = slpkit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  fs::path dir;
  void SetUp() override {
    dir = fs::temp_directory_path() /
          ("slpkit_cli_" + std::to_string(::getpid()) + "_" +
           ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) v.push_back(l);
  return v;
}

std::string agree_of(const std::string& row) {
  std::vector<std::string> f;
  std::stringstream ss(row);
  for (std::string c; std::getline(ss, c, ',');) f.push_back(c);
  return f.size() > 7 ? f[7] : "";
}

}  // namespace

TEST_F(Cli, SolveDfaEndsInOne) {
  // state = last symbol read
  std::string dfa = put("end1.dfa", "dfa 2 2 0\naccept 1\n0 0 0\n0 1 1\n1 0 0\n1 1 1\n");
  auto r = invoke({"solve", "dfa-accept", put("t1.txt", "0101"), dfa});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "accept\n");
  EXPECT_EQ(invoke({"solve", "dfa-accept", put("t2.txt", "0110"), dfa}).out, "reject\n");
  EXPECT_EQ(invoke({"solve", "--oracle", "dfa-accept", put("t3.txt", "0101"), dfa}).out, "accept\n");
}

TEST_F(Cli, SolveKnownValues) {
  EXPECT_EQ(invoke({"solve", "substring-hd", put("t.txt", "0101"), put("p.txt", "0011")}).out, "2\n");
  EXPECT_EQ(invoke({"solve", "rna-fold", put("r.txt", "a ā\n"), put("pairs.txt", "pairs\na ā\n")}).out, "1\n");
  EXPECT_EQ(invoke({"solve", "wildcard-pm", put("w.txt", "0110"), put("wp.txt", "1*0")}).out, "accept\n");
  EXPECT_EQ(invoke({"solve", "wildcard-pm", path("w.txt"), put("wq.txt", "0*0")}).out, "reject\n");
}

TEST_F(Cli, SolveMatchesLibrary) {
  // output is the library value, on both routes
  slpkit::testing::Rng rng(4);
  for (int it = 0; it < 20; ++it) {
    Slp T = slpkit::testing::random_slp(rng, 2, 12, 300);
    Slp P = from_literal(slpkit::testing::random_str(rng, T.length(), 2), T.alphabet());
    std::string p = put("p.slp", emit_slp(P)), t = put("t.slp", emit_slp(T));
    const std::string want = std::to_string(hamming_recursive(P, T)) + "\n";
    auto h = invoke({"solve", "hamming", p, t});
    EXPECT_EQ(h.out, want) << h.err;
    EXPECT_EQ(invoke({"solve", "--oracle", "hamming", p, t}).out, want);
    const std::string sub = subsequence_recursive(P, T) ? "accept\n" : "reject\n";
    EXPECT_EQ(invoke({"solve", "subsequence", p, t}).out, sub);
    EXPECT_EQ(invoke({"solve", "--oracle", "subsequence", p, t}).out, sub);
  }
}

TEST_F(Cli, SharedInferredAlphabet) {
  // "1" alone must still be symbol 1, and the two sides must agree
  EXPECT_EQ(invoke({"solve", "disjointness", put("a.txt", "11"), put("b.txt", "11")}).out, "reject\n");
  EXPECT_EQ(invoke({"solve", "disjointness", put("c.txt", "10"), put("d.txt", "01")}).out, "accept\n");
  EXPECT_EQ(invoke({"solve", "hamming", put("e.txt", "000"), put("f.txt", "111")}).out, "3\n");
  EXPECT_EQ(invoke({"solve", "subsequence", put("g.txt", "ba"), put("h.txt", "aaaa")}).out, "reject\n");
  EXPECT_EQ(invoke({"solve", "wildcard-pm", put("i.txt", "xyz"), put("j.txt", "*z")}).out, "accept\n");
}

TEST_F(Cli, SolveErrors) {
  EXPECT_EQ(invoke({"solve", "no-such-algo", "x"}).code, 2);
  EXPECT_EQ(invoke({"solve", "hamming", path("missing.slp"), path("missing2.slp")}).code, 2);
  EXPECT_EQ(invoke({"solve", "hamming", put("a.txt", "01"), put("b.txt", "011")}).code, 2);
  EXPECT_EQ(invoke({"solve", "dfa-accept", put("c.txt", "01")}).code, 2);  // arity
  EXPECT_EQ(invoke({"solve", "lcs", put("d.slp", "S1 = S2 S1\n"), path("c.txt")}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({}).code, 2);
}

TEST_F(Cli, StatsSidecar) {
  std::string stats = path("stats.jsonl");
  auto r = invoke({"--stats", stats, "solve", "substring-hd", put("t.txt", "0101"), put("p.txt", "0011")});
  ASSERT_EQ(r.code, 0);
  std::ifstream is(stats);
  std::string line;
  ASSERT_TRUE(std::getline(is, line));
  auto j = nlohmann::json::parse(line);
  EXPECT_EQ(j["algorithm"], "substring-hd");
  EXPECT_EQ(j["N"], 8);
  EXPECT_TRUE(j.contains("time"));
  EXPECT_TRUE(j.contains("n"));
}

TEST_F(Cli, VerifyExamples) {
  std::string ov = put("ov1.txt", "ov 2\n10\n\n01\n");
  auto r = invoke({"verify", "--reduction", "dfa-ov", ov});
  EXPECT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(ls[0].rfind("id,case,reduction,source,target,oracle,value,agree", 0), 0u);
  EXPECT_NE(ls[1].find(",dfa-ov,yes,yes,yes,-,yes,"), std::string::npos);
  EXPECT_EQ(invoke({"verify", "--reduction", "no-such", ov}).code, 2);
  EXPECT_EQ(invoke({"verify", "--reduction", "cfg-clique", ov}).code, 2);  // wrong source kind
}

TEST_F(Cli, VerifyCatchesCorruptedExpected) {
  std::string ov = put("ov1.txt", "ov 2\n10\n\n01\n");
  std::string b = path("bundle");
  ASSERT_EQ(invoke({"gen", "dfa-ov", ov, "-o", b}).code, 0);
  EXPECT_EQ(invoke({"verify", "--bundle", b}).code, 0);
  std::ofstream(fs::path(b) / "expected.txt") << "reject\n";
  auto r = invoke({"verify", "--bundle", b});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(agree_of(lines(r.out).at(1)), "no");
}

TEST_F(Cli, VerifyReproducible) {
  auto a = invoke({"--seed", "9", "verify", "--reduction", "wpm-kov", "--random", "12"});
  auto b = invoke({"--seed", "9", "verify", "--reduction", "wpm-kov", "--random", "12"});
  auto c = invoke({"--seed", "9", "--jobs", "3", "verify", "--reduction", "wpm-kov", "--random", "12"});
  EXPECT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
  EXPECT_EQ(lines(a.out).size(), 13u);
  auto d = invoke({"--seed", "10", "verify", "--reduction", "wpm-kov", "--random", "12"});
  EXPECT_NE(a.out, d.out);
}

TEST_F(Cli, VerifyEveryCheapReduction) {
  for (const char* red : {"dfa-ov", "wpm-kov", "shd-kov", "nfa-clique", "cfg-clique", "subseq-clique", "disj-ksum",
                          "subseq-ksum", "hamming-ksum"}) {
    auto r = invoke({"--seed", "2", "verify", "--reduction", red, "--random", "4"});
    EXPECT_EQ(r.code, 0) << red << "\n" << r.out << r.err;
    auto ls = lines(r.out);
    for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_NE(agree_of(ls[i]), "no") << red << ": " << ls[i];
  }
}

TEST_F(Cli, GenRandomAndSource) {
  auto s = invoke({"--seed", "5", "gen", "source", "--kind", "graph", "--vertices", "5"});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(s.out.rfind("graph 5", 0), 0u);
  std::string b = path("b");
  auto g = invoke({"--seed", "5", "gen", "cfg-clique", "-o", b, "--source-out", path("src.txt")});
  ASSERT_EQ(g.code, 0) << g.err;
  EXPECT_TRUE(fs::exists(fs::path(b) / "payload.grammar"));
  EXPECT_EQ(invoke({"verify", "--bundle", b}).code, 0);
  // the written source regenerates the same bundle
  std::string b2 = path("b2");
  ASSERT_EQ(invoke({"gen", "cfg-clique", path("src.txt"), "-o", b2}).code, 0);
  for (const auto& e : fs::directory_iterator(b)) {
    std::ifstream x(e.path()), y(fs::path(b2) / e.path().filename());
    std::stringstream sx, sy;
    sx << x.rdbuf();
    sy << y.rdbuf();
    EXPECT_EQ(sx.str(), sy.str()) << e.path().filename();
  }
  EXPECT_EQ(invoke({"gen", "lcs-kov", "-o", path("l")}).code, 2);  // too large without --uncertified
  EXPECT_EQ(invoke({"--uncertified", "gen", "lcs-kov", "--dim", "1", "--vectors", "1", "-o", path("l")}).code, 0);
}

TEST_F(Cli, BenchTable) {
  EXPECT_EQ(invoke({"bench", put("empty.txt", "")}).out,
            "case,n,N,t_compressed,t_decompress_solve,answer_compressed,answer_decompressed\n");
  auto r = invoke({"bench", put("s.txt", "# tiny\ntiny random 1000 gpm\nbig ab-power 31 dfa-accept\n")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 3u);
  std::vector<std::string> f;
  std::stringstream row(ls[1]);
  for (std::string c; std::getline(row, c, ',');) f.push_back(c);
  ASSERT_EQ(f.size(), 7u);
  EXPECT_EQ(f[2], "1000");
  EXPECT_NE(f[4], "infeasible");
  EXPECT_EQ(f[5], f[6]);
  EXPECT_NE(ls[2].find(",2147483648,"), std::string::npos);
  EXPECT_NE(ls[2].find(",infeasible,"), std::string::npos);
  EXPECT_EQ(invoke({"bench", put("bad.txt", "x y\n")}).code, 2);
  EXPECT_EQ(invoke({"bench", put("bad2.txt", "x nope 3 gpm\n")}).code, 2);
}

TEST_F(Cli, FmtRoundTrips) {
  auto same = [&](const std::string& kind, const std::string& file, std::vector<std::string> extra = {}) {
    std::vector<std::string> a = {"fmt", kind, file};
    a.insert(a.end(), extra.begin(), extra.end());
    auto r1 = invoke(a);
    EXPECT_EQ(r1.code, 0) << kind << ": " << r1.err;
    std::string again = put("again." + kind, r1.out);
    a[2] = again;
    EXPECT_EQ(invoke(a).out, r1.out) << kind;
  };
  same("slp", put("x.slp", "S1 = \"a\"\nS2 = \"b\"\nS3 = S1 S2\nS4 = S3 S3\n"));
  same("automaton", put("x.dfa", "dfa 2 2 0\naccept 1\n0 0 0\n0 1 1\n1 0 0\n1 1 1\n"));
  same("source", put("x.src", "graph 4\n0 1\n2 3\n"));
  same("expected", put("x.exp", "threshold 12 ge\nanswer yes\n"));
  same("pairing", put("x.pair", "pairs\na ā\n"));
  same("alphabet", put("x.alpha", "alphabet 2\na\nb\n"));
  same("grammar", put("x.cfg", "start S\nS -> a S b\nS ->\n"), {"--alpha", path("x.alpha")});
  EXPECT_EQ(invoke({"fmt", "nope", path("x.slp")}).code, 2);
  EXPECT_EQ(invoke({"fmt", "slp", put("bad.slp", "S1 = S1 S1\n")}).code, 2);
}
