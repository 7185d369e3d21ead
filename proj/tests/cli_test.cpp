#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "support/data.hpp"

namespace fs = std::filesystem;

namespace spa {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string c17() { return (test::data_dir() / "c17.isc").string(); }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("spa-cli-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

class ScopedEnv {
 public:
  ScopedEnv(const char* name, const char* value) : name_(name) { ::setenv(name, value, 1); }
  ~ScopedEnv() { ::unsetenv(name_); }

 private:
  const char* name_;
};

TEST(Cli, ParseC17) {
  const auto r = run({"parse", c17()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "{\"nodes\":11,\"moral_edges\":18}\n");
}

TEST(Cli, ParseBothFormatsAgree) {
  EXPECT_EQ(run({"parse", "--dag", c17()}).out,
            run({"parse", "--dag", (test::data_dir() / "c17.bench").string()}).out);
}

TEST(Cli, MissingFileIsInputError) {
  EXPECT_EQ(run({"parse", "/nonexistent/c17.isc"}).code, 1);
  EXPECT_EQ(run({"analyze", "/nonexistent/c17.isc"}).code, 1);
}

TEST(Cli, EmptyInputListIsInputError) {
  EXPECT_EQ(run({"analyze"}).code, 1);
  TempDir empty;
  EXPECT_EQ(run({"analyze", empty.path().string()}).code, 1);
}

TEST(Cli, UnknownOrderingRejected) { EXPECT_EQ(run({"analyze", "--ordering", "min-fill", c17()}).code, 1); }

TEST(Cli, AnalyzeC17HybridEqualsClustering) {
  const auto r = run({"analyze", "--ordering", "min-degree", "--format", "json", c17()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["circuit"], "c17");
  EXPECT_EQ(j[0]["variables"], 11);
  EXPECT_EQ(j[0]["cutset"], 3);
  EXPECT_EQ(j[0]["hybrid"], j[0]["clustering"]);
  EXPECT_EQ(j[0]["clustering"]["clique"], 3);
  EXPECT_EQ(j[0]["clustering"]["separator"], 2);
}

TEST(Cli, AnalyzeAllOrderingsRow) {
  const auto r = run({"analyze", "--ordering", "all", "--format", "json", c17()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_TRUE(j[0]["orderings"].is_array());
  EXPECT_EQ(j[0]["orderings"].size(), 4u);
}

TEST(Cli, WritesNamedFilesAtomically) {
  TempDir dir;
  const auto r = run({"tradeoff", "--out", dir.path().string(), c17()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto file = dir.path() / "c17_min-degree_series.csv";
  EXPECT_TRUE(fs::exists(file));
  EXPECT_EQ(r.out, file.string() + "\n");
  EXPECT_EQ(slurp(file).rfind("circuit,ordering,sep_bound", 0), 0u);
  for (const auto& e : fs::directory_iterator(dir.path())) EXPECT_NE(e.path().extension(), ".tmp");
}

TEST(Cli, HistogramArtifacts) {
  TempDir dir;
  const auto r = run({"histogram", "--out", dir.path().string(), "--format", "json", c17()});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* a : {"clique-histogram", "sepset-histogram", "cutset-histogram"}) {
    EXPECT_TRUE(fs::exists(dir.path() / ("c17_min-degree_" + std::string(a) + ".json"))) << a;
  }
}

TEST(Cli, TreeDotWithBound) {
  const auto r = run({"tree", "--sep-bound", "1", "--dot", c17()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("graph \"", 0), 0u);
  EXPECT_NE(r.out.find("node [shape=circle];"), std::string::npos);
}

TEST(Cli, VerifyDataDirectory) {
  const auto r = run({"verify", test::data_dir().string()});
  EXPECT_EQ(r.code, 0) << r.err << r.out;
  EXPECT_NE(r.out.find("\"violations\":[]"), std::string::npos);
}

TEST(Cli, EnvironmentOverridesAndFlagsWin) {
  {
    ScopedEnv env("SPA_FORMAT", "json");
    const auto r = run({"tradeoff", c17()});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(nlohmann::json::accept(r.out));
    const auto flagged = run({"tradeoff", "--format", "csv", c17()});
    EXPECT_EQ(flagged.out.rfind("circuit,ordering", 0), 0u);
  }
  ScopedEnv env("SPA_ORDERING", "causal");
  EXPECT_NE(run({"tradeoff", c17()}).out.find("causal"), std::string::npos);
  EXPECT_NE(run({"tradeoff", "--ordering", "min-width", c17()}).out.find("min-width"), std::string::npos);
}

TEST(Cli, SeedRules) {
  EXPECT_EQ(run({"tradeoff", "--tie-break", "random", c17()}).code, 1);
  EXPECT_EQ(run({"tradeoff", "--seed", "3", c17()}).code, 1);
  const auto a = run({"tradeoff", "--tie-break", "random", "--seed", "3", "--ordering", "causal", c17()});
  EXPECT_EQ(a.code, 0) << a.err;
}

TEST(Cli, Deterministic) {
  for (const char* cmd : {"analyze", "tradeoff", "histogram", "tree", "verify"}) {
    const std::vector<std::string> args{cmd, "--tie-break", "random", "--seed", "9", "--jobs", "2",
                                        test::data_dir().string()};
    EXPECT_EQ(run(args).out, run(args).out) << cmd;
  }
}

TEST(Cli, TimeoutExitCode) {
  TempDir dir;
  const auto file = dir.path() / "big.bench";
  {
    std::ofstream out(file);
    std::mt19937_64 rng(5);
    const int inputs = 60;
    const int gates = 1500;
    for (int i = 0; i < inputs; ++i) out << "INPUT(i" << i << ")\n";
    out << "OUTPUT(g" << gates - 1 << ")\n";
    auto name = [&](std::uint64_t k) {
      return k < static_cast<std::uint64_t>(inputs) ? "i" + std::to_string(k) : "g" + std::to_string(k - inputs);
    };
    for (int g = 0; g < gates; ++g) {
      const auto avail = static_cast<std::uint64_t>(inputs + g);
      out << "g" << g << " = NAND(" << name(rng() % avail) << ", " << name(rng() % avail) << ", "
          << name(avail - 1) << ")\n";
    }
  }
  const auto r = run({"analyze", "--timeout", "0.001", "--format", "json", file.string()});
  EXPECT_EQ(r.code, 3) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j[0]["clustering"].is_null());
  EXPECT_NE(j[0]["reason"].get<std::string>().find("timeout"), std::string::npos);
}

}  // namespace
}  // namespace spa
