#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using hkl::json;

namespace {

struct Result {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hkl::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(CliKl, FullMatrixOfA2) {
  const Result r = run({"kl", "--group", "A2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json d = r.doc();
  EXPECT_EQ(d["order"].size(), 6u);
  int diagonal = 0;
  for (const auto& e : d["entries"])
    if (e[0] == e[1]) {
      EXPECT_EQ(e[2], json({{"0", 1}}));
      ++diagonal;
    }
  EXPECT_EQ(diagonal, 6);
}

TEST(CliKl, ColumnOfA1) {
  const Result r = run({"kl", "--group", "A1", "--w", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "\"x\",\"h_x,w\"\n\"e\",\"q\"\n\"1\",\"1\"\n");
}

TEST(CliKl, DihedralColumn) {
  const Result r = run({"kl", "--group", "I2(5)", "--w", "1,2,1"});
  ASSERT_EQ(r.code, 0);
  const json d = r.doc();
  EXPECT_EQ(d["note"], "beyond paper's geometric proof");
  for (std::size_t i = 0; i < d["order"].size(); ++i) {
    const auto word = d["order"][i].get<std::vector<int>>();
    const bool below = word.size() < 3 || word == std::vector<int>{1, 2, 1};
    // every element of length < 3 lies below s1 s2 s1 in a dihedral group
    if (below)
      EXPECT_EQ(d["column"][i], json({{std::to_string(3 - word.size()), 1}}));
    else
      EXPECT_EQ(d["column"][i], json::object());
  }
}

TEST(CliKl, BadWord) {
  const Result r = run({"kl", "--group", "A3", "--w", "1,2,2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("index 2"), std::string::npos);
}

TEST(CliRestrict, Examples) {
  Result r = run({"restrict", "--group", "A2", "--J", "1", "--u", "e", "--w", "1", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "\"v\",\"coefficient\"\n\"1\",\"1\"\n");
  r = run({"restrict", "--group", "A2", "--J", "1", "--u", "2", "--w", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "\"v\",\"coefficient\"\n\"\",\"1\"\n");
  r = run({"restrict", "--group", "A2", "--J", "1", "--u", "1,2", "--w", "2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.doc()["coefficients"].empty());
}

TEST(CliRestrict, DomainError) {
  const Result r = run({"restrict", "--group", "A2", "--J", "1", "--u", "1", "--w", "2"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("s1"), std::string::npos);
}

TEST(CliFactorize, Examples) {
  Result r = run({"factorize", "--group", "A2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["factors"].size(), 2u);
  EXPECT_TRUE(r.doc()["product_equals_KL"].get<bool>());

  r = run({"factorize", "--group", "A3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["factors"].size(), 3u);
  EXPECT_TRUE(r.doc()["nonnegative"].get<bool>());

  r = run({"factorize", "--group", "A2", "--chain", "∅<1,2"});
  ASSERT_EQ(r.code, 0);
  ASSERT_EQ(r.doc()["factors"].size(), 1u);
  const Result kl = run({"kl", "--group", "A2"});
  json factor = r.doc()["factors"][0];
  json matrix = kl.doc();
  EXPECT_EQ(factor["entries"], matrix["entries"]);
}

TEST(CliFactorize, MalformedChain) {
  EXPECT_EQ(run({"factorize", "--group", "A2", "--chain", "1<1,2"}).code, 2);
  EXPECT_EQ(run({"factorize", "--group", "A2", "--chain", "∅<x"}).code, 2);
}

TEST(CliVerify, Suites) {
  Result r = run({"verify", "--group", "I2(7)", "--suite", "oracles"});
  ASSERT_EQ(r.code, 0) << r.out;
  bool dihedral = false;
  const json report = r.doc();
  for (const auto& c : report["checks"]) {
    EXPECT_TRUE(c["passed"].get<bool>()) << c["name"];
    dihedral = dihedral || c["name"] == "dihedral_closed_form";
  }
  EXPECT_TRUE(dihedral);

  r = run({"verify", "--group", "A3", "--suite", "positivity"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.doc()["passed"].get<bool>());

  r = run({"verify", "--group", "A2", "--suite", "involutions", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\"self_duality_bar_Cw\",true"), std::string::npos);

  EXPECT_EQ(run({"verify", "--group", "A2", "--suite", "nope"}).code, 2);
}

TEST(CliParabolicAndHybrid, Outputs) {
  Result r = run({"parabolic", "--group", "A3", "--J", "1,2"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["order"].size(), 4u);
  r = run({"hybrid", "--group", "A2", "--J", "1", "--w", "2,1"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["element"]["terms"].size(), 2u);
  r = run({"hybrid", "--group", "A3", "--I", "1", "--J", "1,2"});
  ASSERT_EQ(r.code, 0);
  const Result slow = run({"hybrid", "--group", "A3", "--I", "1", "--J", "1,2", "--per-column"});
  EXPECT_EQ(r.out, slow.out);
  EXPECT_EQ(run({"hybrid", "--group", "A3", "--I", "2", "--J", "1"}).code, 2);
  EXPECT_EQ(run({"hybrid", "--group", "A3", "--orientation", "xy"}).code, 2);
  EXPECT_EQ(run({"hybrid", "--group", "A3", "--orientation", "ct", "--J", "1"}).code, 0);
}

TEST(CliUsage, Errors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"kl"}).code, 2);
  EXPECT_EQ(run({"kl", "--group", "E8"}).code, 2);
  EXPECT_EQ(run({"kl", "--group", "A6"}).code, 2);
  EXPECT_EQ(run({"kl", "--group", "A2", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"restrict", "--group", "A2", "--J", "4", "--u", "e", "--w", "e"}).code, 2);
  EXPECT_EQ(run({"kl", "--help"}).code, 0);
}

TEST(CliOutput, DeterministicAndFileOutput) {
  const Result a = run({"factorize", "--group", "B3", "--threads", "3"});
  const Result b = run({"factorize", "--group", "B3"});
  EXPECT_EQ(a.out, b.out);
  const auto dir = std::filesystem::temp_directory_path() / ("hkl_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto file = dir / "kl.csv";
  ASSERT_EQ(run({"kl", "--group", "A2", "--format", "csv", "--output", file.string()}).code, 0);
  std::ifstream in(file);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(text.str(), run({"kl", "--group", "A2", "--format", "csv"}).out);
  std::filesystem::remove_all(dir);
}

TEST(CliOutput, CacheDirReuse) {
  const auto dir = std::filesystem::temp_directory_path() / ("hkl_cache_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  const Result first = run({"kl", "--group", "A3", "--cache-dir", dir.string()});
  ASSERT_EQ(first.code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "A3.klcache.json"));
  const Result second = run({"kl", "--group", "A3", "--cache-dir", dir.string()});
  EXPECT_EQ(first.out, second.out);
  std::filesystem::remove_all(dir);
}

}  // namespace
