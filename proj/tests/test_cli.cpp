// Copyright 2026 The mprefs Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mprefs/cli.hpp"

namespace mprefs {
namespace {

namespace fs = std::filesystem;

const std::string kData = MPREFS_DATA_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "mprefs");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mprefs-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& content) const {
    std::ofstream(path(name)) << content;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  fs::path dir_;
};

TEST_F(CliTest, VerifyExample34) {
  const auto r = run({"verify", "--profile", kData + "/ex34.profile", "--embedding",
                      kData + "/ex34.embedding", "--metric", "l1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out).at("consistent"), true);
}

TEST_F(CliTest, VerifyReportsViolation) {
  write("p", "1 2\n1 2\n");
  write("e", "2 1 2\n0 0\n3 0\n1 0\n");
  const auto r = run({"verify", "--profile", path("p"), "--embedding", path("e")});
  EXPECT_EQ(r.code, 3);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("violation").at("preferred"), 1);
  EXPECT_EQ(j.at("violation").at("other"), 2);
}

TEST_F(CliTest, RecognizeCounterexample) {
  const auto r = run({"recognize", "--profile", kData + "/ex44.profile"});
  EXPECT_EQ(r.code, 3) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "infeasible");
  EXPECT_EQ(j.at("certificates").size(), 6u);
}

TEST_F(CliTest, RecognizeFeasibleWritesWitness) {
  const auto r = run({"recognize", "--profile", kData + "/q1.profile", "--no-fast-paths",
                      "--witness-out", path("w")});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "feasible");
  EXPECT_TRUE(j.contains("witness"));
  EXPECT_TRUE(j.contains("nodes") && j.contains("prunes") && j.contains("millis"));
  const auto v = run({"verify", "--profile", kData + "/q1.profile", "--embedding", path("w")});
  EXPECT_EQ(v.code, 0) << v.out;
}

TEST_F(CliTest, RecognizeBudgetIsUndecided) {
  const auto r = run({"recognize", "--profile", kData + "/ex44.profile", "--no-fast-paths",
                      "--budget", "2"});
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(nlohmann::json::parse(r.out).at("verdict"), "undecided");
}

TEST_F(CliTest, EmbedThenVerifyRoundTrip) {
  for (const std::string method : {"n-dim", "m-dim"}) {
    const auto e = run({"embed", "--method", method, "--profile", kData + "/p1.profile", "--out",
                        path("e")});
    ASSERT_EQ(e.code, 0) << e.err;
    const auto v = run({"verify", "--profile", kData + "/p1.profile", "--embedding", path("e")});
    EXPECT_EQ(v.code, 0) << method;
  }
  const auto e = run({"embed", "--method", "n-dim", "--profile", kData + "/p1.profile"});
  EXPECT_EQ(e.out, cli::read_file(kData + "/p1.embedding"));
}

TEST_F(CliTest, DecimalOutput) {
  const auto exact = run({"recognize", "--profile", kData + "/q1.profile"});
  const auto shown = run({"--decimal", "recognize", "--profile", kData + "/q1.profile"});
  ASSERT_EQ(shown.code, 0) << shown.err;
  EXPECT_TRUE(nlohmann::json::parse(exact.out).at("witness").at("voters")[0][0].is_string());
  EXPECT_TRUE(nlohmann::json::parse(shown.out).at("witness").at("voters")[0][0].is_number());
  const auto late = run({"recognize", "--profile", kData + "/q1.profile", "--decimal"});
  EXPECT_EQ(nlohmann::json::parse(late.out).at("witness"),
            nlohmann::json::parse(shown.out).at("witness"));
}

TEST_F(CliTest, DetectPrintsCertificates) {
  const auto r = run({"detect", "--profile", kData + "/q1.profile"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& first = j.at("certificates").at(0);
  EXPECT_EQ(first.at("kind"), "BE");
  EXPECT_EQ(first.at("voters"), nlohmann::json({1, 2, 3}));
  EXPECT_EQ(first.at("alts"), nlohmann::json({1, 3, 2}));
  EXPECT_EQ(run({"detect", "--profile", kData + "/ex44.profile"}).code, 3);
}

TEST_F(CliTest, ParseCheck) {
  EXPECT_EQ(run({"parse-check", "--profile", kData + "/p1.profile"}).code, 0);
  const auto s = run({"parse-check", "--spec", kData + "/ex45.spec"});
  EXPECT_EQ(nlohmann::json::parse(s.out).at("expansions"), 4);
  EXPECT_EQ(run({"parse-check", "--embedding", kData + "/ex34.embedding"}).code, 0);
  write("bad", "2 3\n1 2 3\n1 2 2\n");
  const auto bad = run({"parse-check", "--profile", path("bad")});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("row 2"), std::string::npos) << bad.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "--profile", "x"}).code, 2);
  EXPECT_EQ(run({"embed", "--method", "k-dim", "--profile", "x"}).code, 2);
  EXPECT_EQ(run({"recognize", "--profile", path("missing")}).code, 2);
  EXPECT_EQ(run({"recognize", "--profile", kData + "/p1.profile", "--bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, ScanResumesFromExistingFile) {
  const auto a = run({"scan", "--voters", "3", "--alts", "3", "--shard", "0:4", "--out",
                      path("s.jsonl"), "--store-witnesses"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(nlohmann::json::parse(a.out).at("solved"), 4);
  const auto b = run({"scan", "--voters", "3", "--alts", "3", "--out", path("s.jsonl")});
  ASSERT_EQ(b.code, 0) << b.err;
  const auto j = nlohmann::json::parse(b.out);
  EXPECT_EQ(j.at("skipped"), 4);
  EXPECT_EQ(j.at("solved"), 6);
  std::ifstream in(path("s.jsonl"));
  EXPECT_EQ(load_records(in).size(), 10u);
  EXPECT_EQ(run({"scan", "--voters", "3", "--alts", "3", "--shard", "4", "--out", path("t")}).code, 2);
}

TEST_F(CliTest, PlotWritesOnlyItsOutput) {
  const auto r = run({"plot", "--embedding", kData + "/p1.embedding", "--circles", "v1,v2", "--out",
                      path("fig.svg")});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = read("fig.svg");
  std::size_t count = 0;
  for (auto pos = svg.find("manhattan-circle"); pos != std::string::npos;
       pos = svg.find("manhattan-circle", pos + 1)) {
    ++count;
  }
  EXPECT_EQ(count, 10u);
  EXPECT_EQ(std::distance(fs::directory_iterator(dir_), fs::directory_iterator()), 1);
  EXPECT_EQ(run({"plot", "--embedding", kData + "/p1.embedding", "--circles", "v9", "--out",
                 path("x.svg")}).code,
            2);
}

TEST_F(CliTest, FrontierWithSmallLimits) {
  const auto r = run({"frontier", "--out", path("f.json"), "--samples", "2", "--limit", "3"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  const auto j = nlohmann::json::parse(read("f.json"));
  EXPECT_TRUE(j.at("pass").get<bool>());
}

}  // namespace
}  // namespace mprefs
