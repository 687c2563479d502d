// Copyright 2026 The dpgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "dpgm/cli.hpp"

namespace dpgm {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dpgm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::run(args, out_, err_);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST_F(Cli, PipelineGenBaselineMineEval) {
  ASSERT_EQ(run({"gen", "click", "--n", "2000", "--seed", "7", "--out", path("click.graphs")}), 0) << err_.str();
  ASSERT_EQ(run({"baseline", "--input", path("click.graphs"), "--k", "10", "--out", path("truth.json")}), 0);
  const json truth = cli::read_json(path("truth.json"));
  EXPECT_EQ(truth.at("patterns").size(), 10u);
  EXPECT_EQ(truth.at("k"), 10);
  ASSERT_EQ(run({"mine", "--input", path("click.graphs"), "--k", "10", "--eps1", "0.5", "--eps2", "0", "--seed", "42",
                 "--out", path("run.json")}),
            0)
      << err_.str();
  EXPECT_NE(err_.str().find("label alphabet taken from the input"), std::string::npos);
  const json r = cli::read_json(path("run.json"));
  EXPECT_EQ(r.at("patterns").size(), 10u);
  EXPECT_EQ(r.at("config").at("f"), truth.at("f"));
  EXPECT_TRUE(r.at("metadata").at("f_non_private").get<bool>());
  for (const auto& p : r.at("patterns")) {
    EXPECT_FALSE(p.contains("noisy_support"));
    EXPECT_TRUE(p.at("true_support").is_null());
  }
  ASSERT_EQ(run({"eval", "--result", path("run.json"), "--truth", path("truth.json"), "--input", path("click.graphs")}),
            0)
      << err_.str();
  std::istringstream csv(out_.str());
  std::string header, row;
  std::getline(csv, header);
  std::getline(csv, row);
  EXPECT_EQ(header, "precision,rse,support_accuracy,k,f");
  const double precision = std::stod(row.substr(0, row.find(',')));
  EXPECT_GE(precision, 0.0);
  EXPECT_LE(precision, 1.0);
  // Without supports in the result and no dataset, eval refuses.
  EXPECT_EQ(run({"eval", "--result", path("run.json"), "--truth", path("truth.json")}), 1);
}

TEST_F(Cli, MineIsDeterministicAndReplaysFromConfig) {
  ASSERT_EQ(run({"gen", "dense", "--n", "20", "--avg-vertices", "6", "--avg-edges", "9", "--seed", "1", "--out",
                 path("d.graphs")}),
            0);
  const std::vector<std::string> mine{"mine", "--input", path("d.graphs"), "--k", "3", "--eps2", "0.4",
                                      "--seed", "9", "--emit-true-supports"};
  auto a = mine, b = mine;
  a.insert(a.end(), {"--out", path("a.json")});
  b.insert(b.end(), {"--out", path("b.json")});
  ASSERT_EQ(run(a), 0) << err_.str();
  ASSERT_EQ(run(b), 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  const json r = cli::read_json(path("a.json"));
  for (const auto& p : r.at("patterns")) {
    EXPECT_TRUE(p.at("true_support").is_number_unsigned());
    EXPECT_TRUE(p.at("noisy_support").is_number());
  }
  ASSERT_EQ(run({"mine", "--from-config", path("a.json"), "--out", path("c.json")}), 0) << err_.str();
  EXPECT_EQ(slurp(path("a.json")), slurp(path("c.json")));
}

TEST_F(Cli, DefaultOutputGoesUnderConfigHash) {
  ASSERT_EQ(run({"gen", "dense", "--n", "10", "--avg-vertices", "5", "--avg-edges", "6", "--out", path("d.graphs")}), 0);
  ASSERT_EQ(run({"mine", "--input", path("d.graphs"), "--k", "2", "--f", "3", "--out-dir", path("runs")}), 0)
      << err_.str();
  std::size_t files = 0;
  for (const auto& e : fs::recursive_directory_iterator(path("runs"))) files += e.path().filename() == "run.json";
  EXPECT_EQ(files, 1u);
  EXPECT_NE(out_.str().find(path("runs")), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}), 1);
  EXPECT_EQ(run({"frobnicate"}), 1);
  EXPECT_EQ(run({"mine", "--bogus"}), 1);
  EXPECT_EQ(run({"mine", "--k", "3"}), 1);
  EXPECT_NE(err_.str().find("--input"), std::string::npos);
  ASSERT_EQ(run({"gen", "dense", "--n", "5", "--out", path("d.graphs")}), 0);
  EXPECT_EQ(run({"mine", "--input", path("d.graphs"), "--eps1", "0"}), 1);
  EXPECT_EQ(run({"mine", "--input", path("d.graphs"), "--eps2", "-1"}), 1);
  EXPECT_EQ(run({"mine", "--input", path("d.graphs"), "--eta", "0"}), 1);
  EXPECT_EQ(run({"mine", "--input", path("d.graphs"), "--rho", "2"}), 1);
  EXPECT_EQ(run({"mine", "--input", path("d.graphs"), "--method", "quick"}), 1);
  EXPECT_EQ(run({"bench-neighbors", "--input", path("d.graphs"), "--methods", "een,slow"}), 1);
}

TEST_F(Cli, RuntimeErrors) {
  EXPECT_EQ(run({"mine", "--input", path("missing.graphs")}), 2);
  std::ofstream(path("bad.graphs")) << "t # 0\nv 0 A\ne 0 0\n";
  EXPECT_EQ(run({"baseline", "--input", path("bad.graphs")}), 2);
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(Cli, LabelsFileOverridesData) {
  ASSERT_EQ(run({"gen", "dense", "--n", "10", "--avg-vertices", "5", "--avg-edges", "6", "--alphabet", "2", "--out",
                 path("d.graphs")}),
            0);
  std::ofstream(path("labels.txt")) << "L0\nL1\nL7\n";
  ASSERT_EQ(run({"mine", "--input", path("d.graphs"), "--k", "2", "--f", "2", "--labels", path("labels.txt"), "--out",
                 path("r.json")}),
            0)
      << err_.str();
  EXPECT_EQ(err_.str().find("label alphabet taken"), std::string::npos);
  const json r = cli::read_json(path("r.json"));
  EXPECT_EQ(r.at("config").at("rules").at("labels"), json::array({"L0", "L1", "L7"}));
  EXPECT_EQ(r.at("config").at("f_source"), "given");
}

TEST_F(Cli, BenchWritesCsv) {
  ASSERT_EQ(run({"gen", "dense", "--n", "15", "--avg-vertices", "6", "--avg-edges", "10", "--out", path("d.graphs")}),
            0);
  ASSERT_EQ(run({"bench-neighbors", "--input", path("d.graphs"), "--k", "5", "--steps", "4", "--v-max", "4", "--out",
                 path("b.csv")}),
            0)
      << err_.str();
  const std::string csv = slurp(path("b.csv"));
  EXPECT_EQ(csv.rfind("step,method,iso_calls,micros\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 4);
}

TEST_F(Cli, TraceFile) {
  ASSERT_EQ(run({"gen", "dense", "--n", "10", "--avg-vertices", "5", "--avg-edges", "6", "--out", path("d.graphs")}), 0);
  ASSERT_EQ(run({"mine", "--input", path("d.graphs"), "--k", "1", "--f", "2", "--trace", path("t.csv"), "--out",
                 path("r.json")}),
            0)
      << err_.str();
  EXPECT_EQ(slurp(path("t.csv")).rfind("round,iteration,metric,value,z\n", 0), 0u);
}

TEST(CliHelpers, HashIsStable) {
  EXPECT_EQ(cli::fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(cli::hex_hash(json{{"a", 1}}), cli::hex_hash(json{{"a", 1}}));
  EXPECT_NE(cli::hex_hash(json{{"a", 1}}), cli::hex_hash(json{{"a", 2}}));
}

}  // namespace
}  // namespace dpgm
