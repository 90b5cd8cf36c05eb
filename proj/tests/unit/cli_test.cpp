// Copyright 2026 The uicheck Authors
//
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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "uicheck/expr.hpp"

namespace uic::cli {
namespace {

const std::string kModels = UICHECK_MODELS_DIR;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string model(const std::string& name) { return kModels + "/" + name; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST(GridTest, ParsesSpecs) {
  EXPECT_EQ(parse_level_grid("0:4:5:lin"), (std::vector<double>{0, 1, 2, 3, 4}));
  EXPECT_EQ(parse_level_grid("0:4:5"), (std::vector<double>{0, 1, 2, 3, 4}));
  EXPECT_EQ(parse_level_grid("10:1000:3:log"), (std::vector<double>{10, 100, 1000}));
  EXPECT_EQ(parse_level_grid("1:1024:11:log").back(), 1024.0);
  EXPECT_EQ(parse_level_grid("2:2:1"), (std::vector<double>{2}));
  EXPECT_EQ(parse_level_grid("1,2.5,7"), (std::vector<double>{1, 2.5, 7}));
  for (const char* bad : {"", "1:2", "4:0:3", "0:10:3:log", "1:2:0", "1:3:1", "a:b:c", "1:2:3:cubic", "3,2", "-1,2",
                          "1:2:3:lin:x"}) {
    EXPECT_ANY_THROW(parse_level_grid(bad)) << bad;
  }
}

TEST(CliTest, ProfileUniform3) {
  const CliRun r = run_cli({"profile", "--model", model("uniform3"), "--criterion", "ui", "--levels", "0:4:5:lin"});
  ASSERT_EQ(r.code, kPass) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"level", "value", "certificate", "horizon"}));
  EXPECT_EQ(std::stod(rows[1][1]), 2.0);
  EXPECT_EQ(rows[1][2], "exact");
  EXPECT_EQ(std::stod(rows[5][1]), 0.0);
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_LE(std::stod(rows[i][1]), std::stod(rows[i - 1][1]));
}

TEST(CliTest, ProfileRemarkClosedForm) {
  const CliRun r = run_cli({"profile", "--plugin", "remark-counterexample", "--criterion", "ui", "--levels",
                         "10:1000:3:log"});
  ASSERT_EQ(r.code, kPass) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 4u);
  const double m[] = {10, 100, 1000};
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(std::stod(rows[i + 1][0]), m[i]);
    EXPECT_NEAR(std::stod(rows[i + 1][1]), 1.0 / std::log(m[i]), 1e-15);
    EXPECT_EQ(rows[i + 1][2], "exact");
  }
}

TEST(CliTest, ProfileRejectsBadInput) {
  EXPECT_EQ(run_cli({"profile", "--model", model("uniform3"), "--levels", "4:0:3"}).code, kUsage);
  EXPECT_EQ(run_cli({"profile", "--model", model("uniform3"), "--criterion", "xyz"}).code, kUsage);
  EXPECT_EQ(run_cli({"profile", "--model", model("uniform3"), "--criterion", "wsui", "--levels", "0.5,1"}).code,
            kUsage);
  EXPECT_EQ(run_cli({"profile"}).code, kUsage);
  EXPECT_EQ(run_cli({"profile", "--model", model("uniform3"), "--plugin", "remark-counterexample"}).code, kUsage);
  EXPECT_EQ(run_cli({}).code, kUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kUsage);
}

TEST(CliTest, DiagnoseExitCodes) {
  const CliRun u = run_cli({"diagnose", "--model", model("uniform3")});
  EXPECT_EQ(u.code, kPass) << u.err;
  EXPECT_NE(u.out.find("empirical_pass"), std::string::npos);
  EXPECT_EQ(u.out.find("inconclusive"), std::string::npos);

  const CliRun remark = run_cli({"diagnose", "--plugin", "remark-counterexample", "--levels", "10:1000:3:log"});
  EXPECT_EQ(remark.code, kFail) << remark.err;
  EXPECT_NE(remark.out.find("certified_pass"), std::string::npos);

  EXPECT_EQ(run_cli({"diagnose", "--model", model("shifting")}).code, kInconclusive);
  EXPECT_EQ(run_cli({"diagnose", "--model", model("credal4")}).code, kPass);

  const CliRun missing = run_cli({"diagnose", "--model", model("missing-model")});
  EXPECT_EQ(missing.code, kUsage);
  EXPECT_NE(missing.err.find("IoError"), std::string::npos) << missing.err;
  EXPECT_EQ(run_cli({"diagnose", "--model", UICHECK_TEST_DATA_DIR "/invalid/weights_sum_09.json"}).code, kUsage);
}

TEST(CliTest, DiagnoseCsvAppendix) {
  const CliRun r = run_cli({"diagnose", "--model", model("uniform3"), "--format", "csv"});
  ASSERT_EQ(r.code, kPass) << r.err;
  EXPECT_NE(r.out.find("criterion,level,value,certificate,horizon\n"), std::string::npos);
  EXPECT_NE(r.out.find("\nui,1024,0,exact,"), std::string::npos) << r.out;
}

TEST(CliTest, PhiExamples) {
  const CliRun u = run_cli({"phi", "--model", model("uniform5"), "--k", "3"});
  ASSERT_EQ(u.code, kPass) << u.err;
  EXPECT_NE(u.out.find("[3,4,5]"), std::string::npos) << u.out;
  EXPECT_NE(u.out.find("0.2"), std::string::npos);

  const CliRun c = run_cli({"phi", "--model", model("const2"), "--k", "1", "--format", "csv"});
  ASSERT_EQ(c.code, kPass) << c.err;
  EXPECT_NE(c.out.find("thresholds,\"[2]\""), std::string::npos) << c.out;
  EXPECT_NE(c.out.find("sup_phi,0\n"), std::string::npos) << c.out;

  const CliRun remark = run_cli({"phi", "--plugin", "remark-counterexample", "--k", "2"});
  EXPECT_EQ(remark.code, kPass) << remark.err;
  EXPECT_NE(remark.out.find("[2,6]"), std::string::npos) << remark.out;

  EXPECT_EQ(run_cli({"phi", "--model", model("uniform5"), "--k", "0"}).code, kUsage);
  EXPECT_EQ(run_cli({"phi", "--model", model("uniform5"), "--thresholds", "1,2"}).code, kPass);
}

TEST(CliTest, PhiSearchCapExceeded) {
  const CliRun r = run_cli({"phi", "--plugin", "remark-counterexample", "--k", "4", "--search-cap", "1000"});
  EXPECT_EQ(r.code, kFail);
  EXPECT_NE(r.err.find("SearchCapExceeded"), std::string::npos) << r.err;
}

TEST(CliTest, AxiomsAndSandwich) {
  const CliRun a = run_cli({"axioms", "--model", model("credal4"), "--trials", "200"});
  EXPECT_EQ(a.code, kPass) << a.err;
  EXPECT_EQ(run_cli({"axioms", "--plugin", "remark-counterexample", "--trials", "50"}).code, kPass);

  const CliRun s = run_cli({"sandwich", "--model", model("uniform3")});
  ASSERT_EQ(s.code, kPass) << s.err;
  const auto rows = csv_rows(s.out);
  EXPECT_EQ(rows[0][0], "member");
  EXPECT_EQ(rows[0].size(), 7u);
  EXPECT_GT(rows.size(), 2u);
  EXPECT_EQ(run_cli({"sandwich", "--model", model("geometric")}).code, kPass);
}

TEST(CliTest, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "uicheck_cli_test.csv";
  std::filesystem::remove(path);
  const CliRun r = run_cli({"profile", "--model", model("uniform3"), "--levels", "1,2", "--out", path.string()});
  ASSERT_EQ(r.code, kPass) << r.err;
  std::ifstream in(path, std::ios::binary);
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_EQ(body.str().rfind("level,value,certificate,horizon\n", 0), 0u);
  std::filesystem::remove(path);
}

TEST(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::vector<std::string>> commands = {
      {"profile", "--model", model("credal4"), "--criterion", "wui", "--levels", "0:8:9"},
      {"profile", "--model", model("geometric"), "--criterion", "wsui", "--levels", "1:16:16"},
      {"diagnose", "--model", model("credal4"), "--format", "csv"},
      {"phi", "--model", model("uniform5"), "--k", "5", "--format", "csv"},
      {"axioms", "--model", model("credal4"), "--trials", "100", "--format", "csv"},
      {"sandwich", "--model", model("uniform5")},
  };
  for (const auto& cmd : commands) {
    const CliRun a = run_cli(cmd);
    const CliRun b = run_cli(cmd);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out) << cmd[0];
    EXPECT_EQ(a.out.find('\r'), std::string::npos);
  }
}

}  // namespace
}  // namespace uic::cli
