// Copyright 2026 The abtedit Authors
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

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "abtedit/cli.hpp"

namespace abtedit::cli {
namespace {

const std::string kSpec = std::string(ABTEDIT_SAMPLES_DIR) + "/letlang.edspec";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = main(args, out, err);
  return Outcome{code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << content;
  return path;
}

TEST(CliRun, InsertPlus) {
  Outcome o = call({"run", "--spec", kSpec, "--init-sort", "e", "-e", "{plus}.nil"});
  EXPECT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(o.out, "(cursor (op plus (hole e) (hole e)))\n");
}

TEST(CliRun, StuckAtRoot) {
  Outcome o = call({"run", "--spec", kSpec, "--init-sort", "e", "-e", "parent.nil"});
  EXPECT_EQ(o.code, kStuck);
  EXPECT_EQ(o.err, "stuck: at-root\n");
  EXPECT_EQ(o.out, "(cursor (hole e))\n");
}

TEST(CliRun, FuelExhausted) {
  Outcome o = call({"run", "--spec", kSpec, "--init-sort", "e", "-e", "rec X. X", "--fuel", "5"});
  EXPECT_EQ(o.code, kFuel);
  EXPECT_EQ(o.err, "fuel exhausted after 5 steps\n");
}

TEST(CliRun, TraceOutput) {
  Outcome o = call({"run", "--spec", kSpec, "--init-sort", "e", "-e",
                    "@hole_e => {plus}.nil | nil", "--output", "trace"});
  EXPECT_EQ(o.code, kOk);
  EXPECT_EQ(o.out,
            "eps\t(cursor (hole e))\n"
            "{plus}\t(cursor (op plus (hole e) (hole e)))\n"
            "(cursor (op plus (hole e) (hole e)))\n");
}

TEST(CliRun, JsonOutputMatchesWire) {
  Outcome o = call({"run", "--spec", kSpec, "--init-sort", "e", "-e", "{plus}. child 2. nil",
                    "--output", "json"});
  EXPECT_EQ(o.code, kOk);
  nlohmann::json j = nlohmann::json::parse(o.out);
  EXPECT_EQ(j.at("outcome"), "terminal");
  EXPECT_EQ(j.at("steps"), 2);
  EXPECT_EQ(j.at("sexpr"), "(op plus (hole e) (cursor (hole e)))");
  EXPECT_EQ(j.at("tree").at("children")[1].at("cursor"), true);
}

TEST(CliRun, TreeAndScriptFiles) {
  std::string tree = write_temp("t.tree", "(let (cursor (hole e)) (bind (x) (exp (var x))))\n");
  std::string script = write_temp("t.script", "{let}.nil\n");
  Outcome o = call({"run", "--spec", kSpec, "--tree", tree, "--script", script});
  EXPECT_EQ(o.code, kStuck);
  EXPECT_EQ(o.err, "stuck: sort-mismatch\n");
}

TEST(CliRun, UsageErrors) {
  EXPECT_EQ(call({}).code, kUsage);
  EXPECT_EQ(call({"run", "--spec", kSpec, "-e", "nil"}).code, kUsage);
  EXPECT_EQ(call({"run", "--spec", kSpec, "--init-sort", "e"}).code, kUsage);
  EXPECT_EQ(call({"run", "--spec", kSpec, "--init-sort", "e", "--tree", "x", "-e", "nil"}).code,
            kUsage);
  EXPECT_EQ(call({"run", "--spec", kSpec, "--init-sort", "q", "-e", "nil"}).code, kUsage);
  EXPECT_EQ(call({"run", "--spec", kSpec, "--init-sort", "e", "-e", "{plus}"}).code, kUsage);
  EXPECT_EQ(call({"run", "--spec", kSpec, "--init-sort", "e", "-e", "nil", "--fuel", "-1"}).code,
            kUsage);
  EXPECT_EQ(call({"run", "--spec", "/nonexistent", "--init-sort", "e", "-e", "nil"}).code, kUsage);
  EXPECT_EQ(call({"run", "--spec", kSpec, "--init-sort", "e", "-e", "nil", "--output", "xml"}).code,
            kUsage);
}

TEST(CliRun, Help) {
  Outcome o = call({"--help"});
  EXPECT_EQ(o.code, kOk);
  EXPECT_NE(o.out.find("check-soundness"), std::string::npos);
}

TEST(CliQuery, Examples) {
  EXPECT_EQ(call({"query", "--spec", kSpec, "--init-sort", "e", "@hole_e"}).out, "true\n");
  EXPECT_EQ(call({"query", "--spec", kSpec, "--init-sort", "e", "!@hole_e"}).out, "false\n");
  std::string tree = write_temp(
      "ex21.tree",
      "(cursor (let (num 5) (bind (x) (let (num 10) (bind (y) (exp (plus (var x) (var y))))))))");
  Outcome o = call({"query", "--spec", kSpec, "--tree", tree, "<>plus"});
  EXPECT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(o.out, "true\n");
  EXPECT_EQ(call({"query", "--spec", kSpec, "--init-sort", "e", "@minus"}).code, kUsage);
}

TEST(CliSoundness, SmallRun) {
  std::string report = ::testing::TempDir() + "report.txt";
  Outcome o = call({"check-soundness", "--spec", kSpec, "--cases", "40", "--seed", "3", "--report",
                    report});
  EXPECT_EQ(o.code, kOk) << o.out;
  EXPECT_EQ(o.out.rfind("40 cases: ", 0), 0u) << o.out;
  EXPECT_NE(o.out.find(" 0 mismatch"), std::string::npos);
  std::ifstream in(report);
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) ++lines;
  EXPECT_EQ(lines, 41u);
}

TEST(CliSoundness, ZeroCases) {
  Outcome o = call({"check-soundness", "--spec", kSpec, "--cases", "0"});
  EXPECT_EQ(o.code, kOk);
  EXPECT_EQ(o.out, "0 cases: 0 match, 0 stuck-agree, 0 fuel, 0 mismatch\n");
}

TEST(CliSoundness, MutationCanary) {
  Outcome o = call({"check-soundness", "--spec", kSpec, "--cases", "40", "--mutate-encoding"});
  EXPECT_EQ(o.code, kMismatch);
  EXPECT_EQ(o.out.find(" 0 mismatch"), std::string::npos) << o.out;
}

TEST(CliSoundness, Deterministic) {
  std::vector<std::string> args{"check-soundness", "--spec", kSpec, "--cases", "30", "--seed", "9",
                                "--report", ::testing::TempDir() + "a.txt"};
  Outcome a = call(args);
  args.back() = ::testing::TempDir() + "b.txt";
  Outcome b = call(args);
  EXPECT_EQ(a.out, b.out);
  std::ifstream fa(::testing::TempDir() + "a.txt"), fb(::testing::TempDir() + "b.txt");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(CliServe, UnavailableWithoutServer) {
  EXPECT_EQ(call({"serve", "--port", "1234"}).code, kUsage);
}

#ifdef ABT_EDIT_BINARY
int run_binary(const std::string& args) {
  std::string cmd = std::string(ABT_EDIT_BINARY) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(CliBinary, ExitCodes) {
  const std::string base = "run --spec " + kSpec + " --init-sort e ";
  EXPECT_EQ(run_binary(base + "-e '{plus}.nil'"), 0);
  EXPECT_EQ(run_binary(base + "-e 'parent.nil'"), 2);
  EXPECT_EQ(run_binary(base + "-e 'rec X. X' --fuel 5"), 3);
  EXPECT_EQ(run_binary("frobnicate"), 1);
}
#endif

}  // namespace
}  // namespace abtedit::cli
