// Copyright 2026 The holonomy-lab Authors
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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "holonomy/cli.hpp"

using holonomy::cli::Json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "holonomy_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = holonomy::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const Json& check(const Json& doc, const std::string& name) {
  for (const auto& c : doc["checks"])
    if (c["name"] == name) return c;
  throw std::runtime_error("no check " + name);
}

}  // namespace

TEST(Cli, GroupTetrahedral) {
  Result r = run({"group", "--kind", "tetrahedral"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(r.out);
  EXPECT_EQ(check(doc, "group.order")["details"]["order"], 12);
  EXPECT_EQ(check(doc, "group.exceptional_count")["details"]["count"], 14);
  EXPECT_EQ(check(doc, "group.partition_identity")["details"]["sum"], 11);
  EXPECT_EQ(doc["config"]["kind"], "tetrahedral");
  EXPECT_TRUE(doc["passed"].get<bool>());
}

TEST(Cli, DimsCyclicTwo) {
  Result r = run({"dims", "--kind", "cyclic", "--N", "2", "--n", "2", "--D", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(r.out);
  EXPECT_EQ(check(doc, "dims.paths_agree")["details"]["dims"][0], 4);
}

TEST(Cli, FlatnessCyclicThree) {
  Result r = run({"flatness", "--kind", "cyclic", "--N", "3", "--n", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(r.out);
  const Json& z = check(doc, "flatness.zero")["details"];
  EXPECT_EQ(z["samples"].size(), 30u);
  EXPECT_TRUE(z["certified"].get<bool>());
  EXPECT_EQ(check(doc, "flatness.negative_control")["status"], "pass");
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run({"group", "--kind", "bogus"}).code, 2);
  EXPECT_EQ(run({"dims", "--D", "5"}).code, 2);
  EXPECT_EQ(run({"monodromy", "--steps", "10"}).code, 2);
  EXPECT_EQ(run({"group", "--N", "abc"}).code, 2);
  EXPECT_EQ(run({"nosuch"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"group", "--format", "xml"}).code, 2);
}

TEST(Cli, CsvOnlyForTables) {
  Result dims = run({"dims", "--format", "csv", "--D", "2"});
  ASSERT_EQ(dims.code, 0) << dims.err;
  EXPECT_EQ(dims.out.substr(0, dims.out.find('\n')), "degree,dim,dim_without_elimination,dim_shuffled");
  EXPECT_NE(dims.out.find("\n1,4,4,4\n"), std::string::npos);
  Result flat = run({"flatness", "--format", "csv", "--samples", "5"});
  ASSERT_EQ(flat.code, 0);
  EXPECT_EQ(std::count(flat.out.begin(), flat.out.end(), '\n'), 6);
  EXPECT_EQ(run({"group", "--format", "csv"}).code, 2);
  EXPECT_EQ(run({"monodromy", "--format", "csv"}).code, 2);
}

TEST(Cli, DeterministicOutsideTiming) {
  auto strip = [](const std::string& s) {
    Json j = Json::parse(s);
    EXPECT_TRUE(j.contains("timing"));
    j.erase("timing");
    return j.dump();
  };
  Result a = run({"flatness", "--kind", "dihedral", "--N", "3", "--samples", "8", "--seed", "4"});
  Result b = run({"flatness", "--kind", "dihedral", "--N", "3", "--samples", "8", "--seed", "4"});
  EXPECT_EQ(strip(a.out), strip(b.out));
  Result c = run({"flatness", "--kind", "dihedral", "--N", "3", "--samples", "8", "--seed", "5"});
  EXPECT_NE(strip(a.out), strip(c.out));
}

TEST(Cli, ConfigFileAndOverride) {
  const std::string path = testing::TempDir() + "holonomy_cli.cfg";
  {
    std::ofstream f(path);
    f << "# defaults\nkind = dihedral\nN = 4\nsamples = 7\n";
  }
  Result r = run({"lemma", "--config", path});
  ASSERT_EQ(r.code, 0) << r.err;
  Json doc = Json::parse(r.out);
  EXPECT_EQ(doc["config"]["kind"], "dihedral");
  EXPECT_EQ(doc["config"]["N"], 4);
  EXPECT_EQ(doc["config"]["samples"], 7);
  Result o = run({"lemma", "--config", path, "--N", "3"});
  EXPECT_EQ(Json::parse(o.out)["config"]["N"], 3);
  std::remove(path.c_str());
}

TEST(Cli, WritesOutFile) {
  const std::string path = testing::TempDir() + "holonomy_cli.json";
  Result r = run({"group", "--out", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  Json doc = Json::parse(f);
  EXPECT_EQ(doc["subcommand"], "group");
  std::remove(path.c_str());
}

TEST(Cli, ReportPassesOnlyIfEveryCheckPasses) {
  holonomy::cli::Report rep;
  rep.add("x", true, {}, 0);
  EXPECT_TRUE(rep.passed());
  rep.add("y", false, {}, 0);
  EXPECT_FALSE(rep.passed());
}
