// Copyright 2026 The sebfs Authors
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

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

#include "commands.hpp"
#include "sebfs/algos.hpp"
#include "sebfs/bfs_tree.hpp"
#include "sebfs/graph_file.hpp"
#include "test_util.hpp"

namespace sebfs::cli {
namespace {

using sebfs::testing::random_edges;
using sebfs::testing::TempDir;
using sebfs::testing::write_graph;

struct Outcome {
  int code;
  std::string out;
  std::string err;

  std::map<std::string, std::string> kv() const {
    std::map<std::string, std::string> m;
    std::istringstream in(out);
    std::string line;
    while (std::getline(in, line)) {
      const auto eq = line.find('=');
      if (eq != std::string::npos) m[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return m;
  }
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

TEST(ParseCount, Notations) {
  EXPECT_EQ(parse_count("42"), 42u);
  EXPECT_EQ(parse_count("1e4"), 10000u);
  EXPECT_EQ(parse_count("2.5e3"), 2500u);
  EXPECT_THROW(parse_count("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_count("abc"), std::invalid_argument);
  EXPECT_THROW(parse_count("-3"), std::invalid_argument);
}

TEST(Cli, GenerateIsDeterministic) {
  TempDir dir;
  const auto a = dir.file("a"), b = dir.file("b");
  ASSERT_EQ(call({"generate", "--n", "1e4", "--m", "2e5", "--seed", "7", "--out", a.string()}).code,
            kOk);
  ASSERT_EQ(call({"generate", "--n", "1e4", "--m", "2e5", "--seed", "7", "--out", b.string()}).code,
            kOk);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(graphio::read_graph_header(a).m, 200000u);
}

TEST(Cli, GenerateTwoNodes) {
  TempDir dir;
  const auto a = dir.file("a");
  const Outcome o = call({"generate", "--n", "2", "--m", "2", "--seed", "3", "--out", a.string()});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(o.kv().at("m"), "2");
  auto edges = graphio::read_edge_file(a, nullptr);
  std::sort(edges.begin(), edges.end());
  EXPECT_EQ(edges, (std::vector<Edge>{{0, 1}, {1, 0}}));
}

TEST(Cli, SubsampleStaysInBinomialRange) {
  TempDir dir;
  const auto g = dir.file("g"), s = dir.file("s");
  ASSERT_EQ(call({"generate", "--n", "1e4", "--m", "1e5", "--seed", "1", "--out", g.string()}).code,
            kOk);
  const Outcome o =
      call({"subsample", "--in", g.string(), "--p", "0.2", "--seed", "2", "--out", s.string()});
  ASSERT_EQ(o.code, kOk) << o.err;
  const double m = std::stod(o.kv().at("m"));
  EXPECT_LE(std::abs(m - 20000.0), 3.0 * std::sqrt(1e5 * 0.2 * 0.8));
}

TEST(Cli, EpOnEdgelessGraph) {
  TempDir dir;
  const auto g = write_graph(dir, "g", 10, {});
  const Outcome o = call({"run", "--algo", "ep", "--graph", g.string()});
  ASSERT_EQ(o.code, kOk) << o.err;
  const auto kv = o.kv();
  EXPECT_EQ(kv.at("outer_iterations"), "0");
  EXPECT_EQ(kv.at("verified"), "yes");
  EXPECT_EQ(kv.count("dt_bytes"), 1u);
  EXPECT_EQ(kv.count("mem_total_bytes"), 1u);
}

TEST(Cli, RunThenVerify) {
  TempDir dir;
  const auto g = dir.file("g"), t = dir.file("t"), met = dir.file("met");
  ASSERT_EQ(call({"generate", "--n", "1e4", "--m", "5e4", "--seed", "4", "--out", g.string()}).code,
            kOk);
  const Outcome r = call({"run", "--algo", "ep", "--graph", g.string(), "--out", t.string(),
                          "--metrics", met.string()});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(slurp(met), r.out);
  const Outcome v = call({"verify", "--graph", g.string(), "--tree", t.string()});
  EXPECT_EQ(v.code, kOk) << v.err;
  EXPECT_EQ(v.kv().at("valid"), "yes");
  EXPECT_EQ(v.kv().at("edges_checked"), "50000");
}

TEST(Cli, SameConfigSameTreeFile) {
  TempDir dir;
  const auto g = write_graph(dir, "g", 500, random_edges(500, 3000, 8));
  for (const std::string algo : {"ee", "eb", "ep"}) {
    const auto a = dir.file(algo + "-a"), b = dir.file(algo + "-b");
    ASSERT_EQ(call({"run", "--algo", algo, "--graph", g.string(), "--out", a.string()}).code, kOk);
    ASSERT_EQ(call({"run", "--algo", algo, "--graph", g.string(), "--out", b.string()}).code, kOk);
    EXPECT_EQ(slurp(a), slurp(b)) << algo;
  }
}

TEST(Cli, BadTreeFailsVerification) {
  TempDir dir;
  const auto g = write_graph(dir, "g", 3, {{0, 1}, {1, 2}});
  const auto t = dir.file("t");
  write_tree_file(t, algos::star_tree(3));
  const Outcome v = call({"verify", "--graph", g.string(), "--tree", t.string()});
  EXPECT_EQ(v.code, kValidationFailed);
  EXPECT_EQ(v.kv().at("violations"), "2");
  EXPECT_NE(v.err.find("violation: 0 1"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({"frobnicate"}).code, kUsage);
  EXPECT_EQ(call({"run", "--algo", "xx", "--graph", "nothing"}).code, kUsage);
  EXPECT_EQ(call({"generate", "--n", "3", "--m", "7", "--out", "x"}).code, kUsage);
  EXPECT_EQ(call({"subsample", "--in", "x", "--p", "1.5", "--out", "y"}).code, kUsage);
  EXPECT_EQ(call({"run", "--graph"}).code, kUsage);
}

TEST(Cli, TimeLimitExitCode) {
  TempDir dir;
  const auto g = write_graph(dir, "g", 200, random_edges(200, 1000, 1));
  const Outcome o = call({"run", "--algo", "ee", "--graph", g.string(), "--time-limit", "1e-9"});
  EXPECT_EQ(o.code, kWatchdog);
  EXPECT_NE(o.err.find("time limit"), std::string::npos);
}

TEST(Cli, WatchdogExitCode) {
  TempDir dir;
  // Find a graph that needs at least two restructuring passes.
  for (int c = 0; c < 200; ++c) {
    const auto edges = random_edges(20, 30, 700 + c);
    const auto g = write_graph(dir, "g" + std::to_string(c), 20, edges);
    if (algos::ee_bfs(g).metrics.restructuring_passes < 2) continue;
    const Outcome o = call({"run", "--algo", "ee", "--graph", g.string(), "--watchdog", "1"});
    EXPECT_EQ(o.code, kWatchdog);
    EXPECT_NE(o.err.find("watchdog"), std::string::npos);
    return;
  }
  FAIL() << "no graph needing two passes";
}

TEST(Cli, StorageErrors) {
  TempDir dir;
  EXPECT_EQ(call({"run", "--graph", dir.file("missing").string()}).code, kStorage);
  const auto junk = dir.file("junk");
  std::ofstream(junk) << "not a graph file at all, just some text padding it out";
  EXPECT_EQ(call({"verify", "--graph", junk.string(), "--tree", junk.string()}).code, kStorage);
}

TEST(Cli, BenchTable) {
  TempDir dir;
  const auto table = dir.file("table.tsv");
  const Outcome o = call({"bench", "--sweep", "d", "--values", "1,3", "--n", "2000", "--algos",
                          "eb,ep", "--table", table.string(), "--scratch", dir.path().string()});
  ASSERT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(slurp(table), o.out);
  std::istringstream in(o.out);
  std::string line;
  int rows = 0;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("sweep\tvalue\talgo", 0), 0u);
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_NE(line.find("\tyes"), std::string::npos) << line;
  }
  EXPECT_EQ(rows, 4);
}

TEST(Cli, BenchWithNoValuesPrintsHeaderOnly) {
  const Outcome o = call({"bench", "--sweep", "n"});
  EXPECT_EQ(o.code, kOk) << o.err;
  EXPECT_EQ(std::count(o.out.begin(), o.out.end(), '\n'), 1);
}

}  // namespace
}  // namespace sebfs::cli
