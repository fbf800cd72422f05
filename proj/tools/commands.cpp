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

#include "commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "sebfs/algos.hpp"
#include "sebfs/bfs_tree.hpp"
#include "sebfs/generators.hpp"
#include "sebfs/graph_file.hpp"
#include "sebfs/oracle.hpp"

namespace sebfs::cli {

namespace {

struct RunFlags {
  std::string algo = "ep";
  std::string graph;
  double k = 1.0;
  double gamma = 0.08;
  std::uint64_t seed = 0;
  std::uint64_t watchdog = 0;
  double time_limit = 600.0;
  std::string out;
  std::string metrics;
  std::string scratch;
  bool no_verify = false;
};

struct BenchFlags {
  std::string sweep = "d";
  std::vector<std::string> values;
  std::string n = "10000";
  double d = 10.0;
  std::string m;
  double k = 1.0;
  double gamma = 0.08;
  std::vector<std::string> algos = {"eb", "ep"};
  std::uint64_t seed = 1;
  double time_limit = 600.0;
  std::string table;
  std::string scratch;
};

using Metrics = std::vector<std::pair<std::string, std::string>>;

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string seconds(double s) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << s;
  return os.str();
}

algos::RunResult dispatch(const std::string& algo, const std::filesystem::path& graph,
                          const algos::RunOptions& opt) {
  if (algo == "ee") return algos::ee_bfs(graph, opt);
  if (algo == "eb") return algos::eb_bfs(graph, opt);
  if (algo == "ep") return algos::ep_bfs(graph, opt);
  throw CLI::ValidationError("--algo", "unknown algorithm '" + algo + "'");
}

Metrics collect(const std::string& algo, const graphio::GraphHeader& h, const RunFlags& f,
                const algos::RunMetrics& m) {
  Metrics out = {
      {"algo", algo},
      {"n", str(h.n)},
      {"m", str(h.m)},
      {"k", str(f.k)},
      {"gamma", str(f.gamma)},
      {"seed", str(f.seed)},
      {"wall_seconds", seconds(m.wall_seconds)},
      {"bytes_read", str(m.bytes_read)},
      {"bytes_written", str(m.bytes_written)},
      {"dt_bytes", str(m.bytes_read + m.bytes_written)},
      {"raw_payload_bytes", str(h.payload_bytes())},
      {"capacity_edges", str(m.capacity)},
      {"peak_in_memory_edges", str(m.peak_in_memory_edges)},
      {"outer_iterations", str(m.outer_iterations)},
      {"restructuring_passes", str(m.restructuring_passes)},
      {"imp_invocations", str(m.imp_invocations)},
      {"mem_attrs_bytes", str(m.memory.attrs_bytes)},
      {"mem_order_bytes", str(m.memory.order_bytes)},
      {"mem_pool_bytes", str(m.memory.pool_bytes)},
      {"mem_list_bytes", str(m.memory.list_bytes)},
      {"mem_marks_bytes", str(m.memory.marks_bytes)},
      {"mem_root_list_bytes", str(m.memory.root_list_bytes)},
      {"mem_setup_degree_bytes", str(m.memory.degree_bytes)},
      {"mem_total_bytes", str(m.memory.total())},
  };
  if (algo == "ep") {
    out.insert(out.end(), {
                              {"partitions", str(m.partitions)},
                              {"active_nodes", str(m.active_nodes)},
                              {"scan_list_edges", str(m.scan_list_edges)},
                              {"source_edges", str(m.source_edges)},
                              {"sink_edges", str(m.sink_edges)},
                              {"evicted_edges", str(m.evicted_edges)},
                              {"scan_list_rebuilds", str(m.scan_list_rebuilds)},
                          });
  }
  return out;
}

void emit(const Metrics& metrics, std::ostream& out, const std::string& path) {
  for (const auto& [k, v] : metrics) out << k << '=' << v << '\n';
  if (!path.empty()) {
    std::ofstream file(path);
    if (!file) throw StorageError("cannot write metrics to '" + path + "'");
    for (const auto& [k, v] : metrics) file << k << '=' << v << '\n';
  }
}

int cmd_run(const RunFlags& f, std::ostream& out, std::ostream& err) {
  algos::RunOptions opt;
  opt.k = f.k;
  opt.gamma = f.gamma;
  opt.watchdog = f.watchdog;
  opt.time_limit_s = f.time_limit;
  opt.scratch_base = f.scratch;
  const graphio::GraphHeader h = graphio::read_graph_header(f.graph);
  const algos::RunResult res = dispatch(f.algo, f.graph, opt);
  if (!f.out.empty()) write_tree_file(f.out, res.tree);

  Metrics metrics = collect(f.algo, h, f, res.metrics);
  int code = kOk;
  if (f.no_verify) {
    metrics.emplace_back("verified", "skipped");
  } else {
    const oracle::Validation v = oracle::validate_bfs_tree(f.graph, res.tree);
    metrics.emplace_back("verified", v.ok() ? "yes" : "no");
    metrics.emplace_back("violations", str(v.violation_count));
    if (!v.ok()) {
      code = kValidationFailed;
      for (const auto& s : v.structural) err << "structural: " << s << '\n';
      for (const Edge& e : v.violations) err << "violation: " << e.src << ' ' << e.dst << '\n';
    }
  }
  emit(metrics, out, f.metrics);
  return code;
}

int cmd_verify(const std::string& graph, const std::string& tree_path, std::ostream& out,
               std::ostream& err) {
  const BfsTree tree = read_tree_file(tree_path);
  const oracle::Validation v = oracle::validate_bfs_tree(graph, tree);
  out << "edges_checked=" << v.edges_checked << '\n'
      << "violations=" << v.violation_count << '\n'
      << "structural_errors=" << v.structural.size() << '\n'
      << "valid=" << (v.ok() ? "yes" : "no") << '\n';
  for (const auto& s : v.structural) err << "structural: " << s << '\n';
  for (const Edge& e : v.violations) err << "violation: " << e.src << ' ' << e.dst << '\n';
  return v.ok() ? kOk : kValidationFailed;
}

int cmd_bench(const BenchFlags& f, std::ostream& out, std::ostream& err) {
  if (f.sweep != "d" && f.sweep != "n" && f.sweep != "m" && f.sweep != "k") {
    throw CLI::ValidationError("--sweep", "must be one of d, n, m, k");
  }
  graphio::ScratchDir scratch(f.scratch);
  std::ostringstream table;
  table << "sweep\tvalue\talgo\tn\tm\tk\twall_seconds\tbytes_read\tbytes_written\tdt_bytes"
           "\tpeak_in_memory_edges\tcapacity_edges\touter_iterations\timp_invocations\tvalid\n";
  bool all_valid = true;
  for (const std::string& value : f.values) {
    std::uint64_t n = parse_count(f.n);
    double d = f.d;
    double k = f.k;
    std::optional<std::uint64_t> m;
    if (!f.m.empty()) m = parse_count(f.m);
    if (f.sweep == "d") {
      d = std::stod(value);
      m.reset();
    } else if (f.sweep == "n") {
      n = parse_count(value);
      m.reset();
    } else if (f.sweep == "m") {
      n = parse_count(value);
      if (!m) throw CLI::ValidationError("--m", "the m sweep needs a fixed --m");
    } else {
      k = std::stod(value);
      m.reset();
    }
    const std::uint64_t edges =
        m.value_or(static_cast<std::uint64_t>(std::llround(d * static_cast<double>(n))));
    const auto graph = scratch.file("bench-" + f.sweep + "-" + value + ".edges");
    graphio::generate_er(graph, n, edges, f.seed);
    for (const std::string& algo : f.algos) {
      algos::RunOptions opt;
      opt.k = k;
      opt.gamma = f.gamma;
      opt.time_limit_s = f.time_limit;
      opt.scratch_base = scratch.path();
      const algos::RunResult res = dispatch(algo, graph, opt);
      const bool valid = oracle::validate_bfs_tree(graph, res.tree).ok();
      all_valid = all_valid && valid;
      const auto& mt = res.metrics;
      table << f.sweep << '\t' << value << '\t' << algo << '\t' << n << '\t' << edges << '\t' << k
            << '\t' << seconds(mt.wall_seconds) << '\t' << mt.bytes_read << '\t' << mt.bytes_written
            << '\t' << mt.bytes_read + mt.bytes_written << '\t' << mt.peak_in_memory_edges << '\t'
            << mt.capacity << '\t' << mt.outer_iterations << '\t' << mt.imp_invocations << '\t'
            << (valid ? "yes" : "no") << '\n';
      if (!valid)
        err << "verification failed: " << algo << " at " << f.sweep << '=' << value << '\n';
    }
  }
  out << table.str();
  if (!f.table.empty()) {
    std::ofstream file(f.table);
    if (!file) throw StorageError("cannot write table to '" + f.table + "'");
    file << table.str();
  }
  return all_valid ? kOk : kValidationFailed;
}

}  // namespace

std::uint64_t parse_count(const std::string& text) {
  const std::string bad = "count '" + text + "' is not a non-negative integer";
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::logic_error&) {
    throw std::invalid_argument(bad);
  }
  if (used != text.size() || !(value >= 0.0) || value > 1.8e19 || value != std::floor(value)) {
    throw std::invalid_argument(bad);
  }
  if (text.find_first_of(".eE") == std::string::npos) return std::stoull(text);
  return static_cast<std::uint64_t>(value);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semi-external breadth-first search over disk-resident graphs", "sebfs"};
  app.require_subcommand(1);

  std::string gen_out, gen_n, gen_m;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("generate", "Write a uniform random simple digraph");
  gen->add_option("--n", gen_n, "node count")->required();
  gen->add_option("--m", gen_m, "edge count")->required();
  gen->add_option("--seed", gen_seed, "random seed");
  gen->add_option("--out", gen_out, "output graph file")->required();

  std::string sub_in, sub_out;
  double sub_p = 0.0;
  std::uint64_t sub_seed = 0;
  auto* sub = app.add_subcommand("subsample", "Keep each edge independently with probability p");
  sub->add_option("--in", sub_in, "input graph file")->required();
  sub->add_option("--p", sub_p, "keep probability")->required();
  sub->add_option("--seed", sub_seed, "random seed");
  sub->add_option("--out", sub_out, "output graph file")->required();

  RunFlags rf;
  auto* runc = app.add_subcommand("run", "Compute a BFS tree");
  runc->add_option("--algo", rf.algo, "ee, eb or ep")->check(CLI::IsMember({"ee", "eb", "ep"}));
  runc->add_option("--graph", rf.graph, "input graph file")->required();
  runc->add_option("--k", rf.k, "memory factor: (1+K)n edges in memory");
  runc->add_option("--gamma", rf.gamma, "scan-list rebuild factor");
  runc->add_option("--seed", rf.seed, "recorded with the metrics");
  runc->add_option("--watchdog", rf.watchdog, "restructuring pass limit (0 = n)");
  runc->add_option("--time-limit", rf.time_limit, "seconds (0 = none)");
  runc->add_option("--out", rf.out, "output tree file");
  runc->add_option("--metrics", rf.metrics, "also write metrics to this file");
  runc->add_option("--scratch", rf.scratch, "scratch directory base");
  runc->add_flag("--no-verify", rf.no_verify, "skip the validation pass");

  std::string ver_graph, ver_tree;
  auto* ver = app.add_subcommand("verify", "Check a tree file against a graph");
  ver->add_option("--graph", ver_graph, "graph file")->required();
  ver->add_option("--tree", ver_tree, "tree file")->required();

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "Run a parameter sweep and print a table");
  bench->add_option("--sweep", bf.sweep, "d, n, m or k");
  bench->add_option("--values", bf.values, "swept values")->delimiter(',');
  bench->add_option("--n", bf.n, "node count (fixed)");
  bench->add_option("--d", bf.d, "average degree (fixed)");
  bench->add_option("--m", bf.m, "edge count (m sweep)");
  bench->add_option("--k", bf.k, "memory factor (fixed)");
  bench->add_option("--gamma", bf.gamma, "scan-list rebuild factor");
  bench->add_option("--algos", bf.algos, "algorithms")->delimiter(',');
  bench->add_option("--seed", bf.seed, "generator seed");
  bench->add_option("--time-limit", bf.time_limit, "seconds per run (0 = none)");
  bench->add_option("--table", bf.table, "also write the table to this file");
  bench->add_option("--scratch", bf.scratch, "scratch directory base");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*gen) {
      const auto h =
          graphio::generate_er(gen_out, parse_count(gen_n), parse_count(gen_m), gen_seed);
      out << "n=" << h.n << "\nm=" << h.m << "\nout=" << gen_out << '\n';
    } else if (*sub) {
      const auto h = graphio::subsample(sub_in, sub_out, sub_p, sub_seed);
      out << "n=" << h.n << "\nm=" << h.m << "\nout=" << sub_out << '\n';
    } else if (*runc) {
      return cmd_run(rf, out, err);
    } else if (*ver) {
      return cmd_verify(ver_graph, ver_tree, out, err);
    } else if (*bench) {
      return cmd_bench(bf, out, err);
    }
  } catch (const CLI::ValidationError& e) {
    err << e.what() << '\n';
    return kUsage;
  } catch (const WatchdogError& e) {
    err << "watchdog: " << e.what() << '\n';
    return kWatchdog;
  } catch (const TimeLimitError& e) {
    err << "time limit: " << e.what() << '\n';
    return kWatchdog;
  } catch (const StorageError& e) {
    err << "storage: " << e.what() << '\n';
    return kStorage;
  } catch (const FormatError& e) {
    err << "format: " << e.what() << '\n';
    return kStorage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

}  // namespace sebfs::cli
