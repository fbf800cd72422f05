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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <vector>

#include "sebfs/algos.hpp"
#include "sebfs/bfs_tree.hpp"
#include "sebfs/generators.hpp"
#include "sebfs/graph_file.hpp"
#include "sebfs/oracle.hpp"

namespace py = pybind11;

namespace {

using sebfs::BfsTree;

py::dict header_dict(const sebfs::graphio::GraphHeader& h) {
  py::dict d;
  d["n"] = h.n;
  d["m"] = h.m;
  d["id_width"] = h.id_width;
  d["payload_bytes"] = h.payload_bytes();
  d["file_bytes"] = h.file_bytes();
  return d;
}

py::dict metrics_dict(const sebfs::algos::RunMetrics& m) {
  py::dict d;
  d["wall_seconds"] = m.wall_seconds;
  d["bytes_read"] = m.bytes_read;
  d["bytes_written"] = m.bytes_written;
  d["dt_bytes"] = m.bytes_read + m.bytes_written;
  d["capacity_edges"] = m.capacity;
  d["peak_in_memory_edges"] = m.peak_in_memory_edges;
  d["outer_iterations"] = m.outer_iterations;
  d["restructuring_passes"] = m.restructuring_passes;
  d["imp_invocations"] = m.imp_invocations;
  d["mem_total_bytes"] = m.memory.total();
  d["partitions"] = m.partitions;
  d["active_nodes"] = m.active_nodes;
  d["scan_list_edges"] = m.scan_list_edges;
  d["source_edges"] = m.source_edges;
  d["sink_edges"] = m.sink_edges;
  d["evicted_edges"] = m.evicted_edges;
  d["scan_list_rebuilds"] = m.scan_list_rebuilds;
  return d;
}

py::tuple run(const std::string& algo, const std::filesystem::path& graph, double k, double gamma,
              std::uint64_t watchdog, double time_limit, const std::filesystem::path& scratch,
              bool audit) {
  sebfs::algos::RunOptions opt;
  opt.k = k;
  opt.gamma = gamma;
  opt.watchdog = watchdog;
  opt.time_limit_s = time_limit;
  opt.scratch_base = scratch;
  opt.audit = audit;
  sebfs::algos::RunResult res;
  {
    py::gil_scoped_release release;
    if (algo == "ee") {
      res = sebfs::algos::ee_bfs(graph, opt);
    } else if (algo == "eb") {
      res = sebfs::algos::eb_bfs(graph, opt);
    } else if (algo == "ep") {
      res = sebfs::algos::ep_bfs(graph, opt);
    } else {
      throw py::value_error("algo must be 'ee', 'eb' or 'ep'");
    }
  }
  return py::make_tuple(res.tree, metrics_dict(res.metrics));
}

py::dict validation_dict(const sebfs::oracle::Validation& v) {
  py::dict d;
  d["valid"] = v.ok();
  d["edges_checked"] = v.edges_checked;
  d["violation_count"] = v.violation_count;
  py::list edges;
  for (const auto& e : v.violations) edges.append(py::make_tuple(e.src, e.dst));
  d["violations"] = edges;
  d["structural"] = v.structural;
  return d;
}

}  // namespace

PYBIND11_MODULE(_sebfs, mod) {
  mod.doc() = "Semi-external BFS over binary edge-list files";
  mod.attr("ROOT") = sebfs::kRoot;

  auto base = py::register_exception<sebfs::Error>(mod, "Error", PyExc_RuntimeError);
  py::register_exception<sebfs::StorageError>(mod, "StorageError", base.ptr());
  py::register_exception<sebfs::FormatError>(mod, "FormatError", base.ptr());
  py::register_exception<sebfs::BudgetError>(mod, "BudgetError", base.ptr());
  py::register_exception<sebfs::WatchdogError>(mod, "WatchdogError", base.ptr());
  py::register_exception<sebfs::TimeLimitError>(mod, "TimeLimitError", base.ptr());

  py::class_<BfsTree>(mod, "BfsTree")
      .def(py::init<>())
      .def(py::init([](std::vector<sebfs::Position> b, std::vector<sebfs::NodeId> p) {
             return BfsTree{std::move(b), std::move(p)};
           }),
           py::arg("B"), py::arg("P"))
      .def_readwrite("B", &BfsTree::B)
      .def_readwrite("P", &BfsTree::P)
      .def("__len__", &BfsTree::size)
      .def("__eq__", [](const BfsTree& a, const BfsTree& b) { return a == b; });

  mod.def(
      "generate_er",
      [](const std::filesystem::path& out, std::uint64_t n, std::uint64_t m, std::uint64_t seed) {
        return header_dict(sebfs::graphio::generate_er(out, n, m, seed));
      },
      py::arg("out"), py::arg("n"), py::arg("m"), py::arg("seed") = 0);
  mod.def(
      "subsample",
      [](const std::filesystem::path& in, const std::filesystem::path& out, double p,
         std::uint64_t seed) { return header_dict(sebfs::graphio::subsample(in, out, p, seed)); },
      py::arg("src"), py::arg("out"), py::arg("p"), py::arg("seed") = 0);
  mod.def(
      "write_edges",
      [](const std::filesystem::path& out, std::uint64_t n,
         const std::vector<std::pair<sebfs::NodeId, sebfs::NodeId>>& edges) {
        std::vector<sebfs::Edge> es;
        es.reserve(edges.size());
        for (const auto& [u, v] : edges) es.push_back({u, v});
        sebfs::graphio::write_edge_file(out, n, es, nullptr);
      },
      py::arg("out"), py::arg("n"), py::arg("edges"));
  mod.def(
      "read_edges",
      [](const std::filesystem::path& path) {
        std::vector<std::pair<sebfs::NodeId, sebfs::NodeId>> out;
        for (const auto& e : sebfs::graphio::read_edge_file(path, nullptr)) {
          out.emplace_back(e.src, e.dst);
        }
        return out;
      },
      py::arg("path"));
  mod.def(
      "read_header",
      [](const std::filesystem::path& path) {
        return header_dict(sebfs::graphio::read_graph_header(path));
      },
      py::arg("path"));
  mod.def("run", &run, py::arg("algo"), py::arg("graph"), py::arg("k") = 1.0,
          py::arg("gamma") = 0.08, py::arg("watchdog") = 0, py::arg("time_limit") = 0.0,
          py::arg("scratch") = std::filesystem::path{}, py::arg("audit") = false,
          "Returns (tree, metrics).");
  mod.def(
      "verify",
      [](const std::filesystem::path& graph, const BfsTree& tree) {
        return validation_dict(sebfs::oracle::validate_bfs_tree(graph, tree));
      },
      py::arg("graph"), py::arg("tree"));
  mod.def(
      "reference_bfs",
      [](const std::filesystem::path& graph) {
        return sebfs::oracle::reference_bfs(sebfs::oracle::InMemGraph::load(graph));
      },
      py::arg("graph"));
  mod.def(
      "write_tree",
      [](const std::filesystem::path& out, const BfsTree& t) { sebfs::write_tree_file(out, t); },
      py::arg("out"), py::arg("tree"));
  mod.def(
      "read_tree", [](const std::filesystem::path& path) { return sebfs::read_tree_file(path); },
      py::arg("path"));
}
