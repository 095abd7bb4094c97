#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "dcgra/arch.hpp"
#include "dcgra/driver.hpp"
#include "dcgra/graph.hpp"
#include "dcgra/kernels.hpp"
#include "dcgra/mapper.hpp"
#include "dcgra/metrics.hpp"
#include "dcgra/oracle.hpp"
#include "dcgra/sim.hpp"

namespace py = pybind11;
using namespace dcgra;

namespace {

Graph make_graph(bool directed, VertexId n,
                 const std::vector<std::tuple<VertexId, VertexId, std::int32_t>>& edges) {
  std::vector<Edge> es;
  es.reserve(edges.size());
  for (const auto& [s, d, w] : edges) es.push_back({s, d, w});
  return Graph(directed, n, std::move(es));
}

py::dict metrics_dict(const metrics::MetricsReport& m) {
  py::dict d;
  d["total_cycles"] = m.total_cycles;
  d["traversed_edges"] = m.traversed_edges;
  d["mteps"] = m.mteps;
  d["avg_parallelism"] = m.avg_parallelism;
  d["avg_routing_length"] = m.avg_routing_length;
  d["avg_pkt_wait_cycles"] = m.avg_pkt_wait_cycles;
  d["avg_aluin_depth"] = m.avg_aluin_depth;
  d["swap_count"] = m.swap_count;
  d["collision_count"] = m.collision_count;
  d["parallelism"] = m.parallelism;
  return d;
}

}  // namespace

PYBIND11_MODULE(dcgra, m) {
  m.doc() = "Data-centric CGRA graph accelerator: mapper, cycle simulator, oracles";

  py::register_exception<Error>(m, "DcgraError");

  py::class_<Edge>(m, "Edge")
      .def(py::init<>())
      .def_readwrite("src", &Edge::src)
      .def_readwrite("dst", &Edge::dst)
      .def_readwrite("weight", &Edge::weight)
      .def("__repr__", [](const Edge& e) {
        std::ostringstream ss;
        ss << "Edge(" << e.src << ", " << e.dst << ", w=" << e.weight << ")";
        return ss.str();
      });

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("directed"), py::arg("num_vertices"), py::arg("edges"))
      .def_property_readonly("directed", &Graph::directed)
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("edges", [](const Graph& g) { return g.edges(); })
      .def("arcs", &Graph::arcs)
      .def("__repr__", [](const Graph& g) {
        std::ostringstream ss;
        ss << "Graph(" << (g.directed() ? "directed" : "undirected") << ", |V|="
           << g.num_vertices() << ", |E|=" << g.edges().size() << ")";
        return ss.str();
      });

  m.def(
      "generate",
      [](const std::string& family, std::uint64_t seed, bool weighted, VertexId vertices) {
        GenOptions opt;
        opt.weighted = weighted;
        opt.vertices = vertices;
        return generate(parse_family(family), seed, opt);
      },
      py::arg("family"), py::arg("seed"), py::arg("weighted") = false, py::arg("vertices") = 0);
  m.def("load_edge_list", [](const std::string& path) { return load_edge_list(path); });
  m.def("save_edge_list",
        [](const Graph& g, const std::string& path) { save_edge_list(g, path); });
  m.def("graph_center", &graph_center);
  m.def("degrees", [](const Graph& g) {
    auto d = degrees(g);
    return py::make_tuple(d.in, d.out);
  });

  py::class_<ArchConfig>(m, "ArchConfig")
      .def(py::init<>())
      .def_readwrite("array_width", &ArchConfig::array_width)
      .def_readwrite("array_height", &ArchConfig::array_height)
      .def_readwrite("drf_capacity", &ArchConfig::drf_capacity)
      .def_readwrite("input_buffer_depth", &ArchConfig::input_buffer_depth)
      .def_readwrite("aluin_buffer_depth", &ArchConfig::aluin_buffer_depth)
      .def_readwrite("aluout_buffer_depth", &ArchConfig::aluout_buffer_depth)
      .def_readwrite("memory_buffer_depth", &ArchConfig::memory_buffer_depth)
      .def_readwrite("offset_bits", &ArchConfig::offset_bits)
      .def_readwrite("id_bits", &ArchConfig::id_bits)
      .def_readwrite("slice_id_bits", &ArchConfig::slice_id_bits)
      .def_readwrite("inter_table_capacity", &ArchConfig::inter_table_capacity)
      .def_readwrite("intra_table_capacity", &ArchConfig::intra_table_capacity)
      .def_readwrite("t_hop", &ArchConfig::t_hop)
      .def_readwrite("t_tab_per_entry", &ArchConfig::t_tab_per_entry)
      .def_readwrite("swap_latency", &ArchConfig::swap_latency)
      .def("validate", &ArchConfig::validate);

  py::class_<EstimatorParams>(m, "EstimatorParams")
      .def(py::init<>())
      .def_readwrite("t_h", &EstimatorParams::t_h)
      .def_readwrite("t_tab", &EstimatorParams::t_tab)
      .def_readwrite("t_exe", &EstimatorParams::t_exe)
      .def_readwrite("epsilon", &EstimatorParams::epsilon);

  py::class_<VertexPlace>(m, "VertexPlace")
      .def_readonly("x", &VertexPlace::x)
      .def_readonly("y", &VertexPlace::y)
      .def_readonly("slot", &VertexPlace::slot)
      .def_readonly("slice", &VertexPlace::slice);

  py::class_<Mapping>(m, "Mapping")
      .def_readonly("num_slices", &Mapping::num_slices)
      .def_readonly("assignment", &Mapping::assignment);

  py::class_<CompileResult>(m, "CompileResult")
      .def_readonly("mapping", &CompileResult::mapping)
      .def_readonly("routing_length", &CompileResult::routing_length)
      .def_readonly("collision_count", &CompileResult::collision_count);

  m.def(
      "compile_mapping",
      [](const Graph& g, const ArchConfig& cfg, std::uint64_t seed, int beam_width,
         bool local_opt, const EstimatorParams& est) {
        return compile_mapping(g, cfg, est, seed, beam_width, local_opt);
      },
      py::arg("graph"), py::arg("config") = ArchConfig{}, py::arg("seed") = 1,
      py::arg("beam_width") = 10, py::arg("local_opt") = true,
      py::arg("estimator") = EstimatorParams{});

  m.def("total_routing_length", &total_routing_length);
  m.def("required_slices", &required_slices);

  m.def(
      "simulate",
      [](const Graph& g, const CompileResult& compiled, const std::string& kernel,
         std::optional<VertexId> source, const ArchConfig& cfg, bool collect_trace) {
        Kernel k = parse_kernel(kernel);
        Graph exec = driver::execution_graph(g, k);
        TableSet tables = build_tables(exec, compiled.mapping, cfg);
        SimOptions opt;
        opt.collect_trace = collect_trace;
        SimResult run =
            run_simulation(exec, compiled.mapping, tables, KernelSpec::make(k), source, cfg, opt);
        auto report = metrics::from_counters(run, compiled.mapping, exec, cfg,
                                             compiled.collision_count);
        py::dict d;
        d["attributes"] = run.attributes;
        d["metrics"] = metrics_dict(report);
        return d;
      },
      py::arg("graph"), py::arg("compiled"), py::arg("kernel"),
      py::arg("source") = std::nullopt, py::arg("config") = ArchConfig{},
      py::arg("collect_trace") = false);

  m.def("oracle_bfs", [](const Graph& g, VertexId s) { return oracle::bfs_levels(g, s).attributes; });
  m.def("oracle_sssp",
        [](const Graph& g, VertexId s) { return oracle::sssp_distances(g, s).attributes; });
  m.def("oracle_wcc", [](const Graph& g) { return oracle::wcc_labels(g).attributes; });

  m.attr("INF_ATTR") = kInfAttr;
}
