#include "dcgra/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <thread>

#include "json.hpp"

#include "dcgra/oracle.hpp"
#include "dcgra/rng.hpp"
#include "dcgra/sim.hpp"

namespace dcgra::driver {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

const oracle::OracleResult reference_result(const Graph& g, Kernel k, VertexId source) {
  switch (k) {
    case Kernel::BFS: return oracle::bfs_levels(g, source);
    case Kernel::SSSP: return oracle::sssp_distances(g, source);
    case Kernel::WCC: return oracle::wcc_labels(g);
  }
  throw ValidationError("bad kernel");
}

}  // namespace

Graph obtain_graph(const RunConfig& rc) {
  const bool has_file = !rc.graph_path.empty();
  const bool has_family = !rc.family.empty();
  if (has_file == has_family)
    throw ValidationError("exactly one of --graph and --family must be given");
  if (has_file) return load_edge_list(rc.graph_path);
  GenOptions opt;
  opt.weighted = rc.weighted;
  opt.vertices = rc.vertices;
  return generate(parse_family(rc.family), rc.seed, opt);
}

Graph execution_graph(const Graph& g, Kernel k) {
  if (k != Kernel::WCC || !g.directed()) return g;
  // undirected closure: keep one edge per unordered pair, lowest weight wins
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    Edge u = e;
    if (u.src > u.dst) std::swap(u.src, u.dst);
    edges.push_back(u);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.dst, a.weight) < std::tie(b.src, b.dst, b.weight);
  });
  std::vector<Edge> unique;
  for (const auto& e : edges)
    if (unique.empty() || unique.back().src != e.src || unique.back().dst != e.dst)
      unique.push_back(e);
  return Graph(false, g.num_vertices(), std::move(unique));
}

std::vector<VertexId> pick_sources(const RunConfig& rc, const Graph& g, Kernel k) {
  if (k == Kernel::WCC) return {-1};  // source-free
  if (rc.source_id >= 0) {
    if (rc.source_id >= g.num_vertices())
      throw ValidationError("--source-id out of range");
    return {rc.source_id};
  }
  if (rc.family == "tree") return {0};  // tree runs start at the root
  int want = rc.sources > 0 ? rc.sources : 1;
  want = std::min<int>(want, g.num_vertices());
  Rng rng(Rng::derive(rc.seed, 0x5048CEull));
  std::set<VertexId> picked;
  while (static_cast<int>(picked.size()) < want)
    picked.insert(static_cast<VertexId>(rng.below(g.num_vertices())));
  return {picked.begin(), picked.end()};
}

namespace {

struct SingleRun {
  RunRow row;
  std::vector<TraceEvent> trace;
  std::string error;
};

SingleRun simulate_one(const RunConfig& rc, const Graph& exec_g, const Graph& input_g,
                       const CompileResult& compile, const TableSet& tables,
                       const KernelSpec& kernel, VertexId source, int rep, bool want_trace) {
  SingleRun out;
  out.row.source = source;
  out.row.rep = rep;
  SimOptions opt;
  opt.collect_trace = want_trace;
  opt.watchdog_cycles = rc.watchdog_cycles;
  std::optional<VertexId> src;
  if (source >= 0) src = source;
  SimResult run = run_simulation(exec_g, compile.mapping, tables, kernel, src, rc.arch, opt);
  out.row.metrics = metrics::from_counters(run, compile.mapping, exec_g, rc.arch,
                                           compile.collision_count, rc.clock_mhz * 1e6);
  if (rc.verify) {
    auto want = reference_result(input_g, kernel.kind, source);
    if (want.attributes != run.attributes) {
      out.error = "oracle mismatch: kernel=" + std::string(kernel_name(kernel.kind)) +
                  " source=" + std::to_string(source) + " seed=" + std::to_string(rc.seed);
      return out;
    }
    out.row.verified = true;
  }
  out.trace = std::move(run.trace);
  return out;
}

}  // namespace

ExperimentResult run_experiment(const RunConfig& rc, std::ostream& log) {
  ExperimentResult result;
  rc.arch.validate();
  if (rc.wcc_seed_mode != "all")
    throw ValidationError("unsupported --wcc-seed-mode: " + rc.wcc_seed_mode);
  if (rc.repeats < 1) throw ValidationError("--repeats must be >= 1");

  result.graph = obtain_graph(rc);
  const Kernel kind = parse_kernel(rc.kernel);
  const KernelSpec kernel = KernelSpec::make(kind);
  const Graph exec_g = execution_graph(result.graph, kind);

  auto t0 = std::chrono::steady_clock::now();
  MapperStats stats;
  Mapping initial = beam_search_initial(exec_g, rc.arch, rc.beam_width, &stats);
  result.compile_beam_seconds = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  if (rc.local_opt) {
    result.compile.mapping = local_optimize(exec_g, initial, rc.est, rc.seed, rc.arch, &stats);
    result.compile_local_seconds = seconds_since(t0);
  } else {
    result.compile.mapping = std::move(initial);
  }
  result.compile.stats = stats;
  result.compile.routing_length = total_routing_length(exec_g, result.compile.mapping);
  result.compile.collision_count =
      static_cast<std::int64_t>(detect_collisions(exec_g, result.compile.mapping, rc.arch).sets.size());

  TableSet tables = build_tables(exec_g, result.compile.mapping, rc.arch);
  result.sources = pick_sources(rc, exec_g, kind);

  struct Task {
    VertexId source;
    int rep;
  };
  std::vector<Task> tasks;
  for (VertexId s : result.sources)
    for (int rep = 0; rep < rc.repeats; ++rep) tasks.push_back({s, rep});

  std::vector<SingleRun> runs(tasks.size());
  const bool want_trace = !rc.trace_path.empty();
  unsigned jobs = rc.jobs > 0 ? static_cast<unsigned>(rc.jobs)
                              : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, tasks.size() == 0 ? 1 : static_cast<unsigned>(tasks.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) break;
      runs[i] = simulate_one(rc, exec_g, result.graph, result.compile, tables, kernel,
                             tasks[i].source, tasks[i].rep, want_trace);
    }
  };
  if (jobs <= 1 || tasks.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!runs[i].error.empty()) {
      result.errors.push_back(runs[i].error);
      result.exit_code = kExitOracleMismatch;
    }
    result.rows.push_back(runs[i].row);
    if (want_trace) {
      std::string path = rc.trace_path;
      if (tasks.size() > 1)
        path += "." + std::to_string(tasks[i].source) + "." + std::to_string(tasks[i].rep);
      std::ofstream out(path, std::ios::binary);
      if (!out) throw ParseError("cannot open " + path + " for writing");
      write_trace(runs[i].trace, rc.arch, out);
    }
  }

  if (!rc.out_csv.empty()) {
    std::ofstream out(rc.out_csv, std::ios::binary);
    if (!out) throw ParseError("cannot open " + rc.out_csv + " for writing");
    write_csv(rc, result, out);
  }
  if (!rc.out_json.empty()) {
    std::ofstream out(rc.out_json, std::ios::binary);
    if (!out) throw ParseError("cannot open " + rc.out_json + " for writing");
    write_json(rc, result, out);
  }
  if (!rc.out_mapping.empty()) {
    MappingSummary sum{result.compile.routing_length, result.compile.collision_count,
                       result.compile.mapping.num_slices};
    save_mapping(result.compile.mapping, sum, rc.out_mapping);
  }

  for (const auto& err : result.errors) log << "error: " << err << "\n";
  log << "graph |V|=" << result.graph.num_vertices() << " |E|=" << result.graph.edges().size()
      << " arcs=" << result.graph.num_arcs() << " f(M)=" << result.compile.routing_length
      << " collisions=" << result.compile.collision_count
      << " slices=" << result.compile.mapping.num_slices << " runs=" << result.rows.size()
      << "\n";
  return result;
}

ExperimentResult compile_only(const RunConfig& rc, std::ostream& log) {
  ExperimentResult result;
  rc.arch.validate();
  result.graph = obtain_graph(rc);
  const Kernel kind = parse_kernel(rc.kernel);
  const Graph exec_g = execution_graph(result.graph, kind);

  auto t0 = std::chrono::steady_clock::now();
  MapperStats stats;
  Mapping initial = beam_search_initial(exec_g, rc.arch, rc.beam_width, &stats);
  result.compile_beam_seconds = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  if (rc.local_opt) {
    result.compile.mapping = local_optimize(exec_g, initial, rc.est, rc.seed, rc.arch, &stats);
    result.compile_local_seconds = seconds_since(t0);
  } else {
    result.compile.mapping = std::move(initial);
  }
  result.compile.stats = stats;
  result.compile.routing_length = total_routing_length(exec_g, result.compile.mapping);
  result.compile.collision_count =
      static_cast<std::int64_t>(detect_collisions(exec_g, result.compile.mapping, rc.arch).sets.size());

  MappingSummary sum{result.compile.routing_length, result.compile.collision_count,
                     result.compile.mapping.num_slices};
  if (!rc.out_mapping.empty()) {
    save_mapping(result.compile.mapping, sum, rc.out_mapping);
  }
  if (!rc.out_json.empty()) {
    std::ofstream out(rc.out_json, std::ios::binary);
    if (!out) throw ParseError("cannot open " + rc.out_json + " for writing");
    write_json(rc, result, out);
  }
  log << "compiled |V|=" << result.graph.num_vertices() << " f(M)=" << result.compile.routing_length
      << " collisions=" << result.compile.collision_count
      << " slices=" << result.compile.mapping.num_slices << " beam_s=" << format_double(result.compile_beam_seconds)
      << " local_s=" << format_double(result.compile_local_seconds) << "\n";
  return result;
}

namespace {

void write_config_echo(const RunConfig& rc, const ExperimentResult& r, std::ostream& out,
                       const char* prefix) {
  out << prefix << "graph " << (rc.graph_path.empty() ? "-" : rc.graph_path) << "\n";
  out << prefix << "family " << (rc.family.empty() ? "-" : rc.family) << "\n";
  out << prefix << "seed " << rc.seed << "\n";
  out << prefix << "vertices " << rc.vertices << "\n";
  out << prefix << "weighted " << (rc.weighted ? 1 : 0) << "\n";
  out << prefix << "kernel " << rc.kernel << "\n";
  out << prefix << "sources";
  for (auto s : r.sources) out << " " << s;
  out << "\n";
  out << prefix << "array " << rc.arch.array_width << "x" << rc.arch.array_height << "\n";
  out << prefix << "drf_capacity " << rc.arch.drf_capacity << "\n";
  out << prefix << "beam_width " << rc.beam_width << "\n";
  out << prefix << "local_opt " << (rc.local_opt ? 1 : 0) << "\n";
  out << prefix << "t_hop " << rc.arch.t_hop << "\n";
  out << prefix << "t_tab " << rc.est.t_tab << "\n";
  out << prefix << "t_exe " << rc.est.t_exe << "\n";
  out << prefix << "epsilon " << rc.est.epsilon << "\n";
  out << prefix << "swap_latency " << rc.arch.swap_latency << "\n";
  out << prefix << "buffers " << rc.arch.input_buffer_depth << " " << rc.arch.aluin_buffer_depth
      << " " << rc.arch.aluout_buffer_depth << " " << rc.arch.memory_buffer_depth << "\n";
  out << prefix << "tables " << rc.arch.inter_table_capacity << " "
      << rc.arch.intra_table_capacity << "\n";
  out << prefix << "store " << rc.arch.spm_bytes << " " << rc.arch.offchip_bytes << "\n";
  out << prefix << "watchdog " << rc.watchdog_cycles << "\n";
  out << prefix << "clock_mhz " << format_double(rc.clock_mhz) << "\n";
  out << prefix << "wcc_seed_mode " << rc.wcc_seed_mode << "\n";
  out << prefix << "verify " << (rc.verify ? 1 : 0) << "\n";
  out << prefix << "repeats " << rc.repeats << "\n";
}

}  // namespace

void write_csv(const RunConfig& rc, const ExperimentResult& r, std::ostream& out) {
  write_config_echo(rc, r, out, "# ");
  out << "family,seed,vertices,edges,arcs,kernel,source,rep,total_cycles,traversed_edges,mteps,"
         "avg_parallelism,avg_routing_length,avg_pkt_wait_cycles,avg_aluin_depth,swap_count,"
         "collision_count,num_slices,f_m,verified\n";
  for (const auto& row : r.rows) {
    const auto& m = row.metrics;
    out << (rc.family.empty() ? "-" : rc.family) << "," << rc.seed << ","
        << r.graph.num_vertices() << "," << r.graph.edges().size() << "," << r.graph.num_arcs()
        << "," << rc.kernel << "," << row.source << "," << row.rep << "," << m.total_cycles << ","
        << m.traversed_edges << "," << format_double(m.mteps) << ","
        << format_double(m.avg_parallelism) << "," << format_double(m.avg_routing_length) << ","
        << format_double(m.avg_pkt_wait_cycles) << "," << format_double(m.avg_aluin_depth) << ","
        << m.swap_count << "," << m.collision_count << "," << r.compile.mapping.num_slices << ","
        << r.compile.routing_length << "," << (row.verified ? 1 : 0) << "\n";
  }
}

void write_json(const RunConfig& rc, const ExperimentResult& r, std::ostream& out) {
  nlohmann::ordered_json j;
  j["config"] = {
      {"graph", rc.graph_path},
      {"family", rc.family},
      {"seed", rc.seed},
      {"vertices", rc.vertices},
      {"weighted", rc.weighted},
      {"kernel", rc.kernel},
      {"array_width", rc.arch.array_width},
      {"array_height", rc.arch.array_height},
      {"drf_capacity", rc.arch.drf_capacity},
      {"beam_width", rc.beam_width},
      {"local_opt", rc.local_opt},
      {"t_hop", rc.arch.t_hop},
      {"t_tab", rc.est.t_tab},
      {"t_exe", rc.est.t_exe},
      {"epsilon", rc.est.epsilon},
      {"swap_latency", rc.arch.swap_latency},
      {"clock_mhz", rc.clock_mhz},
      {"wcc_seed_mode", rc.wcc_seed_mode},
      {"verify", rc.verify},
      {"repeats", rc.repeats},
  };
  j["graph"] = {{"vertices", r.graph.num_vertices()},
                {"edges", r.graph.edges().size()},
                {"arcs", r.graph.num_arcs()},
                {"directed", r.graph.directed()}};
  j["mapping"] = {{"routing_length", r.compile.routing_length},
                  {"collisions", r.compile.collision_count},
                  {"num_slices", r.compile.mapping.num_slices},
                  {"beam_evaluations", r.compile.stats.beam_evaluations},
                  {"local_iterations", r.compile.stats.local_iterations},
                  {"swaps_accepted", r.compile.stats.swaps_accepted}};
  j["timing"] = {{"compile_beam_seconds", r.compile_beam_seconds},
                 {"compile_local_seconds", r.compile_local_seconds}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  double sum_cycles = 0, sum_par = 0, sum_mteps = 0;
  for (const auto& row : r.rows) {
    const auto& m = row.metrics;
    rows.push_back({{"source", row.source},
                    {"rep", row.rep},
                    {"total_cycles", m.total_cycles},
                    {"traversed_edges", m.traversed_edges},
                    {"mteps", m.mteps},
                    {"avg_parallelism", m.avg_parallelism},
                    {"avg_routing_length", m.avg_routing_length},
                    {"avg_pkt_wait_cycles", m.avg_pkt_wait_cycles},
                    {"avg_aluin_depth", m.avg_aluin_depth},
                    {"swap_count", m.swap_count},
                    {"collision_count", m.collision_count},
                    {"verified", row.verified}});
    sum_cycles += static_cast<double>(m.total_cycles);
    sum_par += m.avg_parallelism;
    sum_mteps += m.mteps;
  }
  j["rows"] = rows;
  if (!r.rows.empty()) {
    const auto n = static_cast<double>(r.rows.size());
    j["summary"] = {{"runs", r.rows.size()},
                    {"mean_total_cycles", sum_cycles / n},
                    {"mean_avg_parallelism", sum_par / n},
                    {"mean_mteps", sum_mteps / n}};
  }
  if (!r.errors.empty()) j["errors"] = r.errors;
  out << j.dump(2) << "\n";
}

int run_cli(const RunConfig& rc, std::ostream& log) {
  try {
    if (rc.compile_only) {
      compile_only(rc, log);
      return kExitOk;
    }
    return run_experiment(rc, log).exit_code;
  } catch (const CapacityError& e) {
    log << "mapper error: " << e.what() << "\n";
    return kExitMapper;
  } catch (const SimError& e) {
    log << "internal error: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace dcgra::driver
