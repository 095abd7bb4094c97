#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dcgra/arch.hpp"
#include "dcgra/graph.hpp"
#include "dcgra/kernels.hpp"
#include "dcgra/mapper.hpp"
#include "dcgra/metrics.hpp"

namespace dcgra::driver {

// Exit codes of the experiment CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitMapper = 2;
inline constexpr int kExitOracleMismatch = 3;
inline constexpr int kExitInternal = 4;

struct RunConfig {
  // graph source: exactly one of the two
  std::string graph_path;
  std::string family;
  std::uint64_t seed = 1;
  int vertices = 0;  // family-size override, 0 = family default
  bool weighted = false;

  std::string kernel = "bfs";
  int sources = 0;     // N random sources (0 = policy default)
  int source_id = -1;  // fixed source (-1 = unset)
  std::string wcc_seed_mode = "all";

  ArchConfig arch;
  EstimatorParams est;
  int beam_width = 10;
  bool local_opt = true;
  bool verify = true;
  bool compile_only = false;
  int repeats = 1;
  int jobs = 0;  // 0 = hardware concurrency
  double clock_mhz = 100.0;
  std::int64_t watchdog_cycles = 1'000'000;

  std::string trace_path;
  std::string out_csv;
  std::string out_json;
  std::string out_mapping;
};

struct RunRow {
  VertexId source = -1;  // -1 when the kernel takes no source
  int rep = 0;
  metrics::MetricsReport metrics;
  bool verified = false;
};

struct ExperimentResult {
  int exit_code = kExitOk;
  Graph graph;
  CompileResult compile;
  std::vector<RunRow> rows;
  std::vector<VertexId> sources;
  double compile_beam_seconds = 0.0;
  double compile_local_seconds = 0.0;
  std::vector<std::string> errors;
};

// Resolve the graph named by the config (file or family+seed).
Graph obtain_graph(const RunConfig& rc);

// WCC propagates labels along both directions of every edge, so directed
// inputs are mapped and executed on their undirected closure.
Graph execution_graph(const Graph& g, Kernel k);

// The source set implied by the config: fixed id, N random draws, or the
// root for tree-family graphs.
std::vector<VertexId> pick_sources(const RunConfig& rc, const Graph& g, Kernel k);

// Map once, simulate per (source, repeat), verify against the oracle, emit
// reports. Returns rather than throws for oracle mismatches.
ExperimentResult run_experiment(const RunConfig& rc, std::ostream& log);

// Mapping + quality report only.
ExperimentResult compile_only(const RunConfig& rc, std::ostream& log);

// Report writers (deterministic byte-for-byte for fixed config and seeds).
void write_csv(const RunConfig& rc, const ExperimentResult& r, std::ostream& out);
void write_json(const RunConfig& rc, const ExperimentResult& r, std::ostream& out);

// CLI entry point shared by the binary and the tests.
int run_cli(const RunConfig& rc, std::ostream& log);

}  // namespace dcgra::driver
