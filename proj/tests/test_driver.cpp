#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "testutil.hpp"

#include "dcgra/driver.hpp"
#include "dcgra/oracle.hpp"

using namespace dcgra;
using namespace dcgra::driver;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string temp_path(const std::string& tag) {
  return std::string("/tmp/dcgra_test_") + tag + "_" + std::to_string(::getpid());
}

}  // namespace

TEST_CASE("execution graph symmetrizes only directed wcc inputs") {
  Graph syn = generate(GraphFamily::Syn, 1);
  Graph sym = execution_graph(syn, Kernel::WCC);
  CHECK(!sym.directed());
  CHECK(oracle::wcc_labels(sym).attributes == oracle::wcc_labels(syn).attributes);
  CHECK(execution_graph(syn, Kernel::BFS) == syn);
  Graph lrn = generate(GraphFamily::LRN, 1);
  CHECK(execution_graph(lrn, Kernel::WCC) == lrn);
}

TEST_CASE("source policies") {
  RunConfig rc;
  rc.family = "lrn";
  rc.seed = 3;
  Graph g = obtain_graph(rc);

  rc.sources = 5;
  auto picked = pick_sources(rc, g, Kernel::BFS);
  CHECK(picked.size() == 5);
  for (std::size_t i = 1; i < picked.size(); ++i) CHECK(picked[i] > picked[i - 1]);
  CHECK(picked == pick_sources(rc, g, Kernel::BFS));

  rc.source_id = 17;
  CHECK(pick_sources(rc, g, Kernel::BFS) == std::vector<VertexId>{17});
  CHECK(pick_sources(rc, g, Kernel::WCC) == std::vector<VertexId>{-1});

  RunConfig tree;
  tree.family = "tree";
  Graph t = obtain_graph(tree);
  CHECK(pick_sources(tree, t, Kernel::BFS) == std::vector<VertexId>{0});
}

TEST_CASE("run_experiment verifies against the oracle and reports rows") {
  RunConfig rc;
  rc.family = "srn";
  rc.seed = 5;
  rc.kernel = "sssp";
  rc.sources = 3;
  rc.jobs = 1;
  std::ostringstream log;
  auto result = run_experiment(rc, log);
  CHECK(result.exit_code == kExitOk);
  CHECK(result.rows.size() == 3);
  for (const auto& row : result.rows) {
    CHECK(row.verified);
    CHECK(row.metrics.total_cycles > 0);
    CHECK(row.metrics.traversed_edges > 0);
  }
}

TEST_CASE("wcc on a directed family verifies end to end") {
  RunConfig rc;
  rc.family = "syn";
  rc.seed = 6;
  rc.kernel = "wcc";
  rc.jobs = 1;
  std::ostringstream log;
  auto result = run_experiment(rc, log);
  CHECK(result.exit_code == kExitOk);
  REQUIRE(result.rows.size() == 1);
  CHECK(result.rows[0].verified);
  CHECK(result.rows[0].source == -1);
}

TEST_CASE("csv report is byte-identical across reruns") {
  RunConfig rc;
  rc.family = "lrn";
  rc.seed = 7;
  rc.kernel = "bfs";
  rc.sources = 2;
  rc.jobs = 2;
  std::ostringstream log;
  auto r1 = run_experiment(rc, log);
  auto r2 = run_experiment(rc, log);
  std::ostringstream csv1, csv2;
  write_csv(rc, r1, csv1);
  write_csv(rc, r2, csv2);
  CHECK(csv1.str() == csv2.str());
  CHECK(csv1.str().find("# family lrn") != std::string::npos);
  CHECK(csv1.str().find("total_cycles") != std::string::npos);
}

TEST_CASE("compile-only emits a deterministic mapping file") {
  RunConfig rc;
  rc.family = "srn";
  rc.seed = 9;
  rc.compile_only = true;
  rc.out_mapping = temp_path("map1");
  std::ostringstream log;
  compile_only(rc, log);
  std::string first = read_file(rc.out_mapping);
  rc.out_mapping = temp_path("map2");
  compile_only(rc, log);
  CHECK(first == read_file(rc.out_mapping));
  CHECK(first.find("summary") != std::string::npos);

  // the mapping file round-trips
  std::istringstream in(first);
  Mapping m = load_mapping(in);
  Graph g = obtain_graph(rc);
  validate_mapping(g, m, rc.arch);
  std::remove(temp_path("map1").c_str());
  std::remove(temp_path("map2").c_str());
}

TEST_CASE("exit codes for config and capacity failures") {
  std::ostringstream log;

  RunConfig both;  // graph and family both unset
  CHECK(run_cli(both, log) == kExitUsage);

  RunConfig capacity;
  capacity.family = "syn";
  capacity.arch = testutil::small_cfg(2, 2, 1);
  capacity.arch.slice_id_bits = 1;  // 256 vertices need 64 slices
  CHECK(run_cli(capacity, log) == kExitMapper);

  RunConfig bad_kernel;
  bad_kernel.family = "lrn";
  bad_kernel.kernel = "pagerank";
  CHECK(run_cli(bad_kernel, log) == kExitUsage);

  RunConfig bad_mode;
  bad_mode.family = "lrn";
  bad_mode.wcc_seed_mode = "sources";
  CHECK(run_cli(bad_mode, log) == kExitUsage);
}

TEST_CASE("results do not depend on the worker count") {
  RunConfig rc;
  rc.family = "syn";
  rc.seed = 9;
  rc.kernel = "sssp";
  rc.sources = 6;
  std::ostringstream log;
  rc.jobs = 1;
  auto serial = run_experiment(rc, log);
  rc.jobs = 4;
  auto parallel = run_experiment(rc, log);
  std::ostringstream c1, c2;
  write_csv(rc, serial, c1);
  write_csv(rc, parallel, c2);
  CHECK(c1.str() == c2.str());
}

TEST_CASE("repeats produce identical rows") {
  RunConfig rc;
  rc.family = "srn";
  rc.seed = 11;
  rc.kernel = "bfs";
  rc.source_id = 0;
  rc.repeats = 3;
  rc.jobs = 3;
  std::ostringstream log;
  auto result = run_experiment(rc, log);
  REQUIRE(result.rows.size() == 3);
  for (const auto& row : result.rows) {
    CHECK(row.metrics.total_cycles == result.rows[0].metrics.total_cycles);
    CHECK(row.metrics.traversed_edges == result.rows[0].metrics.traversed_edges);
  }
}
