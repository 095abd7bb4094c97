#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "dcgra/driver.hpp"

using dcgra::driver::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"dcgra: data-centric CGRA graph accelerator simulator and mapping compiler"};
  app.set_config("--config", "", "flat key=value config file; command-line flags override it");

  RunConfig rc;
  std::string array_spec;

  app.add_option("--graph", rc.graph_path, "edge-list file to process");
  app.add_option("--family", rc.family, "generated graph family: tree|srn|lrn|syn|extlrn");
  app.add_option("--seed", rc.seed, "seed for generation, source sampling and local optimization");
  app.add_option("--vertices", rc.vertices, "override the family's default vertex count");
  app.add_flag("--weighted", rc.weighted, "assign uniform random edge weights in [1,15]");
  app.add_option("--kernel", rc.kernel, "bfs|sssp|wcc")->default_val("bfs");
  app.add_option("--sources", rc.sources, "number of random source vertices");
  app.add_option("--source-id", rc.source_id, "fixed source vertex");
  app.add_option("--wcc-seed-mode", rc.wcc_seed_mode, "wcc initial frontier mode (all)");
  app.add_option("--array", array_spec, "PE array as WxH (default 8x8)");
  app.add_option("--drf-capacity", rc.arch.drf_capacity, "vertices per PE per slice");
  app.add_option("--beam-width", rc.beam_width, "beam width of the initial mapping search");
  app.add_flag("!--no-local-opt", rc.local_opt, "skip the local optimization phase");
  app.add_option("--t-hop", rc.arch.t_hop, "cycles per link hop");
  app.add_option("--t-tab", rc.arch.t_tab_per_entry, "cycles per visited table entry");
  app.add_option("--t-exe", rc.est.t_exe, "estimator vertex-program cycles");
  auto* eps_opt =
      app.add_option("--epsilon", rc.est.epsilon, "estimator cross-slice penalty in cycles");
  app.add_option("--swap-latency", rc.arch.swap_latency, "cycles per slice swap");
  app.add_option("--input-buffer-depth", rc.arch.input_buffer_depth, "input buffer depth");
  app.add_option("--clock-mhz", rc.clock_mhz, "clock for MTEPS conversion");
  app.add_option("--watchdog", rc.watchdog_cycles, "livelock watchdog in cycles");
  app.add_option("--repeats", rc.repeats, "repetitions per source");
  app.add_option("--jobs", rc.jobs, "concurrent simulations (0 = hardware)");
  app.add_option("--trace", rc.trace_path, "write a trace per run to this path");
  app.add_option("--out-csv", rc.out_csv, "write per-run metrics CSV");
  app.add_option("--out-json", rc.out_json, "write a JSON summary");
  app.add_option("--out-mapping", rc.out_mapping, "write the mapping file");
  app.add_flag("--compile-only", rc.compile_only, "map the graph and emit the quality report");

  bool verify_on = true;
  auto* v = app.add_flag("--verify", verify_on, "check results against the oracle (default)");
  app.add_flag("!--no-verify", verify_on, "skip oracle verification")->excludes(v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : dcgra::driver::kExitUsage;
  }
  rc.verify = verify_on;

  if (!array_spec.empty()) {
    auto x = array_spec.find('x');
    if (x == std::string::npos) {
      std::cerr << "error: --array expects WxH\n";
      return dcgra::driver::kExitUsage;
    }
    try {
      rc.arch.array_width = std::stoi(array_spec.substr(0, x));
      rc.arch.array_height = std::stoi(array_spec.substr(x + 1));
    } catch (const std::exception&) {
      std::cerr << "error: --array expects WxH\n";
      return dcgra::driver::kExitUsage;
    }
  }
  rc.est.t_h = rc.arch.t_hop;
  rc.est.t_tab = rc.arch.t_tab_per_entry;
  if (eps_opt->count() == 0) rc.est.epsilon = rc.arch.swap_latency;

  return dcgra::driver::run_cli(rc, std::cout);
}
