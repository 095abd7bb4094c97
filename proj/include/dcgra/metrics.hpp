#pragma once

#include <cstdint>
#include <vector>

#include "dcgra/arch.hpp"
#include "dcgra/graph.hpp"
#include "dcgra/mapping.hpp"
#include "dcgra/sim.hpp"

namespace dcgra::metrics {

struct MetricsReport {
  std::int64_t total_cycles = 0;
  std::int64_t traversed_edges = 0;  // applied messages = delivered packets
  double mteps = 0.0;
  double avg_parallelism = 0.0;
  std::vector<std::int32_t> parallelism;  // one entry per cycle
  double avg_routing_length = 0.0;        // hops per arc of the mapping
  double avg_pkt_wait_cycles = 0.0;       // per delivered packet
  double avg_aluin_depth = 0.0;           // time-averaged, per PE
  std::int64_t swap_count = 0;
  std::int64_t collision_count = 0;
};

inline constexpr double kDefaultClockHz = 100e6;

// Report from the simulator's own counters (no trace required).
MetricsReport from_counters(const SimResult& run, const Mapping& m, const Graph& g,
                            const ArchConfig& cfg, std::int64_t collision_count,
                            double clock_hz = kDefaultClockHz);

// Report recomputed from the trace alone, cross-checked against the run's
// counters. Throws SimError when the trace is truncated or inconsistent.
MetricsReport compute(const SimResult& run, const Mapping& m, const Graph& g,
                      const ArchConfig& cfg, std::int64_t collision_count,
                      double clock_hz = kDefaultClockHz);

}  // namespace dcgra::metrics
