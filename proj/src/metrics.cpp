#include "dcgra/metrics.hpp"

#include <algorithm>
#include <map>

#include "dcgra/mapper.hpp"

namespace dcgra::metrics {

namespace {

double parallelism_average(const std::vector<std::int32_t>& series) {
  // cycles from first activation to quiescence; idle gaps mid-run included
  std::size_t first = 0;
  while (first < series.size() && series[first] == 0) first++;
  if (first == series.size()) return 0.0;
  std::int64_t sum = 0;
  for (std::size_t i = first; i < series.size(); ++i) sum += series[i];
  return static_cast<double>(sum) / static_cast<double>(series.size() - first);
}

MetricsReport assemble(std::int64_t total_cycles, std::int64_t traversed,
                       std::vector<std::int32_t> series, std::int64_t wait_total,
                       std::int64_t aluin_sum, std::int64_t swaps, const Mapping& m,
                       const Graph& g, const ArchConfig& cfg, std::int64_t collisions,
                       double clock_hz) {
  MetricsReport r;
  r.total_cycles = total_cycles;
  r.traversed_edges = traversed;
  const double seconds = total_cycles > 0 ? total_cycles / clock_hz : 0.0;
  r.mteps = seconds > 0 ? traversed / seconds / 1e6 : 0.0;
  r.avg_parallelism = parallelism_average(series);
  r.parallelism = std::move(series);
  // per stored edge; numerically identical to the per-arc average
  r.avg_routing_length =
      g.edges().empty()
          ? 0.0
          : static_cast<double>(total_routing_length(g, m)) / static_cast<double>(g.edges().size());
  r.avg_pkt_wait_cycles = traversed > 0 ? static_cast<double>(wait_total) / traversed : 0.0;
  r.avg_aluin_depth =
      total_cycles > 0
          ? static_cast<double>(aluin_sum) / (static_cast<double>(total_cycles) * cfg.num_pes())
          : 0.0;
  r.swap_count = swaps;
  r.collision_count = collisions;
  return r;
}

}  // namespace

MetricsReport from_counters(const SimResult& run, const Mapping& m, const Graph& g,
                            const ArchConfig& cfg, std::int64_t collision_count, double clock_hz) {
  return assemble(run.total_cycles, run.delivered, run.parallelism, run.wait_cycles_total,
                  run.aluin_occupancy_sum, run.swap_count, m, g, cfg, collision_count, clock_hz);
}

MetricsReport compute(const SimResult& run, const Mapping& m, const Graph& g,
                      const ArchConfig& cfg, std::int64_t collision_count, double clock_hz) {
  if (run.trace.empty() && run.delivered > 0)
    throw SimError("metrics: trace missing for a run that delivered packets");

  std::int64_t delivers = 0, injects = 0, wait_total = 0, swaps = 0;
  std::vector<std::int32_t> series(run.total_cycles, 0);
  // ALUin occupancy: push at Deliver, pop at the first ApplyStart of a packet
  std::map<std::int32_t, std::int64_t> deliver_cycle;
  std::int64_t aluin_sum = 0;
  // (pe, vertex, packet) -> start cycle; back-to-back sessions on one vertex
  // can interleave Start/End events within a cycle, so the packet id is part
  // of the key
  std::map<std::tuple<std::int16_t, std::int32_t, std::int32_t>, std::int64_t> open_sessions;

  for (const auto& e : run.trace) {
    if (e.cycle < 0 || e.cycle >= run.total_cycles)
      throw SimError("metrics: trace event outside the run (truncated trace?)");
    switch (e.kind) {
      case TraceKind::Inject:
        injects++;
        break;
      case TraceKind::Deliver:
        delivers++;
        wait_total += e.b;
        deliver_cycle[e.a] = e.cycle;
        break;
      case TraceKind::ApplyStart: {
        auto it = deliver_cycle.find(e.b);
        if (it != deliver_cycle.end()) {
          aluin_sum += e.cycle - it->second;
          deliver_cycle.erase(it);
        }
        open_sessions[{e.pe, e.a, e.b}] = e.cycle;
        break;
      }
      case TraceKind::ApplyEnd: {
        auto it = open_sessions.find({e.pe, e.a, e.b});
        if (it == open_sessions.end()) throw SimError("metrics: ApplyEnd without ApplyStart");
        for (std::int64_t c = it->second; c < e.cycle; ++c) series[c]++;
        open_sessions.erase(it);
        break;
      }
      case TraceKind::SliceLoad:
        swaps++;
        break;
      default:
        break;
    }
  }
  if (!open_sessions.empty()) throw SimError("metrics: unterminated apply interval");
  if (!deliver_cycle.empty()) throw SimError("metrics: delivered packet never applied");
  if (injects != delivers) throw SimError("metrics: inject/deliver mismatch in trace");

  // cross-check against the simulator's own counters
  if (delivers != run.delivered || injects != run.injected)
    throw SimError("metrics: trace disagrees with run counters");
  if (wait_total != run.wait_cycles_total)
    throw SimError("metrics: wait accounting disagrees with run counters");
  if (aluin_sum != run.aluin_occupancy_sum)
    throw SimError("metrics: aluin occupancy disagrees with run counters");
  if (swaps != run.swap_count) throw SimError("metrics: swap count disagrees with run counters");
  if (series != run.parallelism)
    throw SimError("metrics: parallelism series disagrees with run counters");

  return assemble(run.total_cycles, delivers, std::move(series), wait_total, aluin_sum, swaps, m,
                  g, cfg, collision_count, clock_hz);
}

}  // namespace dcgra::metrics
