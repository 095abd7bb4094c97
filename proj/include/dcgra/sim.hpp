#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dcgra/arch.hpp"
#include "dcgra/graph.hpp"
#include "dcgra/kernels.hpp"
#include "dcgra/mapping.hpp"

namespace dcgra {

// Trace record kinds, in canonical order. Payload fields a/b/c by kind:
//   Inject      a=packet  b=first link dir (-1 = local delivery)  c=Manhattan
//   Hop         a=packet  b=dir (0=+y 1=-y 2=+x 3=-x)  c=wait cycles here
//   Deliver     a=packet  b=total input-buffer wait    c=resident slice
//   ApplyStart  a=vertex  b=packet
//   ApplyEnd    a=vertex  b=packet  c=updated (0/1)
//   ScatterEmit a=vertex  b=new attribute
//   BufferToSPM a=packet  b=destination slice  c=cluster
//   SliceLoad   a=slice   b=cluster
//   SliceEvict  a=slice   b=cluster
enum class TraceKind : std::uint8_t {
  Inject,
  Hop,
  Deliver,
  ApplyStart,
  ApplyEnd,
  ScatterEmit,
  BufferToSPM,
  SliceLoad,
  SliceEvict,
};

const char* trace_kind_name(TraceKind k);

struct TraceEvent {
  std::int64_t cycle = 0;
  std::int16_t pe = 0;  // row-major; slice events use the cluster's first PE
  TraceKind kind = TraceKind::Inject;
  std::int32_t a = 0;
  std::int32_t b = 0;
  std::int32_t c = 0;
};

struct SimOptions {
  bool collect_trace = false;
  bool check_invariants = false;   // per-cycle credit/buffer validation
  std::int64_t watchdog_cycles = 1'000'000;  // zero-progress limit
};

struct SimResult {
  std::vector<std::int32_t> attributes;
  std::int64_t total_cycles = 0;
  std::int64_t injected = 0;
  std::int64_t delivered = 0;
  std::int64_t swap_count = 0;
  std::int64_t wait_cycles_total = 0;    // over delivered packets
  std::int64_t aluin_occupancy_sum = 0;  // over cycles and PEs
  std::vector<std::int32_t> parallelism;  // active vertices, one entry per cycle
  std::vector<TraceEvent> trace;          // empty unless collect_trace
};

// Cycle-level machine. Construction performs configuration load; step()
// advances one cycle; the run terminates at global quiescence (no packet
// anywhere, all ALUs idle, no pending slice work, no swap in flight).
class Simulator {
 public:
  Simulator(const Graph& g, const Mapping& m, const TableSet& tables, const KernelSpec& kernel,
            std::optional<VertexId> source, const ArchConfig& cfg, SimOptions options = {});
  ~Simulator();
  Simulator(Simulator&&) noexcept;
  Simulator& operator=(Simulator&&) noexcept;

  void step();
  bool quiescent() const;
  std::int64_t cycle() const;

  SimResult finish();  // runs to quiescence and collects the result

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

SimResult run_simulation(const Graph& g, const Mapping& m, const TableSet& tables,
                         const KernelSpec& kernel, std::optional<VertexId> source,
                         const ArchConfig& cfg, SimOptions options = {});

void write_trace(const std::vector<TraceEvent>& trace, const ArchConfig& cfg, std::ostream& out);

}  // namespace dcgra
