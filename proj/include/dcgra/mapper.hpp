#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "dcgra/arch.hpp"
#include "dcgra/graph.hpp"
#include "dcgra/mapping.hpp"

namespace dcgra {

// Cycle estimates used by the local-optimization phase. Shared with the
// simulator's timing model.
struct EstimatorParams {
  int t_h = 4;       // cycles per hop
  int t_tab = 2;     // table-search cycles
  int t_exe = 5;     // vertex-program cycles
  int epsilon = 100; // same-cluster-different-slice penalty
};

// Sum of Manhattan distances between endpoint PEs over the stored edges whose
// endpoints are both mapped. Partial mappings are allowed.
std::int64_t total_routing_length(const Graph& g, const Mapping& m);

// Slices needed to hold |V| vertices: ceil(|V| / (PEs * drf_capacity)).
int required_slices(VertexId num_vertices, const ArchConfig& cfg);  // CapacityError if too many

struct MapperStats {
  std::int64_t beam_evaluations = 0;   // successor scorings in beam search
  std::int64_t local_iterations = 0;
  std::int64_t swaps_accepted = 0;
  std::int64_t routing_length_initial = 0;
  std::int64_t routing_length_final = 0;
};

// Phase 1: beam search over the replicated array, root = graph center placed
// at the array center, keeping the k best partial mappings per level by
// routing length (ties: lower vertex id, then row-major PE).
Mapping beam_search_initial(const Graph& g, const ArchConfig& cfg, int beam_width,
                            MapperStats* stats = nullptr);

// Partial run time through the one-hop neighborhoods of u and v, before and
// after swapping their placements. Congested arcs (same source, co-located
// destinations) are charged the worst-case sequential drain.
std::pair<std::int64_t, std::int64_t> estimate_partial_runtime(const Graph& g, const Mapping& m,
                                                               VertexId u, VertexId v,
                                                               const EstimatorParams& p,
                                                               const ArchConfig& cfg);

// Phase 2: random-PE local search; swaps the best (vertex, neighbor-vertex)
// pair whenever the estimator says the partial run time strictly improves.
// Stops after 4*|P| swap-free iterations (hard cap 200*|P|).
Mapping local_optimize(const Graph& g, const Mapping& m, const EstimatorParams& p,
                       std::uint64_t seed, const ArchConfig& cfg, MapperStats* stats = nullptr);

// Vertices co-located on one PE that share a predecessor; processing them is
// forced to serialize.
struct CollisionSet {
  PECoord pe;
  VertexId source = -1;
  std::vector<VertexId> members;
};

struct CollisionReport {
  std::vector<CollisionSet> sets;
  std::vector<std::pair<VertexId, VertexId>> congested_arcs;
};

CollisionReport detect_collisions(const Graph& g, const Mapping& m, const ArchConfig& cfg);

// Re-applies the farthest-first order to every scatter list of an existing
// table set (route length descending, destination id ascending).
void sort_inter_tables(TableSet& ts, const Mapping& m);

struct CompileResult {
  Mapping mapping;
  MapperStats stats;
  std::int64_t routing_length = 0;
  std::int64_t collision_count = 0;
};

// Full pipeline: beam search, then optional local optimization.
CompileResult compile_mapping(const Graph& g, const ArchConfig& cfg, const EstimatorParams& p,
                              std::uint64_t seed, int beam_width = 10, bool local_opt = true);

}  // namespace dcgra
