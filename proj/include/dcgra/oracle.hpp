#pragma once

#include <cstdint>
#include <vector>

#include "dcgra/graph.hpp"

namespace dcgra {
struct ArchConfig;
}

// Reference implementations used as ground truth. Deliberately share no code
// with the kernels or the simulator; plain textbook algorithms.
namespace dcgra::oracle {

struct OracleResult {
  std::vector<std::int32_t> attributes;
  std::int32_t reached = 0;     // attributes below the sentinel
  std::int32_t components = 0;  // distinct labels (WCC), 1 otherwise
};

// Hop distance from source over directed arcs; sentinel when unreachable.
OracleResult bfs_levels(const Graph& g, VertexId source);

// Exact shortest distances (binary-heap Dijkstra), weights >= 1.
OracleResult sssp_distances(const Graph& g, VertexId source);

// Minimum vertex id of each weakly-connected component.
OracleResult wcc_labels(const Graph& g);

// Minimum total routing length over all capacity-respecting placements.
// Only feasible for tiny instances; throws ValidationError when the search
// space is too large.
std::int64_t exhaustive_best_mapping(const Graph& g, const ArchConfig& cfg);

}  // namespace dcgra::oracle
