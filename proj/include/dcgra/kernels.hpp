#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dcgra/graph.hpp"

namespace dcgra {

enum class Kernel { BFS, SSSP, WCC };

const char* kernel_name(Kernel k);
Kernel parse_kernel(const std::string& name);  // throws ParseError

// Attribute value meaning "not reached yet". Arithmetic saturates toward it.
inline constexpr std::int32_t kInfAttr = std::numeric_limits<std::int32_t>::max();

// Per-kernel apply contract: all three kernels are min-propagation, so the
// attribute only ever decreases and the run terminates.
struct KernelSpec {
  Kernel kind = Kernel::BFS;
  int cycles_update = 5;
  int cycles_no_update = 4;

  static KernelSpec make(Kernel k);
};

struct ApplyResult {
  std::int32_t attribute;
  bool updated;
  int cost;  // cycles_update or cycles_no_update
};

// BFS: candidate = msg + 1; SSSP: candidate = msg + weight; WCC: candidate =
// msg. The vertex updates iff the candidate is strictly smaller.
ApplyResult apply(const KernelSpec& k, std::int32_t current, std::int32_t msg_attr,
                  std::int32_t weight);

struct InitState {
  std::vector<std::int32_t> attributes;
  std::vector<VertexId> frontier;  // vertices that scatter at start
};

// BFS/SSSP: source gets 0, everyone else the sentinel, frontier = {source}.
// WCC: every vertex starts with its own id and scatters.
InitState source_init(const KernelSpec& k, const Graph& g, std::optional<VertexId> source);

}  // namespace dcgra
