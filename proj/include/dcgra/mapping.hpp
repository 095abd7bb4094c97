#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcgra/graph.hpp"

namespace dcgra {

struct ArchConfig;  // arch.hpp

// Where one vertex lives: PE coordinates, DRF slot, slice replica.
struct VertexPlace {
  std::int16_t x = -1;
  std::int16_t y = -1;
  std::int16_t slot = -1;
  std::int16_t slice = -1;

  bool mapped() const { return slot >= 0; }
  friend bool operator==(const VertexPlace&, const VertexPlace&) = default;
};

// Many-to-one assignment vertex -> (PE, DRF slot, slice).
struct Mapping {
  int num_slices = 1;
  std::vector<VertexPlace> assignment;  // indexed by vertex id

  const VertexPlace& place(VertexId v) const { return assignment[v]; }

  friend bool operator==(const Mapping&, const Mapping&) = default;
};

// Checks all Mapping invariants against a graph and config: every vertex
// mapped exactly once, per-(PE, slice) occupancy within drf_capacity, slot
// uniqueness, slice count consistent with the replication formula.
void validate_mapping(const Graph& g, const Mapping& m, const ArchConfig& cfg);

struct MappingSummary {
  std::int64_t routing_length = 0;
  std::int64_t collisions = 0;
  int num_slices = 1;
};

// Text format: one "v <id> pe <x> <y> slot <s> slice <c>" line per vertex,
// then a summary block. Deterministic byte-for-byte.
void save_mapping(const Mapping& m, const MappingSummary& s, std::ostream& out);
void save_mapping(const Mapping& m, const MappingSummary& s, const std::string& path);
Mapping load_mapping(std::istream& in, const std::string& name = "<stream>");
Mapping load_mapping(const std::string& path);

}  // namespace dcgra
