#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "dcgra/error.hpp"
#include "dcgra/graph.hpp"
#include "dcgra/mapping.hpp"

namespace dcgra {

// Hardware description shared by the mapper and the simulator.
struct ArchConfig {
  int array_width = 8;
  int array_height = 8;
  int drf_capacity = 4;       // vertices per PE per slice
  int cluster_dim = 2;        // swap unit is a cluster_dim x cluster_dim block

  int input_buffer_depth = 8;  // per input port, in packets
  int aluin_buffer_depth = 16;
  int aluout_buffer_depth = 8;
  int memory_buffer_depth = 8;

  int offset_bits = 3;   // hop-count field width; max hops = 2^offset_bits - 1
  int id_bits = 16;      // vertex-id width
  int slice_id_bits = 8;

  int inter_table_capacity = 64;  // entries per PE per slice
  int intra_table_capacity = 64;

  int t_hop = 4;            // cycles per link hop
  int t_tab_per_entry = 2;  // cycles per visited table entry
  int swap_latency = 100;   // cycles per slice swap

  // Pending packets live in the SPM, which acts as a cache over the off-chip
  // memory; the combined size bounds the store.
  int spm_bytes = 16 * 1024;
  int offchip_bytes = 256 * 1024;
  int packet_bytes = 8;

  int num_pes() const { return array_width * array_height; }
  int clusters_x() const { return array_width / cluster_dim; }
  int clusters_y() const { return array_height / cluster_dim; }
  int num_clusters() const { return clusters_x() * clusters_y(); }
  int max_hops() const { return (1 << offset_bits) - 1; }

  void validate() const;  // throws ValidationError
};

struct PECoord {
  std::int16_t x = 0;
  std::int16_t y = 0;

  friend bool operator==(const PECoord&, const PECoord&) = default;
};

inline int row_major(PECoord p, const ArchConfig& cfg) { return p.y * cfg.array_width + p.x; }
inline PECoord pe_from_index(int idx, const ArchConfig& cfg) {
  return {static_cast<std::int16_t>(idx % cfg.array_width),
          static_cast<std::int16_t>(idx / cfg.array_width)};
}
inline int manhattan(PECoord a, PECoord b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}
inline int cluster_index(PECoord p, const ArchConfig& cfg) {
  return (p.y / cfg.cluster_dim) * cfg.clusters_x() + (p.x / cfg.cluster_dim);
}

// Signed Manhattan displacement as carried by a packet: a direction bit and a
// hop count per dimension. Direction bit 1 = positive. Routing spends the y
// hops first, decrementing exactly one hop field per link traversal.
struct Offset {
  bool x_positive = true;
  bool y_positive = true;
  std::uint8_t x_hops = 0;
  std::uint8_t y_hops = 0;

  bool zero() const { return x_hops == 0 && y_hops == 0; }
  int hops() const { return x_hops + y_hops; }

  friend bool operator==(const Offset&, const Offset&) = default;
};

Offset encode_offset(PECoord src, PECoord dst, const ArchConfig& cfg);  // CapacityError on overflow
PECoord decode_offset(PECoord src, const Offset& off);

// Intra-table hash: src_id % 8. Bucket count is fixed by the hardware.
inline constexpr int kIntraBuckets = 8;
inline int hash_src(VertexId src_id) { return static_cast<int>(src_id % kIntraBuckets); }

// One outgoing edge of a vertex resident on this PE: where the destination
// vertex lives. Entries of one source vertex form a singly linked list whose
// head sits among the headmost positions.
struct InterTableEntry {
  VertexId src_id = -1;
  Offset offset;
  std::int16_t slice_id = 0;
  std::int16_t next = -1;  // entry index, -1 = end of list
};

// One incoming edge of a vertex resident on this PE: which DRF slot to update
// and with what edge weight. Entries sharing hash_src(src_id) form one list.
struct IntraTableEntry {
  VertexId src_id = -1;
  std::int16_t dst_reg = -1;
  std::int32_t weight = 1;
  std::int16_t next = -1;
};

// The dynamic unit of execution: a scattered attribute update.
struct Packet {
  VertexId src_id = -1;
  Offset offset;
  std::int32_t attribute = 0;
  std::int16_t dst_slice = 0;
};

// Per-PE per-slice configuration image.
struct SliceTables {
  std::vector<VertexId> drf;                 // slot -> vertex id, -1 empty
  std::vector<InterTableEntry> inter;
  std::vector<IntraTableEntry> intra;
  std::vector<std::int16_t> inter_head;      // per DRF slot, -1 = empty scatter list
  std::array<std::int16_t, kIntraBuckets> intra_head{};  // per hash bucket
};

struct PETables {
  std::vector<SliceTables> slices;
};

struct TableSet {
  ArchConfig cfg;
  int num_slices = 1;
  std::vector<PETables> pes;  // row-major

  const SliceTables& at(PECoord p, int slice) const {
    return pes[row_major(p, cfg)].slices[slice];
  }
};

// Builds the full configuration image for a mapped graph. Every directed arc
// (u -> v) yields an inter entry at u's PE/slice and an intra entry at v's
// PE/slice. Scatter lists are laid out farthest-first. Throws CapacityError
// when a table, the id width or the offset range is exceeded.
TableSet build_tables(const Graph& g, const Mapping& m, const ArchConfig& cfg);

// Inverse of build_tables: the arc set encoded by the intra tables and DRF
// images. Sorted by (src, dst).
std::vector<Edge> reconstruct_arcs(const TableSet& ts);

// Structural checks: list well-formedness, head placement, inter/intra
// agreement, and arc-exactness against the input graph. Throws on violation.
void verify_tables(const TableSet& ts, const Graph& g, const Mapping& m);

// Deterministic text dump for golden-file regression tests.
void dump_tables(const TableSet& ts, std::ostream& out);

}  // namespace dcgra
