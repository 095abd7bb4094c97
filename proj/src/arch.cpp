#include "dcgra/arch.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <set>
#include <tuple>

namespace dcgra {

void ArchConfig::validate() const {
  if (array_width < 1 || array_height < 1)
    throw ValidationError("config: array dimensions must be positive");
  if (cluster_dim < 1) throw ValidationError("config: cluster_dim must be positive");
  if (array_width % cluster_dim != 0 || array_height % cluster_dim != 0)
    throw ValidationError("config: array dimensions must be divisible by cluster_dim");
  if (drf_capacity < 1) throw ValidationError("config: drf_capacity must be >= 1");
  if (offset_bits < 1 || offset_bits > 7)
    throw ValidationError("config: offset_bits out of range");
  if (max_hops() < array_width - 1 || max_hops() < array_height - 1)
    throw ValidationError("config: offset_bits cannot span the array");
  if (id_bits < 1 || id_bits > 31) throw ValidationError("config: id_bits out of range");
  if (slice_id_bits < 1 || slice_id_bits > 15)
    throw ValidationError("config: slice_id_bits out of range");
  if (input_buffer_depth < 1 || aluin_buffer_depth < 1 || aluout_buffer_depth < 1 ||
      memory_buffer_depth < 1)
    throw ValidationError("config: buffer depths must be >= 1");
  if (aluout_buffer_depth < drf_capacity)
    throw ValidationError("config: aluout buffer must hold one entry per DRF slot");
  if (inter_table_capacity < 1 || intra_table_capacity < 1)
    throw ValidationError("config: table capacities must be >= 1");
  if (t_hop < 1) throw ValidationError("config: t_hop must be >= 1");
  if (t_tab_per_entry < 0 || swap_latency < 1)
    throw ValidationError("config: bad timing parameters");
  if (spm_bytes < packet_bytes) throw ValidationError("config: SPM too small");
  if (offchip_bytes < 0) throw ValidationError("config: negative off-chip size");
}

Offset encode_offset(PECoord src, PECoord dst, const ArchConfig& cfg) {
  const int dx = dst.x - src.x;
  const int dy = dst.y - src.y;
  if (std::abs(dx) > cfg.max_hops() || std::abs(dy) > cfg.max_hops())
    throw CapacityError("offset overflow: displacement (" + std::to_string(dx) + "," +
                        std::to_string(dy) + ") exceeds " + std::to_string(cfg.max_hops()) +
                        " hops");
  Offset o;
  o.x_positive = dx >= 0;
  o.y_positive = dy >= 0;
  o.x_hops = static_cast<std::uint8_t>(std::abs(dx));
  o.y_hops = static_cast<std::uint8_t>(std::abs(dy));
  return o;
}

PECoord decode_offset(PECoord src, const Offset& off) {
  PECoord p = src;
  p.x = static_cast<std::int16_t>(p.x + (off.x_positive ? off.x_hops : -off.x_hops));
  p.y = static_cast<std::int16_t>(p.y + (off.y_positive ? off.y_hops : -off.y_hops));
  return p;
}

namespace {

struct ScatterTarget {
  int dist;
  VertexId dst;
  Offset offset;
  std::int16_t slice;
};

// Farthest-first scatter order: route length descending, destination id
// ascending on ties.
bool scatter_before(const ScatterTarget& a, const ScatterTarget& b) {
  if (a.dist != b.dist) return a.dist > b.dist;
  return a.dst < b.dst;
}

}  // namespace

TableSet build_tables(const Graph& g, const Mapping& m, const ArchConfig& cfg) {
  cfg.validate();
  validate_mapping(g, m, cfg);
  const VertexId n = g.num_vertices();
  if (n > 0) {
    const std::int64_t id_limit = 1ll << cfg.id_bits;
    if (n > id_limit)
      throw CapacityError("vertex ids exceed id_bits=" + std::to_string(cfg.id_bits));
  }
  if (m.num_slices > (1 << cfg.slice_id_bits))
    throw CapacityError("slice count exceeds slice_id_bits");

  TableSet ts;
  ts.cfg = cfg;
  ts.num_slices = m.num_slices;
  ts.pes.resize(cfg.num_pes());
  for (auto& pe : ts.pes) {
    pe.slices.resize(m.num_slices);
    for (auto& st : pe.slices) {
      st.drf.assign(cfg.drf_capacity, -1);
      st.inter_head.assign(cfg.drf_capacity, -1);
      st.intra_head.fill(-1);
    }
  }
  for (VertexId v = 0; v < n; ++v) {
    const auto& p = m.assignment[v];
    ts.pes[row_major({p.x, p.y}, cfg)].slices[p.slice].drf[p.slot] = v;
  }

  const auto arcs = g.arcs();

  // Scatter lists per vertex, farthest-first.
  std::vector<std::vector<ScatterTarget>> scatter(n);
  for (const auto& e : arcs) {
    const auto& pu = m.assignment[e.src];
    const auto& pv = m.assignment[e.dst];
    Offset off = encode_offset({pu.x, pu.y}, {pv.x, pv.y}, cfg);
    scatter[e.src].push_back({off.hops(), e.dst, off, pv.slice});
  }
  for (auto& list : scatter) std::sort(list.begin(), list.end(), scatter_before);

  // Inter tables: head entries in DRF slot order at the headmost positions,
  // remaining list entries appended behind all heads.
  for (int pe = 0; pe < cfg.num_pes(); ++pe) {
    for (int s = 0; s < m.num_slices; ++s) {
      auto& st = ts.pes[pe].slices[s];
      std::vector<int> slots_with_list;
      for (int slot = 0; slot < cfg.drf_capacity; ++slot) {
        VertexId v = st.drf[slot];
        if (v >= 0 && !scatter[v].empty()) slots_with_list.push_back(slot);
      }
      // heads
      for (int slot : slots_with_list) {
        VertexId v = st.drf[slot];
        const auto& t = scatter[v].front();
        st.inter_head[slot] = static_cast<std::int16_t>(st.inter.size());
        st.inter.push_back({v, t.offset, t.slice, -1});
      }
      // tails
      for (std::size_t i = 0; i < slots_with_list.size(); ++i) {
        int slot = slots_with_list[i];
        VertexId v = st.drf[slot];
        std::int16_t prev = st.inter_head[slot];
        for (std::size_t j = 1; j < scatter[v].size(); ++j) {
          const auto& t = scatter[v][j];
          auto idx = static_cast<std::int16_t>(st.inter.size());
          st.inter.push_back({v, t.offset, t.slice, -1});
          st.inter[prev].next = idx;
          prev = idx;
        }
      }
      if (static_cast<int>(st.inter.size()) > cfg.inter_table_capacity)
        throw CapacityError("inter table overflow at pe (" +
                            std::to_string(pe % cfg.array_width) + "," +
                            std::to_string(pe / cfg.array_width) + ") slice " + std::to_string(s) +
                            ": " + std::to_string(st.inter.size()) + " entries > " +
                            std::to_string(cfg.inter_table_capacity));
    }
  }

  // Intra tables: group incoming arcs by hash bucket; bucket heads occupy the
  // headmost positions in bucket order, chains appended behind them.
  struct IntraItem {
    VertexId src;
    std::int16_t reg;
    std::int32_t weight;
  };
  std::vector<std::vector<std::vector<IntraItem>>> items(
      cfg.num_pes(), std::vector<std::vector<IntraItem>>(m.num_slices));
  for (const auto& e : arcs) {
    const auto& pv = m.assignment[e.dst];
    items[row_major({pv.x, pv.y}, cfg)][pv.slice].push_back({e.src, pv.slot, e.weight});
  }
  for (int pe = 0; pe < cfg.num_pes(); ++pe) {
    for (int s = 0; s < m.num_slices; ++s) {
      auto& st = ts.pes[pe].slices[s];
      auto& list = items[pe][s];
      std::sort(list.begin(), list.end(), [](const IntraItem& a, const IntraItem& b) {
        return std::tie(a.src, a.reg) < std::tie(b.src, b.reg);
      });
      std::vector<std::vector<IntraItem>> buckets(kIntraBuckets);
      for (const auto& it : list) buckets[hash_src(it.src)].push_back(it);
      for (int b = 0; b < kIntraBuckets; ++b) {
        if (buckets[b].empty()) continue;
        st.intra_head[b] = static_cast<std::int16_t>(st.intra.size());
        st.intra.push_back({buckets[b][0].src, buckets[b][0].reg, buckets[b][0].weight, -1});
      }
      for (int b = 0; b < kIntraBuckets; ++b) {
        if (buckets[b].empty()) continue;
        std::int16_t prev = st.intra_head[b];
        for (std::size_t j = 1; j < buckets[b].size(); ++j) {
          auto idx = static_cast<std::int16_t>(st.intra.size());
          st.intra.push_back({buckets[b][j].src, buckets[b][j].reg, buckets[b][j].weight, -1});
          st.intra[prev].next = idx;
          prev = idx;
        }
      }
      if (static_cast<int>(st.intra.size()) > cfg.intra_table_capacity)
        throw CapacityError("intra table overflow at pe (" +
                            std::to_string(pe % cfg.array_width) + "," +
                            std::to_string(pe / cfg.array_width) + ") slice " + std::to_string(s) +
                            ": " + std::to_string(st.intra.size()) + " entries > " +
                            std::to_string(cfg.intra_table_capacity));
    }
  }
  return ts;
}

std::vector<Edge> reconstruct_arcs(const TableSet& ts) {
  std::vector<Edge> out;
  for (const auto& pe : ts.pes) {
    for (const auto& st : pe.slices) {
      for (const auto& e : st.intra) {
        if (e.dst_reg < 0 || e.dst_reg >= static_cast<std::int16_t>(st.drf.size()))
          throw ValidationError("reconstruct: bad dst_reg");
        VertexId v = st.drf[e.dst_reg];
        if (v < 0) throw ValidationError("reconstruct: intra entry points at empty DRF slot");
        out.push_back({e.src_id, v, e.weight});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });
  return out;
}

namespace {

// Walk all linked lists of a table and check that each entry is reached from
// exactly one head, with no cycles.
template <typename Entry>
void check_lists(const std::vector<Entry>& entries, const std::vector<std::int16_t>& heads,
                 const char* what) {
  std::vector<int> visits(entries.size(), 0);
  for (std::int16_t head : heads) {
    if (head < 0) continue;
    std::int16_t idx = head;
    std::size_t steps = 0;
    while (idx >= 0) {
      if (idx >= static_cast<std::int16_t>(entries.size()))
        throw ValidationError(std::string(what) + ": next pointer out of range");
      if (++steps > entries.size())
        throw ValidationError(std::string(what) + ": cycle in linked list");
      visits[idx]++;
      idx = entries[idx].next;
    }
  }
  for (std::size_t i = 0; i < entries.size(); ++i)
    if (visits[i] != 1)
      throw ValidationError(std::string(what) + ": entry " + std::to_string(i) +
                            " reached " + std::to_string(visits[i]) + " times");
}

}  // namespace

void verify_tables(const TableSet& ts, const Graph& g, const Mapping& m) {
  const auto& cfg = ts.cfg;
  // list structure + head placement
  for (int pe = 0; pe < cfg.num_pes(); ++pe) {
    for (int s = 0; s < ts.num_slices; ++s) {
      const auto& st = ts.pes[pe].slices[s];
      check_lists(st.inter, st.inter_head, "inter");
      {
        std::vector<std::int16_t> heads(st.intra_head.begin(), st.intra_head.end());
        check_lists(st.intra, heads, "intra");
      }
      // heads sit at the headmost positions
      int inter_heads = 0;
      for (auto h : st.inter_head)
        if (h >= 0) inter_heads++;
      for (auto h : st.inter_head)
        if (h >= 0 && h >= inter_heads)
          throw ValidationError("inter head not at headmost position");
      int intra_heads = 0;
      for (auto h : st.intra_head)
        if (h >= 0) intra_heads++;
      for (auto h : st.intra_head)
        if (h >= 0 && h >= intra_heads)
          throw ValidationError("intra head not at headmost position");
      // bucket consistency and (src, reg) uniqueness
      for (int b = 0; b < kIntraBuckets; ++b) {
        std::int16_t idx = st.intra_head[b];
        while (idx >= 0) {
          if (hash_src(st.intra[idx].src_id) != b)
            throw ValidationError("intra entry in wrong hash bucket");
          idx = st.intra[idx].next;
        }
      }
      std::set<std::pair<VertexId, std::int16_t>> pairs;
      for (const auto& e : st.intra)
        if (!pairs.insert({e.src_id, e.dst_reg}).second)
          throw ValidationError("duplicate (src_id, dst_reg) in intra table");
    }
  }
  // arcs reconstruct exactly
  auto want = g.arcs();
  auto got = reconstruct_arcs(ts);
  if (want != got) throw ValidationError("tables do not encode the input arc set");
  // inter side agrees: multiset of (src, dst pe, dst slice) matches the arcs,
  // and list lengths equal scatter out-degrees
  std::map<std::tuple<VertexId, int, int>, int> inter_count, arc_count;
  for (int pe = 0; pe < cfg.num_pes(); ++pe)
    for (int s = 0; s < ts.num_slices; ++s)
      for (const auto& e : ts.pes[pe].slices[s].inter) {
        PECoord dst = decode_offset(pe_from_index(pe, cfg), e.offset);
        inter_count[{e.src_id, row_major(dst, cfg), e.slice_id}]++;
      }
  for (const auto& e : want) {
    const auto& pv = m.assignment[e.dst];
    arc_count[{e.src, row_major({pv.x, pv.y}, cfg), pv.slice}]++;
  }
  if (inter_count != arc_count)
    throw ValidationError("inter tables disagree with the mapped arc set");
}

void dump_tables(const TableSet& ts, std::ostream& out) {
  const auto& cfg = ts.cfg;
  out << "tables " << cfg.array_width << "x" << cfg.array_height << " slices " << ts.num_slices
      << "\n";
  for (int pe = 0; pe < cfg.num_pes(); ++pe) {
    for (int s = 0; s < ts.num_slices; ++s) {
      const auto& st = ts.pes[pe].slices[s];
      bool empty = st.inter.empty() && st.intra.empty();
      bool drf_empty = true;
      for (auto v : st.drf)
        if (v >= 0) drf_empty = false;
      if (empty && drf_empty) continue;
      out << "pe " << pe % cfg.array_width << " " << pe / cfg.array_width << " slice " << s
          << "\n";
      for (std::size_t i = 0; i < st.drf.size(); ++i)
        if (st.drf[i] >= 0) out << "  drf " << i << " v " << st.drf[i] << "\n";
      for (std::size_t i = 0; i < st.inter.size(); ++i) {
        const auto& e = st.inter[i];
        out << "  inter " << i << " src " << e.src_id << " x " << (e.offset.x_positive ? "+" : "-")
            << int(e.offset.x_hops) << " y " << (e.offset.y_positive ? "+" : "-")
            << int(e.offset.y_hops) << " slice " << e.slice_id << " next " << e.next << "\n";
      }
      for (std::size_t i = 0; i < st.intra.size(); ++i) {
        const auto& e = st.intra[i];
        out << "  intra " << i << " src " << e.src_id << " reg " << e.dst_reg << " w " << e.weight
            << " next " << e.next << "\n";
      }
    }
  }
}

}  // namespace dcgra
