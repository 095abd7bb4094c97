#include "dcgra/sim.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <limits>
#include <ostream>
#include <tuple>

namespace dcgra {

const char* trace_kind_name(TraceKind k) {
  switch (k) {
    case TraceKind::Inject: return "Inject";
    case TraceKind::Hop: return "Hop";
    case TraceKind::Deliver: return "Deliver";
    case TraceKind::ApplyStart: return "ApplyStart";
    case TraceKind::ApplyEnd: return "ApplyEnd";
    case TraceKind::ScatterEmit: return "ScatterEmit";
    case TraceKind::BufferToSPM: return "BufferToSPM";
    case TraceKind::SliceLoad: return "SliceLoad";
    case TraceKind::SliceEvict: return "SliceEvict";
  }
  return "?";
}

namespace {

// Directions: 0=+y, 1=-y, 2=+x, 3=-x. Paired so that opposite(d) == d^1.
constexpr int kDirs = 4;
inline int dir_dx(int d) { return d == 2 ? 1 : d == 3 ? -1 : 0; }
inline int dir_dy(int d) { return d == 0 ? 1 : d == 1 ? -1 : 0; }
inline int opposite(int d) { return d ^ 1; }

// Fixed-capacity FIFO.
template <typename T>
class Fifo {
 public:
  void init(int capacity) {
    buf_.resize(capacity);
    head_ = size_ = 0;
  }
  bool empty() const { return size_ == 0; }
  bool full() const { return size_ == static_cast<int>(buf_.size()); }
  int size() const { return size_; }
  T& front() { return buf_[head_]; }
  const T& front() const { return buf_[head_]; }
  void push(T v) {
    buf_[(head_ + size_) % buf_.size()] = std::move(v);
    size_++;
  }
  T pop() {
    T v = std::move(buf_[head_]);
    head_ = (head_ + 1) % static_cast<int>(buf_.size());
    size_--;
    return v;
  }

 private:
  std::vector<T> buf_;
  int head_ = 0;
  int size_ = 0;
};

struct SimPacket {
  Packet wire;
  std::int32_t id = -1;
  std::int32_t manhattan0 = 0;
  std::int32_t wait = 0;          // accumulated input-buffer cycles
  std::int64_t buf_enter = -1;    // entry cycle of the current input buffer
};

struct AluMatch {
  VertexId vertex;
  std::int32_t new_attr;
  bool updated;
};

struct AluSession {
  SimPacket pkt;
  std::int64_t end_cycle = 0;
  std::vector<AluMatch> matches;
  std::size_t next_push = 0;
  bool writes_done = false;
};

struct PEState {
  std::array<Fifo<SimPacket>, kDirs> in_buf;
  std::array<std::deque<std::pair<std::int64_t, SimPacket>>, kDirs> arriving;
  std::array<int, kDirs> out_credit{-1, -1, -1, -1};
  int rr = 0;
  Fifo<SimPacket> aluin;
  Fifo<std::pair<VertexId, std::int32_t>> aluout;
  Fifo<SimPacket> membuf;
  std::optional<AluSession> session;
  int scatter_cursor = -2;  // -2: resolve head for aluout front; >=0: entry index
};

struct ClusterState {
  int resident = 0;
  bool swapping = false;
  std::int64_t done_at = 0;
  int target = -1;
};

}  // namespace

struct Simulator::Impl {
  const Graph* graph;
  const Mapping* mapping;
  const TableSet* tables;
  KernelSpec kernel;
  ArchConfig cfg;
  SimOptions options;

  std::vector<std::int32_t> attributes;
  std::vector<PEState> pes;
  std::vector<ClusterState> clusters;

  // scratchpad pending store: per PE per slice, FIFO of (stamp, packet)
  std::vector<std::vector<std::deque<std::pair<std::int64_t, SimPacket>>>> parked;
  std::vector<std::vector<std::vector<VertexId>>> initial_scatter;  // [pe][slice]
  std::vector<std::vector<std::int64_t>> parked_count;              // [cluster][slice]
  std::vector<std::vector<std::int64_t>> initial_count;             // [cluster][slice]
  std::int64_t parked_bytes = 0;

  std::int64_t cycle = 0;
  std::int64_t work = 0;  // aluout entries + live packets + pending initials + active swaps
  std::int64_t last_progress = 0;
  std::int32_t next_packet_id = 0;
  std::int64_t next_stamp = 0;

  // counters
  std::int64_t injected = 0;
  std::int64_t delivered = 0;
  std::int64_t swap_count = 0;
  std::int64_t wait_total = 0;
  std::int64_t aluin_occupancy_sum = 0;
  std::vector<std::int32_t> parallelism;

  std::vector<TraceEvent> trace;
  std::vector<TraceEvent> cycle_events;

  int P() const { return cfg.num_pes(); }
  PECoord coord(int pe) const { return pe_from_index(pe, cfg); }
  int cluster_of_pe(int pe) const { return cluster_index(coord(pe), cfg); }
  int cluster_first_pe(int cl) const {
    int cx = cl % cfg.clusters_x(), cy = cl / cfg.clusters_x();
    return cy * cfg.cluster_dim * cfg.array_width + cx * cfg.cluster_dim;
  }

  void emit(int pe, TraceKind kind, std::int32_t a, std::int32_t b = 0, std::int32_t c = 0) {
    if (!options.collect_trace) return;
    cycle_events.push_back({cycle, static_cast<std::int16_t>(pe), kind, a, b, c});
  }

  void progress() { last_progress = cycle; }

  // ---- construction ---------------------------------------------------

  Impl(const Graph& g, const Mapping& m, const TableSet& ts, const KernelSpec& k,
       std::optional<VertexId> source, const ArchConfig& c, SimOptions opt)
      : graph(&g), mapping(&m), tables(&ts), kernel(k), cfg(c), options(opt) {
    cfg.validate();
    validate_mapping(g, m, cfg);
    if (ts.num_slices != m.num_slices)
      throw SimError("tables and mapping disagree on slice count");
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const auto& p = m.assignment[v];
      if (ts.at({p.x, p.y}, p.slice).drf[p.slot] != v)
        throw SimError("tables and mapping disagree at vertex " + std::to_string(v));
    }

    auto init = source_init(kernel, g, source);
    attributes = std::move(init.attributes);

    pes.resize(P());
    for (int pe = 0; pe < P(); ++pe) {
      auto& st = pes[pe];
      for (int d = 0; d < kDirs; ++d) {
        st.in_buf[d].init(cfg.input_buffer_depth);
        PECoord nb{static_cast<std::int16_t>(coord(pe).x + dir_dx(d)),
                   static_cast<std::int16_t>(coord(pe).y + dir_dy(d))};
        if (nb.x >= 0 && nb.x < cfg.array_width && nb.y >= 0 && nb.y < cfg.array_height)
          st.out_credit[d] = cfg.input_buffer_depth;
      }
      st.aluin.init(cfg.aluin_buffer_depth);
      st.aluout.init(cfg.aluout_buffer_depth);
      st.membuf.init(cfg.memory_buffer_depth);
    }
    clusters.resize(cfg.num_clusters());
    parked.assign(P(), std::vector<std::deque<std::pair<std::int64_t, SimPacket>>>(m.num_slices));
    initial_scatter.assign(P(), std::vector<std::vector<VertexId>>(m.num_slices));
    parked_count.assign(cfg.num_clusters(), std::vector<std::int64_t>(m.num_slices, 0));
    initial_count.assign(cfg.num_clusters(), std::vector<std::int64_t>(m.num_slices, 0));

    // initial frontier: resident slice scatters now, the rest when loaded
    for (VertexId v : init.frontier) {
      const auto& p = m.assignment[v];
      int pe = row_major({p.x, p.y}, cfg);
      if (p.slice == clusters[cluster_of_pe(pe)].resident) {
        if (pes[pe].aluout.full())
          throw CapacityError("aluout buffer too small for the initial frontier");
        pes[pe].aluout.push({v, attributes[v]});
        work++;
        emit(pe, TraceKind::ScatterEmit, v, attributes[v]);
      } else {
        initial_scatter[pe][p.slice].push_back(v);
        initial_count[cluster_of_pe(pe)][p.slice]++;
        work++;
      }
    }
    // init events stay buffered so they sort together with cycle-0 activity
  }

  // ---- helpers ---------------------------------------------------------

  const SliceTables& resident_tables(int pe) const {
    return tables->pes[pe].slices[clusters[cluster_of_pe(pe)].resident];
  }

  static int route_dir(const Offset& o) {
    if (o.y_hops > 0) return o.y_positive ? 0 : 1;
    if (o.x_hops > 0) return o.x_positive ? 2 : 3;
    return -1;
  }

  static void consume_hop(Offset& o) {
    if (o.y_hops > 0)
      o.y_hops--;
    else
      o.x_hops--;
  }

  int neighbor_index(int pe, int d) const {
    PECoord c = coord(pe);
    return (c.y + dir_dy(d)) * cfg.array_width + (c.x + dir_dx(d));
  }

  void send_link(int pe, int d, SimPacket pkt) {
    pes[pe].out_credit[d]--;
    pes[neighbor_index(pe, d)].arriving[opposite(d)].push_back({cycle + cfg.t_hop, std::move(pkt)});
  }

  void credit_return(int pe, int port) {
    // the buffer at (pe, port) is fed by neighbor(pe, port)
    pes[neighbor_index(pe, port)].out_credit[opposite(port)]++;
  }

  void park(int pe, SimPacket pkt) {
    parked_bytes += cfg.packet_bytes;
    const std::int64_t store_bytes =
        static_cast<std::int64_t>(cfg.spm_bytes) + cfg.offchip_bytes;
    if (parked_bytes > store_bytes)
      throw CapacityError("pending store overflow: " + std::to_string(parked_bytes) +
                          " bytes exceed SPM+off-chip " + std::to_string(store_bytes));
    int slice = pkt.wire.dst_slice;
    int cl = cluster_of_pe(pe);
    emit(pe, TraceKind::BufferToSPM, pkt.id, slice, cl);
    parked[pe][slice].push_back({next_stamp++, std::move(pkt)});
    parked_count[cl][slice]++;
  }

  void deliver_to_aluin(int pe, SimPacket pkt) {
    delivered++;
    wait_total += pkt.wait;
    emit(pe, TraceKind::Deliver, pkt.id, pkt.wait, clusters[cluster_of_pe(pe)].resident);
    pes[pe].aluin.push(std::move(pkt));
    progress();
  }

  // ---- per-cycle phases -------------------------------------------------

  void mature_arrivals() {
    for (int pe = 0; pe < P(); ++pe) {
      for (int d = 0; d < kDirs; ++d) {
        auto& q = pes[pe].arriving[d];
        while (!q.empty() && q.front().first <= cycle) {
          SimPacket pkt = std::move(q.front().second);
          q.pop_front();
          if (pes[pe].in_buf[d].full()) throw SimError("input buffer overflow despite credits");
          pkt.buf_enter = cycle;
          pes[pe].in_buf[d].push(std::move(pkt));
        }
      }
    }
  }

  bool cluster_idle(int cl) const {
    int first = cluster_first_pe(cl);
    for (int dy = 0; dy < cfg.cluster_dim; ++dy)
      for (int dx = 0; dx < cfg.cluster_dim; ++dx) {
        const auto& st = pes[first + dy * cfg.array_width + dx];
        if (st.session || !st.aluin.empty() || !st.aluout.empty() || !st.membuf.empty())
          return false;
      }
    const auto& c = clusters[cl];
    return parked_count[cl][c.resident] == 0 && initial_count[cl][c.resident] == 0;
  }

  void swap_controllers() {
    for (int cl = 0; cl < cfg.num_clusters(); ++cl) {
      auto& c = clusters[cl];
      if (c.swapping) {
        if (cycle < c.done_at) continue;
        // load the target slice
        c.resident = c.target;
        c.swapping = false;
        c.target = -1;
        work--;  // swap done
        swap_count++;
        int first = cluster_first_pe(cl);
        emit(first, TraceKind::SliceLoad, c.resident, cl);
        for (int dy = 0; dy < cfg.cluster_dim; ++dy)
          for (int dx = 0; dx < cfg.cluster_dim; ++dx) {
            int pe = first + dy * cfg.array_width + dx;
            for (VertexId v : initial_scatter[pe][c.resident]) {
              if (pes[pe].aluout.full())
                throw SimError("aluout full at slice load");
              pes[pe].aluout.push({v, attributes[v]});
              emit(pe, TraceKind::ScatterEmit, v, attributes[v]);
            }
            std::int64_t moved =
                static_cast<std::int64_t>(initial_scatter[pe][c.resident].size());
            initial_count[cl][c.resident] -= moved;  // pending -> aluout, work unchanged
            initial_scatter[pe][c.resident].clear();
          }
        progress();
        continue;
      }
      if (!cluster_idle(cl)) continue;
      // earliest pending task among non-resident slices; initial scatters
      // predate every parked packet
      int best_slice = -1;
      std::int64_t best_stamp = 0;
      for (int s = 0; s < mapping->num_slices; ++s) {
        if (s == c.resident) continue;
        if (parked_count[cl][s] == 0 && initial_count[cl][s] == 0) continue;
        std::int64_t stamp = initial_count[cl][s] > 0 ? -1 : std::numeric_limits<std::int64_t>::max();
        if (stamp >= 0) {
          int first = cluster_first_pe(cl);
          for (int dy = 0; dy < cfg.cluster_dim; ++dy)
            for (int dx = 0; dx < cfg.cluster_dim; ++dx) {
              int pe = first + dy * cfg.array_width + dx;
              if (!parked[pe][s].empty())
                stamp = std::min(stamp, parked[pe][s].front().first);
            }
        }
        if (best_slice < 0 || stamp < best_stamp) {
          best_slice = s;
          best_stamp = stamp;
        }
      }
      if (best_slice < 0) continue;
      c.swapping = true;
      c.target = best_slice;
      c.done_at = cycle + cfg.swap_latency;
      work++;
      emit(cluster_first_pe(cl), TraceKind::SliceEvict, c.resident, cl);
      progress();
    }
  }

  // One routed packet per PE per cycle: the round-robin arbiter picks the
  // first port whose head packet can make progress this cycle.
  void router_step(int pe) {
    auto& st = pes[pe];
    const auto& cl = clusters[cluster_of_pe(pe)];
    for (int i = 0; i < kDirs; ++i) {
      int port = (st.rr + i) % kDirs;
      if (st.in_buf[port].empty()) continue;
      const SimPacket& head = st.in_buf[port].front();
      if (!head.wire.offset.zero()) {
        int dir = route_dir(head.wire.offset);
        if (st.out_credit[dir] <= 0) continue;
        SimPacket pkt = st.in_buf[port].pop();
        credit_return(pe, port);
        auto waited = static_cast<std::int32_t>(cycle - pkt.buf_enter);
        pkt.wait += waited;
        consume_hop(pkt.wire.offset);
        emit(pe, TraceKind::Hop, pkt.id, dir, waited);
        send_link(pe, dir, std::move(pkt));
        st.rr = (port + 1) % kDirs;
        progress();
        return;
      }
      // At destination: slice compare decides ALU path vs pending store. A
      // full aluin also diverts to the pending store; without this escape the
      // aluin -> ALU -> aluout -> NoC -> aluin dependency cycle can deadlock
      // under heavy fan-in, while the YX channel dependencies alone are
      // acyclic and always drain.
      bool match = !cl.swapping && head.wire.dst_slice == cl.resident;
      if (match && !st.aluin.full()) {
        SimPacket pkt = st.in_buf[port].pop();
        credit_return(pe, port);
        pkt.wait += static_cast<std::int32_t>(cycle - pkt.buf_enter);
        deliver_to_aluin(pe, std::move(pkt));
      } else {
        if (st.membuf.full()) continue;
        SimPacket pkt = st.in_buf[port].pop();
        credit_return(pe, port);
        pkt.wait += static_cast<std::int32_t>(cycle - pkt.buf_enter);
        st.membuf.push(std::move(pkt));
        progress();
      }
      st.rr = (port + 1) % kDirs;
      return;
    }
  }

  void mem_drain(int pe) {
    auto& st = pes[pe];
    if (st.membuf.empty()) return;
    park(pe, st.membuf.pop());
    progress();
  }

  // Re-inject parked packets of the resident slice, one per cycle.
  void replay_step(int pe) {
    int cl = cluster_of_pe(pe);
    const auto& c = clusters[cl];
    if (c.swapping) return;
    auto& q = parked[pe][c.resident];
    if (q.empty() || pes[pe].aluin.full()) return;
    SimPacket pkt = std::move(q.front().second);
    q.pop_front();
    parked_count[cl][c.resident]--;
    parked_bytes -= cfg.packet_bytes;
    deliver_to_aluin(pe, std::move(pkt));
  }

  void alu_step(int pe) {
    auto& st = pes[pe];
    const auto& c = clusters[cluster_of_pe(pe)];
    if (c.swapping) return;
    if (st.session && cycle >= st.session->end_cycle) {
      auto& ses = *st.session;
      if (!ses.writes_done) {
        for (const auto& m : ses.matches) {
          if (!m.updated) continue;
          if (m.new_attr > attributes[m.vertex])
            throw SimError("attribute increased at vertex " + std::to_string(m.vertex));
          attributes[m.vertex] = m.new_attr;
        }
        ses.writes_done = true;
      }
      bool stalled = false;
      while (ses.next_push < ses.matches.size()) {
        const auto& m = ses.matches[ses.next_push];
        if (!m.updated) {
          ses.next_push++;
          continue;
        }
        if (st.aluout.full()) {
          ses.end_cycle = cycle + 1;  // retry; ALU stays busy on the stall
          stalled = true;
          break;
        }
        st.aluout.push({m.vertex, m.new_attr});
        work++;
        emit(pe, TraceKind::ScatterEmit, m.vertex, m.new_attr);
        ses.next_push++;
      }
      if (!stalled) {
        for (const auto& m : ses.matches)
          emit(pe, TraceKind::ApplyEnd, m.vertex, ses.pkt.id, m.updated ? 1 : 0);
        work--;  // packet consumed
        st.session.reset();
        progress();
      }
    }
    if (!st.session && !st.aluin.empty()) {
      SimPacket pkt = st.aluin.pop();
      const auto& tabs = resident_tables(pe);
      AluSession ses;
      ses.pkt = pkt;
      int visited = 0, last_match = 0, apply_cycles = 0;
      std::int16_t idx = tabs.intra_head[hash_src(pkt.wire.src_id)];
      while (idx >= 0) {
        visited++;
        const auto& entry = tabs.intra[idx];
        if (entry.src_id == pkt.wire.src_id) {
          VertexId v = tabs.drf[entry.dst_reg];
          auto res = apply(kernel, attributes[v], pkt.wire.attribute, entry.weight);
          ses.matches.push_back({v, res.attribute, res.updated});
          apply_cycles += res.cost;
          last_match = visited;
        }
        idx = entry.next;
      }
      if (ses.matches.empty())
        throw SimError("packet from vertex " + std::to_string(pkt.wire.src_id) +
                       " has no intra-table match at pe " + std::to_string(pe));
      std::int64_t duration = static_cast<std::int64_t>(cfg.t_tab_per_entry) * last_match +
                              apply_cycles;
      ses.end_cycle = cycle + std::max<std::int64_t>(1, duration);
      for (const auto& m : ses.matches) emit(pe, TraceKind::ApplyStart, m.vertex, pkt.id);
      st.session = std::move(ses);
      progress();
    }
  }

  // Walk the aluout head's scatter list, emitting one packet per cycle in the
  // stored farthest-first order.
  void scatter_step(int pe) {
    auto& st = pes[pe];
    if (st.aluout.empty()) return;
    const auto [v, attr] = st.aluout.front();
    const auto& tabs = resident_tables(pe);
    if (st.scatter_cursor == -2) {
      st.scatter_cursor = -1;
      for (std::size_t slot = 0; slot < tabs.drf.size(); ++slot)
        if (tabs.drf[slot] == v) {
          st.scatter_cursor = tabs.inter_head[slot];
          break;
        }
    }
    if (st.scatter_cursor < 0) {  // no outgoing edges
      st.aluout.pop();
      work--;
      st.scatter_cursor = -2;
      progress();
      return;
    }
    const auto& entry = tabs.inter[st.scatter_cursor];
    if (entry.offset.zero()) {
      // local delivery bypasses the network; a full aluin diverts to the
      // pending store just like the router path
      const auto& c = clusters[cluster_of_pe(pe)];
      bool match = !c.swapping && entry.slice_id == c.resident;
      if (match && !st.aluin.full()) {
        SimPacket pkt;
        pkt.wire = {v, entry.offset, attr, entry.slice_id};
        pkt.id = next_packet_id++;
        pkt.manhattan0 = 0;
        injected++;
        work++;
        emit(pe, TraceKind::Inject, pkt.id, -1, 0);
        deliver_to_aluin(pe, std::move(pkt));
      } else {
        if (st.membuf.full()) return;  // stall
        SimPacket pkt;
        pkt.wire = {v, entry.offset, attr, entry.slice_id};
        pkt.id = next_packet_id++;
        pkt.manhattan0 = 0;
        injected++;
        work++;
        emit(pe, TraceKind::Inject, pkt.id, -1, 0);
        st.membuf.push(std::move(pkt));
        progress();
      }
    } else {
      int dir = route_dir(entry.offset);
      if (st.out_credit[dir] <= 0) return;  // stall on injection credit
      SimPacket pkt;
      pkt.wire = {v, entry.offset, attr, entry.slice_id};
      pkt.id = next_packet_id++;
      pkt.manhattan0 = entry.offset.hops();
      injected++;
      work++;
      consume_hop(pkt.wire.offset);
      emit(pe, TraceKind::Inject, pkt.id, dir, pkt.manhattan0);
      send_link(pe, dir, std::move(pkt));
      progress();
    }
    st.scatter_cursor = entry.next;
    if (st.scatter_cursor < 0) {
      st.aluout.pop();
      work--;
      st.scatter_cursor = -2;
    }
  }

  void step_pe(int pe) {
    router_step(pe);
    mem_drain(pe);
    replay_step(pe);
    alu_step(pe);
    scatter_step(pe);
  }

  void check_invariants() const {
    for (int pe = 0; pe < P(); ++pe) {
      for (int d = 0; d < kDirs; ++d) {
        if (pes[pe].out_credit[d] < 0 && pes[pe].out_credit[d] != -1)
          throw SimError("negative credit");
        if (pes[pe].out_credit[d] >= 0) {
          int nb = neighbor_index(pe, d);
          int occ = pes[nb].in_buf[opposite(d)].size() +
                    static_cast<int>(pes[nb].arriving[opposite(d)].size());
          if (pes[pe].out_credit[d] + occ != cfg.input_buffer_depth)
            throw SimError("credit conservation violated");
        }
      }
    }
  }

  void flush_events() {
    if (!options.collect_trace) return;
    std::stable_sort(cycle_events.begin(), cycle_events.end(),
                     [](const TraceEvent& a, const TraceEvent& b) {
                       return std::tie(a.pe, a.kind) < std::tie(b.pe, b.kind);
                     });
    trace.insert(trace.end(), cycle_events.begin(), cycle_events.end());
    cycle_events.clear();
  }

  void step() {
    mature_arrivals();
    swap_controllers();
    for (int pe = 0; pe < P(); ++pe) step_pe(pe);
    std::int32_t active = 0;
    for (int pe = 0; pe < P(); ++pe) {
      if (pes[pe].session) active += static_cast<std::int32_t>(pes[pe].session->matches.size());
      aluin_occupancy_sum += pes[pe].aluin.size();
    }
    parallelism.push_back(active);
    if (options.check_invariants) check_invariants();
    flush_events();
    cycle++;
    if (work > 0 && cycle - last_progress > options.watchdog_cycles)
      throw SimError("livelock watchdog: no progress for " +
                     std::to_string(options.watchdog_cycles) + " cycles at cycle " +
                     std::to_string(cycle) + "; " + state_summary());
  }

  std::string state_summary() const {
    std::int64_t in_bufs = 0, in_flight = 0, aluins = 0, aluouts = 0, membufs = 0, busy = 0,
                 blocked_links = 0, parked_total = 0;
    for (const auto& pe : pes) {
      for (int d = 0; d < kDirs; ++d) {
        in_bufs += pe.in_buf[d].size();
        in_flight += static_cast<std::int64_t>(pe.arriving[d].size());
        if (pe.out_credit[d] == 0) blocked_links++;
      }
      aluins += pe.aluin.size();
      aluouts += pe.aluout.size();
      membufs += pe.membuf.size();
      if (pe.session) busy++;
    }
    for (const auto& row : parked_count)
      for (auto c : row) parked_total += c;
    std::int64_t swapping = 0;
    for (const auto& c : clusters) swapping += c.swapping ? 1 : 0;
    return "work=" + std::to_string(work) + " in_buf=" + std::to_string(in_bufs) +
           " in_flight=" + std::to_string(in_flight) + " aluin=" + std::to_string(aluins) +
           " aluout=" + std::to_string(aluouts) + " membuf=" + std::to_string(membufs) +
           " busy_alus=" + std::to_string(busy) + " zero_credit_links=" +
           std::to_string(blocked_links) + " parked=" + std::to_string(parked_total) +
           " swapping=" + std::to_string(swapping);
  }

  bool quiescent() const { return work == 0; }
};

Simulator::Simulator(const Graph& g, const Mapping& m, const TableSet& tables,
                     const KernelSpec& kernel, std::optional<VertexId> source,
                     const ArchConfig& cfg, SimOptions options)
    : impl_(std::make_unique<Impl>(g, m, tables, kernel, source, cfg, options)) {}

Simulator::~Simulator() = default;
Simulator::Simulator(Simulator&&) noexcept = default;
Simulator& Simulator::operator=(Simulator&&) noexcept = default;

void Simulator::step() { impl_->step(); }
bool Simulator::quiescent() const { return impl_->quiescent(); }
std::int64_t Simulator::cycle() const { return impl_->cycle; }

SimResult Simulator::finish() {
  while (!impl_->quiescent()) impl_->step();
  impl_->flush_events();  // a run with no active cycles still flushes init events
  SimResult r;
  r.attributes = impl_->attributes;
  r.total_cycles = impl_->cycle;
  r.injected = impl_->injected;
  r.delivered = impl_->delivered;
  r.swap_count = impl_->swap_count;
  r.wait_cycles_total = impl_->wait_total;
  r.aluin_occupancy_sum = impl_->aluin_occupancy_sum;
  r.parallelism = impl_->parallelism;
  r.trace = std::move(impl_->trace);
  return r;
}

SimResult run_simulation(const Graph& g, const Mapping& m, const TableSet& tables,
                         const KernelSpec& kernel, std::optional<VertexId> source,
                         const ArchConfig& cfg, SimOptions options) {
  Simulator sim(g, m, tables, kernel, source, cfg, options);
  return sim.finish();
}

void write_trace(const std::vector<TraceEvent>& trace, const ArchConfig& cfg, std::ostream& out) {
  for (const auto& e : trace) {
    out << e.cycle << " " << e.pe % cfg.array_width << " " << e.pe / cfg.array_width << " "
        << trace_kind_name(e.kind) << " " << e.a << " " << e.b << " " << e.c << "\n";
  }
}

}  // namespace dcgra
