#include "dcgra/mapper.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "dcgra/rng.hpp"

namespace dcgra {

std::int64_t total_routing_length(const Graph& g, const Mapping& m) {
  std::int64_t total = 0;
  for (const auto& e : g.edges()) {
    const auto& a = m.assignment[e.src];
    const auto& b = m.assignment[e.dst];
    if (!a.mapped() || !b.mapped()) continue;
    total += manhattan({a.x, a.y}, {b.x, b.y});
  }
  return total;
}

int required_slices(VertexId num_vertices, const ArchConfig& cfg) {
  const std::int64_t chip = static_cast<std::int64_t>(cfg.num_pes()) * cfg.drf_capacity;
  const std::int64_t slices =
      num_vertices <= 0 ? 1 : (static_cast<std::int64_t>(num_vertices) + chip - 1) / chip;
  if (slices > (1ll << cfg.slice_id_bits))
    throw CapacityError("graph needs " + std::to_string(slices) +
                        " slices, which exceeds slice_id_bits=" +
                        std::to_string(cfg.slice_id_bits));
  return static_cast<int>(std::max<std::int64_t>(1, slices));
}

namespace {

// Incidence over stored edges: one entry per stored edge per endpoint, so a
// directed pair of arcs contributes twice. Used for incremental routing-length
// updates during beam search.
std::vector<std::vector<VertexId>> incidence(const Graph& g) {
  std::vector<std::vector<VertexId>> inc(g.num_vertices());
  for (const auto& e : g.edges()) {
    inc[e.src].push_back(e.dst);
    inc[e.dst].push_back(e.src);
  }
  for (auto& v : inc) std::sort(v.begin(), v.end());
  return inc;
}

struct BeamNode {
  std::vector<std::int32_t> where;      // vertex -> replica*P + pe, -1 unmapped
  std::vector<std::uint8_t> slot_used;  // replicated pe -> occupancy
  std::vector<std::int16_t> phys_used;  // pe -> occupancy over all replicas
  std::vector<VertexId> candidates;     // sorted, unmapped neighbors of the region
  std::vector<VertexId> stack;          // depth-first placement trail
  std::int64_t routing = 0;
  VertexId mapped = 0;
};

struct Successor {
  std::int64_t routing;
  VertexId vertex;
  std::int32_t pe;  // physical
  std::int32_t parent;

  bool operator<(const Successor& o) const {
    return std::tie(routing, vertex, pe, parent) < std::tie(o.routing, o.vertex, o.pe, o.parent);
  }
};

void insert_sorted(std::vector<VertexId>& v, VertexId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void erase_sorted(std::vector<VertexId>& v, VertexId x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

Mapping beam_search_initial(const Graph& g, const ArchConfig& cfg, int beam_width,
                            MapperStats* stats) {
  cfg.validate();
  if (beam_width < 1) throw ValidationError("beam width must be >= 1");
  const VertexId n = g.num_vertices();
  const int P = cfg.num_pes();
  const int R = required_slices(n, cfg);
  const int cap = cfg.drf_capacity;

  Mapping result;
  result.num_slices = R;
  result.assignment.assign(n, {});
  if (n == 0) return result;

  const auto inc = incidence(g);

  const PECoord center{static_cast<std::int16_t>(cfg.array_width / 2),
                       static_cast<std::int16_t>(cfg.array_height / 2)};
  const VertexId root = graph_center(g);

  std::vector<BeamNode> beam(1);
  beam[0].where.assign(n, -1);
  beam[0].slot_used.assign(static_cast<std::size_t>(P) * R, 0);
  beam[0].phys_used.assign(P, 0);
  beam[0].where[root] = row_major(center, cfg);  // replica 0
  beam[0].slot_used[row_major(center, cfg)] = 1;
  beam[0].phys_used[row_major(center, cfg)] = 1;
  beam[0].mapped = 1;
  beam[0].candidates = inc[root];
  beam[0].candidates.erase(std::unique(beam[0].candidates.begin(), beam[0].candidates.end()),
                           beam[0].candidates.end());
  beam[0].stack = {root};

  std::vector<PECoord> coord(P);
  for (int p = 0; p < P; ++p) coord[p] = pe_from_index(p, cfg);

  // Static descendant counts over a root BFS tree. The frontier is walked
  // depth first, biggest subtree first, so connected chunks fill a PE before
  // the search moves on and leaves drop into leftover slots late. This keeps
  // chunk-mates together and avoids deferring any vertex until only remote
  // slots remain.
  std::vector<std::int32_t> subtree(n, 1);
  {
    std::vector<VertexId> parent(n, -1), order;
    std::vector<char> seen(n, 0);
    order.push_back(root);
    seen[root] = 1;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (VertexId w : inc[order[h]])
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = order[h];
          order.push_back(w);
        }
    for (auto it = order.rbegin(); it != order.rend(); ++it)
      if (parent[*it] >= 0) subtree[parent[*it]] += subtree[*it];
  }

  std::vector<Successor> succ;
  std::vector<std::int32_t> cand_pes;
  std::vector<PECoord> mapped_nbr_pes;

  while (beam[0].mapped < n) {
    // Components beyond the one being grown get seeded with their lowest id.
    for (auto& node : beam) {
      if (node.candidates.empty() && node.mapped < n) {
        for (VertexId v = 0; v < n; ++v)
          if (node.where[v] < 0) {
            node.candidates.push_back(v);
            node.stack.push_back(v);
            break;
          }
      }
    }

    succ.clear();
    for (std::int32_t ni = 0; ni < static_cast<std::int32_t>(beam.size()); ++ni) {
      auto& node = beam[ni];

      // Candidate PEs: occupied PEs with a free slot, plus mesh neighbors of
      // the occupied region (that also have room).
      cand_pes.clear();
      for (int p = 0; p < P; ++p) {
        if (node.phys_used[p] >= cap * R) continue;
        bool in_region = node.phys_used[p] > 0;
        if (!in_region) {
          PECoord c = coord[p];
          if (c.x > 0 && node.phys_used[p - 1] > 0) in_region = true;
          if (!in_region && c.x + 1 < cfg.array_width && node.phys_used[p + 1] > 0)
            in_region = true;
          if (!in_region && c.y > 0 && node.phys_used[p - cfg.array_width] > 0) in_region = true;
          if (!in_region && c.y + 1 < cfg.array_height && node.phys_used[p + cfg.array_width] > 0)
            in_region = true;
        }
        if (in_region) cand_pes.push_back(p);
      }
      if (cand_pes.empty())
        throw CapacityError("beam search: no candidate PE with free capacity");

      // deepest placed vertex that still has unmapped neighbors
      while (!node.stack.empty()) {
        VertexId top = node.stack.back();
        bool open = false;
        for (VertexId w : inc[top])
          if (node.where[w] < 0) {
            open = true;
            break;
          }
        if (open) break;
        node.stack.pop_back();
      }
      VertexId chosen = -1;
      if (!node.stack.empty()) {
        VertexId top = node.stack.back();
        for (VertexId w : inc[top])
          if (node.where[w] < 0 &&
              (chosen < 0 || subtree[w] > subtree[chosen] ||
               (subtree[w] == subtree[chosen] && w < chosen)))
            chosen = w;
      } else {
        chosen = node.candidates.front();
      }

      mapped_nbr_pes.clear();
      for (VertexId w : inc[chosen])
        if (node.where[w] >= 0) mapped_nbr_pes.push_back(coord[node.where[w] % P]);
      for (std::int32_t p : cand_pes) {
        std::int64_t f = node.routing;
        for (const auto& q : mapped_nbr_pes) f += manhattan(coord[p], q);
        succ.push_back({f, chosen, p, ni});
      }
    }
    if (stats) stats->beam_evaluations += static_cast<std::int64_t>(succ.size());
    if (succ.empty()) throw CapacityError("beam search: no successors");

    const std::size_t keep = std::min<std::size_t>(beam_width, succ.size());
    std::nth_element(succ.begin(), succ.begin() + keep - 1, succ.end());
    succ.resize(keep);
    std::sort(succ.begin(), succ.end());

    std::vector<BeamNode> next;
    next.reserve(keep);
    for (const auto& s : succ) {
      BeamNode node = beam[s.parent];
      // lowest replica with a free slot on the chosen PE
      int replica = 0;
      while (node.slot_used[static_cast<std::size_t>(replica) * P + s.pe] >= cap) replica++;
      node.where[s.vertex] = replica * P + s.pe;
      node.slot_used[static_cast<std::size_t>(replica) * P + s.pe]++;
      node.phys_used[s.pe]++;
      node.routing = s.routing;
      node.mapped++;
      node.stack.push_back(s.vertex);
      erase_sorted(node.candidates, s.vertex);
      for (VertexId w : inc[s.vertex])
        if (node.where[w] < 0) insert_sorted(node.candidates, w);
      next.push_back(std::move(node));
    }
    beam = std::move(next);
  }

  const auto& best = beam[0];
  for (VertexId v = 0; v < n; ++v) {
    int rp = best.where[v];
    PECoord c = coord[rp % P];
    result.assignment[v] = {c.x, c.y, 0, static_cast<std::int16_t>(rp / P)};
  }
  // slots in ascending vertex-id order per (PE, slice)
  {
    std::map<std::pair<int, int>, std::int16_t> slot_counter;
    for (VertexId v = 0; v < n; ++v) {
      auto& p = result.assignment[v];
      auto key = std::make_pair(row_major({p.x, p.y}, cfg), static_cast<int>(p.slice));
      p.slot = slot_counter[key]++;
    }
  }
  validate_mapping(g, result, cfg);
  if (stats) stats->routing_length_initial = total_routing_length(g, result);
  return result;
}

namespace {

struct EstimateContext {
  const Adjacency* adj;
  const Mapping* m;
  const EstimatorParams* p;
  const ArchConfig* cfg;
  VertexId u, v;
  bool swapped;

  VertexPlace place(VertexId x) const {
    if (swapped) {
      if (x == u) return m->assignment[v];
      if (x == v) return m->assignment[u];
    }
    return m->assignment[x];
  }

  // Size of the collision set of source a on the PE of b (counts b itself).
  int colocated_successors(VertexId a, PECoord pb) const {
    int count = 0;
    for (std::int32_t i = adj->out_offset[a]; i < adj->out_offset[a + 1]; ++i) {
      auto place_w = place(adj->out_dst[i]);
      if (PECoord{place_w.x, place_w.y} == pb) count++;
    }
    return count;
  }

  // Per-arc time estimate. Congested arcs (>= 2 targets of one source on the
  // destination PE) carry an expected-queueing surcharge of a quarter of the
  // per-packet service time per extra co-located target; back-to-back
  // arrivals are rare enough that the full sequential drain overstates the
  // cost and drags routing length up with no measurable parallelism gain.
  std::int64_t arc_time(VertexId a, VertexId b) const {
    auto pa = place(a);
    auto pb = place(b);
    PECoord ca{pa.x, pa.y}, cb{pb.x, pb.y};
    std::int64_t t = static_cast<std::int64_t>(manhattan(ca, cb)) * p->t_h;
    if (cluster_index(ca, *cfg) == cluster_index(cb, *cfg) && pa.slice != pb.slice)
      t += p->epsilon;
    t += p->t_tab + p->t_exe;
    int ncol = colocated_successors(a, cb);
    if (ncol >= 2)
      t += std::max<std::int64_t>(
          1, static_cast<std::int64_t>(ncol - 1) * (p->t_tab + p->t_exe) / 4);
    return t;
  }
};

}  // namespace

std::pair<std::int64_t, std::int64_t> estimate_partial_runtime(const Graph& g, const Mapping& m,
                                                               VertexId u, VertexId v,
                                                               const EstimatorParams& p,
                                                               const ArchConfig& cfg) {
  Adjacency adj = Adjacency::build(g);
  std::int64_t now = 0, swapped = 0;
  // arcs incident to u or v, each counted once
  std::vector<std::pair<VertexId, VertexId>> arcs;
  auto collect = [&](VertexId x, bool skip_other) {
    for (std::int32_t i = adj.out_offset[x]; i < adj.out_offset[x + 1]; ++i) {
      VertexId w = adj.out_dst[i];
      if (skip_other && (w == u || w == v)) continue;
      arcs.emplace_back(x, w);
    }
    for (std::int32_t i = adj.in_offset[x]; i < adj.in_offset[x + 1]; ++i) {
      VertexId w = adj.in_src[i];
      if (skip_other && (w == u || w == v)) continue;
      arcs.emplace_back(w, x);
    }
  };
  collect(u, false);
  collect(v, true);
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  EstimateContext now_ctx{&adj, &m, &p, &cfg, u, v, false};
  EstimateContext swap_ctx{&adj, &m, &p, &cfg, u, v, true};
  for (const auto& [a, b] : arcs) {
    now += now_ctx.arc_time(a, b);
    swapped += swap_ctx.arc_time(a, b);
  }
  return {now, swapped};
}

Mapping local_optimize(const Graph& g, const Mapping& m, const EstimatorParams& p,
                       std::uint64_t seed, const ArchConfig& cfg, MapperStats* stats) {
  const VertexId n = g.num_vertices();
  Mapping cur = m;
  if (n == 0) return cur;
  const int P = cfg.num_pes();
  const int R = cur.num_slices;
  const std::int64_t P_repl = static_cast<std::int64_t>(P) * R;

  Adjacency adj = Adjacency::build(g);

  // vertex lists per replicated PE, kept sorted
  std::vector<std::vector<VertexId>> occupants(P_repl);
  for (VertexId v = 0; v < n; ++v) {
    const auto& pl = cur.assignment[v];
    occupants[static_cast<std::size_t>(pl.slice) * P + row_major({pl.x, pl.y}, cfg)].push_back(v);
  }
  for (auto& o : occupants) std::sort(o.begin(), o.end());

  EstimateContext ctx_now{&adj, &cur, &p, &cfg, 0, 0, false};
  EstimateContext ctx_swp{&adj, &cur, &p, &cfg, 0, 0, true};

  auto pair_benefit = [&](VertexId a, VertexId b) {
    ctx_now.u = ctx_swp.u = a;
    ctx_now.v = ctx_swp.v = b;
    std::int64_t now = 0, swapped = 0;
    auto eval_arcs = [&](VertexId x, bool skip_other) {
      for (std::int32_t i = adj.out_offset[x]; i < adj.out_offset[x + 1]; ++i) {
        VertexId w = adj.out_dst[i];
        if (skip_other && (w == a || w == b)) continue;
        now += ctx_now.arc_time(x, w);
        swapped += ctx_swp.arc_time(x, w);
      }
      for (std::int32_t i = adj.in_offset[x]; i < adj.in_offset[x + 1]; ++i) {
        VertexId w = adj.in_src[i];
        if (skip_other && (w == a || w == b)) continue;
        now += ctx_now.arc_time(w, x);
        swapped += ctx_swp.arc_time(w, x);
      }
    };
    eval_arcs(a, false);
    eval_arcs(b, true);
    return now - swapped;
  };

  // Benefit of exchanging the full contents of two replicated PEs; this is
  // what relocates a misplaced connected chunk, which no single-vertex swap
  // can do once the chunk is internally optimal.
  auto block_benefit = [&](std::int64_t rp_a, std::int64_t rp_b) {
    const auto& va = occupants[rp_a];
    const auto& vb = occupants[rp_b];
    PECoord pa = pe_from_index(static_cast<int>(rp_a % P), cfg);
    PECoord pb = pe_from_index(static_cast<int>(rp_b % P), cfg);
    auto sa = static_cast<std::int16_t>(rp_a / P);
    auto sb = static_cast<std::int16_t>(rp_b / P);
    auto side = [&](VertexId x) {
      for (VertexId v : va)
        if (v == x) return 1;
      for (VertexId v : vb)
        if (v == x) return 2;
      return 0;
    };
    auto placed = [&](VertexId x, bool swapped) {
      int s = side(x);
      auto pl = cur.assignment[x];
      if (s == 0 || !swapped) return pl;
      pl.x = s == 1 ? pb.x : pa.x;
      pl.y = s == 1 ? pb.y : pa.y;
      pl.slice = s == 1 ? sb : sa;
      return pl;
    };
    auto arc_time = [&](VertexId a, VertexId b, bool swapped) {
      auto qa = placed(a, swapped);
      auto qb = placed(b, swapped);
      PECoord ca{qa.x, qa.y}, cb{qb.x, qb.y};
      std::int64_t t = static_cast<std::int64_t>(manhattan(ca, cb)) * p.t_h;
      if (cluster_index(ca, cfg) == cluster_index(cb, cfg) && qa.slice != qb.slice)
        t += p.epsilon;
      t += p.t_tab + p.t_exe;
      int ncol = 0;
      for (std::int32_t i = adj.out_offset[a]; i < adj.out_offset[a + 1]; ++i) {
        auto qw = placed(adj.out_dst[i], swapped);
        if (PECoord{qw.x, qw.y} == cb) ncol++;
      }
      if (ncol >= 2)
        t += std::max<std::int64_t>(
            1, static_cast<std::int64_t>(ncol - 1) * (p.t_tab + p.t_exe) / 4);
      return t;
    };
    std::int64_t now = 0, swapped = 0;
    auto eval_vertex = [&](VertexId x) {
      for (std::int32_t i = adj.out_offset[x]; i < adj.out_offset[x + 1]; ++i) {
        now += arc_time(x, adj.out_dst[i], false);
        swapped += arc_time(x, adj.out_dst[i], true);
      }
      for (std::int32_t i = adj.in_offset[x]; i < adj.in_offset[x + 1]; ++i) {
        VertexId w = adj.in_src[i];
        if (side(w) != 0) continue;  // arc already counted from the other side
        now += arc_time(w, x, false);
        swapped += arc_time(w, x, true);
      }
    };
    for (VertexId v : va) eval_vertex(v);
    for (VertexId v : vb) eval_vertex(v);
    return now - swapped;
  };

  Rng rng(Rng::derive(seed, 0x10CA1ull));
  const std::int64_t stable_after = 4 * P_repl;
  const std::int64_t hard_cap = 200 * P_repl;
  std::int64_t no_improve = 0;
  std::int64_t iter = 0;

  while (no_improve < stable_after && iter < hard_cap) {
    iter++;
    if (stats) stats->local_iterations++;
    const auto rp = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(P_repl)));
    const int pe = static_cast<int>(rp % P);
    const PECoord c = pe_from_index(pe, cfg);
    const auto& here = occupants[rp];
    if (here.empty()) {
      no_improve++;
      continue;
    }
    static const int dx[4] = {0, 0, 1, -1};
    static const int dy[4] = {1, -1, 0, 0};
    // the best single-pair swap across neighbor PEs in every replica
    VertexId best_a = -1, best_b = -1;
    std::int64_t best_gain = 0;
    std::int64_t best_block = -1, best_block_gain = 0;
    for (int d = 0; d < 4; ++d) {
      int nx = c.x + dx[d], ny = c.y + dy[d];
      if (nx < 0 || nx >= cfg.array_width || ny < 0 || ny >= cfg.array_height) continue;
      int npe = ny * cfg.array_width + nx;
      for (int r = 0; r < R; ++r) {
        const std::int64_t nrp = static_cast<std::int64_t>(r) * P + npe;
        for (VertexId b : occupants[nrp]) {
          for (VertexId a : here) {
            std::int64_t gain = pair_benefit(a, b);
            if (gain > best_gain || (gain == best_gain && gain > 0 &&
                                     std::tie(a, b) < std::tie(best_a, best_b))) {
              best_gain = gain;
              best_a = a;
              best_b = b;
            }
          }
        }
      }
    }
    // whole-PE exchange candidates are not restricted to the mesh
    // neighborhood; an exiled chunk relocates in one accepted move
    for (std::int64_t nrp = 0; nrp < P_repl; ++nrp) {
      if (nrp == rp) continue;
      std::int64_t bg = block_benefit(rp, nrp);
      if (bg > best_block_gain) {
        best_block_gain = bg;
        best_block = nrp;
      }
    }
    if (best_block_gain > best_gain && best_block >= 0) {
      // exchange the whole PE contents
      std::vector<VertexId> va = occupants[rp], vb = occupants[best_block];
      PECoord pb2 = pe_from_index(static_cast<int>(best_block % P), cfg);
      auto sa = static_cast<std::int16_t>(rp / P);
      auto sb = static_cast<std::int16_t>(best_block / P);
      for (VertexId v : va) {
        cur.assignment[v].x = pb2.x;
        cur.assignment[v].y = pb2.y;
        cur.assignment[v].slice = sb;
      }
      for (VertexId v : vb) {
        cur.assignment[v].x = c.x;
        cur.assignment[v].y = c.y;
        cur.assignment[v].slice = sa;
      }
      occupants[rp] = std::move(vb);
      occupants[best_block] = std::move(va);
      if (stats) stats->swaps_accepted++;
      no_improve = 0;
    } else if (best_gain > 0) {
      auto& pa = cur.assignment[best_a];
      auto& pb = cur.assignment[best_b];
      auto idx = [&](const VertexPlace& pl) {
        return static_cast<std::size_t>(pl.slice) * P + row_major({pl.x, pl.y}, cfg);
      };
      erase_sorted(occupants[idx(pa)], best_a);
      erase_sorted(occupants[idx(pb)], best_b);
      std::swap(pa, pb);
      std::swap(pa.slot, pb.slot);  // slots re-normalized below; keep occupancy intact
      insert_sorted(occupants[idx(pa)], best_a);
      insert_sorted(occupants[idx(pb)], best_b);
      if (stats) stats->swaps_accepted++;
      no_improve = 0;
    } else {
      no_improve++;
    }
  }

  // re-normalize slots to ascending vertex id per (PE, slice)
  for (std::int64_t rp = 0; rp < P_repl; ++rp) {
    std::int16_t slot = 0;
    for (VertexId v : occupants[rp]) cur.assignment[v].slot = slot++;
  }
  validate_mapping(g, cur, cfg);
  if (stats) stats->routing_length_final = total_routing_length(g, cur);
  return cur;
}

CollisionReport detect_collisions(const Graph& g, const Mapping& m, const ArchConfig& cfg) {
  CollisionReport report;
  Adjacency adj = Adjacency::build(g);
  std::vector<std::vector<VertexId>> by_pe(cfg.num_pes());
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (auto& v : by_pe) v.clear();
    std::vector<int> touched;
    for (std::int32_t i = adj.out_offset[u]; i < adj.out_offset[u + 1]; ++i) {
      VertexId w = adj.out_dst[i];
      const auto& pw = m.assignment[w];
      int pe = row_major({pw.x, pw.y}, cfg);
      if (by_pe[pe].empty()) touched.push_back(pe);
      by_pe[pe].push_back(w);
    }
    std::sort(touched.begin(), touched.end());
    for (int pe : touched) {
      if (by_pe[pe].size() < 2) continue;
      std::sort(by_pe[pe].begin(), by_pe[pe].end());
      CollisionSet cs;
      cs.pe = pe_from_index(pe, cfg);
      cs.source = u;
      cs.members = by_pe[pe];
      for (VertexId w : cs.members) report.congested_arcs.emplace_back(u, w);
      report.sets.push_back(std::move(cs));
    }
  }
  return report;
}

void sort_inter_tables(TableSet& ts, const Mapping& m) {
  const auto& cfg = ts.cfg;
  for (int pe = 0; pe < cfg.num_pes(); ++pe) {
    const PECoord here = pe_from_index(pe, cfg);
    for (int s = 0; s < ts.num_slices; ++s) {
      auto& st = ts.pes[pe].slices[s];
      if (st.inter.empty()) continue;
      struct Item {
        int dist;
        VertexId dst;
        InterTableEntry entry;
      };
      std::vector<std::vector<Item>> lists(st.drf.size());
      for (std::size_t slot = 0; slot < st.drf.size(); ++slot) {
        std::int16_t idx = st.inter_head[slot];
        while (idx >= 0) {
          const auto& e = st.inter[idx];
          PECoord dst_pe = decode_offset(here, e.offset);
          // resolve the destination vertex for the tie-break: the lowest
          // vertex at (dst PE, slice) fed by this source
          const auto& dst_st = ts.at(dst_pe, e.slice_id);
          VertexId dst_vertex = -1;
          for (const auto& ie : dst_st.intra)
            if (ie.src_id == e.src_id) {
              VertexId cand = dst_st.drf[ie.dst_reg];
              if (dst_vertex < 0 || cand < dst_vertex) dst_vertex = cand;
            }
          lists[slot].push_back({e.offset.hops(), dst_vertex, e});
          idx = e.next;
        }
      }
      for (auto& list : lists)
        std::sort(list.begin(), list.end(), [](const Item& a, const Item& b) {
          if (a.dist != b.dist) return a.dist > b.dist;
          return a.dst < b.dst;
        });
      // rebuild: heads first in slot order, then chains
      std::vector<InterTableEntry> rebuilt;
      std::vector<std::int16_t> heads(st.drf.size(), -1);
      for (std::size_t slot = 0; slot < lists.size(); ++slot) {
        if (lists[slot].empty()) continue;
        heads[slot] = static_cast<std::int16_t>(rebuilt.size());
        auto e = lists[slot][0].entry;
        e.next = -1;
        rebuilt.push_back(e);
      }
      for (std::size_t slot = 0; slot < lists.size(); ++slot) {
        if (lists[slot].empty()) continue;
        std::int16_t prev = heads[slot];
        for (std::size_t j = 1; j < lists[slot].size(); ++j) {
          auto e = lists[slot][j].entry;
          e.next = -1;
          auto idx = static_cast<std::int16_t>(rebuilt.size());
          rebuilt.push_back(e);
          rebuilt[prev].next = idx;
          prev = idx;
        }
      }
      st.inter = std::move(rebuilt);
      st.inter_head = std::move(heads);
    }
  }
  (void)m;
}

CompileResult compile_mapping(const Graph& g, const ArchConfig& cfg, const EstimatorParams& p,
                              std::uint64_t seed, int beam_width, bool local_opt) {
  CompileResult result;
  result.mapping = beam_search_initial(g, cfg, beam_width, &result.stats);
  if (local_opt) result.mapping = local_optimize(g, result.mapping, p, seed, cfg, &result.stats);
  result.routing_length = total_routing_length(g, result.mapping);
  result.stats.routing_length_final = result.routing_length;
  result.collision_count =
      static_cast<std::int64_t>(detect_collisions(g, result.mapping, cfg).sets.size());
  return result;
}

}  // namespace dcgra
