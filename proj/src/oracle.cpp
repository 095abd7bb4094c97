#include "dcgra/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <queue>
#include <set>

#include "dcgra/arch.hpp"

namespace dcgra::oracle {

namespace {

constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();

std::vector<std::vector<std::pair<VertexId, std::int32_t>>> out_lists(const Graph& g) {
  std::vector<std::vector<std::pair<VertexId, std::int32_t>>> adj(g.num_vertices());
  for (const auto& e : g.arcs()) adj[e.src].emplace_back(e.dst, e.weight);
  return adj;
}

}  // namespace

OracleResult bfs_levels(const Graph& g, VertexId source) {
  if (source < 0 || source >= g.num_vertices())
    throw ValidationError("oracle bfs: source out of range");
  auto adj = out_lists(g);
  OracleResult r;
  r.attributes.assign(g.num_vertices(), kInf);
  r.attributes[source] = 0;
  std::deque<VertexId> queue{source};
  while (!queue.empty()) {
    VertexId u = queue.front();
    queue.pop_front();
    for (auto [v, w] : adj[u]) {
      if (r.attributes[v] == kInf) {
        r.attributes[v] = r.attributes[u] + 1;
        queue.push_back(v);
      }
    }
  }
  for (auto a : r.attributes)
    if (a != kInf) r.reached++;
  r.components = 1;
  return r;
}

OracleResult sssp_distances(const Graph& g, VertexId source) {
  if (source < 0 || source >= g.num_vertices())
    throw ValidationError("oracle sssp: source out of range");
  auto adj = out_lists(g);
  OracleResult r;
  r.attributes.assign(g.num_vertices(), kInf);
  r.attributes[source] = 0;
  using Item = std::pair<std::int64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.push({0, source});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d != r.attributes[u]) continue;
    for (auto [v, w] : adj[u]) {
      std::int64_t nd = d + w;
      if (nd < r.attributes[v]) {
        r.attributes[v] = static_cast<std::int32_t>(nd);
        heap.push({nd, v});
      }
    }
  }
  for (auto a : r.attributes)
    if (a != kInf) r.reached++;
  r.components = 1;
  return r;
}

OracleResult wcc_labels(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  OracleResult r;
  r.attributes.assign(n, -1);
  for (VertexId s = 0; s < n; ++s) {
    if (r.attributes[s] >= 0) continue;
    // s is the smallest unlabeled id, hence the minimum of its component
    r.components++;
    std::deque<VertexId> queue{s};
    r.attributes[s] = s;
    while (!queue.empty()) {
      VertexId u = queue.front();
      queue.pop_front();
      for (VertexId v : adj[u]) {
        if (r.attributes[v] < 0) {
          r.attributes[v] = s;
          queue.push_back(v);
        }
      }
    }
  }
  r.reached = n;
  return r;
}

std::int64_t exhaustive_best_mapping(const Graph& g, const ArchConfig& cfg) {
  const VertexId n = g.num_vertices();
  const int P = cfg.num_pes();
  if (n == 0) return 0;
  const std::int64_t chip = static_cast<std::int64_t>(P) * cfg.drf_capacity;
  const int slices = static_cast<int>((n + chip - 1) / chip);
  const int per_pe = cfg.drf_capacity * slices;
  if (std::pow(static_cast<double>(P), static_cast<double>(n)) > 2e7)
    throw ValidationError("exhaustive_best_mapping: instance too large");

  // incidence over stored edges against already-placed vertices
  std::vector<std::vector<VertexId>> inc(n);
  for (const auto& e : g.edges()) {
    inc[e.src].push_back(e.dst);
    inc[e.dst].push_back(e.src);
  }

  std::vector<int> pe_of(n, -1);
  std::vector<int> load(P, 0);
  std::int64_t best = std::numeric_limits<std::int64_t>::max();

  auto coord = [&](int p) { return pe_from_index(p, cfg); };

  auto rec = [&](auto&& self, VertexId v, std::int64_t cost) -> void {
    if (cost >= best) return;
    if (v == n) {
      best = cost;
      return;
    }
    for (int p = 0; p < P; ++p) {
      if (load[p] >= per_pe) continue;
      std::int64_t added = 0;
      for (VertexId w : inc[v])
        if (w < v) added += manhattan(coord(p), coord(pe_of[w]));
      load[p]++;
      pe_of[v] = p;
      self(self, v + 1, cost + added);
      load[p]--;
      pe_of[v] = -1;
    }
  };
  rec(rec, 0, 0);
  return best;
}

}  // namespace dcgra::oracle
