#include "dcgra/graph.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "dcgra/rng.hpp"

namespace dcgra {

Graph::Graph(bool directed, VertexId num_vertices, std::vector<Edge> edges)
    : directed_(directed), num_vertices_(num_vertices), edges_(std::move(edges)) {
  if (num_vertices_ < 0) throw ValidationError("graph: negative vertex count");
  for (auto& e : edges_) {
    if (e.src < 0 || e.src >= num_vertices_ || e.dst < 0 || e.dst >= num_vertices_)
      throw ValidationError("graph: vertex id out of range: " + std::to_string(e.src) +
                            " -> " + std::to_string(e.dst));
    if (e.src == e.dst)
      throw ValidationError("graph: self-loop at vertex " + std::to_string(e.src));
    if (e.weight < 1)
      throw ValidationError("graph: edge weight < 1 on " + std::to_string(e.src) + " -> " +
                            std::to_string(e.dst));
    if (!directed_ && e.src > e.dst) std::swap(e.src, e.dst);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].src == edges_[i - 1].src && edges_[i].dst == edges_[i - 1].dst)
      throw ValidationError("graph: duplicate edge " + std::to_string(edges_[i].src) + " -> " +
                            std::to_string(edges_[i].dst));
  }
}

std::vector<Edge> Graph::arcs() const {
  if (directed_) return edges_;
  std::vector<Edge> out;
  out.reserve(edges_.size() * 2);
  for (const auto& e : edges_) {
    out.push_back(e);
    out.push_back({e.dst, e.src, e.weight});
  }
  std::sort(out.begin(), out.end(),
            [](const Edge& a, const Edge& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
  return out;
}

Adjacency Adjacency::build(const Graph& g) {
  Adjacency a;
  a.n = g.num_vertices();
  auto arcs = g.arcs();
  a.out_offset.assign(a.n + 1, 0);
  a.in_offset.assign(a.n + 1, 0);
  for (const auto& e : arcs) {
    a.out_offset[e.src + 1]++;
    a.in_offset[e.dst + 1]++;
  }
  std::partial_sum(a.out_offset.begin(), a.out_offset.end(), a.out_offset.begin());
  std::partial_sum(a.in_offset.begin(), a.in_offset.end(), a.in_offset.begin());
  a.out_dst.resize(arcs.size());
  a.out_weight.resize(arcs.size());
  a.in_src.resize(arcs.size());
  a.in_weight.resize(arcs.size());
  std::vector<std::int32_t> pos = a.out_offset;
  for (const auto& e : arcs) {
    a.out_dst[pos[e.src]] = e.dst;
    a.out_weight[pos[e.src]] = e.weight;
    pos[e.src]++;
  }
  pos = a.in_offset;
  for (const auto& e : arcs) {
    a.in_src[pos[e.dst]] = e.src;
    a.in_weight[pos[e.dst]] = e.weight;
    pos[e.dst]++;
  }
  return a;
}

const char* family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::Tree: return "tree";
    case GraphFamily::SRN: return "srn";
    case GraphFamily::LRN: return "lrn";
    case GraphFamily::Syn: return "syn";
    case GraphFamily::ExtLRN: return "extlrn";
  }
  return "?";
}

GraphFamily parse_family(const std::string& name) {
  if (name == "tree") return GraphFamily::Tree;
  if (name == "srn") return GraphFamily::SRN;
  if (name == "lrn") return GraphFamily::LRN;
  if (name == "syn") return GraphFamily::Syn;
  if (name == "extlrn") return GraphFamily::ExtLRN;
  throw ParseError("unknown graph family: " + name);
}

namespace {

bool weakly_connected(VertexId n, const std::vector<Edge>& edges) {
  if (n <= 1) return true;
  std::vector<VertexId> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  VertexId comps = n;
  for (const auto& e : edges) {
    VertexId a = find(e.src), b = find(e.dst);
    if (a != b) {
      parent[a] = b;
      comps--;
    }
  }
  return comps == 1;
}

Graph make_tree(VertexId n, Rng& rng) {
  std::vector<Edge> edges;
  edges.reserve(n > 0 ? n - 1 : 0);
  for (VertexId v = 1; v < n; ++v) {
    auto parent = static_cast<VertexId>(rng.below(static_cast<std::uint64_t>(v)));
    edges.push_back({parent, v, 1});
  }
  return Graph(true, n, std::move(edges));
}

Graph make_syn(VertexId n, Rng& rng) {
  const std::int64_t m = 3ll * n;
  if (m > static_cast<std::int64_t>(n) * (n - 1))
    throw ValidationError("syn generator: |E| exceeds simple-graph maximum");
  std::unordered_set<std::uint64_t> seen;
  std::vector<Edge> edges;
  edges.reserve(m);
  while (static_cast<std::int64_t>(edges.size()) < m) {
    auto u = static_cast<VertexId>(rng.below(n));
    auto v = static_cast<VertexId>(rng.below(n));
    if (u == v) continue;
    std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
    if (!seen.insert(key).second) continue;
    edges.push_back({u, v, 1});
  }
  return Graph(true, n, std::move(edges));
}

struct RoadParams {
  VertexId n;
  std::int64_t min_arcs;  // directed-arc counts (stored edges x2)
  std::int64_t max_arcs;
};

// Jittered grid: drop each lattice edge with probability 1/4, BFS-sample the
// requested vertex count, then add short chords inside the sample until the
// arc count reaches the target range.
Graph make_road(const RoadParams& p, Rng& rng) {
  const VertexId n = p.n;
  if (n < 2) throw ValidationError("road generator: need at least 2 vertices");
  std::int64_t side = 2;
  while (side * side < 2 * static_cast<std::int64_t>(n)) side++;
  const auto g = static_cast<VertexId>(side);
  const VertexId cells = g * g;

  // right/down edge presence per cell
  std::vector<std::uint8_t> right(cells, 0), down(cells, 0);
  for (VertexId y = 0; y < g; ++y)
    for (VertexId x = 0; x < g; ++x) {
      VertexId c = y * g + x;
      if (x + 1 < g) right[c] = rng.below(4) != 0;
      if (y + 1 < g) down[c] = rng.below(4) != 0;
    }

  auto neighbors = [&](VertexId c, VertexId out[4]) {
    int k = 0;
    VertexId x = c % g, y = c / g;
    if (x + 1 < g && right[c]) out[k++] = c + 1;
    if (x > 0 && right[c - 1]) out[k++] = c - 1;
    if (y + 1 < g && down[c]) out[k++] = c + g;
    if (y > 0 && down[c - g]) out[k++] = c - g;
    return k;
  };

  // BFS sample
  auto start = static_cast<VertexId>(rng.below(cells));
  std::vector<VertexId> new_id(cells, -1);
  std::vector<VertexId> sampled;
  sampled.reserve(n);
  std::deque<VertexId> queue{start};
  new_id[start] = 0;
  sampled.push_back(start);
  while (!queue.empty() && static_cast<VertexId>(sampled.size()) < n) {
    VertexId c = queue.front();
    queue.pop_front();
    VertexId nb[4];
    int k = neighbors(c, nb);
    for (int i = 0; i < k && static_cast<VertexId>(sampled.size()) < n; ++i) {
      if (new_id[nb[i]] >= 0) continue;
      new_id[nb[i]] = static_cast<VertexId>(sampled.size());
      sampled.push_back(nb[i]);
      queue.push_back(nb[i]);
    }
  }
  if (static_cast<VertexId>(sampled.size()) < n)
    throw ValidationError("road generator: sample disconnected");

  // induced edges among sampled cells
  std::unordered_set<std::uint64_t> have;
  std::vector<Edge> edges;
  auto add_edge = [&](VertexId a, VertexId b) {
    VertexId lo = std::min(a, b), hi = std::max(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
    if (!have.insert(key).second) return false;
    edges.push_back({lo, hi, 1});
    return true;
  };
  for (VertexId c = 0; c < cells; ++c) {
    if (new_id[c] < 0) continue;
    if (c % g + 1 < g && right[c] && new_id[c + 1] >= 0) add_edge(new_id[c], new_id[c + 1]);
    if (c / g + 1 < g && down[c] && new_id[c + g] >= 0) add_edge(new_id[c], new_id[c + g]);
  }
  if (2 * static_cast<std::int64_t>(edges.size()) > p.max_arcs)
    throw ValidationError("road generator: too many induced edges");

  // grid coordinates of each sampled vertex, for chord locality
  std::vector<VertexId> cell_of(n);
  for (VertexId c = 0; c < cells; ++c)
    if (new_id[c] >= 0) cell_of[new_id[c]] = c;

  std::int64_t tries = 0;
  const std::int64_t max_tries = 4000ll * n;
  while (2 * static_cast<std::int64_t>(edges.size()) < p.min_arcs) {
    if (++tries > max_tries) throw ValidationError("road generator: chord budget exhausted");
    auto u = static_cast<VertexId>(rng.below(n));
    auto v = static_cast<VertexId>(rng.below(n));
    if (u == v) continue;
    VertexId cu = cell_of[u], cv = cell_of[v];
    VertexId dist = std::abs(cu % g - cv % g) + std::abs(cu / g - cv / g);
    if (dist < 2 || dist > 4) continue;
    add_edge(u, v);
  }
  return Graph(false, n, std::move(edges));
}

void apply_weights(Graph& g, std::uint64_t seed) {
  Rng rng(Rng::derive(seed, 0xEDC0FFEEull));
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.weight = static_cast<std::int32_t>(1 + rng.below(15));
  g = Graph(g.directed(), g.num_vertices(), std::move(edges));
}

}  // namespace

Graph generate(GraphFamily family, std::uint64_t seed, GenOptions opt) {
  std::string last_error = "no attempt";
  for (int attempt = 0; attempt < 200; ++attempt) {
    Rng rng(Rng::derive(seed, static_cast<std::uint64_t>(attempt)));
    try {
      Graph g;
      switch (family) {
        case GraphFamily::Tree:
          g = make_tree(opt.vertices > 0 ? opt.vertices : 256, rng);
          break;
        case GraphFamily::Syn:
          g = make_syn(opt.vertices > 0 ? opt.vertices : 256, rng);
          break;
        case GraphFamily::SRN: {
          RoadParams p;
          if (opt.vertices > 0) {
            p.n = opt.vertices;
            p.min_arcs = (228 * static_cast<std::int64_t>(p.n) + 99) / 100;
            p.max_arcs = 260 * static_cast<std::int64_t>(p.n) / 100;
          } else {
            p.n = static_cast<VertexId>(64 + rng.below(44));  // [64, 107]
            p.min_arcs = 146;
            p.max_arcs = 278;
          }
          g = make_road(p, rng);
          break;
        }
        case GraphFamily::LRN: {
          RoadParams p;
          p.n = opt.vertices > 0 ? opt.vertices : 256;
          if (opt.vertices > 0 && opt.vertices != 256) {
            p.min_arcs = (228 * static_cast<std::int64_t>(p.n) + 99) / 100;
            p.max_arcs = 350 * static_cast<std::int64_t>(p.n) / 100;
          } else {
            p.min_arcs = 584;
            p.max_arcs = 898;
          }
          g = make_road(p, rng);
          break;
        }
        case GraphFamily::ExtLRN: {
          RoadParams p;
          p.n = opt.vertices > 0 ? opt.vertices : 16000;
          if (opt.vertices > 0 && opt.vertices != 16000) {
            p.min_arcs = (275 * static_cast<std::int64_t>(p.n) + 99) / 100;
            p.max_arcs = 312 * static_cast<std::int64_t>(p.n) / 100;
          } else {
            p.min_arcs = 44000;
            p.max_arcs = 50000;
          }
          g = make_road(p, rng);
          break;
        }
      }
      if (!weakly_connected(g.num_vertices(), g.edges()))
        throw ValidationError("generated graph disconnected");
      if (opt.weighted) apply_weights(g, seed);
      return g;
    } catch (const ValidationError& e) {
      last_error = e.what();
    }
  }
  throw ValidationError(std::string("generate: gave up after 200 attempts: ") + last_error);
}

namespace {

std::int64_t parse_int(std::string_view tok, const std::string& name, int line) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(name + ":" + std::to_string(line) + ": expected integer, got '" +
                     std::string(tok) + "'");
  return value;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) i++;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') j++;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Graph load_edge_list(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  bool directed = false;
  VertexId n = -1;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> seen;
  while (std::getline(in, line)) {
    lineno++;
    std::string_view sv(line);
    if (auto pos = sv.find('#'); pos != std::string_view::npos) sv = sv.substr(0, pos);
    auto toks = split_ws(sv);
    if (toks.empty()) continue;
    if (n < 0) {
      if (toks.size() != 2 || (toks[0] != "directed" && toks[0] != "undirected"))
        throw ParseError(name + ":" + std::to_string(lineno) +
                         ": expected header '<directed|undirected> <num_vertices>'");
      directed = toks[0] == "directed";
      n = static_cast<VertexId>(parse_int(toks[1], name, lineno));
      if (n < 0) throw ParseError(name + ":" + std::to_string(lineno) + ": negative vertex count");
      continue;
    }
    if (toks.size() != 3)
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected '<src> <dst> <weight>'");
    Edge e;
    e.src = static_cast<VertexId>(parse_int(toks[0], name, lineno));
    e.dst = static_cast<VertexId>(parse_int(toks[1], name, lineno));
    e.weight = static_cast<std::int32_t>(parse_int(toks[2], name, lineno));
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      throw ParseError(name + ":" + std::to_string(lineno) + ": vertex id out of range");
    if (e.src == e.dst)
      throw ParseError(name + ":" + std::to_string(lineno) + ": self-loop");
    if (e.weight < 1)
      throw ParseError(name + ":" + std::to_string(lineno) + ": weight must be >= 1");
    VertexId a = e.src, b = e.dst;
    if (!directed && a > b) std::swap(a, b);
    std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    if (!seen.insert(key).second)
      throw ParseError(name + ":" + std::to_string(lineno) + ": duplicate edge");
    edges.push_back(e);
  }
  if (n < 0) throw ParseError(name + ": missing header line");
  return Graph(directed, n, std::move(edges));
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return load_edge_list(in, path);
}

void save_edge_list(const Graph& g, std::ostream& out) {
  out << (g.directed() ? "directed " : "undirected ") << g.num_vertices() << "\n";
  for (const auto& e : g.edges()) out << e.src << " " << e.dst << " " << e.weight << "\n";
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  save_edge_list(g, out);
}

VertexId graph_center(const Graph& g) {
  const VertexId n = g.num_vertices();
  if (n == 0) throw ValidationError("graph_center: empty graph");
  if (n == 1) return 0;

  // undirected adjacency
  std::vector<std::int32_t> offset(n + 1, 0);
  auto arcs = g.arcs();
  std::vector<Edge> undirected;
  if (g.directed()) {
    undirected.reserve(arcs.size() * 2);
    for (const auto& e : arcs) {
      undirected.push_back(e);
      undirected.push_back({e.dst, e.src, e.weight});
    }
  } else {
    undirected = std::move(arcs);
  }
  for (const auto& e : undirected) offset[e.src + 1]++;
  std::partial_sum(offset.begin(), offset.end(), offset.begin());
  std::vector<VertexId> nbr(undirected.size());
  {
    std::vector<std::int32_t> pos = offset;
    for (const auto& e : undirected) nbr[pos[e.src]++] = e.dst;
  }

  // component labels; pick the largest (first found wins ties)
  std::vector<VertexId> comp(n, -1);
  VertexId best_comp = 0, best_size = 0, num_comp = 0;
  std::vector<VertexId> queue(n);
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    VertexId head = 0, tail = 0, size = 0;
    comp[s] = num_comp;
    queue[tail++] = s;
    while (head < tail) {
      VertexId u = queue[head++];
      size++;
      for (std::int32_t i = offset[u]; i < offset[u + 1]; ++i) {
        VertexId w = nbr[i];
        if (comp[w] < 0) {
          comp[w] = num_comp;
          queue[tail++] = w;
        }
      }
    }
    if (size > best_size) {
      best_size = size;
      best_comp = num_comp;
    }
    num_comp++;
  }

  std::vector<std::int32_t> dist(n);
  VertexId best_vertex = -1;
  std::int32_t best_ecc = 0;
  for (VertexId s = 0; s < n; ++s) {
    if (comp[s] != best_comp) continue;
    std::fill(dist.begin(), dist.end(), -1);
    VertexId head = 0, tail = 0;
    dist[s] = 0;
    queue[tail++] = s;
    std::int32_t ecc = 0;
    while (head < tail) {
      VertexId u = queue[head++];
      ecc = std::max(ecc, dist[u]);
      for (std::int32_t i = offset[u]; i < offset[u + 1]; ++i) {
        VertexId w = nbr[i];
        if (dist[w] < 0) {
          dist[w] = dist[u] + 1;
          queue[tail++] = w;
        }
      }
    }
    if (best_vertex < 0 || ecc < best_ecc) {
      best_vertex = s;
      best_ecc = ecc;
    }
  }
  return best_vertex;
}

DegreeInfo degrees(const Graph& g) {
  DegreeInfo d;
  d.in.assign(g.num_vertices(), 0);
  d.out.assign(g.num_vertices(), 0);
  for (const auto& e : g.arcs()) {
    d.out[e.src]++;
    d.in[e.dst]++;
  }
  return d;
}

}  // namespace dcgra
