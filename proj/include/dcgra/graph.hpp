#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dcgra/error.hpp"

namespace dcgra {

using VertexId = std::int32_t;

struct Edge {
  VertexId src = 0;
  VertexId dst = 0;
  std::int32_t weight = 1;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed or undirected weighted graph with dense vertex ids.
// Undirected edges are stored once (src < dst) and expanded to two directed
// arcs on query. The edge list is kept sorted by (src, dst); construction
// rejects self-loops, duplicate pairs, out-of-range ids and weights < 1.
class Graph {
 public:
  Graph() = default;
  Graph(bool directed, VertexId num_vertices, std::vector<Edge> edges);

  bool directed() const { return directed_; }
  VertexId num_vertices() const { return num_vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Directed arcs, sorted by (src, dst). For undirected graphs every stored
  // edge appears in both orientations.
  std::vector<Edge> arcs() const;
  std::size_t num_arcs() const {
    return directed_ ? edges_.size() : 2 * edges_.size();
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  bool directed_ = true;
  VertexId num_vertices_ = 0;
  std::vector<Edge> edges_;
};

// CSR adjacency over the directed arcs of a graph.
struct Adjacency {
  VertexId n = 0;
  std::vector<std::int32_t> out_offset;
  std::vector<VertexId> out_dst;
  std::vector<std::int32_t> out_weight;
  std::vector<std::int32_t> in_offset;
  std::vector<VertexId> in_src;
  std::vector<std::int32_t> in_weight;

  static Adjacency build(const Graph& g);

  std::int32_t out_degree(VertexId v) const { return out_offset[v + 1] - out_offset[v]; }
  std::int32_t in_degree(VertexId v) const { return in_offset[v + 1] - in_offset[v]; }
};

enum class GraphFamily { Tree, SRN, LRN, Syn, ExtLRN };

const char* family_name(GraphFamily f);
GraphFamily parse_family(const std::string& name);  // throws ParseError

struct GenOptions {
  bool weighted = false;        // uniform random weights in [1,15]
  VertexId vertices = 0;        // override the family's default |V| (0 = default)
};

// Deterministic generator: a pure function of (family, seed, options).
Graph generate(GraphFamily family, std::uint64_t seed, GenOptions opt = {});

// Edge-list text format:
//   line 1: "<directed|undirected> <num_vertices>"
//   then one "<src> <dst> <weight>" per line; '#' starts a comment.
Graph load_edge_list(std::istream& in, const std::string& name = "<stream>");
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list(const Graph& g, const std::string& path);

// Vertex with minimum eccentricity under unweighted hop distance, edges
// treated as undirected; ties broken by lowest id. Disconnected graphs are
// resolved on the largest weakly-connected component.
VertexId graph_center(const Graph& g);

struct DegreeInfo {
  std::vector<std::int32_t> in;
  std::vector<std::int32_t> out;
};

// Exact per-vertex counts over directed arcs.
DegreeInfo degrees(const Graph& g);

}  // namespace dcgra
