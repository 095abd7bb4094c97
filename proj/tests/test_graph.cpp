#include <sstream>

#include "doctest.h"
#include "testutil.hpp"

#include "dcgra/graph.hpp"
#include "dcgra/rng.hpp"

using namespace dcgra;

namespace {

// independent eccentricity scan for the center oracle
VertexId center_by_scan(const Graph& g) {
  const VertexId n = g.num_vertices();
  std::vector<std::vector<VertexId>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  auto bfs_ecc = [&](VertexId s, std::vector<int>& dist) {
    std::fill(dist.begin(), dist.end(), -1);
    std::vector<VertexId> queue{s};
    dist[s] = 0;
    int ecc = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      VertexId u = queue[h];
      ecc = std::max(ecc, dist[u]);
      for (VertexId v : adj[u])
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
    }
    return ecc;
  };
  std::vector<int> dist(n);
  VertexId best = -1;
  int best_ecc = 0;
  for (VertexId s = 0; s < n; ++s) {
    int ecc = bfs_ecc(s, dist);
    bool full = true;
    for (int d : dist) full &= d >= 0;
    if (!full) continue;  // only valid for connected graphs
    if (best < 0 || ecc < best_ecc) {
      best = s;
      best_ecc = ecc;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("edge list: minimal directed file") {
  std::istringstream in("directed 2\n0 1 1\n");
  Graph g = load_edge_list(in);
  CHECK(g.directed());
  CHECK(g.num_vertices() == 2);
  REQUIRE(g.edges().size() == 1);
  CHECK(g.edges()[0] == Edge{0, 1, 1});
}

TEST_CASE("edge list: undirected expansion") {
  std::istringstream in("undirected 3\n0 1 1\n1 2 1\n");
  Graph g = load_edge_list(in);
  CHECK(g.edges().size() == 2);
  CHECK(g.arcs().size() == 4);
}

TEST_CASE("edge list: malformed line names its line number") {
  std::istringstream in("directed 3\n0 x 1\n");
  try {
    load_edge_list(in, "bad.el");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("bad.el:2") != std::string::npos);
  }
}

TEST_CASE("edge list: duplicate and range errors") {
  std::istringstream dup("directed 2\n0 1 1\n0 1 2\n");
  CHECK_THROWS_AS(load_edge_list(dup), ParseError);
  std::istringstream range("directed 2\n0 5 1\n");
  CHECK_THROWS_AS(load_edge_list(range), ParseError);
  std::istringstream loop("directed 2\n1 1 1\n");
  CHECK_THROWS_AS(load_edge_list(loop), ParseError);
}

TEST_CASE("edge list: comments and round trip") {
  std::istringstream in("# road\nundirected 4 # n\n0 1 2\n2 3 1\n1 2 7\n");
  Graph g = load_edge_list(in);
  std::ostringstream out;
  save_edge_list(g, out);
  std::istringstream back(out.str());
  CHECK(load_edge_list(back) == g);
}

TEST_CASE("round trip over generated families") {
  for (auto family : {GraphFamily::Tree, GraphFamily::SRN, GraphFamily::LRN, GraphFamily::Syn}) {
    Graph g = generate(family, 11, {true, 0});
    std::ostringstream out;
    save_edge_list(g, out);
    std::istringstream back(out.str());
    CHECK(load_edge_list(back) == g);
  }
}

TEST_CASE("graph construction rejects bad input") {
  CHECK_THROWS_AS(testutil::graph_of(true, 2, {{0, 0, 1}}), ValidationError);
  CHECK_THROWS_AS(testutil::graph_of(true, 2, {{0, 1, 0}}), ValidationError);
  CHECK_THROWS_AS(testutil::graph_of(true, 2, {{0, 1, 1}, {0, 1, 1}}), ValidationError);
  CHECK_THROWS_AS(testutil::graph_of(false, 3, {{0, 1, 1}, {1, 0, 1}}), ValidationError);
}

TEST_CASE("generate: syn sizes match the family table") {
  Graph g = generate(GraphFamily::Syn, 3);
  CHECK(g.num_vertices() == 256);
  CHECK(g.edges().size() == 768);
  CHECK(g.directed());
  auto d = degrees(g);
  std::int64_t out_sum = 0;
  for (auto v : d.out) out_sum += v;
  CHECK(out_sum == 768);
}

TEST_CASE("generate: tree is a 255-edge arborescence") {
  Graph g = generate(GraphFamily::Tree, 5);
  CHECK(g.num_vertices() == 256);
  CHECK(g.edges().size() == 255);
  CHECK(g.directed());
  // all vertices reachable from the root
  std::vector<std::vector<VertexId>> adj(g.num_vertices());
  for (const auto& e : g.edges()) adj[e.src].push_back(e.dst);
  std::vector<bool> seen(g.num_vertices(), false);
  std::vector<VertexId> queue{0};
  seen[0] = true;
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (VertexId v : adj[queue[h]])
      if (!seen[v]) {
        seen[v] = true;
        queue.push_back(v);
      }
  CHECK(queue.size() == static_cast<std::size_t>(g.num_vertices()));
}

TEST_CASE("generate: road families land in the published ranges") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    Graph srn = generate(GraphFamily::SRN, seed);
    CHECK(!srn.directed());
    CHECK(srn.num_vertices() >= 64);
    CHECK(srn.num_vertices() <= 107);
    CHECK(srn.num_arcs() >= 146);
    CHECK(srn.num_arcs() <= 278);

    Graph lrn = generate(GraphFamily::LRN, seed);
    CHECK(lrn.num_vertices() == 256);
    CHECK(lrn.num_arcs() >= 584);
    CHECK(lrn.num_arcs() <= 898);
  }
}

TEST_CASE("generate: determinism and seed sensitivity") {
  CHECK(generate(GraphFamily::LRN, 42) == generate(GraphFamily::LRN, 42));
  CHECK(generate(GraphFamily::Syn, 42) == generate(GraphFamily::Syn, 42));
  CHECK(generate(GraphFamily::LRN, 42) != generate(GraphFamily::LRN, 43));
}

TEST_CASE("generate: weighted flag bounds weights to [1,15]") {
  Graph g = generate(GraphFamily::LRN, 9, {true, 0});
  bool above_one = false;
  for (const auto& e : g.edges()) {
    CHECK(e.weight >= 1);
    CHECK(e.weight <= 15);
    above_one |= e.weight > 1;
  }
  CHECK(above_one);
  CHECK(g == generate(GraphFamily::LRN, 9, {true, 0}));
}

TEST_CASE("generate: infeasible syn parameters") {
  CHECK_THROWS_AS(generate(GraphFamily::Syn, 1, {false, 2}), ValidationError);
}

TEST_CASE("generate: vertex-count override") {
  Graph g = generate(GraphFamily::LRN, 17, {false, 512});
  CHECK(g.num_vertices() == 512);
  Graph t = generate(GraphFamily::Tree, 17, {false, 64});
  CHECK(t.num_vertices() == 64);
  CHECK(t.edges().size() == 63);
}

TEST_CASE("graph_center: path and star") {
  Graph path = testutil::graph_of(false, 3, {{0, 1, 1}, {1, 2, 1}});
  CHECK(graph_center(path) == 1);
  Graph star = testutil::graph_of(false, 5, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
  CHECK(graph_center(star) == 0);
  CHECK_THROWS_AS(graph_center(Graph(true, 0, {})), ValidationError);
}

TEST_CASE("graph_center: matches the all-pairs eccentricity scan") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Graph g = generate(GraphFamily::LRN, seed);
    CHECK(graph_center(g) == center_by_scan(g));
  }
  Graph big = generate(GraphFamily::LRN, 4, {false, 512});
  CHECK(graph_center(big) == center_by_scan(big));
  Graph tree = generate(GraphFamily::Tree, 4);
  CHECK(graph_center(tree) == center_by_scan(tree));
}

TEST_CASE("degrees: directed arc and expansion counts") {
  Graph one = testutil::graph_of(true, 2, {{0, 1, 1}});
  auto d = degrees(one);
  CHECK(d.out[0] == 1);
  CHECK(d.in[1] == 1);
  CHECK(d.out[1] == 0);

  Graph und = testutil::graph_of(false, 2, {{0, 1, 1}});
  d = degrees(und);
  CHECK(d.out[0] == 1);
  CHECK(d.out[1] == 1);
  CHECK(d.in[0] == 1);
  CHECK(d.in[1] == 1);
}
