#include <sstream>

#include "doctest.h"
#include "testutil.hpp"

#include "dcgra/arch.hpp"
#include "dcgra/mapper.hpp"

using namespace dcgra;
using testutil::graph_of;
using testutil::place;
using testutil::small_cfg;

TEST_CASE("config validation") {
  ArchConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.array_width = 7;  // not divisible by the cluster edge
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = ArchConfig{};
  cfg.offset_bits = 2;  // 3 hops cannot span an 8-wide array
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = ArchConfig{};
  cfg.drf_capacity = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("encode_offset: worked example from the table encoding") {
  ArchConfig cfg;
  Offset o = encode_offset({4, 1}, {0, 3}, cfg);
  CHECK(!o.x_positive);
  CHECK(o.x_hops == 4);  // -x, 0b100
  CHECK(o.y_positive);
  CHECK(o.y_hops == 2);  // +y, 0b010
}

TEST_CASE("encode_offset: identity, boundary, overflow") {
  ArchConfig cfg;
  CHECK(encode_offset({3, 3}, {3, 3}, cfg).zero());
  Offset edge = encode_offset({0, 0}, {7, 0}, cfg);
  CHECK(edge.x_positive);
  CHECK(edge.x_hops == 7);
  CHECK(edge.y_hops == 0);
  CHECK_THROWS_AS(encode_offset({0, 0}, {8, 0}, cfg), CapacityError);
}

TEST_CASE("decode recovers every PE pair") {
  ArchConfig cfg;
  for (int a = 0; a < cfg.num_pes(); ++a)
    for (int b = 0; b < cfg.num_pes(); ++b) {
      PECoord pa = pe_from_index(a, cfg), pb = pe_from_index(b, cfg);
      CHECK(decode_offset(pa, encode_offset(pa, pb, cfg)) == pb);
    }
}

TEST_CASE("hash_src definition") {
  CHECK(hash_src(3) == 3);
  CHECK(hash_src(8) == 0);
  CHECK(hash_src(255) == 7);
}

TEST_CASE("build_tables: local arc on one PE") {
  Graph g = graph_of(true, 2, {{0, 1, 1}});
  ArchConfig cfg = small_cfg(2, 2, 2);
  Mapping m = place(2, 1, {{0, 0, 0, 0, 0}, {1, 0, 0, 1, 0}});
  TableSet ts = build_tables(g, m, cfg);
  const auto& st = ts.at({0, 0}, 0);
  REQUIRE(st.inter.size() == 1);
  CHECK(st.inter[0].src_id == 0);
  CHECK(st.inter[0].offset.zero());
  REQUIRE(st.intra.size() == 1);
  CHECK(st.intra[0].src_id == 0);
  CHECK(st.intra[0].dst_reg == 1);  // slot of vertex 1
  verify_tables(ts, g, m);
}

TEST_CASE("build_tables: scatter list lengths equal out-degrees") {
  Graph g = testutil::five_demo();
  ArchConfig cfg = small_cfg(3, 3, 1);
  Mapping m = place(5, 1,
                    {{0, 1, 1, 0, 0}, {1, 0, 1, 0, 0}, {2, 1, 0, 0, 0}, {3, 2, 1, 0, 0},
                     {4, 1, 2, 0, 0}});
  TableSet ts = build_tables(g, m, cfg);
  auto d = degrees(g);
  for (VertexId v = 0; v < 5; ++v) {
    const auto& p = m.assignment[v];
    const auto& st = ts.at({p.x, p.y}, 0);
    int len = 0;
    std::int16_t idx = st.inter_head[p.slot];
    while (idx >= 0) {
      CHECK(st.inter[idx].src_id == v);
      len++;
      idx = st.inter[idx].next;
    }
    CHECK(len == d.out[v]);
  }
  verify_tables(ts, g, m);
}

TEST_CASE("tables are a lossless encoding of a random graph") {
  Graph g = generate(GraphFamily::Syn, 77, {true, 64});
  ArchConfig cfg;
  auto compiled = compile_mapping(g, cfg, {}, 77);
  TableSet ts = build_tables(g, compiled.mapping, cfg);
  CHECK(reconstruct_arcs(ts) == g.arcs());
  verify_tables(ts, g, compiled.mapping);
}

TEST_CASE("table structure holds for sliced road graphs") {
  Graph g = generate(GraphFamily::LRN, 5, {false, 320});  // forces 2 slices
  ArchConfig cfg;
  auto compiled = compile_mapping(g, cfg, {}, 5);
  CHECK(compiled.mapping.num_slices == 2);
  TableSet ts = build_tables(g, compiled.mapping, cfg);
  verify_tables(ts, g, compiled.mapping);
}

TEST_CASE("id width and table capacity limits") {
  Graph g = generate(GraphFamily::Syn, 2, {false, 300});
  ArchConfig cfg;
  cfg.id_bits = 8;  // 300 ids do not fit 8 bits
  auto compiled = compile_mapping(g, cfg, {}, 2);
  CHECK_THROWS_AS(build_tables(g, compiled.mapping, cfg), CapacityError);

  Graph small = generate(GraphFamily::Syn, 2, {false, 256});
  ArchConfig tight;
  tight.intra_table_capacity = 2;
  auto c2 = compile_mapping(small, tight, {}, 2);
  CHECK_THROWS_AS(build_tables(small, c2.mapping, tight), CapacityError);
}

TEST_CASE("offset overflow is a build error") {
  // adjacent endpoints forced 9 hops apart on a 16-wide array
  Graph g = graph_of(true, 2, {{0, 1, 1}});
  ArchConfig cfg;
  cfg.array_width = 16;
  cfg.array_height = 2;
  cfg.offset_bits = 4;
  Mapping m = place(2, 1, {{0, 0, 0, 0, 0}, {1, 15, 0, 0, 0}});
  CHECK_NOTHROW(build_tables(g, m, cfg));
  cfg.offset_bits = 3;  // max 7 hops; config itself is now invalid for w=16
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("golden table dump") {
  Graph g = graph_of(true, 3, {{0, 1, 1}, {0, 2, 3}, {2, 1, 2}});
  ArchConfig cfg = small_cfg(2, 2, 2);
  Mapping m = place(3, 1, {{0, 0, 0, 0, 0}, {1, 1, 0, 0, 0}, {2, 0, 1, 0, 0}});
  TableSet ts = build_tables(g, m, cfg);
  std::ostringstream out;
  dump_tables(ts, out);
  const char* expected =
      "tables 2x2 slices 1\n"
      "pe 0 0 slice 0\n"
      "  drf 0 v 0\n"
      "  inter 0 src 0 x +1 y +0 slice 0 next 1\n"
      "  inter 1 src 0 x +0 y +1 slice 0 next -1\n"
      "pe 1 0 slice 0\n"
      "  drf 0 v 1\n"
      "  intra 0 src 0 reg 0 w 1 next -1\n"
      "  intra 1 src 2 reg 0 w 2 next -1\n"
      "pe 0 1 slice 0\n"
      "  drf 0 v 2\n"
      "  inter 0 src 2 x +1 y -1 slice 0 next -1\n"
      "  intra 0 src 0 reg 0 w 3 next -1\n";
  CHECK(out.str() == expected);
}
