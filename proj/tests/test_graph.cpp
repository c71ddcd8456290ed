#include <doctest.h>

#include "generators.hpp"
#include "graph.hpp"

#include <sstream>

using namespace sf;

namespace {

Instance triangle(const char* c01, const char* c12, const char* c02) {
  Instance g;
  g.vertex_count = 3;
  g.pair = {0, 1, 2};
  g.edges = {{0, 0, 1, rat_parse(c01)}, {1, 1, 2, rat_parse(c12)}, {2, 0, 2, rat_parse(c02)}};
  return g;
}

}  // namespace

TEST_CASE("shortest path takes the cheap detour") {
  Instance g = triangle("1", "1", "3");
  PathResult r = shortest_path(g, 0, 2);
  REQUIRE(r.reachable);
  CHECK(r.cost == rat(2));
  CHECK(r.path == std::vector<EdgeId>{0, 1});
}

TEST_CASE("shortest path of a vertex to itself is empty") {
  Instance g = triangle("1", "1", "3");
  PathResult r = shortest_path(g, 1, 1);
  REQUIRE(r.reachable);
  CHECK(r.cost == rat(0));
  CHECK(r.path.empty());
}

TEST_CASE("horseshoe endpoints are two apart via the direct edge") {
  Instance g = gen_horseshoe(3, 3, rat_parse("1/100"));
  PathResult r = shortest_path(g, 0, 4);  // u and v
  REQUIRE(r.reachable);
  CHECK(r.cost == rat(2));
  CHECK(r.path.size() == 1);
}

TEST_CASE("unreachable vertices are reported") {
  Instance g;
  g.vertex_count = 3;
  g.pair = {0, 1, 2};
  g.edges = {{0, 0, 1, rat(1)}};
  PathResult r = shortest_path(g, 0, 2);
  CHECK(!r.reachable);
  CHECK_THROWS_AS(shortest_path(g, 0, 5), Error);
}

TEST_CASE("triangle inequality on sampled triples") {
  Instance g = gen_random(8, rat_parse("3/4"), 42);
  for (VertexId u = 0; u < g.vertex_count; ++u) {
    auto du = shortest_distances(g, u);
    for (VertexId v = 0; v < g.vertex_count; ++v) {
      auto dv = shortest_distances(g, v);
      for (VertexId w = 0; w < g.vertex_count; ++w) {
        REQUIRE(du[w].has_value());
        CHECK(*du[w] <= *du[v] + *dv[w]);
      }
    }
  }
}

TEST_CASE("parsing a two-vertex instance") {
  Instance g = parse_instance_text(
      "SECTION Graph\nN 2\nE 0 1 5\nSECTION Pairs\nP 0 1\nEOF\n");
  CHECK(g.vertex_count == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].cost == rat(5));
  CHECK(g.pair[0] == 1);
  CHECK(g.pair[1] == 0);
}

TEST_CASE("one-sided pair line closes symmetrically") {
  Instance g = parse_instance_text("SECTION Graph\nN 3\nE 0 1 1\nSECTION Pairs\nP 0 1\nEOF\n");
  CHECK(g.pair[1] == 0);
  CHECK(g.pair[2] == 2);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_instance_text("SECTION Graph\nN 2\nE 0 1 -3\nEOF\n"),
                       doctest::Contains("line 3"), Error);
  CHECK_THROWS_AS(parse_instance_text("SECTION Graph\nN 2\nE 0 3 1\nEOF\n"), Error);
  CHECK_THROWS_AS(
      parse_instance_text("SECTION Graph\nN 3\nSECTION Pairs\nP 0 1\nP 1 2\nEOF\n"), Error);
  CHECK_THROWS_AS(parse_instance_text("SECTION Graph\nN 2\nE 0 1 1/2/3\nEOF\n"), Error);
}

TEST_CASE("serialize then parse is the identity on generated instances") {
  Instance wheel = gen_wheel(rat_parse("1/100"));
  Instance reparsed = parse_instance_text(serialize_instance(wheel));
  CHECK(reparsed.vertex_count == wheel.vertex_count);
  CHECK(reparsed.pair == wheel.pair);
  REQUIRE(reparsed.edges.size() == wheel.edges.size());
  for (std::size_t i = 0; i < wheel.edges.size(); ++i) {
    CHECK(reparsed.edges[i].u == wheel.edges[i].u);
    CHECK(reparsed.edges[i].v == wheel.edges[i].v);
    CHECK(reparsed.edges[i].cost == wheel.edges[i].cost);
  }
  for (unsigned long long seed = 1; seed <= 10; ++seed) {
    Instance g = gen_random(6, rat_parse("1/2"), seed);
    Instance back = parse_instance_text(serialize_instance(g));
    CHECK(back.pair == g.pair);
    CHECK(back.edges.size() == g.edges.size());
    CHECK(serialize_instance(back) == serialize_instance(g));
  }
}

TEST_CASE("validate_instance rejects broken structures") {
  Instance ok = gen_wheel(rat_parse("1/100"));
  CHECK_NOTHROW(validate_instance(ok));

  Instance bad_pair = ok;
  bad_pair.pair[3] = 4;  // 4 still maps to itself
  CHECK_THROWS_WITH_AS(validate_instance(bad_pair), doctest::Contains("involution"), Error);

  Instance self_loop = ok;
  self_loop.edges.push_back({static_cast<EdgeId>(ok.edges.size()), 2, 2, rat(1)});
  CHECK_THROWS_WITH_AS(validate_instance(self_loop), doctest::Contains("self-loop"), Error);

  Instance negative = ok;
  negative.edges[0].cost = rat(-1);
  CHECK_THROWS_WITH_AS(validate_instance(negative), doctest::Contains("negative"), Error);
}

TEST_CASE("embedding terminals duplicates the root") {
  Instance g;
  g.vertex_count = 3;
  g.pair = {0, 1, 2};
  g.edges = {{0, 0, 1, rat(1)}, {1, 1, 2, rat(1)}};

  Instance two = steiner_tree_embed(g, {0, 2}, 0);
  CHECK(two.vertex_count == 4);
  CHECK(two.pair[3] == 2);
  CHECK(two.edges.back().cost == rat(0));

  Instance three = steiner_tree_embed(g, {0, 1, 2}, 0);
  CHECK(three.vertex_count == 5);
  CHECK(three.pair[3] == 1);
  CHECK(three.pair[4] == 2);
  CHECK_NOTHROW(validate_instance(three));

  CHECK_THROWS_AS(steiner_tree_embed(g, {1, 2}, 0), Error);
}

TEST_CASE("embedded feasibility matches terminal connectivity") {
  // brute force: a forest is feasible for the embedded instance iff it
  // connects all original terminals
  Instance g;
  g.vertex_count = 4;
  g.pair = {0, 1, 2, 3};
  g.edges = {{0, 0, 1, rat(1)}, {1, 1, 2, rat(1)}, {2, 2, 3, rat(1)}, {3, 0, 3, rat(1)}};
  std::vector<VertexId> terminals{0, 2, 3};
  Instance embedded = steiner_tree_embed(g, terminals, 0);
  int real_edges = static_cast<int>(g.edges.size());
  int dup_edges = static_cast<int>(embedded.edges.size()) - real_edges;
  for (int mask = 0; mask < (1 << real_edges); ++mask) {
    Forest forest;
    for (int e = 0; e < real_edges; ++e)
      if (mask & (1 << e)) forest.edge_ids.insert(e);
    for (int e = 0; e < dup_edges; ++e) forest.edge_ids.insert(real_edges + e);

    // terminal connectivity in the original graph under this edge subset
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count));
    for (int v = 0; v < g.vertex_count; ++v) label[v] = v;
    for (bool changed = true; changed;) {
      changed = false;
      for (int e = 0; e < real_edges; ++e) {
        if (!(mask & (1 << e))) continue;
        int a = label[g.edges[e].u], b = label[g.edges[e].v];
        if (a != b) {
          for (int v = 0; v < g.vertex_count; ++v)
            if (label[v] == b) label[v] = a;
          changed = true;
        }
      }
    }
    bool connected = true;
    for (VertexId t : terminals) connected = connected && label[t] == label[terminals[0]];
    CHECK(check_feasible(embedded, forest) == connected);
  }
}

TEST_CASE("check_feasible basics") {
  Instance all_self;
  all_self.vertex_count = 3;
  all_self.pair = {0, 1, 2};
  CHECK(check_feasible(all_self, Forest{}));

  Instance one_pair = all_self;
  one_pair.pair = {1, 0, 2};
  one_pair.edges = {{0, 0, 1, rat(2)}};
  CHECK(!check_feasible(one_pair, Forest{}));
  Forest with_edge;
  with_edge.edge_ids.insert(0);
  CHECK(check_feasible(one_pair, with_edge));
  Forest bogus;
  bogus.edge_ids.insert(7);
  CHECK_THROWS_AS(check_feasible(one_pair, bogus), Error);
}
