#include <doctest.h>

#include "generators.hpp"

using namespace sf;

namespace {

Rational xi() { return rat_parse("1/100"); }

}  // namespace

TEST_CASE("wheel shape") {
  Instance g = gen_wheel(xi());
  CHECK(g.vertex_count == 5);
  REQUIRE(g.edges.size() == 8);
  for (int i = 0; i < 4; ++i) CHECK(g.edges[i].cost == rat(2));
  for (int i = 4; i < 8; ++i) CHECK(g.edges[i].cost == 1 + xi());
  CHECK(g.pair[0] == 2);
  CHECK(g.pair[1] == 3);
  CHECK(g.pair[4] == 4);
  CHECK_NOTHROW(validate_instance(g));
}

TEST_CASE("grid shape and counts") {
  int n = 4, m = 4;
  Instance g = gen_grid(n, m, xi());
  // n*m grid vertices plus (m-1)(n-1) duplicates
  CHECK(g.vertex_count == n * m + (m - 1) * (n - 1));
  int vertical = m * (n - 1), horizontal = n * (m - 1), duplicates = (m - 1) * (n - 1);
  CHECK(g.edges.size() == static_cast<std::size_t>(vertical + horizontal + duplicates));
  CHECK_NOTHROW(validate_instance(g));
  CHECK_THROWS_AS(gen_grid(1, 4, xi()), Error);
}

TEST_CASE("binary tree weights halve upward") {
  BinaryTreeInstance bin = gen_binary(3, xi());
  CHECK(bin.graph.vertex_count == 15);
  CHECK(bin.terminals.size() == 8);
  // root edges weigh 2^(1-h), leaf edges weigh 1, leaf links 2 - xi
  CHECK(bin.graph.edges[0].cost == rat(1, 4));
  Rational leaf_edge = bin.graph.edges[12].cost;  // a bottom tree edge
  CHECK(leaf_edge == rat(1));
  CHECK(bin.graph.edges.back().cost == 2 - xi());
  CHECK_NOTHROW(validate_instance(bin.graph));
}

TEST_CASE("horseshoe shape") {
  int n = 3, petals = 3;
  Instance g = gen_horseshoe(n, petals, xi());
  CHECK(g.vertex_count == (n + 2) + n * (1 + 2 * petals));
  CHECK(g.pair[0] == n + 1);
  // spine n+1 edges + direct + n cross + 2*petals*n petal edges
  CHECK(g.edges.size() == static_cast<std::size_t>((n + 1) + 1 + n + 2 * petals * n));
  CHECK_NOTHROW(validate_instance(g));
}

TEST_CASE("gluttonous instance is a metric closure with chained groups") {
  int n = 3, k = 2;
  GluttonousInstance gen = gen_gluttonous(n, k);
  const Instance& g = gen.instance;
  int tree_vertices = n * (2 * (k + 1)) + 1;  // n copies of 2(k+1) vertices plus root
  int duplicates = (k + 1) * (n - 1);
  CHECK(g.vertex_count == tree_vertices + duplicates);
  CHECK(g.edges.size() ==
        static_cast<std::size_t>(tree_vertices * (tree_vertices - 1) / 2 + duplicates));
  CHECK_NOTHROW(validate_instance(g));
  // closure distances: group members across copies sit at 2^(i+2);
  // group i occupies the block starting at i*(2n-1)
  int block = 2 * n - 1;
  auto dist_between = [&g](VertexId a, VertexId b) {
    for (const Edge& e : g.edges)
      if ((e.u == a && e.v == b) || (e.u == b && e.v == a)) return e.cost;
    return rat(-1);
  };
  CHECK(dist_between(0, 1) == rat(4));                      // group 0
  CHECK(dist_between(block, block + 1) == rat(8));          // group 1
  CHECK(dist_between(2 * block, 2 * block + 1) == rat(16)); // group 2
}

TEST_CASE("random generator is deterministic and honors density") {
  Instance a = gen_random(7, rat_parse("1/2"), 99);
  Instance b = gen_random(7, rat_parse("1/2"), 99);
  CHECK(serialize_instance(a) == serialize_instance(b));
  Instance full = gen_random(6, rat(1), 3);
  CHECK(full.edges.size() == 15);
  for (unsigned long long seed = 1; seed <= 50; ++seed)
    CHECK_NOTHROW(validate_instance(gen_random(6, rat_parse("1/3"), seed)));
}
