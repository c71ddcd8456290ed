#pragma once

#include "graph.hpp"

namespace sf {

// Wheel: four terminals on a rim of cost-2 edges, a self-paired center joined
// by spokes of cost 1+xi, demands between opposite terminals.
Instance gen_wheel(const Rational& xi);

// Grid: m columns of n vertices; vertical star edges of cost 2 inside each
// column, horizontal star edges of cost 1+xi from the rightmost column across
// each row. Every column but the rightmost is a terminal group, encoded by
// chained pairs over zero-cost duplicates.
Instance gen_grid(int n, int m, const Rational& xi);

struct BinaryTreeInstance {
  Instance graph;                  // all vertices self-paired
  std::vector<VertexId> terminals;  // the leaves
};

// Complete binary tree of height h with edge weights halving upward from 1 at
// the bottom layer, plus cost (2-xi) links between consecutive leaves.
BinaryTreeInstance gen_binary(int h, const Rational& xi);

// Horseshoe: a vertical unit path of n+1 edges between the demand pair (v,u),
// a direct cost-2 edge as the alternative, and per row a unit-distance cross
// vertex carrying `petals` demand pairs attached by xi-cost edges.
Instance gen_horseshoe(int n, int petals, const Rational& xi);

struct GluttonousInstance {
  Instance instance;
  std::vector<EdgeId> tree_solution;  // the underlying tree, as closure edges
  Rational tree_solution_cost;        // n * (3 * 2^k - 1)
  Rational gluttonous_cost;           // (n-1) * (2^(k+3) - 4)
};

// Metric closure of n copies of the doubling-weight tree, with k+1 terminal
// groups across the copies encoded by chained pairs over zero-cost
// duplicates.
GluttonousInstance gen_gluttonous(int n, int k);

// Seeded connected random graph with rational costs in [1,10] and a random
// partial pairing. Deterministic for a fixed (n, density, seed).
Instance gen_random(int n, const Rational& density, unsigned long long seed);

}  // namespace sf
