#include "generators.hpp"

#include <algorithm>
#include <numeric>

namespace sf {

namespace {

void check_xi(const Rational& xi) {
  if (!(xi > 0 && xi < 1))
    throw Error(ErrorCode::invalid_argument, "xi must lie in (0,1)");
}

Edge make_edge(Instance& g, VertexId u, VertexId v, Rational cost) {
  Edge e;
  e.id = static_cast<EdgeId>(g.edges.size());
  e.u = u;
  e.v = v;
  e.cost = std::move(cost);
  g.edges.push_back(e);
  return g.edges.back();
}

VertexId add_vertex(Instance& g) {
  g.pair.push_back(g.vertex_count);
  return g.vertex_count++;
}

void set_pair(Instance& g, VertexId a, VertexId b) {
  g.pair[a] = b;
  g.pair[b] = a;
}

// Terminal groups live in the pair model via duplicates: member j gets a
// zero-cost duplicate paired with member j+1.
void add_group(Instance& g, const std::vector<VertexId>& members) {
  for (std::size_t j = 0; j + 1 < members.size(); ++j) {
    VertexId dup = add_vertex(g);
    make_edge(g, members[j], dup, Rational(0));
    set_pair(g, dup, members[j + 1]);
  }
}

struct splitmix64 {
  unsigned long long state;
  explicit splitmix64(unsigned long long seed) : state(seed) {}
  unsigned long long next() {
    unsigned long long z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int below(int bound) { return static_cast<int>(next() % static_cast<unsigned long long>(bound)); }
};

}  // namespace

Instance gen_wheel(const Rational& xi) {
  check_xi(xi);
  Instance g;
  g.vertex_count = 5;
  g.pair = {2, 3, 0, 1, 4};  // opposite terminals, self-paired center
  for (int i = 0; i < 4; ++i) make_edge(g, i, (i + 1) % 4, Rational(2));
  for (int i = 0; i < 4; ++i) make_edge(g, i, 4, 1 + xi);
  validate_instance(g);
  return g;
}

Instance gen_grid(int n, int m, const Rational& xi) {
  check_xi(xi);
  if (n < 2 || m < 2)
    throw Error(ErrorCode::invalid_argument, "gen_grid: need n >= 2 and m >= 2");
  Instance g;
  g.vertex_count = n * m;
  g.pair.resize(static_cast<std::size_t>(n * m));
  std::iota(g.pair.begin(), g.pair.end(), 0);
  auto at = [n](int column, int row) { return column * n + row; };

  for (int c = 0; c < m; ++c)
    for (int r = 1; r < n; ++r) make_edge(g, at(c, 0), at(c, r), Rational(2));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c + 1 < m; ++c) make_edge(g, at(m - 1, r), at(c, r), 1 + xi);

  for (int c = 0; c + 1 < m; ++c) {
    std::vector<VertexId> members;
    for (int r = 0; r < n; ++r) members.push_back(at(c, r));
    add_group(g, members);
  }
  validate_instance(g);
  return g;
}

BinaryTreeInstance gen_binary(int h, const Rational& xi) {
  check_xi(xi);
  if (h < 1) throw Error(ErrorCode::invalid_argument, "gen_binary: need h >= 1");
  BinaryTreeInstance out;
  Instance& g = out.graph;
  int total = (1 << (h + 1)) - 1;
  g.vertex_count = total;
  g.pair.resize(static_cast<std::size_t>(total));
  std::iota(g.pair.begin(), g.pair.end(), 0);

  // level-order ids: children of i are 2i+1 and 2i+2; an edge into depth d
  // weighs 2^(d-h), so the bottom layer weighs 1
  for (int node = 1; node < total; ++node) {
    int depth = 0;
    for (int x = node; x > 0; x = (x - 1) / 2) ++depth;
    Rational weight = Rational(1) / (1 << (h - depth));  // 2^(d-h)
    make_edge(g, (node - 1) / 2, node, weight);
  }
  int first_leaf = (1 << h) - 1;
  for (int leaf = first_leaf; leaf < total; ++leaf) out.terminals.push_back(leaf);
  for (int leaf = first_leaf; leaf + 1 < total; ++leaf)
    make_edge(g, leaf, leaf + 1, 2 - xi);
  validate_instance(g);
  return out;
}

Instance gen_horseshoe(int n, int petals, const Rational& xi) {
  check_xi(xi);
  if (n < 1 || petals < 1)
    throw Error(ErrorCode::invalid_argument, "gen_horseshoe: need n >= 1 and petals >= 1");
  Instance g;
  // spine 0..n+1: 0 is u (bottom), n+1 is v (top)
  g.vertex_count = n + 2;
  g.pair.resize(static_cast<std::size_t>(n + 2));
  std::iota(g.pair.begin(), g.pair.end(), 0);
  set_pair(g, 0, n + 1);
  for (int i = 0; i <= n; ++i) make_edge(g, i, i + 1, Rational(1));
  make_edge(g, 0, n + 1, Rational(2));

  for (int row = 1; row <= n; ++row) {
    VertexId cross = add_vertex(g);
    make_edge(g, row, cross, Rational(1));
    for (int p = 0; p < petals; ++p) {
      VertexId left = add_vertex(g);
      VertexId right = add_vertex(g);
      make_edge(g, cross, left, xi);
      make_edge(g, row, right, xi);
      set_pair(g, left, right);
    }
  }
  validate_instance(g);
  return g;
}

GluttonousInstance gen_gluttonous(int n, int k) {
  if (n < 2 || k < 1)
    throw Error(ErrorCode::invalid_argument, "gen_gluttonous: need n >= 2 and k >= 1");
  GluttonousInstance out;
  Instance& g = out.instance;

  // ids: one block per terminal group, each holding the group's members
  // u[i][j] followed by its chaining duplicates, then the path skeleton
  // v[i][j], then the shared root. Blockwise group numbering keeps the
  // greedy's smallest-id tie-break inside a group: equal-distance merges
  // always prefer the lowest unfinished group.
  int block = 2 * n - 1;
  auto u_id = [n, block](int i, int j) { return i * block + j; };
  auto dup_id = [n, block](int i, int j) { return i * block + n + j; };
  int skeleton_base = (k + 1) * block;
  auto v_id = [n, skeleton_base](int i, int j) { return skeleton_base + i * n + j; };
  VertexId root = skeleton_base + (k + 1) * n;
  g.vertex_count = root + 1;
  g.pair.resize(static_cast<std::size_t>(g.vertex_count));
  std::iota(g.pair.begin(), g.pair.end(), 0);

  // tree distances over the real tree vertices, then their metric closure
  int tn = g.vertex_count;
  std::vector<char> is_tree(static_cast<std::size_t>(tn), 0);
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j < n; ++j) {
      is_tree[u_id(i, j)] = 1;
      is_tree[v_id(i, j)] = 1;
    }
  is_tree[root] = 1;

  std::vector<std::vector<Rational>> dist(static_cast<std::size_t>(tn),
                                          std::vector<Rational>(static_cast<std::size_t>(tn)));
  auto pow2 = [](int e) { return rat(1L << e); };
  std::vector<std::tuple<VertexId, VertexId, Rational>> tree_edges;
  for (int j = 0; j < n; ++j) {
    tree_edges.emplace_back(root, v_id(0, j), Rational(1));
    for (int i = 0; i + 1 <= k; ++i)
      tree_edges.emplace_back(v_id(i, j), v_id(i + 1, j), pow2(i));
    for (int i = 0; i <= k; ++i) tree_edges.emplace_back(v_id(i, j), u_id(i, j), pow2(i));
  }
  {
    std::vector<std::vector<std::pair<int, Rational>>> adj(static_cast<std::size_t>(tn));
    for (auto& [a, b, w] : tree_edges) {
      adj[a].emplace_back(b, w);
      adj[b].emplace_back(a, w);
    }
    // BFS over the tree from every tree vertex
    for (int s = 0; s < tn; ++s) {
      if (!is_tree[s]) continue;
      std::vector<char> seen(static_cast<std::size_t>(tn), 0);
      std::vector<int> queue{s};
      seen[s] = 1;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        int x = queue[head];
        for (auto& [y, w] : adj[x]) {
          if (seen[y]) continue;
          seen[y] = 1;
          dist[s][y] = dist[s][x] + w;
          queue.push_back(y);
        }
      }
    }
  }
  std::map<std::pair<VertexId, VertexId>, EdgeId> closure_edge;
  for (VertexId a = 0; a < tn; ++a) {
    if (!is_tree[a]) continue;
    for (VertexId b = a + 1; b < tn; ++b) {
      if (!is_tree[b]) continue;
      closure_edge[{a, b}] = make_edge(g, a, b, dist[a][b]).id;
    }
  }

  // chained duplicates at their reserved in-block ids
  for (int i = 0; i <= k; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      make_edge(g, u_id(i, j), dup_id(i, j), Rational(0));
      set_pair(g, dup_id(i, j), u_id(i, j + 1));
    }

  for (auto& [a, b, w] : tree_edges)
    out.tree_solution.push_back(closure_edge[{std::min(a, b), std::max(a, b)}]);
  // duplicates ride along for free
  for (const Edge& e : g.edges)
    if (e.cost == 0) out.tree_solution.push_back(e.id);

  out.tree_solution_cost = rat(n) * (3 * pow2(k) - 1);
  out.gluttonous_cost = rat(n - 1) * (pow2(k + 3) - 4);
  validate_instance(g);
  return out;
}

Instance gen_random(int n, const Rational& density, unsigned long long seed) {
  if (n < 2) throw Error(ErrorCode::invalid_argument, "gen_random: need n >= 2");
  if (density < 0 || density > 1)
    throw Error(ErrorCode::invalid_argument, "gen_random: density must lie in [0,1]");
  splitmix64 rng(seed);
  Instance g;
  g.vertex_count = n;
  g.pair.resize(static_cast<std::size_t>(n));
  std::iota(g.pair.begin(), g.pair.end(), 0);

  auto random_cost = [&rng]() { return rat(100 + rng.below(901), 100); };

  std::set<std::pair<VertexId, VertexId>> present;
  for (VertexId v = 1; v < n; ++v) {  // random attachment keeps it connected
    VertexId u = static_cast<VertexId>(rng.below(v));
    present.insert({u, v});
  }
  // density acts as an inclusion probability with 20-bit resolution
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) {
      if (present.count({u, v})) continue;
      Rational draw(rng.below(1 << 20), 1 << 20);
      if (draw < density) present.insert({u, v});
    }
  for (auto [u, v] : present) make_edge(g, u, v, random_cost());

  std::vector<VertexId> shuffled(static_cast<std::size_t>(n));
  std::iota(shuffled.begin(), shuffled.end(), 0);
  for (int i = n - 1; i > 0; --i) std::swap(shuffled[i], shuffled[rng.below(i + 1)]);
  int pairs = n >= 4 ? 1 + rng.below(n / 2) : 1;
  for (int i = 0; i < pairs; ++i) set_pair(g, shuffled[2 * i], shuffled[2 * i + 1]);

  validate_instance(g);
  return g;
}

}  // namespace sf
