#include "solvers.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace sf {

MainParameters MainParameters::defaults() {
  MainParameters p;
  p.beta = rat_parse("1/10");
  p.epsilon = rat_parse("6495602330607721/18889465931478580854784");
  p.eta = rat_parse("1/2");
  return p;
}

const char* solution_kind_name(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::LS: return "LS";
    case SolutionKind::XT: return "XT";
    case SolutionKind::AP: return "AP";
  }
  return "?";
}

std::pair<Forest, SolveReport> solve_main(const Instance& instance,
                                          const MainParameters& params) {
  if (!(params.beta > 0 && params.beta < 1) || !(params.epsilon > 0 && params.epsilon < 1) ||
      !(params.eta > 0 && params.eta < 1))
    throw Error(ErrorCode::invalid_argument, "solve_main: parameters must lie in (0,1)");

  SolveReport report;

  LegacyResult legacy = run_legacy(instance);
  report.t_plus = legacy.fingerprint;

  report.ls = local_search(instance, legacy.fingerprint, params.beta);
  report.forest_ls = report.ls.forest;
  report.cost_ls = forest_cost(instance, report.forest_ls);

  report.t_ext = extend(instance, legacy.fingerprint, report.ls.t_star, report.ls.y_b,
                        params.epsilon);
  report.ls_ext = local_search(instance, report.t_ext, params.beta);
  report.forest_xt = report.ls_ext.forest;
  report.cost_xt = forest_cost(instance, report.forest_xt);

  report.autarkic = autarkic_solve(instance, report.ls.outcome.trace.ledger.y, params.eta);
  report.forest_ap = report.autarkic.forest;
  report.cost_ap = forest_cost(instance, report.forest_ap);

  report.chosen = SolutionKind::LS;
  Rational best = report.cost_ls;
  if (report.cost_ap < best) {
    best = report.cost_ap;
    report.chosen = SolutionKind::AP;
  }
  if (report.cost_xt < best) {
    best = report.cost_xt;
    report.chosen = SolutionKind::XT;
  }

  Forest chosen = report.chosen == SolutionKind::LS   ? report.forest_ls
                  : report.chosen == SolutionKind::AP ? report.forest_ap
                                                      : report.forest_xt;
  return {std::move(chosen), std::move(report)};
}

Forest solve_steiner_tree(const Instance& graph, const std::vector<VertexId>& terminals,
                          const Rational& beta) {
  if (terminals.size() < 2)
    throw Error(ErrorCode::invalid_argument, "solve_steiner_tree: need at least 2 terminals");
  if (!(beta > 0 && beta < 1))
    throw Error(ErrorCode::invalid_argument, "solve_steiner_tree: beta must lie in (0,1)");
  VertexId root = *std::min_element(terminals.begin(), terminals.end());
  Instance embedded = steiner_tree_embed(graph, terminals, root);
  LegacyResult legacy = run_legacy(embedded);
  LocalSearchResult ls = local_search(embedded, legacy.fingerprint, beta);
  Forest out;
  for (EdgeId e : ls.forest.edge_ids)
    if (e < static_cast<EdgeId>(graph.edges.size())) out.edge_ids.insert(e);
  return out;
}

Forest gluttonous(const Instance& instance) {
  validate_instance(instance);

  Instance work = instance;  // original edges plus zero-cost context links
  std::vector<int> parent(static_cast<std::size_t>(instance.vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&parent, &find](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  Forest forest;
  for (;;) {
    std::vector<VertexId> unsat;
    for (VertexId v = 0; v < instance.vertex_count; ++v)
      if (instance.pair[v] != v && find(v) != find(instance.pair[v])) unsat.push_back(v);
    if (unsat.empty()) break;

    std::optional<Rational> best;
    VertexId bu = -1, bv = -1;
    for (VertexId u : unsat) {
      auto dist = shortest_distances(work, u);
      for (VertexId v : unsat) {
        if (v <= u || find(u) == find(v)) continue;
        if (!dist[v]) continue;
        if (!best || *dist[v] < *best ||
            (*dist[v] == *best && std::make_pair(u, v) < std::make_pair(bu, bv))) {
          best = *dist[v];
          bu = u;
          bv = v;
        }
      }
    }
    if (!best)
      throw Error(ErrorCode::infeasible, "gluttonous: unsatisfied demand is unreachable");

    PathResult path = shortest_path(work, bu, bv);
    for (EdgeId e : path.path) {
      if (e < static_cast<EdgeId>(instance.edges.size())) forest.edge_ids.insert(e);
      unite(work.edges[e].u, work.edges[e].v);
    }
    unite(bu, bv);

    Edge context;
    context.id = static_cast<EdgeId>(work.edges.size());
    context.u = bu;
    context.v = bv;
    context.cost = 0;
    work.edges.push_back(std::move(context));
  }
  return forest;
}

namespace {

// branch-and-bound over forests: a minimum solution is always a forest,
// so cycle-closing edges are never branched on
struct ExactSearch {
  const Instance& instance;
  std::vector<int> parent;
  std::vector<EdgeId> chosen;
  Rational cost = 0;
  std::optional<Rational> best_cost;
  std::vector<EdgeId> best_edges;

  explicit ExactSearch(const Instance& inst)
      : instance(inst), parent(static_cast<std::size_t>(inst.vertex_count)) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  bool feasible() {
    for (VertexId v = 0; v < instance.vertex_count; ++v)
      if (find(v) != find(instance.pair[v])) return false;
    return true;
  }

  void offer() {
    if (!feasible()) return;
    if (!best_cost || cost < *best_cost ||
        (cost == *best_cost && chosen < best_edges)) {
      best_cost = cost;
      best_edges = chosen;
    }
  }

  void search(std::size_t index) {
    if (best_cost && cost > *best_cost) return;
    if (index == instance.edges.size()) {
      offer();
      return;
    }
    const Edge& e = instance.edges[index];
    std::vector<int> saved = parent;
    if (find(e.u) != find(e.v)) {
      parent[std::max(find(e.u), find(e.v))] = std::min(find(e.u), find(e.v));
      chosen.push_back(e.id);
      cost += e.cost;
      search(index + 1);
      cost -= e.cost;
      chosen.pop_back();
      parent = saved;
    }
    search(index + 1);
  }
};

struct EmbeddedShape {
  Instance graph;                 // original graph without the duplicates
  std::vector<VertexId> terminals;
  std::vector<EdgeId> zero_edges;  // duplicate links, part of any solution
};

// Recognizes the root-duplicate embedding: every demand pair touches a
// degree-1 vertex hanging off a common root by a zero-cost edge.
std::optional<EmbeddedShape> detect_embedded(const Instance& instance) {
  std::vector<int> degree(static_cast<std::size_t>(instance.vertex_count), 0);
  std::vector<EdgeId> only_edge(static_cast<std::size_t>(instance.vertex_count), -1);
  for (const Edge& e : instance.edges) {
    ++degree[e.u];
    ++degree[e.v];
    only_edge[e.u] = e.id;
    only_edge[e.v] = e.id;
  }
  std::vector<VertexId> dups;
  VertexId root = -1;
  for (VertexId v = 0; v < instance.vertex_count; ++v) {
    if (instance.pair[v] == v) continue;
    if (degree[v] != 1) continue;
    const Edge& e = instance.edges[only_edge[v]];
    if (e.cost != 0) continue;
    VertexId anchor = e.u == v ? e.v : e.u;
    if (root == -1) root = anchor;
    if (anchor != root) return std::nullopt;
    dups.push_back(v);
  }
  if (root == -1) return std::nullopt;
  std::set<VertexId> dup_set(dups.begin(), dups.end());
  std::set<VertexId> terminal_set{root};
  for (VertexId v = 0; v < instance.vertex_count; ++v) {
    if (instance.pair[v] == v) continue;
    bool v_dup = dup_set.count(v) != 0;
    bool p_dup = dup_set.count(instance.pair[v]) != 0;
    if (v_dup == p_dup) return std::nullopt;  // every pair must touch one duplicate
    if (!v_dup) terminal_set.insert(v);
  }
  // duplicates must be the trailing vertices so the graph keeps dense ids
  for (std::size_t i = 0; i < dups.size(); ++i)
    if (dups[i] != instance.vertex_count - static_cast<int>(dups.size()) + static_cast<int>(i))
      return std::nullopt;

  EmbeddedShape shape;
  shape.graph.vertex_count = instance.vertex_count - static_cast<int>(dups.size());
  for (const Edge& e : instance.edges) {
    if (dup_set.count(e.u) || dup_set.count(e.v)) {
      shape.zero_edges.push_back(e.id);
      continue;
    }
    if (e.id != static_cast<EdgeId>(shape.graph.edges.size())) return std::nullopt;
    shape.graph.edges.push_back(e);
  }
  shape.graph.pair.assign(static_cast<std::size_t>(shape.graph.vertex_count), 0);
  for (VertexId v = 0; v < shape.graph.vertex_count; ++v) shape.graph.pair[v] = v;
  shape.terminals.assign(terminal_set.begin(), terminal_set.end());
  return shape;
}

}  // namespace

std::pair<Rational, Forest> exact_opt(const Instance& instance) {
  validate_instance(instance);
  if (instance.edges.size() <= 20) {
    ExactSearch search(instance);
    search.search(0);
    if (!search.best_cost)
      throw Error(ErrorCode::infeasible, "exact_opt: no feasible edge subset");
    Forest forest;
    forest.edge_ids.insert(search.best_edges.begin(), search.best_edges.end());
    return {*search.best_cost, std::move(forest)};
  }
  if (auto shape = detect_embedded(instance)) {
    auto [cost, forest] = exact_steiner_tree(shape->graph, shape->terminals);
    forest.edge_ids.insert(shape->zero_edges.begin(), shape->zero_edges.end());
    return {cost, std::move(forest)};
  }
  throw Error(ErrorCode::capacity,
              "exact_opt: instance too large (need |E| <= 20 or an embedded Steiner tree)");
}

std::pair<Rational, Forest> exact_steiner_tree(const Instance& graph,
                                               const std::vector<VertexId>& terminals) {
  if (terminals.empty())
    throw Error(ErrorCode::invalid_argument, "exact_steiner_tree: no terminals");
  if (terminals.size() > 12)
    throw Error(ErrorCode::capacity, "exact_steiner_tree: more than 12 terminals");
  for (VertexId t : terminals)
    if (t < 0 || t >= graph.vertex_count)
      throw Error(ErrorCode::invalid_argument, "exact_steiner_tree: terminal out of range");
  if (terminals.size() == 1) return {Rational(0), Forest{}};

  const int n = graph.vertex_count;
  std::vector<std::vector<std::optional<Rational>>> dist(static_cast<std::size_t>(n));
  for (VertexId v = 0; v < n; ++v) dist[v] = shortest_distances(graph, v);
  for (VertexId t : terminals)
    for (VertexId t2 : terminals)
      if (!dist[t][t2])
        throw Error(ErrorCode::infeasible, "exact_steiner_tree: terminals are disconnected");

  // dp[mask][v]: cheapest tree spanning {terminals in mask} + v.
  // choice: -1 none; >= 0 via-vertex; < -1 split into (-choice - 2)
  const int k = static_cast<int>(terminals.size());
  const int full = (1 << (k - 1)) - 1;  // masks over terminals[1..]
  auto term = [&](int i) { return terminals[static_cast<std::size_t>(i + 1)]; };
  std::vector<std::vector<std::optional<Rational>>> dp(
      static_cast<std::size_t>(full + 1),
      std::vector<std::optional<Rational>>(static_cast<std::size_t>(n)));
  std::vector<std::vector<long>> choice(static_cast<std::size_t>(full + 1),
                                        std::vector<long>(static_cast<std::size_t>(n), -1));

  for (int i = 0; i + 1 < k; ++i)
    for (VertexId v = 0; v < n; ++v)
      if (dist[term(i)][v]) dp[1 << i][v] = *dist[term(i)][v];

  for (int mask = 1; mask <= full; ++mask) {
    if ((mask & (mask - 1)) != 0) {  // non-singleton: try splits
      for (VertexId v = 0; v < n; ++v) {
        for (int sub = (mask - 1) & mask; sub > mask - sub; sub = (sub - 1) & mask) {
          int rest = mask ^ sub;
          if (!dp[sub][v] || !dp[rest][v]) continue;
          Rational cand = *dp[sub][v] + *dp[rest][v];
          if (!dp[mask][v] || cand < *dp[mask][v]) {
            dp[mask][v] = cand;
            choice[mask][v] = -static_cast<long>(sub) - 2;
          }
        }
      }
    }
    // metric relaxation over v (Dijkstra-style, n small so quadratic scan)
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    for (;;) {
      int bestv = -1;
      for (int v = 0; v < n; ++v) {
        if (done[v] || !dp[mask][v]) continue;
        if (bestv == -1 || *dp[mask][v] < *dp[mask][bestv]) bestv = v;
      }
      if (bestv == -1) break;
      done[bestv] = 1;
      for (int v = 0; v < n; ++v) {
        if (done[v] || !dist[bestv][v]) continue;
        Rational cand = *dp[mask][bestv] + *dist[bestv][v];
        if (!dp[mask][v] || cand < *dp[mask][v]) {
          dp[mask][v] = cand;
          choice[mask][v] = bestv;
        }
      }
    }
  }

  VertexId anchor = terminals[0];
  if (!dp[full][anchor])
    throw Error(ErrorCode::infeasible, "exact_steiner_tree: no spanning tree");

  Forest forest;
  auto add_path = [&](VertexId a, VertexId b) {
    PathResult p = shortest_path(graph, a, b);
    forest.edge_ids.insert(p.path.begin(), p.path.end());
  };
  // unwind the dp choices
  std::vector<std::pair<int, VertexId>> stack{{full, anchor}};
  while (!stack.empty()) {
    auto [mask, v] = stack.back();
    stack.pop_back();
    if ((mask & (mask - 1)) == 0) {
      int i = 0;
      while (!(mask & (1 << i))) ++i;
      add_path(term(i), v);
      continue;
    }
    long c = choice[mask][v];
    if (c >= 0) {
      add_path(static_cast<VertexId>(c), v);
      stack.emplace_back(mask, static_cast<VertexId>(c));
    } else {
      int sub = static_cast<int>(-c - 2);
      stack.emplace_back(sub, v);
      stack.emplace_back(mask ^ sub, v);
    }
  }
  return {*dp[full][anchor], std::move(forest)};
}

CertificateTable CertificateTable::table2() {
  CertificateTable t;
  t.alpha = rat_parse("1/200000000000");
  t.beta = rat_parse("1/10");
  t.lambda = rat_parse("3575638326237933/302231454903657293676544");
  t.epsilon = rat_parse("6495602330607721/18889465931478580854784");
  t.w = rat_parse("1/100");
  t.w_prime = rat_parse("32112103126037549486258500/32112125009721801303670549");
  t.eta = rat_parse("1/2");
  t.kappa = rat_parse("13110673862872421/226673591177742970257408");
  t.gamma = rat_parse("91774717040106947/302231454903657293676544");
  t.omega_1 = rat_parse("125/252");
  t.omega_2 = rat_parse("1/126");
  t.omega_3 = rat_parse("125/252");
  return t;
}

ParameterVerdict verify_parameters(const CertificateTable& t) {
  ParameterVerdict verdict;
  auto check = [&verdict](bool ok, const char* name) {
    if (!ok) verdict.violated.emplace_back(name);
  };

  check(t.beta > 0 && t.beta < 1, "0 < beta < 1");
  check(t.epsilon > 0 && t.epsilon < 1, "0 < epsilon < 1");
  check(t.eta > 0 && t.eta < 1, "0 < eta < 1");
  check(t.alpha > 0, "alpha > 0");
  check(t.lambda > 0, "lambda > 0");
  check(t.w > 0 && t.w <= rat(1, 2), "0 < w <= 1/2");

  bool beta_sane = t.beta > 0 && t.beta < 1;
  if (beta_sane) {
    Rational ratio = (1 - t.beta) / (5 + t.beta);
    check(t.w_prime >= 1 / (1 + ratio * t.w), "w' lower bound");
    check(t.w_prime <= (1 + t.epsilon) / (1 + 3 * t.epsilon - t.epsilon * t.w * (9 + 3 * t.beta) / (5 + t.beta)),
          "w' upper bound");
    check(t.kappa == 4 * t.lambda * (1 + t.beta) / (1 - t.beta), "kappa = 4*lambda*(1+beta)/(1-beta)");
    if (t.eta > 0)
      check(t.gamma == t.lambda / t.eta * (4 + 3 * t.eta + 4 * (1 + t.eta) * (1 + t.beta) / (1 - t.beta)),
            "gamma definition");
  }
  check(t.omega_1 >= 0 && t.omega_2 >= 0 && t.omega_3 >= 0, "omega_i >= 0");
  check(t.omega_1 + t.omega_2 + t.omega_3 == 1, "sum omega_i = 1");

  if (beta_sane && t.gamma > 0) {
    Rational limit = 2 - 2 * t.alpha;
    Rational shrink = 1 - t.w_prime * (1 + t.beta) * (1 - t.w);
    Rational max_term = t.alpha / t.beta;
    max_term = std::max(max_term, Rational(shrink * (t.alpha + t.epsilon) / t.beta));
    max_term = std::max(
        max_term,
        Rational((t.alpha + (1 - t.alpha - t.alpha / t.beta) * shrink * t.epsilon) / t.beta));
    Rational tail = 2 * t.omega_2 * max_term +
                    t.omega_3 * (2 + t.alpha + 2 * t.alpha / t.beta);
    Rational row = (1 - t.beta) / (5 + t.beta);

    Rational bound_a = 2 * t.omega_1 * ((1 - t.lambda) + t.alpha / t.beta) +
                       2 * t.omega_2 * (1 + t.epsilon) * (1 - t.lambda) + tail;
    check(bound_a <= limit, "weighted kappa bound for A");

    Rational b_core = 1 + t.epsilon - t.epsilon * t.w_prime * (1 + (1 - 2 * t.w) * (1 - t.lambda));
    Rational bound_b1 = 2 * t.omega_1 * (1 + t.alpha / t.beta) +
                        2 * t.omega_2 * (b_core + t.gamma * t.w_prime * (1 + t.w * row)) + tail;
    check(bound_b1 <= limit, "weighted kappa bound for B1");

    Rational bound_b2 = 2 * t.omega_1 * (1 + t.alpha / t.beta) + 2 * t.omega_2 * b_core + tail;
    check(bound_b2 <= limit, "weighted kappa bound for B2");

    Rational bound_r = 2 * t.omega_2 * t.w_prime * (1 + t.w * row) -
                       t.omega_3 * (1 - t.eta) * (1 - (3 * t.lambda + t.kappa) / t.gamma);
    check(bound_r <= 0, "weighted kappa bound for r_max");
  }

  verdict.ok = verdict.violated.empty();
  return verdict;
}

}  // namespace sf
