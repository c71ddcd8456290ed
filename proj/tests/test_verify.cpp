#include <doctest.h>

#include "generators.hpp"
#include "solvers.hpp"
#include "verify.hpp"

#include <algorithm>

using namespace sf;

namespace {

Rational xi() { return rat_parse("1/100"); }

}  // namespace

TEST_CASE("priorities sort by fingerprint with the documented tie rule") {
  Instance g;
  g.vertex_count = 4;
  g.pair = {1, 0, 3, 2};
  Fingerprint fp(4);
  fp[0] = rat(3);
  fp[1] = rat(3);
  fp[2] = rat(1);
  fp[3] = rat(2);
  PriorityOrder order = compute_priorities(g, fp);
  // distinct values sort by value; the (0,1) tie resolves to the larger id
  CHECK(order.rank[2] == 0);
  CHECK(order.rank[3] == 1);
  CHECK(order.rank[0] == 2);
  CHECK(order.rank[1] == 3);
  CHECK(order.higher(1, 0));
}

TEST_CASE("horseshoe priorities are consistent with the fingerprint order") {
  // on this instance every demand connects at the same cascade moment, so
  // the ranking is decided entirely by the documented pair-id tie rule
  Instance g = gen_horseshoe(2, 3, xi());
  LegacyResult legacy = run_legacy(g);
  PriorityOrder order = compute_priorities(g, legacy.fingerprint);
  for (VertexId a = 0; a < g.vertex_count; ++a)
    for (VertexId b = 0; b < g.vertex_count; ++b) {
      if (legacy.fingerprint[a] > legacy.fingerprint[b]) CHECK(order.higher(a, b));
      if (order.higher(a, b)) CHECK(legacy.fingerprint[a] >= legacy.fingerprint[b]);
    }
  // (u, v) carries the smallest pair id, so it sits at the bottom of its
  // fingerprint tie class
  CHECK(order.rank[0] < order.rank[5]);
  CHECK(order.rank[3] < order.rank[5]);
  CHECK(legacy.fingerprint[0] == legacy.fingerprint[5]);
}

TEST_CASE("single pair prefix assignment gives one to each side") {
  Instance g;
  g.vertex_count = 2;
  g.pair = {1, 0};
  g.edges = {{0, 0, 1, rat(2)}};
  LegacyResult legacy = run_legacy(g);
  auto [opt_cost, opt] = exact_opt(g);
  PriorityOrder order = compute_priorities(g, legacy.fingerprint);
  Assignment prefix = compute_assignment(legacy.trace, g, opt, order, legacy.fingerprint,
                                         AssignmentMode::prefix_time);
  CHECK(prefix.r[0] == rat(1));
  CHECK(prefix.r[1] == rat(1));
}

TEST_CASE("assignment inequalities on random oracle-sized instances") {
  int done = 0;
  for (unsigned long long seed = 1; seed <= 60 && done < 50; ++seed) {
    Instance g = gen_random(6, rat_parse("2/5"), seed);
    if (g.edges.size() > 14) continue;
    LegacyResult legacy = run_legacy(g);
    auto [opt_cost, opt] = exact_opt(g);
    PriorityOrder order = compute_priorities(g, legacy.fingerprint);
    Assignment prefix = compute_assignment(legacy.trace, g, opt, order, legacy.fingerprint,
                                           AssignmentMode::prefix_time);
    // total growth is bounded by the prefix-time assignment
    Rational total_prefix = 0;
    for (const Rational& v : prefix.r) total_prefix += v;
    CHECK(legacy.trace.ledger.total() <= total_prefix);

    // per optimal component, assigned mass is at most the component's cost
    std::map<int, Rational> component_sum;
    std::map<int, Rational> component_cost;
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count));
    {
      std::vector<int> parent(label.size());
      for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
      auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (EdgeId e : opt.edge_ids) {
        int a = find(g.edges[e].u), b = find(g.edges[e].v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
      for (int v = 0; v < g.vertex_count; ++v) label[v] = find(v);
      for (EdgeId e : opt.edge_ids) component_cost[find(g.edges[e].u)] += g.edges[e].cost;
    }
    for (VertexId v = 0; v < g.vertex_count; ++v) component_sum[label[v]] += prefix.r[v];
    for (const auto& [comp, sum] : component_sum) CHECK(sum <= component_cost[comp]);

    // exclusive mode: per-set totals equal the base-phase growth
    LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
    Assignment exclusive = compute_assignment(ls.outcome.trace, g, opt, order,
                                              legacy.fingerprint, AssignmentMode::exclusive);
    std::map<SetKey, Rational> per_set_total;
    for (const auto& [key, value] : exclusive.per_set) per_set_total[key.first] += value;
    for (const auto& [key, value] : per_set_total) {
      auto it = ls.outcome.trace.ledger.y_b.find(key);
      REQUIRE(it != ls.outcome.trace.ledger.y_b.end());
      CHECK(value == it->second);
    }
    Rational total_exclusive = 0;
    for (const Rational& v : exclusive.r) total_exclusive += v;
    CHECK(total_exclusive == ls.outcome.y_base);

    // exclusive assignment never exceeds the prefix assignment pointwise on
    // the shared legacy execution
    Assignment shadow_exclusive = compute_assignment(legacy.trace, g, opt, order,
                                                     legacy.fingerprint,
                                                     AssignmentMode::exclusive);
    for (VertexId v = 0; v < g.vertex_count; ++v) CHECK(shadow_exclusive.r[v] <= prefix.r[v]);
    ++done;
  }
  CHECK(done == 50);
}

TEST_CASE("prefix-time structure: assigned moments form a prefix") {
  for (unsigned long long seed = 1; seed <= 10; ++seed) {
    Instance g = gen_random(6, rat_parse("2/5"), seed);
    if (g.edges.size() > 14) continue;
    LegacyResult legacy = run_legacy(g);
    auto [opt_cost, opt] = exact_opt(g);
    PriorityOrder order = compute_priorities(g, legacy.fingerprint);
    // structural check on the replay: if v receives growth on an interval,
    // it received growth on every earlier interval it was active in
    std::vector<Rational> times{Rational(0)};
    for (const TraceEvent& ev : legacy.trace.events) times.push_back(ev.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count));
    {
      std::vector<int> parent(label.size());
      for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
      auto find = [&parent](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
      };
      for (EdgeId e : opt.edge_ids) {
        int a = find(g.edges[e].u), b = find(g.edges[e].v);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
      for (int v = 0; v < g.vertex_count; ++v) label[v] = find(v);
    }
    std::vector<char> stopped(static_cast<std::size_t>(g.vertex_count), 0);
    for (std::size_t i = 0; i + 1 < times.size(); ++i) {
      Rational tau = times[i];
      for (const SetKey& key : active_sets_after(legacy.trace, tau)) {
        std::map<int, VertexId> reps;
        for (VertexId v : key) {
          if (!(legacy.fingerprint[v] > tau)) continue;
          auto [it, inserted] = reps.try_emplace(label[v], v);
          if (!inserted && order.higher(v, it->second)) it->second = v;
        }
        std::set<VertexId> assigned;
        for (auto& [lbl, v] : reps) assigned.insert(v);
        for (VertexId v : key) {
          if (assigned.count(v)) CHECK(!stopped[v]);
          else if (legacy.trace.activity[v] > tau) stopped[v] = 1;
        }
      }
    }
  }
}

TEST_CASE("claw checker accepts the wheel after local search") {
  Instance g = gen_wheel(xi());
  LegacyResult legacy = run_legacy(g);
  LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
  auto violations = check_claw(g, ls, rat(1, 10), 0, 1);
  CHECK(violations.empty());
}

TEST_CASE("claw checker finds nothing on random instances, fully enumerated") {
  for (unsigned long long seed = 1; seed <= 20; ++seed) {
    Instance g = gen_random(8, rat_parse("1/2"), seed);
    LegacyResult legacy = run_legacy(g);
    LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
    auto violations = check_claw(g, ls, rat(1, 10), 0, 1);
    CHECK(violations.empty());
  }
}

TEST_CASE("claw sampling matches full enumeration emptiness") {
  Instance g = gen_random(8, rat_parse("1/2"), 7);
  LegacyResult legacy = run_legacy(g);
  LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
  CHECK(check_claw(g, ls, rat(1, 10), 50, 123).empty());
  CHECK(check_claw(g, ls, rat(1, 10), 50, 123).size() ==
        check_claw(g, ls, rat(1, 10), 50, 123).size());
}

TEST_CASE("refinement holds between legacy and boosted, fails when corrupted") {
  Instance g = gen_wheel(xi());
  LegacyResult legacy = run_legacy(g);
  LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
  CHECK(check_refinement(legacy.trace, legacy.trace));  // equality refines
  CHECK(check_refinement(legacy.trace, ls.outcome.trace));

  // reversed roles must fail: the boosted center is active while legacy has
  // no active set containing it
  CHECK(!check_refinement(ls.outcome.trace, legacy.trace));

  // corrupted trace: keep a vertex active past everything else
  MoatTrace corrupted = legacy.trace;
  corrupted.activity[0] = rat(100);
  CHECK(!check_refinement(corrupted, ls.outcome.trace));
}

TEST_CASE("refinement across random boosted runs") {
  for (unsigned long long seed = 1; seed <= 15; ++seed) {
    Instance g = gen_random(7, rat_parse("1/2"), seed);
    LegacyResult legacy = run_legacy(g);
    LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
    CHECK(check_refinement(legacy.trace, ls.outcome.trace));
  }
}
