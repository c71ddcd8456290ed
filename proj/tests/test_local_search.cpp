#include <doctest.h>

#include "generators.hpp"
#include "local_search.hpp"

#include <algorithm>

using namespace sf;

namespace {

Rational xi() { return rat_parse("1/100"); }

}  // namespace

TEST_CASE("isolated vertex has no boost candidates") {
  Instance g;
  g.vertex_count = 3;
  g.pair = {1, 0, 2};
  g.edges = {{0, 0, 1, rat(2)}};  // vertex 2 is isolated
  LegacyResult legacy = run_legacy(g);
  CHECK(candidate_boosts(g, legacy.fingerprint, legacy.fingerprint, 2).empty());
}

TEST_CASE("wheel center's first candidate is the spoke meeting time") {
  Instance g = gen_wheel(xi());
  LegacyResult legacy = run_legacy(g);
  auto times = candidate_boosts(g, legacy.fingerprint, legacy.fingerprint, 4);
  REQUIRE(times.size() == 1);
  CHECK(times[0] == (1 + xi()) / 2);
}

TEST_CASE("candidates ignore merges into already-inactive components") {
  // path a-b-c-d with pairs (a,b), (c,d): everything is satisfied at 1/2 and
  // boosting a can only ever meet dead components
  Instance g;
  g.vertex_count = 4;
  g.pair = {1, 0, 3, 2};
  g.edges = {{0, 0, 1, rat(1)}, {1, 1, 2, rat(1)}, {2, 2, 3, rat(1)}};
  LegacyResult legacy = run_legacy(g);
  for (VertexId v = 0; v < 4; ++v)
    CHECK(candidate_boosts(g, legacy.fingerprint, legacy.fingerprint, v).empty());
}

TEST_CASE("evaluating the identity boost changes nothing") {
  Instance g = gen_wheel(xi());
  LegacyResult legacy = run_legacy(g);
  BoostEvaluation eval = evaluate_boost(g, legacy.fingerprint, legacy.fingerprint,
                                        {4, legacy.fingerprint[4]});
  CHECK(eval.win == rat(0));
  CHECK(eval.loss == rat(0));
}

TEST_CASE("wheel center boost evaluation, pinned by the hand ledger") {
  // Hand ledger for t_star[center] = (1+xi)/2 =: T under fingerprint-driven
  // deactivation: five singleton moats grow on [0,T); the merged wheel then
  // grows alone until the terminals' fingerprints expire at 1.
  //   y_base' = 4T + (1-T) = 1+3T      (center's own growth is add-phase)
  //   y_add'  = T
  //   win  = 4 - y_base' = 3(1-T) = (3/2)(1-xi)
  //   loss = y_add' - 0  = (1+xi)/2
  Instance g = gen_wheel(xi());
  LegacyResult legacy = run_legacy(g);
  Rational T = (1 + xi()) / 2;
  BoostEvaluation eval = evaluate_boost(g, legacy.fingerprint, legacy.fingerprint, {4, T});
  CHECK(eval.win == 3 * (1 - T));
  CHECK(eval.win == rat(3, 2) * (1 - xi()));
  CHECK(eval.loss == T);
}

TEST_CASE("loss never exceeds the boost time") {
  int samples = 0;
  for (unsigned long long seed = 1; seed <= 25 && samples < 100; ++seed) {
    Instance g = gen_random(6, rat_parse("2/3"), seed);
    LegacyResult legacy = run_legacy(g);
    for (VertexId v = 0; v < g.vertex_count; ++v) {
      for (const Rational& until :
           candidate_boosts(g, legacy.fingerprint, legacy.fingerprint, v)) {
        BoostEvaluation eval =
            evaluate_boost(g, legacy.fingerprint, legacy.fingerprint, {v, until});
        CHECK(eval.loss <= until);
        CHECK(eval.win >= rat(0));
        ++samples;
      }
    }
  }
  CHECK(samples > 20);
}

TEST_CASE("local search on the wheel applies exactly the center boost") {
  Instance g = gen_wheel(xi());
  LegacyResult legacy = run_legacy(g);
  LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
  CHECK(ls.iterations == 1);
  CHECK(ls.t_star[4] == (1 + xi()) / 2);
  CHECK(forest_cost(g, ls.forest) == 4 * (1 + xi()));
  CHECK(ls.total_win == rat(3, 2) * (1 - xi()));
  CHECK(ls.total_loss == (1 + xi()) / 2);
  // win/loss identities against the final execution
  CHECK(ls.total_win == legacy.trace.ledger.total() - ls.outcome.y_base);
  CHECK(ls.total_loss == ls.outcome.y_add);
  CHECK(ls.total_win >= (1 + rat(1, 10)) * ls.total_loss);
}

TEST_CASE("local search finds the grid optimum") {
  int n = 4, m = 4;
  Instance g = gen_grid(n, m, xi());
  LegacyResult legacy = run_legacy(g);
  CHECK(forest_cost(g, legacy.forest) == rat(2 * (n - 1) * (m - 1)));
  LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
  Rational optimum = rat(2 * (n - 1)) + (1 + xi()) * rat(n * (m - 1));
  CHECK(forest_cost(g, ls.forest) == optimum);
  CHECK(check_feasible(g, ls.forest));
}

TEST_CASE("binary tree admits no valuable boost at any sampled beta") {
  for (const char* beta : {"1/10", "29/70", "9/10"}) {
    BinaryTreeInstance bin = gen_binary(3, xi());
    Instance embedded = steiner_tree_embed(bin.graph, bin.terminals, bin.terminals.front());
    LegacyResult legacy = run_legacy(embedded);
    LocalSearchResult ls = local_search(embedded, legacy.fingerprint, rat_parse(beta));
    CHECK(ls.iterations == 0);
    CHECK(ls.t_star == legacy.fingerprint);
    CHECK(ls.forest == run_shadow(embedded, legacy.fingerprint).forest);
  }
}

TEST_CASE("local search invariants on random instances") {
  for (unsigned long long seed = 1; seed <= 20; ++seed) {
    Instance g = gen_random(7, rat_parse("1/2"), seed);
    LegacyResult legacy = run_legacy(g);
    LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
    int n = g.vertex_count;
    CHECK(ls.iterations <= n * (n - 1) / 2);
    CHECK(ls.total_win == legacy.trace.ledger.total() - ls.outcome.y_base);
    CHECK(ls.total_loss == ls.outcome.y_add);
    CHECK(check_feasible(g, ls.forest));
    // total growth never increases across the applied boosts
    CHECK(ls.outcome.trace.ledger.total() <= legacy.trace.ledger.total());
    // post-termination: the enumerated space holds no valuable candidate
    for (VertexId v = 0; v < n; ++v) {
      for (const Rational& until : candidate_boosts(g, legacy.fingerprint, ls.t_star, v)) {
        BoostEvaluation eval = evaluate_boost(g, legacy.fingerprint, ls.t_star, {v, until});
        bool noop = eval.win == rat(0) && eval.loss == rat(0);
        CHECK((noop || eval.win < (1 + rat(1, 10)) * eval.loss));
      }
    }
  }
}

TEST_CASE("beta outside (0,1) is rejected") {
  Instance g = gen_wheel(xi());
  LegacyResult legacy = run_legacy(g);
  CHECK_THROWS_AS(local_search(g, legacy.fingerprint, rat(0)), Error);
  CHECK_THROWS_AS(local_search(g, legacy.fingerprint, rat(1)), Error);
  CHECK_THROWS_AS(local_search(g, legacy.fingerprint, rat(2)), Error);
}
