#pragma once

#include "engine.hpp"

namespace sf {

struct BoostAction {
  VertexId vertex;
  Rational until;
};

struct BoostEvaluation {
  Rational win;   // decrease in y_base
  Rational loss;  // increase in y_add (may be negative)
};

struct AppliedBoost {
  BoostAction action;
  Rational win;
  Rational loss;
};

struct LocalSearchResult {
  Forest forest;
  Fingerprint t_star;
  std::map<SetKey, Rational> y_b;
  Rational total_win;
  Rational total_loss;
  int iterations = 0;
  std::vector<AppliedBoost> applied;
  BoostedOutcome outcome;  // final corresponding moat growing execution
};

// Sentinel standing in for "infinity" when probing boost times: large enough
// that the probed moat absorbs everything reachable while still active.
Rational boost_sentinel(const Instance& instance);

// Times at which the component of `vertex`, grown with a sentinel fingerprint,
// merges with another still-active set; only times beyond the current
// t_star[vertex] are kept. At most n times, ascending.
std::vector<Rational> candidate_boosts(const Instance& instance, const Fingerprint& t,
                                       const Fingerprint& t_star, VertexId vertex);

BoostEvaluation evaluate_boost(const Instance& instance, const Fingerprint& t,
                               const Fingerprint& t_star, const BoostAction& action);

// Repeatedly applies the lexicographically smallest (vertex, time) valuable
// candidate, i.e. one with win >= (1+beta) * loss, until none exists.
LocalSearchResult local_search(const Instance& instance, const Fingerprint& t,
                               const Rational& beta);

}  // namespace sf
