#pragma once

#include "engine.hpp"

namespace sf {

struct AutarkicPair {
  SetKey s;
  SetKey pair_s;
  VertexId chosen;
  std::vector<EdgeId> path;
  Rational path_cost;
};

struct AutarkicSelection {
  std::vector<AutarkicPair> pairs;
  std::vector<EdgeId> zero_edges;  // synthetic ids in the augmented graph
};

// Y keyed by Unsatisfied(S) over the boosted-run ledger; the empty key is
// dropped.
std::map<SetKey, Rational> accumulate_Y(const MoatTrace& trace, const Instance& instance);

AutarkicSelection select_autarkic_pairs(const Instance& instance,
                                        const std::map<SetKey, Rational>& Y,
                                        const Rational& eta);

struct AutarkicOutcome {
  Forest forest;                 // edges of the original instance only
  AutarkicSelection selection;
  Instance augmented;            // G' = G plus synthetic zero-cost edges
};

// Algorithm: select autarkic pairs from the boosted-run ledger, connect one
// vertex pair per selection with its shortest path, insert zero-cost edges,
// and resolve the rest with a legacy rerun on the augmented graph.
AutarkicOutcome autarkic_solve(const Instance& instance,
                               const std::map<SetKey, Rational>& y_plus_ledger,
                               const Rational& eta);

}  // namespace sf
