#include "autarkic.hpp"

#include <algorithm>
#include <optional>

namespace sf {

std::map<SetKey, Rational> accumulate_Y(const MoatTrace& trace, const Instance& instance) {
  std::map<SetKey, Rational> Y;
  for (const auto& [key, growth] : trace.ledger.y) {
    if (growth <= 0) continue;
    SetKey unsat = unsatisfied(instance, key);
    if (unsat.empty()) continue;
    Y[unsat] += growth;
  }
  return Y;
}

namespace {

SetKey pair_of(const Instance& instance, const SetKey& key) {
  std::vector<VertexId> out;
  out.reserve(key.size());
  for (VertexId v : key) out.push_back(instance.pair[v]);
  return set_key(std::move(out));
}

}  // namespace

AutarkicSelection select_autarkic_pairs(const Instance& instance,
                                        const std::map<SetKey, Rational>& Y,
                                        const Rational& eta) {
  if (!(eta > 0 && eta < 1))
    throw Error(ErrorCode::invalid_argument, "select_autarkic_pairs: eta must lie in (0,1)");

  // Candidate keys: every Y key and its pair set, in canonical order.
  std::set<SetKey> keys;
  for (const auto& [key, value] : Y) {
    keys.insert(key);
    keys.insert(pair_of(instance, key));
  }

  std::map<VertexId, std::vector<std::optional<Rational>>> dist_cache;
  auto pair_distance = [&](VertexId v) -> std::optional<Rational> {
    auto [it, inserted] = dist_cache.try_emplace(v);
    if (inserted) it->second = shortest_distances(instance, v);
    return it->second[static_cast<std::size_t>(instance.pair[v])];
  };

  AutarkicSelection selection;
  std::set<SetKey> processed;
  for (const SetKey& s : keys) {
    if (processed.count(s)) continue;
    SetKey mate = pair_of(instance, s);
    auto ys = Y.find(s);
    auto ym = Y.find(mate);
    Rational total = (ys != Y.end() ? ys->second : Rational(0)) +
                     (ym != Y.end() ? ym->second : Rational(0));
    // dmax(S): the largest vertex-to-pair distance inside S
    std::optional<Rational> dmax;
    bool unreachable = false;
    for (VertexId v : s) {
      auto d = pair_distance(v);
      if (!d) {
        unreachable = true;
        break;
      }
      if (!dmax || *d > *dmax) dmax = *d;
    }
    if (unreachable || !dmax) continue;
    if (!((1 + eta) * total > *dmax)) continue;

    AutarkicPair chosen;
    chosen.s = s;
    chosen.pair_s = mate;
    chosen.chosen = s.front();
    PathResult path = shortest_path(instance, chosen.chosen, instance.pair[chosen.chosen]);
    if (!path.reachable) continue;
    chosen.path = path.path;
    chosen.path_cost = path.cost;
    selection.pairs.push_back(std::move(chosen));
    processed.insert(s);
    processed.insert(mate);
  }
  return selection;
}

AutarkicOutcome autarkic_solve(const Instance& instance,
                               const std::map<SetKey, Rational>& y_plus_ledger,
                               const Rational& eta) {
  MoatTrace shim;
  shim.ledger.y = y_plus_ledger;
  std::map<SetKey, Rational> Y = accumulate_Y(shim, instance);
  AutarkicSelection selection = select_autarkic_pairs(instance, Y, eta);

  AutarkicOutcome outcome;
  outcome.augmented = instance;
  for (AutarkicPair& p : selection.pairs) {
    Edge zero;
    zero.id = static_cast<EdgeId>(outcome.augmented.edges.size());
    zero.u = p.chosen;
    zero.v = instance.pair[p.chosen];
    zero.cost = 0;
    selection.zero_edges.push_back(zero.id);
    outcome.augmented.edges.push_back(std::move(zero));
  }

  LegacyResult rerun = run_legacy(outcome.augmented);

  Forest forest;
  for (const AutarkicPair& p : selection.pairs)
    forest.edge_ids.insert(p.path.begin(), p.path.end());
  for (EdgeId e : rerun.forest.edge_ids)
    if (e < static_cast<EdgeId>(instance.edges.size())) forest.edge_ids.insert(e);

  outcome.forest = std::move(forest);
  outcome.selection = std::move(selection);
  return outcome;
}

}  // namespace sf
