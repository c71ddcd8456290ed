#include "engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>

namespace sf {

SetKey set_key(std::vector<VertexId> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

SetKey set_key_union(const SetKey& a, const SetKey& b) {
  SetKey out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_key_contains(const SetKey& key, VertexId v) {
  return std::binary_search(key.begin(), key.end(), v);
}

std::string set_key_str(const SetKey& key) {
  std::ostringstream out;
  out << "{";
  for (std::size_t i = 0; i < key.size(); ++i) out << (i ? "," : "") << key[i];
  out << "}";
  return out.str();
}

SetKey unsatisfied(const Instance& instance, const SetKey& key) {
  SetKey out;
  for (VertexId v : key)
    if (!set_key_contains(key, instance.pair[v])) out.push_back(v);
  return out;
}

Rational GrowthLedger::total() const {
  Rational sum = 0;
  for (const auto& [key, value] : y) sum += value;
  return sum;
}

Rational GrowthLedger::total_base() const {
  Rational sum = 0;
  for (const auto& [key, value] : y_b) sum += value;
  return sum;
}

namespace {

enum class GrowMode { legacy, shadow, boosted, extended };

struct EngineState {
  const Instance& instance;
  GrowMode mode;
  const Fingerprint* t = nullptr;       // shadow/boosted base, extended t_in
  const Fingerprint* t_star = nullptr;  // boosted
  std::vector<Rational> potential;      // extended, per component root

  std::vector<int> parent;
  std::vector<SetKey> comp;           // valid at roots
  std::vector<char> active;           // valid at roots
  std::vector<Rational> max_t;        // valid at roots (shadow/boosted/extended)
  std::vector<Rational> max_t_star;   // valid at roots (boosted)
  std::vector<int> unsat_count;       // valid at roots (legacy)
  std::vector<Rational> colored;
  Rational tau = 0;
  Rational y_base = 0, y_add = 0;
  Fingerprint legacy_t;
  std::vector<char> activity_set;
  MoatTrace trace;

  explicit EngineState(const Instance& inst, GrowMode m) : instance(inst), mode(m) {
    int n = inst.vertex_count;
    parent.resize(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    comp.resize(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v) comp[v] = {v};
    active.assign(static_cast<std::size_t>(n), 0);
    max_t.assign(static_cast<std::size_t>(n), Rational(0));
    max_t_star.assign(static_cast<std::size_t>(n), Rational(0));
    unsat_count.assign(static_cast<std::size_t>(n), 0);
    colored.assign(instance.edges.size(), Rational(0));
    legacy_t = Fingerprint(n);
    activity_set.assign(static_cast<std::size_t>(n), 0);
    trace.vertex_count = n;
    trace.activity.assign(static_cast<std::size_t>(n), Rational(0));
  }

  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  int count_unsatisfied(const SetKey& key) const {
    int count = 0;
    for (VertexId v : key)
      if (!set_key_contains(key, instance.pair[v])) ++count;
    return count;
  }

  bool deactivation_due(int root) const {
    switch (mode) {
      case GrowMode::legacy:
        return unsat_count[root] == 0;
      case GrowMode::shadow:
        return max_t[root] <= tau;
      case GrowMode::boosted:
        return max_t_star[root] <= tau;
      case GrowMode::extended:
        return potential[root] == 0 && max_t[root] <= tau;
    }
    return false;
  }

  bool consuming(int root) const {  // extended: draws on potential
    return max_t[root] <= tau;
  }

  void mark_inactive(int root) {
    active[root] = 0;
    const SetKey& key = comp[root];
    trace.deactivated.push_back(key);
    for (VertexId v : key) {
      if (!activity_set[v]) {
        activity_set[v] = 1;
        trace.activity[v] = tau;
      }
    }
  }
};

// One loop realizes Algorithms "Legacy", "Shadow", "Boosted" and "Extended"
// moat growing; they differ only in activity bookkeeping and deactivation.
void run_engine(EngineState& st) {
  const Instance& g = st.instance;
  const int n = g.vertex_count;

  // initial activity per mode
  for (VertexId v = 0; v < n; ++v) {
    bool act = false;
    switch (st.mode) {
      case GrowMode::legacy:
        st.unsat_count[v] = g.pair[v] == v ? 0 : 1;
        act = g.pair[v] != v;
        break;
      case GrowMode::shadow:
        st.max_t[v] = (*st.t)[v];
        act = (*st.t)[v] > 0;
        break;
      case GrowMode::boosted:
        st.max_t[v] = (*st.t)[v];
        st.max_t_star[v] = (*st.t_star)[v];
        act = (*st.t_star)[v] > 0;
        break;
      case GrowMode::extended:
        st.max_t[v] = (*st.t)[v];
        act = (*st.t)[v] > 0 || st.potential[v] > 0;
        break;
    }
    st.active[v] = act ? 1 : 0;
    if (!act) st.mark_inactive(v);
  }

  long long guard = 0;
  const long long guard_limit =
      16LL * (static_cast<long long>(n) + static_cast<long long>(g.edges.size()) + 4) + 64;

  for (;;) {
    bool any_active = false;
    for (int r = 0; r < n; ++r)
      if (st.parent[r] == r && st.active[r]) any_active = true;
    if (!any_active) break;
    if (++guard > guard_limit)
      throw Error(ErrorCode::internal, "moat engine failed to make progress");

    // next event distance
    std::optional<Rational> delta_e;
    for (const Edge& e : g.edges) {
      int ru = st.find(e.u), rv = st.find(e.v);
      if (ru == rv) continue;
      int sides = (st.active[ru] ? 1 : 0) + (st.active[rv] ? 1 : 0);
      if (sides == 0) continue;
      Rational cand = (e.cost - st.colored[e.id]) / sides;
      if (!delta_e || cand < *delta_e) delta_e = cand;
    }
    std::optional<Rational> delta;
    auto consider = [&delta](const Rational& cand) {
      if (!delta || cand < *delta) delta = cand;
    };
    if (delta_e) consider(*delta_e);
    if (st.mode == GrowMode::shadow || st.mode == GrowMode::boosted ||
        st.mode == GrowMode::extended) {
      for (VertexId v = 0; v < n; ++v)
        if ((*st.t)[v] > st.tau) consider((*st.t)[v] - st.tau);
    }
    if (st.mode == GrowMode::boosted) {
      for (VertexId v = 0; v < n; ++v)
        if ((*st.t_star)[v] > st.tau) consider((*st.t_star)[v] - st.tau);
    }
    if (st.mode == GrowMode::extended) {
      for (int r = 0; r < n; ++r)
        if (st.parent[r] == r && st.active[r] && st.consuming(r) && st.potential[r] > 0)
          consider(st.potential[r]);
    }
    if (st.mode == GrowMode::legacy && !delta_e)
      throw Error(ErrorCode::infeasible,
                  "legacy moat growing stalled: some demand pair is disconnected");
    if (!delta) throw Error(ErrorCode::internal, "no event candidate while sets are active");

    // grow active sets by delta, color adjacent edges
    std::vector<int> exhausted;
    if (*delta > 0) {
      for (int r = 0; r < n; ++r) {
        if (st.parent[r] != r || !st.active[r]) continue;
        st.trace.ledger.y[st.comp[r]] += *delta;
        if (st.mode == GrowMode::boosted) {
          if (st.max_t[r] > st.tau) {
            st.y_base += *delta;
            st.trace.ledger.y_b[st.comp[r]] += *delta;
          } else {
            st.y_add += *delta;
          }
        }
        if (st.mode == GrowMode::extended && st.consuming(r)) {
          st.potential[r] -= *delta;
          if (st.potential[r] == 0) exhausted.push_back(r);
        }
      }
      for (const Edge& e : g.edges) {
        int ru = st.find(e.u), rv = st.find(e.v);
        if (ru == rv) continue;
        int sides = (st.active[ru] ? 1 : 0) + (st.active[rv] ? 1 : 0);
        if (sides) st.colored[e.id] += Rational(sides) * *delta;
      }
    }
    st.tau += *delta;
    for (int r : exhausted) {
      TraceEvent ev;
      ev.kind = TraceEvent::Kind::potential_exhausted;
      ev.time = st.tau;
      ev.key = st.comp[r];
      st.trace.events.push_back(std::move(ev));
    }

    // fully colored edges join the forest and merge components
    for (const Edge& e : g.edges) {
      int ru = st.find(e.u), rv = st.find(e.v);
      if (ru == rv) continue;
      if (st.colored[e.id] != e.cost) continue;

      TraceEvent ev;
      ev.kind = TraceEvent::Kind::merge;
      ev.time = st.tau;
      ev.edge = e.id;
      ev.a = st.comp[ru];
      ev.b = st.comp[rv];
      ev.a_active = st.active[ru] != 0;
      ev.b_active = st.active[rv] != 0;
      ev.merged = set_key_union(ev.a, ev.b);

      if (st.mode == GrowMode::legacy) {
        for (VertexId w : ev.a) {
          VertexId p = g.pair[w];
          if (p != w && set_key_contains(ev.b, p)) {
            st.legacy_t[w] = st.tau;
            st.legacy_t[p] = st.tau;
          }
        }
      }

      st.trace.forest_pre_prune.edge_ids.insert(e.id);
      int keep = std::min(ru, rv), drop = std::max(ru, rv);
      st.parent[drop] = keep;
      st.comp[keep] = ev.merged;
      st.comp[drop].clear();
      st.active[keep] = 1;  // merged component becomes active, then re-checked below
      if (st.mode != GrowMode::legacy)
        st.max_t[keep] = std::max(st.max_t[keep], st.max_t[drop]);
      if (st.mode == GrowMode::boosted)
        st.max_t_star[keep] = std::max(st.max_t_star[keep], st.max_t_star[drop]);
      if (st.mode == GrowMode::extended)
        st.potential[keep] = st.potential[keep] + st.potential[drop];
      if (st.mode == GrowMode::legacy) st.unsat_count[keep] = st.count_unsatisfied(ev.merged);

      st.trace.events.push_back(std::move(ev));
    }

    // deactivation scan
    for (int r = 0; r < n; ++r) {
      if (st.parent[r] != r || !st.active[r]) continue;
      if (!st.deactivation_due(r)) continue;
      TraceEvent ev;
      ev.kind = TraceEvent::Kind::deactivate;
      ev.time = st.tau;
      ev.key = st.comp[r];
      st.trace.events.push_back(std::move(ev));
      st.mark_inactive(r);
    }
  }

  st.trace.colored = st.colored;

  // pruning: replay deactivated sets until fixpoint; a set cutting exactly
  // one forest edge removes it
  Forest pruned = st.trace.forest_pre_prune;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const SetKey& key : st.trace.deactivated) {
      EdgeId cut = -1;
      int count = 0;
      for (EdgeId eid : pruned.edge_ids) {
        const Edge& e = g.edges[eid];
        if (set_key_contains(key, e.u) != set_key_contains(key, e.v)) {
          cut = eid;
          if (++count > 1) break;
        }
      }
      if (count == 1) {
        pruned.edge_ids.erase(cut);
        changed = true;
      }
    }
  }
  st.trace.forest = pruned;
}

}  // namespace

LegacyResult run_legacy(const Instance& instance) {
  validate_instance(instance);
  EngineState st(instance, GrowMode::legacy);
  run_engine(st);
  LegacyResult result;
  result.forest = st.trace.forest;
  result.fingerprint = st.legacy_t;
  result.trace = std::move(st.trace);
  return result;
}

ShadowResult run_shadow(const Instance& instance, const Fingerprint& t) {
  validate_instance(instance);
  if (t.size() != instance.vertex_count)
    throw Error(ErrorCode::invalid_argument, "fingerprint size mismatch");
  for (const Rational& value : t.t)
    if (value < 0) throw Error(ErrorCode::invalid_argument, "fingerprint must be nonnegative");
  EngineState st(instance, GrowMode::shadow);
  st.t = &t;
  run_engine(st);
  ShadowResult result;
  result.forest = st.trace.forest;
  result.trace = std::move(st.trace);
  return result;
}

BoostedOutcome run_boosted(const Instance& instance, const Fingerprint& t,
                           const Fingerprint& t_star) {
  validate_instance(instance);
  if (t.size() != instance.vertex_count || t_star.size() != instance.vertex_count)
    throw Error(ErrorCode::invalid_argument, "fingerprint size mismatch");
  if (!t_star.dominates(t))
    throw Error(ErrorCode::invalid_argument,
                "boosted fingerprint must satisfy t_star[v] >= t[v] for all v");
  for (const Rational& value : t.t)
    if (value < 0) throw Error(ErrorCode::invalid_argument, "fingerprint must be nonnegative");
  EngineState st(instance, GrowMode::boosted);
  st.t = &t;
  st.t_star = &t_star;
  run_engine(st);
  BoostedOutcome outcome;
  outcome.forest = st.trace.forest;
  outcome.y_base = st.y_base;
  outcome.y_add = st.y_add;
  outcome.y_b = st.trace.ledger.y_b;
  outcome.trace = std::move(st.trace);
  return outcome;
}

ExtendedResult run_extended(const Instance& instance, const Fingerprint& t_in,
                            const std::vector<Rational>& potential) {
  validate_instance(instance);
  if (t_in.size() != instance.vertex_count ||
      potential.size() != static_cast<std::size_t>(instance.vertex_count))
    throw Error(ErrorCode::invalid_argument, "fingerprint/potential size mismatch");
  for (const Rational& value : potential)
    if (value < 0) throw Error(ErrorCode::invalid_argument, "potentials must be nonnegative");
  for (const Rational& value : t_in.t)
    if (value < 0) throw Error(ErrorCode::invalid_argument, "fingerprint must be nonnegative");
  EngineState st(instance, GrowMode::extended);
  st.t = &t_in;
  st.potential = potential;
  run_engine(st);
  ExtendedResult result;
  result.t_out = Fingerprint(instance.vertex_count);
  for (VertexId v = 0; v < instance.vertex_count; ++v) result.t_out[v] = st.trace.activity[v];
  result.trace = std::move(st.trace);
  return result;
}

std::string serialize_trace(const MoatTrace& trace) {
  using json = nlohmann::ordered_json;
  json doc;
  doc["events"] = json::array();
  for (const TraceEvent& ev : trace.events) {
    json e;
    e["t"] = rat_str_frac(ev.time);
    switch (ev.kind) {
      case TraceEvent::Kind::merge:
        e["kind"] = "merge";
        e["edge"] = ev.edge;
        e["a"] = ev.a;
        e["b"] = ev.b;
        e["merged"] = ev.merged;
        break;
      case TraceEvent::Kind::deactivate:
        e["kind"] = "deactivate";
        e["set"] = ev.key;
        break;
      case TraceEvent::Kind::potential_exhausted:
        e["kind"] = "potential_exhausted";
        e["set"] = ev.key;
        break;
    }
    doc["events"].push_back(std::move(e));
  }
  doc["ledger"] = json::array();
  for (const auto& [key, value] : trace.ledger.y) {
    json entry;
    entry["set"] = key;
    entry["y"] = rat_str_frac(value);
    auto it = trace.ledger.y_b.find(key);
    entry["y_b"] = rat_str_frac(it == trace.ledger.y_b.end() ? Rational(0) : it->second);
    doc["ledger"].push_back(std::move(entry));
  }
  doc["forest"] = json::array();
  for (EdgeId e : trace.forest.edge_ids) doc["forest"].push_back(e);
  doc["deactivated"] = json::array();
  for (const SetKey& key : trace.deactivated) doc["deactivated"].push_back(key);
  return doc.dump(2) + "\n";
}

std::vector<SetKey> components_after(const MoatTrace& trace, const Rational& time) {
  std::vector<int> parent(static_cast<std::size_t>(trace.vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const TraceEvent& ev : trace.events) {
    if (ev.kind != TraceEvent::Kind::merge || ev.time > time) continue;
    int a = find(ev.a.front()), b = find(ev.b.front());
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<SetKey> comps(static_cast<std::size_t>(trace.vertex_count));
  for (VertexId v = 0; v < trace.vertex_count; ++v) comps[find(v)].push_back(v);
  std::vector<SetKey> out;
  for (auto& key : comps)
    if (!key.empty()) out.push_back(std::move(key));
  return out;
}

std::vector<SetKey> active_sets_after(const MoatTrace& trace, const Rational& time) {
  std::vector<SetKey> out;
  for (SetKey& key : components_after(trace, time)) {
    bool active = false;
    for (VertexId v : key)
      if (trace.activity[v] > time) active = true;
    if (active) out.push_back(std::move(key));
  }
  return out;
}

}  // namespace sf
