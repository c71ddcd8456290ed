#include "verify.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <tuple>

namespace sf {

PriorityOrder compute_priorities(const Instance& instance, const Fingerprint& legacy_fp) {
  if (legacy_fp.size() != instance.vertex_count)
    throw Error(ErrorCode::invalid_argument, "compute_priorities: fingerprint size mismatch");
  std::vector<VertexId> order(static_cast<std::size_t>(instance.vertex_count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
    auto key = [&](VertexId v) {
      VertexId lo = std::min(v, instance.pair[v]);
      int is_larger = v > instance.pair[v] ? 1 : 0;
      return std::make_tuple(legacy_fp[v], lo, is_larger);
    };
    return key(a) < key(b);
  });
  PriorityOrder out;
  out.rank.assign(static_cast<std::size_t>(instance.vertex_count), 0);
  for (std::size_t i = 0; i < order.size(); ++i) out.rank[order[i]] = static_cast<int>(i);
  return out;
}

namespace {

// component labels of the reference forest
std::vector<int> forest_components(const Instance& instance, const Forest& forest) {
  std::vector<int> parent(static_cast<std::size_t>(instance.vertex_count));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e : forest.edge_ids) {
    int a = find(instance.edges[e].u), b = find(instance.edges[e].v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> label(static_cast<std::size_t>(instance.vertex_count));
  for (VertexId v = 0; v < instance.vertex_count; ++v) label[v] = find(v);
  return label;
}

// distinct event times in ascending order
std::vector<Rational> event_times(const MoatTrace& trace) {
  std::vector<Rational> times;
  times.push_back(Rational(0));
  for (const TraceEvent& ev : trace.events) times.push_back(ev.time);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
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

Assignment compute_assignment(const MoatTrace& trace, const Instance& instance,
                              const Forest& opt, const PriorityOrder& priorities,
                              const Fingerprint& legacy_fp, AssignmentMode mode) {
  if (!check_feasible(instance, opt))
    throw Error(ErrorCode::invalid_argument, "compute_assignment: reference forest infeasible");
  std::vector<int> comp_label = forest_components(instance, opt);

  Assignment out;
  out.r.assign(static_cast<std::size_t>(instance.vertex_count), Rational(0));

  // Base-phase membership flips at fingerprint values, which need not be
  // trace events; split the replay intervals there as well.
  std::vector<Rational> times = event_times(trace);
  Rational horizon = times.back();
  for (const Rational& t : legacy_fp.t)
    if (t > 0 && t < horizon) times.push_back(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  for (std::size_t i = 0; i + 1 < times.size(); ++i) {
    Rational duration = times[i + 1] - times[i];
    if (duration == 0) continue;
    const Rational& tau = times[i];
    for (const SetKey& key : active_sets_after(trace, tau)) {
      // Base(S, tau): members still short of their legacy fingerprint
      SetKey base;
      for (VertexId v : key)
        if (legacy_fp[v] > tau) base.push_back(v);
      if (base.empty()) continue;  // set not in base phase
      // Reps: highest priority per component of the reference forest
      std::map<int, VertexId> reps;
      for (VertexId v : base) {
        auto [it, inserted] = reps.try_emplace(comp_label[v], v);
        if (!inserted && priorities.higher(v, it->second)) it->second = v;
      }
      Rational fraction =
          mode == AssignmentMode::prefix_time
              ? duration
              : duration / Rational(static_cast<long>(reps.size()));
      for (const auto& [label, v] : reps) {
        out.r[v] += fraction;
        out.per_set[{key, v}] += fraction;
      }
    }
  }
  return out;
}

std::vector<ClawViolation> check_claw(const Instance& instance,
                                      const LocalSearchResult& ls_result,
                                      const Rational& beta, int samples,
                                      unsigned long long seed) {
  const MoatTrace& trace = ls_result.outcome.trace;
  if (trace.vertex_count != instance.vertex_count)
    throw Error(ErrorCode::invalid_argument, "check_claw: trace does not match the instance");
  const int n = instance.vertex_count;

  // meet[a][b]: first moment a and b share a component
  std::vector<std::vector<std::optional<Rational>>> meet(
      static_cast<std::size_t>(n), std::vector<std::optional<Rational>>(static_cast<std::size_t>(n)));
  {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const TraceEvent& ev : trace.events) {
      if (ev.kind != TraceEvent::Kind::merge) continue;
      if (find(ev.a.front()) == find(ev.b.front())) continue;
      for (VertexId a : ev.a)
        for (VertexId b : ev.b)
          if (!meet[a][b]) meet[a][b] = meet[b][a] = ev.time;
      parent[std::max(find(ev.a.front()), find(ev.b.front()))] =
          std::min(find(ev.a.front()), find(ev.b.front()));
    }
  }

  std::vector<std::vector<std::optional<Rational>>> dist(static_cast<std::size_t>(n));
  auto distances_from = [&](VertexId q) -> const std::vector<std::optional<Rational>>& {
    if (dist[q].empty()) dist[q] = shortest_distances(instance, q);
    return dist[q];
  };

  std::vector<ClawViolation> violations;
  // q may coincide with u, v or w; only the triple itself must be distinct
  auto consider = [&](VertexId u, VertexId v, VertexId w, VertexId q) {
    if (!meet[u][v] || !meet[u][w] || !meet[v][w]) return;
    Rational tau = std::min({*meet[u][v], *meet[u][w], *meet[v][w]});
    Rational tau_prime = std::max({*meet[u][v], *meet[u][w], *meet[v][w]});
    // actively connected: all three stay active until they share a component
    if (trace.activity[u] < tau_prime || trace.activity[v] < tau_prime ||
        trace.activity[w] < tau_prime)
      return;
    const auto& dq = distances_from(q);
    if (!dq[u] || !dq[v] || !dq[w]) return;
    Rational lhs = tau + tau_prime;
    Rational rhs = (*dq[u] + *dq[v] + *dq[w]) / 2 + beta * std::min({*dq[u], *dq[v], *dq[w]}) / 2;
    if (lhs > rhs)
      violations.push_back({u, v, w, q, tau, tau_prime, lhs, rhs});
  };

  if (samples <= 0) {
    for (VertexId u = 0; u < n; ++u)
      for (VertexId v = u + 1; v < n; ++v)
        for (VertexId w = v + 1; w < n; ++w)
          for (VertexId q = 0; q < n; ++q) consider(u, v, w, q);
  } else {
    splitmix64 rng(seed);
    for (int i = 0; i < samples; ++i) {
      if (n < 3) break;
      VertexId u = rng.below(n), v = rng.below(n), w = rng.below(n), q = rng.below(n);
      if (u == v || u == w || v == w) continue;
      VertexId a = std::min({u, v, w}), c = std::max({u, v, w});
      VertexId b = u + v + w - a - c;
      consider(a, b, c, q);
    }
  }
  return violations;
}

namespace {

bool refines(const std::vector<SetKey>& fine, const std::vector<SetKey>& coarse) {
  for (const SetKey& small : fine) {
    bool covered = false;
    for (const SetKey& big : coarse) {
      if (small.size() > big.size()) continue;
      if (std::includes(big.begin(), big.end(), small.begin(), small.end())) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace

bool check_refinement(const MoatTrace& trace_small, const MoatTrace& trace_large) {
  if (trace_small.vertex_count != trace_large.vertex_count)
    throw Error(ErrorCode::invalid_argument, "check_refinement: vertex counts differ");

  std::vector<Rational> times = event_times(trace_small);
  for (const Rational& t : event_times(trace_large)) times.push_back(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  // Sample the open interval after each event (and past the final one) with
  // midpoints, where the interval state is unambiguous.
  std::vector<Rational> probes;
  for (std::size_t i = 0; i + 1 < times.size(); ++i)
    probes.push_back((times[i] + times[i + 1]) / 2);
  probes.push_back(times.back());  // both executions have settled here

  for (const Rational& tau : probes) {
    if (!refines(components_after(trace_small, tau), components_after(trace_large, tau)))
      return false;
    if (!refines(active_sets_after(trace_small, tau), active_sets_after(trace_large, tau)))
      return false;
  }
  return true;
}

}  // namespace sf
