#pragma once

#include "graph.hpp"

#include <map>
#include <vector>

namespace sf {

// Canonical identity of a component: its sorted vertex set. Within one
// execution a vertex set is a component for exactly one contiguous interval,
// so a SetKey indexes the growth ledger unambiguously.
using SetKey = std::vector<VertexId>;

SetKey set_key(std::vector<VertexId> vertices);
SetKey set_key_union(const SetKey& a, const SetKey& b);
bool set_key_contains(const SetKey& key, VertexId v);
std::string set_key_str(const SetKey& key);

// Unsatisfied(S): vertices of S whose pair lies outside S.
SetKey unsatisfied(const Instance& instance, const SetKey& key);

struct GrowthLedger {
  std::map<SetKey, Rational> y;
  std::map<SetKey, Rational> y_b;  // base-phase portion (boosted runs only)

  Rational total() const;
  Rational total_base() const;
};

struct TraceEvent {
  enum class Kind { merge, deactivate, potential_exhausted };
  Kind kind;
  Rational time;
  // merge
  EdgeId edge = -1;
  SetKey a, b, merged;
  bool a_active = false;  // whether each side was an active set at the merge
  bool b_active = false;
  // deactivate / potential_exhausted
  SetKey key;
};

// Full event history of one execution: merges, deactivations, per-set growth
// ledger, per-edge coloring, per-vertex first-deactivation times.
struct MoatTrace {
  int vertex_count = 0;
  std::vector<TraceEvent> events;
  std::vector<Rational> activity;        // first deactivation time per vertex
  GrowthLedger ledger;
  std::vector<Rational> colored;         // total colored portion per edge
  std::vector<SetKey> deactivated;       // DS in deactivation order
  Forest forest_pre_prune;
  Forest forest;
};

struct LegacyResult {
  Forest forest;
  Fingerprint fingerprint;  // earliest moment v and pair(v) are connected
  MoatTrace trace;
};

struct ShadowResult {
  Forest forest;
  MoatTrace trace;
};

struct BoostedOutcome {
  Forest forest;
  Rational y_base;
  Rational y_add;
  std::map<SetKey, Rational> y_b;
  MoatTrace trace;
};

struct ExtendedResult {
  Fingerprint t_out;  // first deactivation time of each vertex
  MoatTrace trace;
};

// Algorithm family: one event-driven engine realizes all four monotonic
// moat-growing executions. Deactivation is decided per mode:
//   legacy   - component has no unsatisfied vertex
//   shadow   - t[v] <= tau for all members
//   boosted  - t_star[v] <= tau for all members
//   extended - potential exhausted and max t[v] <= tau
LegacyResult run_legacy(const Instance& instance);
ShadowResult run_shadow(const Instance& instance, const Fingerprint& t);
BoostedOutcome run_boosted(const Instance& instance, const Fingerprint& t,
                           const Fingerprint& t_star);
ExtendedResult run_extended(const Instance& instance, const Fingerprint& t_in,
                            const std::vector<Rational>& potential);

// Structured text form of a trace (fields: events, ledger, forest,
// deactivated). Byte-stable for fixed input.
std::string serialize_trace(const MoatTrace& trace);

// Active components of a trace on the open interval following `time`,
// reconstructed from merge events and first-deactivation times. Used by the
// verification checkers.
std::vector<SetKey> components_after(const MoatTrace& trace, const Rational& time);
std::vector<SetKey> active_sets_after(const MoatTrace& trace, const Rational& time);

}  // namespace sf
