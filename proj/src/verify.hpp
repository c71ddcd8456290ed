#pragma once

#include "engine.hpp"
#include "local_search.hpp"

namespace sf {

// Total order on vertices: later-satisfied vertices rank higher; ties break
// by the pair's smaller id, then the larger id within the pair.
struct PriorityOrder {
  std::vector<int> rank;  // rank[v] = position in ascending priority

  bool higher(VertexId a, VertexId b) const { return rank[a] > rank[b]; }
};

PriorityOrder compute_priorities(const Instance& instance, const Fingerprint& legacy_fp);

enum class AssignmentMode { prefix_time, exclusive };

struct Assignment {
  std::vector<Rational> r;                     // total per vertex
  std::map<std::pair<SetKey, VertexId>, Rational> per_set;
};

// Replays a trace; at every growth interval of every base-phase active set,
// distributes growth to the representatives of Base(S, tau): fraction 1 each
// in prefix-time mode, 1/|Reps| in exclusive mode. The optimal forest only
// defines the components used by Reps.
Assignment compute_assignment(const MoatTrace& trace, const Instance& instance,
                              const Forest& opt, const PriorityOrder& priorities,
                              const Fingerprint& legacy_fp, AssignmentMode mode);

struct ClawViolation {
  VertexId u, v, w, q;
  Rational tau, tau_prime;
  Rational lhs, rhs;
};

// Claw-property falsifier over the final boosted execution of a terminated
// local search: samples (or, with samples == 0, enumerates) triples that
// connect actively plus a fourth vertex q, and reports every violation of
//   tau + tau' <= (d(q,u)+d(q,v)+d(q,w))/2 + beta*min(d(q,u),d(q,v),d(q,w))/2.
std::vector<ClawViolation> check_claw(const Instance& instance,
                                      const LocalSearchResult& ls_result,
                                      const Rational& beta, int samples,
                                      unsigned long long seed);

// True iff at every moment the active sets (and components) of the
// smaller-fingerprint trace refine those of the larger-fingerprint trace.
bool check_refinement(const MoatTrace& trace_small, const MoatTrace& trace_large);

}  // namespace sf
