#pragma once

#include "engine.hpp"

namespace sf {

// Derives per-vertex potentials from the base-phase growth of the boosted
// execution (each set's y_b goes to its member with maximal t_plus, ties to
// the smallest id) and runs the extended engine on epsilon-scaled potentials.
// Returns the extended fingerprint.
Fingerprint extend(const Instance& instance, const Fingerprint& t_plus,
                   const Fingerprint& t_tilde, const std::map<SetKey, Rational>& y_b,
                   const Rational& epsilon);

// Same, but also exposes the extended-run trace.
struct ExtendOutcome {
  Fingerprint t_out;
  std::vector<Rational> potentials;
  MoatTrace trace;
};
ExtendOutcome extend_with_trace(const Instance& instance, const Fingerprint& t_plus,
                                const Fingerprint& t_tilde,
                                const std::map<SetKey, Rational>& y_b,
                                const Rational& epsilon);

}  // namespace sf
