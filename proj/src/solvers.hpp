#pragma once

#include "autarkic.hpp"
#include "engine.hpp"
#include "extension.hpp"
#include "local_search.hpp"

#include <optional>
#include <string>

namespace sf {

struct MainParameters {
  Rational beta;
  Rational epsilon;
  Rational eta;

  // Table 2's exact fractions.
  static MainParameters defaults();
};

enum class SolutionKind { LS, XT, AP };

struct SolveReport {
  SolutionKind chosen;
  Rational cost_ls;
  Rational cost_xt;
  Rational cost_ap;
  Forest forest_ls;
  Forest forest_xt;
  Forest forest_ap;
  LocalSearchResult ls;       // boosted execution
  LocalSearchResult ls_ext;   // extended-boosted execution
  Fingerprint t_plus;
  Fingerprint t_ext;
  AutarkicOutcome autarkic;
};

const char* solution_kind_name(SolutionKind kind);

// Pipeline: legacy -> local search -> extend -> local search -> autarkic
// pairs; returns the cheapest of the three candidate forests.
std::pair<Forest, SolveReport> solve_main(const Instance& instance, const MainParameters& params);

// Embeds the terminal set, runs legacy + local search, and maps the forest
// back to real edges. Root defaults to the smallest terminal id.
Forest solve_steiner_tree(const Instance& graph, const std::vector<VertexId>& terminals,
                          const Rational& beta);

// Greedy baseline: repeatedly joins the closest pair of unsatisfied vertices
// in distinct components through its shortest path, tracking connectivity
// with zero-cost context links.
Forest gluttonous(const Instance& instance);

// Exact minimum-cost feasible edge subset. Dispatches to branch-and-bound
// over forests (|E| <= 20) or, for embedded Steiner-tree-shaped instances,
// to Dreyfus-Wagner over terminal subsets (<= 12 terminals). Throws a
// capacity error beyond those sizes.
std::pair<Rational, Forest> exact_opt(const Instance& instance);

// Dreyfus-Wagner on a plain graph with an explicit terminal set.
std::pair<Rational, Forest> exact_steiner_tree(const Instance& graph,
                                               const std::vector<VertexId>& terminals);

struct CertificateTable {
  Rational alpha, beta, lambda, epsilon, w, w_prime, eta, kappa, gamma;
  Rational omega_1, omega_2, omega_3;

  // The published parameter values, as exact fractions.
  static CertificateTable table2();
};

struct ParameterVerdict {
  bool ok = false;
  std::vector<std::string> violated;
};

// Evaluates every certificate constraint in exact rational arithmetic: the
// range constraints, the two w' bounds, the kappa and gamma defining
// equations, the weight-sum identity, and the four weighted kappa bounds.
ParameterVerdict verify_parameters(const CertificateTable& table);

}  // namespace sf
