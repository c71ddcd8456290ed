#include "steinerforest.h"

#include "autarkic.hpp"
#include "engine.hpp"
#include "extension.hpp"
#include "generators.hpp"
#include "graph.hpp"
#include "local_search.hpp"
#include "solvers.hpp"
#include "verify.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

using namespace sf;

struct sf_instance {
  Instance value;
  std::vector<VertexId> terminals;  // populated by the binary-tree generator
};

struct sf_solution {
  Forest forest;
  Rational cost;
  std::string report;
};

namespace {

thread_local std::string g_last_error;

sf_status fail(sf_status code, const std::string& message) {
  g_last_error = message;
  return code;
}

sf_status from_error(const Error& error) {
  switch (error.code()) {
    case ErrorCode::invalid_argument: return fail(SF_ERR_INVALID_ARGUMENT, error.what());
    case ErrorCode::parse: return fail(SF_ERR_PARSE, error.what());
    case ErrorCode::infeasible: return fail(SF_ERR_INFEASIBLE, error.what());
    case ErrorCode::capacity: return fail(SF_ERR_CAPACITY, error.what());
    case ErrorCode::internal: return fail(SF_ERR_INTERNAL, error.what());
  }
  return fail(SF_ERR_INTERNAL, error.what());
}

template <typename Fn>
sf_status guarded(Fn&& fn) {
  try {
    fn();
    return SF_OK;
  } catch (const Error& error) {
    return from_error(error);
  } catch (const std::exception& ex) {
    return fail(SF_ERR_INVALID_ARGUMENT, ex.what());
  }
}

char* dup_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

Rational parse_or(const char* text, const char* fallback) {
  return rat_parse(text ? text : fallback);
}

std::string forest_csv(const Forest& forest) {
  std::ostringstream out;
  bool first = true;
  for (EdgeId e : forest.edge_ids) {
    if (!first) out << ",";
    out << e;
    first = false;
  }
  return out.str();
}

sf_solution* make_solution(const Instance& instance, Forest forest, std::string report = {}) {
  auto* out = new sf_solution;
  out->cost = forest_cost(instance, forest);
  out->forest = std::move(forest);
  out->report = std::move(report);
  return out;
}

}  // namespace

extern "C" {

const char* sf_last_error(void) { return g_last_error.c_str(); }

void sf_string_free(char* text) { std::free(text); }

void sf_instance_free(sf_instance* instance) { delete instance; }

void sf_solution_free(sf_solution* solution) { delete solution; }

sf_status sf_instance_parse(const char* text, sf_instance** out) {
  if (!text || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sf_instance{parse_instance_text(text), {}}; });
}

sf_status sf_instance_read_file(const char* path, sf_instance** out) {
  if (!path || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::parse, std::string("cannot open ") + path);
    *out = new sf_instance{parse_instance(in), {}};
  });
}

sf_status sf_instance_serialize(const sf_instance* instance, char** out_text) {
  if (!instance || !out_text) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out_text = dup_string(serialize_instance(instance->value)); });
}

sf_status sf_instance_validate(const sf_instance* instance) {
  if (!instance) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { validate_instance(instance->value); });
}

int sf_instance_vertex_count(const sf_instance* instance) {
  return instance ? instance->value.vertex_count : -1;
}

int sf_instance_edge_count(const sf_instance* instance) {
  return instance ? static_cast<int>(instance->value.edges.size()) : -1;
}

sf_status sf_gen_wheel(const char* xi, sf_instance** out) {
  if (!out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sf_instance{gen_wheel(parse_or(xi, "1/100")), {}}; });
}

sf_status sf_gen_grid(int n, int m, const char* xi, sf_instance** out) {
  if (!out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sf_instance{gen_grid(n, m, parse_or(xi, "1/100")), {}}; });
}

sf_status sf_gen_binary(int h, const char* xi, sf_instance** out, char** out_terminals_csv) {
  if (!out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    BinaryTreeInstance generated = gen_binary(h, parse_or(xi, "1/100"));
    auto* handle = new sf_instance{std::move(generated.graph), std::move(generated.terminals)};
    *out = handle;
    if (out_terminals_csv) {
      std::ostringstream csv;
      for (std::size_t i = 0; i < handle->terminals.size(); ++i)
        csv << (i ? "," : "") << handle->terminals[i];
      *out_terminals_csv = dup_string(csv.str());
    }
  });
}

sf_status sf_gen_horseshoe(int n, int petals, const char* xi, sf_instance** out) {
  if (!out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = new sf_instance{gen_horseshoe(n, petals, parse_or(xi, "1/100")), {}}; });
}

sf_status sf_gen_gluttonous(int n, int k, sf_instance** out) {
  if (!out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = new sf_instance{gen_gluttonous(n, k).instance, {}}; });
}

sf_status sf_gen_random(int n, const char* density, unsigned long long seed,
                        sf_instance** out) {
  if (!out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded(
      [&] { *out = new sf_instance{gen_random(n, parse_or(density, "1/2"), seed), {}}; });
}

sf_status sf_solve_legacy(const sf_instance* instance, sf_solution** out) {
  if (!instance || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    LegacyResult result = run_legacy(instance->value);
    std::ostringstream report;
    report << "total_growth: " << rat_str(result.trace.ledger.total()) << "\n";
    *out = make_solution(instance->value, result.forest, report.str());
  });
}

sf_status sf_solve_local_search(const sf_instance* instance, const char* beta,
                                sf_solution** out) {
  if (!instance || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    LegacyResult legacy = run_legacy(instance->value);
    LocalSearchResult ls = local_search(instance->value, legacy.fingerprint,
                                        parse_or(beta, "1/10"));
    std::ostringstream report;
    report << "iterations: " << ls.iterations << "\n";
    report << "total_win: " << rat_str(ls.total_win) << "\n";
    report << "total_loss: " << rat_str(ls.total_loss) << "\n";
    report << "total_growth: " << rat_str(ls.outcome.trace.ledger.total()) << "\n";
    *out = make_solution(instance->value, ls.forest, report.str());
  });
}

sf_status sf_solve_main(const sf_instance* instance, const char* beta, const char* epsilon,
                        const char* eta, sf_solution** out) {
  if (!instance || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    MainParameters params = MainParameters::defaults();
    if (beta) params.beta = rat_parse(beta);
    if (epsilon) params.epsilon = rat_parse(epsilon);
    if (eta) params.eta = rat_parse(eta);
    auto [forest, report] = solve_main(instance->value, params);
    std::ostringstream text;
    text << "chosen: " << solution_kind_name(report.chosen) << "\n";
    text << "cost_ls: " << rat_str(report.cost_ls) << "\n";
    text << "cost_xt: " << rat_str(report.cost_xt) << "\n";
    text << "cost_ap: " << rat_str(report.cost_ap) << "\n";
    *out = make_solution(instance->value, forest, text.str());
  });
}

sf_status sf_solve_gluttonous(const sf_instance* instance, sf_solution** out) {
  if (!instance || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = make_solution(instance->value, gluttonous(instance->value)); });
}

sf_status sf_solve_exact(const sf_instance* instance, sf_solution** out) {
  if (!instance || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    auto [cost, forest] = exact_opt(instance->value);
    *out = make_solution(instance->value, forest);
  });
}

sf_status sf_solve_steiner_tree(const sf_instance* instance, const int* terminals,
                                size_t terminal_count, const char* beta, sf_solution** out) {
  if (!instance || !out) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    std::vector<VertexId> terms;
    if (terminals && terminal_count > 0) terms.assign(terminals, terminals + terminal_count);
    else terms = instance->terminals;
    Forest forest = solve_steiner_tree(instance->value, terms, parse_or(beta, "29/70"));
    *out = make_solution(instance->value, forest);
  });
}

sf_status sf_solution_cost(const sf_solution* solution, char** out_cost) {
  if (!solution || !out_cost) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  *out_cost = dup_string(rat_str(solution->cost));
  return SF_OK;
}

sf_status sf_solution_edges(const sf_solution* solution, char** out_csv) {
  if (!solution || !out_csv) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  *out_csv = dup_string(forest_csv(solution->forest));
  return SF_OK;
}

sf_status sf_solution_report(const sf_solution* solution, char** out_text) {
  if (!solution || !out_text) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  *out_text = dup_string(solution->report);
  return SF_OK;
}

sf_status sf_ratio_decimal(const char* numerator, const char* denominator, int digits,
                           char** out_text) {
  if (!numerator || !denominator || !out_text || digits < 0)
    return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    Rational a = rat_parse(numerator), b = rat_parse(denominator);
    if (b == 0) throw Error(ErrorCode::invalid_argument, "division by zero");
    *out_text = dup_string(rat_decimal(a / b, digits));
  });
}

sf_status sf_trace_legacy(const sf_instance* instance, char** out_json) {
  if (!instance || !out_json) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    LegacyResult result = run_legacy(instance->value);
    *out_json = dup_string(serialize_trace(result.trace));
  });
}

sf_status sf_trace_local_search(const sf_instance* instance, const char* beta,
                                char** out_json) {
  if (!instance || !out_json) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    LegacyResult legacy = run_legacy(instance->value);
    LocalSearchResult ls =
        local_search(instance->value, legacy.fingerprint, parse_or(beta, "1/10"));
    *out_json = dup_string(serialize_trace(ls.outcome.trace));
  });
}

sf_status sf_verify_parameters(const char* table_text, int* out_ok, char** out_report) {
  if (!out_ok) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    CertificateTable table = CertificateTable::table2();
    if (table_text) {
      std::istringstream in(table_text);
      std::string name, value;
      std::map<std::string, Rational*> fields{
          {"alpha", &table.alpha},   {"beta", &table.beta},     {"lambda", &table.lambda},
          {"epsilon", &table.epsilon}, {"w", &table.w},         {"w_prime", &table.w_prime},
          {"eta", &table.eta},       {"kappa", &table.kappa},   {"gamma", &table.gamma},
          {"omega_1", &table.omega_1}, {"omega_2", &table.omega_2}, {"omega_3", &table.omega_3}};
      while (in >> name >> value) {
        auto it = fields.find(name);
        if (it == fields.end())
          throw Error(ErrorCode::parse, "unknown parameter '" + name + "'");
        *it->second = rat_parse(value);
      }
    }
    ParameterVerdict verdict = verify_parameters(table);
    *out_ok = verdict.ok ? 1 : 0;
    if (out_report) {
      std::ostringstream report;
      if (verdict.ok) {
        report << "OK: alpha = " << rat_str(table.alpha) << "\n";
        report << "approximation factor 2 - 2*alpha = " << rat_str(2 - 2 * table.alpha) << "\n";
      } else {
        for (const std::string& name : verdict.violated) report << "VIOLATED: " << name << "\n";
      }
      *out_report = dup_string(report.str());
    }
  });
}

sf_status sf_verify_claw(const sf_instance* instance, const char* beta, int samples,
                         unsigned long long seed, int* out_violations, char** out_report) {
  if (!instance || !out_violations) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    Rational b = parse_or(beta, "1/10");
    LegacyResult legacy = run_legacy(instance->value);
    LocalSearchResult ls = local_search(instance->value, legacy.fingerprint, b);
    if (samples <= 0 && instance->value.vertex_count > 24)
      throw Error(ErrorCode::capacity, "full claw enumeration is limited to small instances");
    auto violations = check_claw(instance->value, ls, b, samples, seed);
    *out_violations = static_cast<int>(violations.size());
    if (out_report) {
      std::ostringstream report;
      for (const ClawViolation& v : violations)
        report << "violation: triple (" << v.u << "," << v.v << "," << v.w << ") q=" << v.q
               << " tau=" << rat_str(v.tau) << " tau'=" << rat_str(v.tau_prime) << "\n";
      if (violations.empty()) report << "no claw violations\n";
      *out_report = dup_string(report.str());
    }
  });
}

sf_status sf_verify_assignments(const sf_instance* instance, char** out_report) {
  if (!instance) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const Instance& g = instance->value;
    auto [opt_cost, opt] = exact_opt(g);
    LegacyResult legacy = run_legacy(g);
    PriorityOrder priorities = compute_priorities(g, legacy.fingerprint);
    Assignment prefix = compute_assignment(legacy.trace, g, opt, priorities,
                                           legacy.fingerprint, AssignmentMode::prefix_time);
    Rational total_growth = legacy.trace.ledger.total();
    Rational total_prefix = 0;
    for (const Rational& value : prefix.r) total_prefix += value;

    LocalSearchResult ls = local_search(g, legacy.fingerprint, rat(1, 10));
    Assignment exclusive = compute_assignment(ls.outcome.trace, g, opt, priorities,
                                              legacy.fingerprint, AssignmentMode::exclusive);
    Rational total_exclusive = 0;
    for (const Rational& value : exclusive.r) total_exclusive += value;

    std::ostringstream report;
    report << "total_growth: " << rat_str(total_growth) << "\n";
    report << "sum_prefix_assignment: " << rat_str(total_prefix) << "\n";
    report << "sum_exclusive_assignment: " << rat_str(total_exclusive) << "\n";
    report << "y_base: " << rat_str(ls.outcome.y_base) << "\n";
    report << "growth_bounded_by_prefix: " << (total_growth <= total_prefix ? "yes" : "no")
           << "\n";
    report << "exclusive_matches_y_base: " << (total_exclusive == ls.outcome.y_base ? "yes" : "no")
           << "\n";
    if (out_report) *out_report = dup_string(report.str());
  });
}

sf_status sf_verify_refinement(const sf_instance* instance, const char* beta, int* out_ok) {
  if (!instance || !out_ok) return fail(SF_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    LegacyResult legacy = run_legacy(instance->value);
    LocalSearchResult ls =
        local_search(instance->value, legacy.fingerprint, parse_or(beta, "1/10"));
    *out_ok = check_refinement(legacy.trace, ls.outcome.trace) ? 1 : 0;
  });
}

}  // extern "C"
