// Command-line front end. Talks to the solver exclusively through the
// steinerforest C API.

#include <steinerforest.h>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace {

int status_to_exit(sf_status status) {
  switch (status) {
    case SF_OK: return 0;
    case SF_ERR_CAPACITY: return 1;
    case SF_ERR_INVALID_ARGUMENT:
    case SF_ERR_PARSE: return 2;
    default: return 1;
  }
}

int report_failure(sf_status status) {
  std::cerr << "error: " << sf_last_error() << "\n";
  return status_to_exit(status);
}

struct InstanceHandle {
  sf_instance* ptr = nullptr;
  ~InstanceHandle() { sf_instance_free(ptr); }
};

struct SolutionHandle {
  sf_solution* ptr = nullptr;
  ~SolutionHandle() { sf_solution_free(ptr); }
};

struct ApiString {
  char* ptr = nullptr;
  ~ApiString() { sf_string_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

bool write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return true;
  }
  std::ofstream out(path);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return false;
  }
  out << content;
  return true;
}

std::vector<int> parse_csv_ints(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(std::stoi(item));
  }
  return out;
}

// Terminals for --algo st may also ride in a "# TERMINALS a,b,c" comment
// emitted by `gen --family binary`.
std::string terminals_from_file(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find("# TERMINALS ");
    if (pos != std::string::npos) return line.substr(pos + 12);
  }
  return "";
}

long long elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

struct BenchRow {
  std::string instance;
  std::string algo;
  std::string cost;
  std::string opt = "NA";
  std::string ratio = "NA";
  long long runtime_ms = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steiner forest solver"};
  app.require_subcommand(1);

  // ---- gen ----
  auto* gen = app.add_subcommand("gen", "generate a benchmark instance");
  std::string family, xi = "1/100", density = "1/2", gen_out;
  int gn = 3, gm = 4, gh = 3, gk = 3, petals = 3;
  unsigned long long seed = 1;
  gen->add_option("--family", family, "wheel|grid|binary|horseshoe|gluttonous|random")
      ->required();
  gen->add_option("--xi", xi, "perturbation parameter as num/den");
  gen->add_option("--n", gn, "rows (grid/horseshoe), copies (gluttonous), size (random)");
  gen->add_option("--m", gm, "columns (grid)");
  gen->add_option("--h", gh, "height (binary)");
  gen->add_option("--k", gk, "layers (gluttonous)");
  gen->add_option("--petals", petals, "demand pairs per row (horseshoe)");
  gen->add_option("--density", density, "edge probability (random)");
  gen->add_option("--seed", seed, "seed (random)");
  gen->add_option("--out", gen_out, "output file (stdout if omitted)");

  // ---- solve ----
  auto* solve = app.add_subcommand("solve", "run a solver on an instance file");
  std::string algo, solve_in, beta, epsilon, eta, params, terminals_csv;
  solve->add_option("--algo", algo, "legacy|ls|main|st|gluttonous|exact")->required();
  solve->add_option("--in", solve_in, "instance file")->required();
  solve->add_option("--beta", beta, "local search beta as num/den");
  solve->add_option("--epsilon", epsilon, "extension epsilon as num/den");
  solve->add_option("--eta", eta, "autarkic eta as num/den");
  solve->add_option("--params", params, "'table2' selects the published defaults");
  solve->add_option("--terminals", terminals_csv, "terminal ids for --algo st");

  // ---- trace ----
  auto* trace = app.add_subcommand("trace", "emit a moat growing trace document");
  std::string trace_algo = "legacy", trace_in, trace_beta, trace_out;
  trace->add_option("--algo", trace_algo, "legacy|ls");
  trace->add_option("--in", trace_in, "instance file")->required();
  trace->add_option("--beta", trace_beta, "beta for --algo ls");
  trace->add_option("--out", trace_out, "output file (stdout if omitted)");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "run paper-property checkers");
  std::string table_file, verify_in, verify_beta;
  bool claw = false, assignments = false, refinement = false, builtin_table = false;
  int samples = 0;
  unsigned long long claw_seed = 1;
  verify->add_option("--params-table", table_file, "verify a parameter table file");
  verify->add_flag("--params-table2", builtin_table, "verify the built-in published table");
  verify->add_flag("--claw", claw, "claw-property falsifier");
  verify->add_flag("--assignments", assignments, "assignment identities against the oracle");
  verify->add_flag("--refinement", refinement, "legacy vs boosted refinement");
  verify->add_option("--in", verify_in, "instance file for --claw/--assignments/--refinement");
  verify->add_option("--beta", verify_beta, "beta as num/den");
  verify->add_option("--samples", samples, "claw samples (0 = full enumeration)");
  verify->add_option("--seed", claw_seed, "claw sampling seed");

  // ---- bench ----
  auto* bench = app.add_subcommand("bench", "run the benchmark grid");
  std::string families = "wheel,grid,binary,horseshoe,gluttonous,random", bench_out;
  bench->add_option("--families", families, "comma-separated family list");
  bench->add_option("--out", bench_out, "report file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (gen->parsed()) {
    InstanceHandle instance;
    ApiString terminals;
    sf_status status = SF_OK;
    if (family == "wheel") status = sf_gen_wheel(xi.c_str(), &instance.ptr);
    else if (family == "grid") status = sf_gen_grid(gn, gm, xi.c_str(), &instance.ptr);
    else if (family == "binary") status = sf_gen_binary(gh, xi.c_str(), &instance.ptr, &terminals.ptr);
    else if (family == "horseshoe") status = sf_gen_horseshoe(gn, petals, xi.c_str(), &instance.ptr);
    else if (family == "gluttonous") status = sf_gen_gluttonous(gn, gk, &instance.ptr);
    else if (family == "random") status = sf_gen_random(gn, density.c_str(), seed, &instance.ptr);
    else {
      std::cerr << "error: unknown family '" << family << "'\n";
      return 2;
    }
    if (status != SF_OK) return report_failure(status);
    ApiString text;
    status = sf_instance_serialize(instance.ptr, &text.ptr);
    if (status != SF_OK) return report_failure(status);
    std::string content = text.str();
    if (terminals.ptr && *terminals.ptr)
      content = "# TERMINALS " + terminals.str() + "\n" + content;
    return write_output(gen_out, content) ? 0 : 1;
  }

  if (solve->parsed()) {
    if (!params.empty() && params != "table2") {
      std::cerr << "error: unknown parameter preset '" << params << "'\n";
      return 2;
    }
    InstanceHandle instance;
    sf_status status = sf_instance_read_file(solve_in.c_str(), &instance.ptr);
    if (status != SF_OK) return report_failure(status);
    SolutionHandle solution;
    const char* beta_arg = beta.empty() ? nullptr : beta.c_str();
    const char* epsilon_arg = epsilon.empty() ? nullptr : epsilon.c_str();
    const char* eta_arg = eta.empty() ? nullptr : eta.c_str();
    if (algo == "legacy") status = sf_solve_legacy(instance.ptr, &solution.ptr);
    else if (algo == "ls") status = sf_solve_local_search(instance.ptr, beta_arg, &solution.ptr);
    else if (algo == "main")
      status = sf_solve_main(instance.ptr, beta_arg, epsilon_arg, eta_arg, &solution.ptr);
    else if (algo == "gluttonous") status = sf_solve_gluttonous(instance.ptr, &solution.ptr);
    else if (algo == "exact") status = sf_solve_exact(instance.ptr, &solution.ptr);
    else if (algo == "st") {
      std::string csv = terminals_csv.empty() ? terminals_from_file(solve_in) : terminals_csv;
      std::vector<int> terms = parse_csv_ints(csv);
      if (terms.empty()) {
        std::cerr << "error: --algo st needs --terminals or a # TERMINALS header\n";
        return 2;
      }
      status = sf_solve_steiner_tree(instance.ptr, terms.data(), terms.size(), beta_arg,
                                     &solution.ptr);
    } else {
      std::cerr << "error: unknown algorithm '" << algo << "'\n";
      return 2;
    }
    if (status != SF_OK) return report_failure(status);
    ApiString cost, edges, report;
    sf_solution_cost(solution.ptr, &cost.ptr);
    sf_solution_edges(solution.ptr, &edges.ptr);
    sf_solution_report(solution.ptr, &report.ptr);
    std::cout << "algo: " << algo << "\n";
    std::cout << report.str();
    std::cout << "cost: " << cost.str() << "\n";
    std::cout << "edges: " << edges.str() << "\n";
    return 0;
  }

  if (trace->parsed()) {
    InstanceHandle instance;
    sf_status status = sf_instance_read_file(trace_in.c_str(), &instance.ptr);
    if (status != SF_OK) return report_failure(status);
    ApiString json;
    const char* beta_arg = trace_beta.empty() ? nullptr : trace_beta.c_str();
    if (trace_algo == "legacy") status = sf_trace_legacy(instance.ptr, &json.ptr);
    else if (trace_algo == "ls")
      status = sf_trace_local_search(instance.ptr, beta_arg, &json.ptr);
    else {
      std::cerr << "error: unknown trace algorithm '" << trace_algo << "'\n";
      return 2;
    }
    if (status != SF_OK) return report_failure(status);
    return write_output(trace_out, json.str()) ? 0 : 1;
  }

  if (verify->parsed()) {
    const char* beta_arg = verify_beta.empty() ? nullptr : verify_beta.c_str();
    if (!table_file.empty() || builtin_table) {
      std::string table_text;
      if (!table_file.empty()) {
        std::ifstream in(table_file);
        if (!in) {
          std::cerr << "error: cannot open " << table_file << "\n";
          return 2;
        }
        std::stringstream buffer;
        buffer << in.rdbuf();
        table_text = buffer.str();
      }
      int ok = 0;
      ApiString report;
      sf_status status = sf_verify_parameters(table_text.empty() ? nullptr : table_text.c_str(),
                                              &ok, &report.ptr);
      if (status != SF_OK) return report_failure(status);
      std::cout << report.str();
      return ok ? 0 : 1;
    }
    if (verify_in.empty()) {
      std::cerr << "error: verify needs --params-table/--params-table2 or --in\n";
      return 2;
    }
    InstanceHandle instance;
    sf_status status = sf_instance_read_file(verify_in.c_str(), &instance.ptr);
    if (status != SF_OK) return report_failure(status);
    bool all_ok = true;
    if (claw) {
      int violations = 0;
      ApiString report;
      status = sf_verify_claw(instance.ptr, beta_arg, samples, claw_seed, &violations,
                              &report.ptr);
      if (status != SF_OK) return report_failure(status);
      std::cout << report.str();
      all_ok = all_ok && violations == 0;
    }
    if (assignments) {
      ApiString report;
      status = sf_verify_assignments(instance.ptr, &report.ptr);
      if (status != SF_OK) return report_failure(status);
      std::cout << report.str();
    }
    if (refinement) {
      int ok = 0;
      status = sf_verify_refinement(instance.ptr, beta_arg, &ok);
      if (status != SF_OK) return report_failure(status);
      std::cout << "refinement: " << (ok ? "ok" : "violated") << "\n";
      all_ok = all_ok && ok;
    }
    if (!claw && !assignments && !refinement) {
      std::cerr << "error: choose --claw, --assignments or --refinement\n";
      return 2;
    }
    return all_ok ? 0 : 1;
  }

  if (bench->parsed()) {
    std::vector<BenchRow> rows;
    auto run_algo = [&rows](const std::string& name, sf_instance* instance,
                            const std::string& algo_name, const std::string& opt_cost) {
      auto start = std::chrono::steady_clock::now();
      SolutionHandle solution;
      sf_status status = SF_OK;
      if (algo_name == "legacy") status = sf_solve_legacy(instance, &solution.ptr);
      else if (algo_name == "main")
        status = sf_solve_main(instance, nullptr, nullptr, nullptr, &solution.ptr);
      else if (algo_name == "gluttonous") status = sf_solve_gluttonous(instance, &solution.ptr);
      if (status != SF_OK) return;
      BenchRow row;
      row.instance = name;
      row.algo = algo_name;
      row.runtime_ms = elapsed_ms(start);
      ApiString cost;
      sf_solution_cost(solution.ptr, &cost.ptr);
      row.cost = cost.str();
      if (!opt_cost.empty()) {
        row.opt = opt_cost;
        ApiString ratio;
        if (sf_ratio_decimal(row.cost.c_str(), opt_cost.c_str(), 12, &ratio.ptr) == SF_OK)
          row.ratio = ratio.str();
      }
      rows.push_back(std::move(row));
    };
    auto bench_instance = [&run_algo](const std::string& name, sf_instance* instance,
                                      bool include_gluttonous) {
      std::string opt_cost;
      SolutionHandle opt;
      if (sf_solve_exact(instance, &opt.ptr) == SF_OK) {
        ApiString cost;
        sf_solution_cost(opt.ptr, &cost.ptr);
        opt_cost = cost.str();
      }
      run_algo(name, instance, "legacy", opt_cost);
      run_algo(name, instance, "main", opt_cost);
      if (include_gluttonous) run_algo(name, instance, "gluttonous", opt_cost);
    };

    std::stringstream family_list(families);
    std::string fam;
    while (std::getline(family_list, fam, ',')) {
      InstanceHandle instance;
      if (fam == "wheel") {
        if (sf_gen_wheel("1/100", &instance.ptr) == SF_OK)
          bench_instance("wheel-xi0.01", instance.ptr, false);
      } else if (fam == "grid") {
        if (sf_gen_grid(4, 4, "1/100", &instance.ptr) == SF_OK)
          bench_instance("grid-4x4", instance.ptr, false);
      } else if (fam == "binary") {
        if (sf_gen_binary(3, "1/100", &instance.ptr, nullptr) == SF_OK) {
          // solve the embedded forest formulation via the st driver
          auto start = std::chrono::steady_clock::now();
          SolutionHandle solution;
          if (sf_solve_steiner_tree(instance.ptr, nullptr, 0, nullptr, &solution.ptr) == SF_OK) {
            BenchRow row;
            row.instance = "binary-h3";
            row.algo = "st";
            row.runtime_ms = elapsed_ms(start);
            ApiString cost;
            sf_solution_cost(solution.ptr, &cost.ptr);
            row.cost = cost.str();
            rows.push_back(std::move(row));
          }
        }
      } else if (fam == "horseshoe") {
        if (sf_gen_horseshoe(3, 3, "1/100", &instance.ptr) == SF_OK)
          bench_instance("horseshoe-n3", instance.ptr, false);
      } else if (fam == "gluttonous") {
        if (sf_gen_gluttonous(3, 3, &instance.ptr) == SF_OK) {
          auto start = std::chrono::steady_clock::now();
          SolutionHandle solution;
          if (sf_solve_gluttonous(instance.ptr, &solution.ptr) == SF_OK) {
            BenchRow row;
            row.instance = "gluttonous-n3k3";
            row.algo = "gluttonous";
            row.runtime_ms = elapsed_ms(start);
            ApiString cost;
            sf_solution_cost(solution.ptr, &cost.ptr);
            row.cost = cost.str();
            rows.push_back(std::move(row));
          }
        }
      } else if (fam == "random") {
        for (unsigned long long s = 1; s <= 5; ++s) {
          InstanceHandle random_instance;
          if (sf_gen_random(7, "1/2", s, &random_instance.ptr) == SF_OK)
            bench_instance("random-s" + std::to_string(s), random_instance.ptr, true);
        }
      } else if (!fam.empty()) {
        std::cerr << "error: unknown family '" << fam << "'\n";
        return 2;
      }
    }

    std::sort(rows.begin(), rows.end(), [](const BenchRow& a, const BenchRow& b) {
      return std::tie(a.instance, a.algo) < std::tie(b.instance, b.algo);
    });
    std::ostringstream out;
    out << "instance\talgo\tcost\topt\tratio\truntime_ms\n";
    for (const BenchRow& row : rows)
      out << row.instance << "\t" << row.algo << "\t" << row.cost << "\t" << row.opt << "\t"
          << row.ratio << "\t" << row.runtime_ms << "\n";
    return write_output(bench_out, out.str()) ? 0 : 1;
  }

  return 2;
}
