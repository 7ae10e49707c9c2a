// minsatc: compile a formula with costs into a solvable artifact, solve
// instances against it, sweep before/after performance curves, and audit
// stored artifacts.

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "minsat/driver.hpp"
#include "minsat/oracle.hpp"

namespace {

constexpr int kExitOptimal = 0;
constexpr int kExitUnsat = 20;
constexpr int kExitError = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

minsat::RawCosts make_costs(int num_vars, minsat::Cost true_cost,
                            minsat::Cost false_cost) {
  minsat::RawCosts raw;
  raw.pairs.assign(static_cast<size_t>(num_vars), {true_cost, false_cost});
  return raw;
}

// "3=T,7=F" over original-space variables.
minsat::Fixing parse_fixing_spec(const std::string& text) {
  minsat::Fixing out;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    const size_t eq = token.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 != token.size() - 1) {
      throw std::runtime_error("bad fixing token '" + token +
                               "' (want VAR=T or VAR=F)");
    }
    int var = 0;
    try {
      size_t used = 0;
      var = std::stoi(token.substr(0, eq), &used);
      if (used != eq) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw std::runtime_error("bad variable in fixing token '" + token + "'");
    }
    const char v = token[eq + 1];
    bool value;
    if (v == 'T' || v == 't' || v == '1') {
      value = true;
    } else if (v == 'F' || v == 'f' || v == '0') {
      value = false;
    } else {
      throw std::runtime_error("bad value in fixing token '" + token +
                               "' (want T or F)");
    }
    if (var <= 0) {
      throw std::runtime_error("variables in a fixing must be positive");
    }
    out.add(var, value);
  }
  return out;
}

minsat::SolveMode parse_solve_mode(const std::string& name) {
  if (name == "sat") return minsat::SolveMode::kSat;
  if (name == "minsat") return minsat::SolveMode::kMinsat;
  throw std::runtime_error("unknown mode '" + name +
                           "' (want sat or minsat)");
}

// Artifacts are JSON objects; anything else is treated as DIMACS.
bool looks_like_artifact(const std::string& text) {
  for (const char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{';
  }
  return false;
}

// Without a cost file every variable costs nothing either way, which makes
// the cost-aware machinery behave like plain SAT.
minsat::CompiledClass compile_inputs(const std::string& cnf_path,
                                     const std::string& costs_path,
                                     bool use_unit_costs) {
  const minsat::CnfFormula formula =
      minsat::parse_dimacs(read_file(cnf_path));
  minsat::RawCosts raw;
  if (!costs_path.empty()) {
    raw = minsat::parse_costs(read_file(costs_path), formula.num_vars);
  } else if (use_unit_costs) {
    raw = make_costs(formula.num_vars, 1, 0);
  } else {
    raw = make_costs(formula.num_vars, 0, 0);
  }
  return minsat::make_compiled(formula, raw);
}

void print_class_summary(const minsat::CompiledClass& compiled,
                         std::ostream& out) {
  size_t lemmas = 0;
  for (const auto& db : compiled.clause_db) lemmas += db.is_lemma ? 1 : 0;
  out << "vars: " << compiled.instance.formula.num_vars
      << "  clauses: " << compiled.clause_db.size() << " ("
      << compiled.original_clause_count << " original, " << lemmas
      << " learned)  cost-conditional: " << compiled.pairs.size() << "\n";
  out << "partition: easy=" << compiled.partition.easy.size()
      << " enumerated=" << compiled.partition.enumerated.size() << "\n";
  out << "hash: " << compiled.formula_hash << "\n";
}

void print_phase(const minsat::LearnPhase& phase, std::ostream& out) {
  out << (phase.mode == minsat::SolveMode::kSat ? "cost-blind"
                                                : "cost-aware")
      << " pass stopped: " << minsat::to_string(phase.stop) << " after "
      << phase.levels.size() << " level(s)\n";
  for (const minsat::LevelRecord& rec : phase.levels) {
    out << "  level " << rec.level << ": samples=" << rec.samples
        << " maxNodes=" << rec.max_nodes << " lemmas=" << rec.lemmas_added
        << " pairs=" << rec.pairs_added << " deleted=" << rec.clauses_deleted
        << "\n";
  }
}

int run_compile(const std::string& cnf_path, const std::string& costs_path,
                bool use_unit, const std::string& out_path,
                const std::string& mode, minsat::LearnConfig config) {
  if (mode != "sat" && mode != "minsat" && mode != "both") {
    throw std::runtime_error("unknown mode '" + mode +
                             "' (want sat, minsat, or both)");
  }
  minsat::CompiledClass compiled =
      compile_inputs(cnf_path, costs_path, use_unit);
  const size_t enumerated_before = compiled.partition.enumerated.size();

  if (mode == "sat" || mode == "both") {
    config.mode = minsat::SolveMode::kSat;
    minsat::learn(compiled, config);
    print_phase(compiled.log.phases.back(), std::cout);
  }
  if (mode == "minsat" || mode == "both") {
    config.mode = minsat::SolveMode::kMinsat;
    minsat::learn(compiled, config);
    print_phase(compiled.log.phases.back(), std::cout);
  }

  print_class_summary(compiled, std::cout);
  std::cout << "enumerated set: " << enumerated_before << " -> "
            << compiled.partition.enumerated.size() << "\n";
  minsat::save_artifact(compiled, out_path);
  std::cout << "wrote " << out_path << "\n";
  return 0;
}

int run_solve(const minsat::CompiledClass& compiled,
              const std::string& fixing_spec, minsat::SolveMode mode,
              bool no_pairs, int64_t budget) {
  const minsat::Fixing original_fixing = parse_fixing_spec(fixing_spec);
  const minsat::MinsatInstance& inst = compiled.instance;

  // The search runs in normalized space; user fixings are original-space.
  minsat::Fixing fixing;
  for (const auto& [var, value] : original_fixing.entries) {
    if (var > inst.formula.num_vars) {
      throw std::runtime_error("fixing mentions variable " +
                               std::to_string(var) + " beyond the formula");
    }
    fixing.add(var, value != inst.norm.is_flipped(var));
  }

  minsat::SolveOptions options;
  options.mode = mode;
  options.use_pairs = !no_pairs;
  options.node_budget = budget;
  const minsat::SolveResult res =
      minsat::solve(compiled.view(), fixing, options);

  if (res.budget_exhausted) {
    std::cout << "result: unknown (node budget exhausted)\n";
    return kExitError;
  }
  if (res.outcome == minsat::SolveOutcome::kUnsat) {
    std::cout << "result: unsat\n";
    std::cout << "nodes: " << res.stats.nodes_expanded
              << "  conflicts: " << res.stats.conflicts << "\n";
    return kExitUnsat;
  }

  std::cout << (mode == minsat::SolveMode::kSat ? "result: sat\n"
                                                : "result: optimal\n");
  std::cout << "objective: "
            << minsat::format_original_cost(inst.norm, res.cost)
            << " (normalized " << res.cost << ")\n";
  const minsat::Assignment original =
      minsat::to_original_space(inst, res.assignment);
  std::cout << "assignment:";
  for (minsat::Var v = 1; v <= inst.formula.num_vars; ++v) {
    std::cout << ' ' << (original.is_true(v) ? v : -v);
  }
  std::cout << "\n";
  std::cout << "nodes: " << res.stats.nodes_expanded
            << "  conflicts: " << res.stats.conflicts
            << "  bound-prunes: " << res.stats.bound_prunes
            << "  easy-prunes: " << res.stats.easy_form_prunes
            << "  pair-activations: " << res.stats.pair_activations << "\n";
  return kExitOptimal;
}

void append_curve_rows(const minsat::PerformanceCurve& curve,
                       std::ostream& out) {
  for (const minsat::CurvePoint& p : curve.points) {
    out << p.level << ',' << p.samples << ',' << p.mean_nodes << ','
        << p.max_nodes << ',' << p.mean_ms << ',' << p.max_ms << "\n";
  }
}

int run_bench(const std::string& cnf_path, const std::string& costs_path,
              bool use_unit, const std::string& artifact_path,
              minsat::CurveConfig config, const std::string& csv_path) {
  const minsat::CompiledClass raw =
      compile_inputs(cnf_path, costs_path, use_unit);
  const minsat::PerformanceCurve before = minsat::estimate_curve(raw, config);

  std::ostringstream csv;
  csv << "# bench " << cnf_path << "\n";
  csv << "# vars=" << raw.instance.formula.num_vars
      << " clauses=" << raw.original_clause_count
      << " hash=" << raw.formula_hash << "\n";
  csv << "level,samples,mean_nodes,max_nodes,mean_ms,max_ms\n";
  csv << "# before learning\n";
  append_curve_rows(before, csv);

  std::ostringstream summary;
  summary << "worst_before=" << before.peak_max_nodes;

  if (!artifact_path.empty()) {
    const minsat::CompiledClass after_class =
        minsat::load_artifact(artifact_path);
    if (after_class.formula_hash != raw.formula_hash) {
      throw std::runtime_error(
          "artifact " + artifact_path +
          " was built from a different formula than " + cnf_path);
    }
    // Replay the exact sample set the before-curve used: same seed, and the
    // level range pinned to what the before sweep actually covered.
    minsat::CurveConfig after_config = config;
    after_config.max_level = before.points.back().level;
    const minsat::PerformanceCurve after =
        minsat::estimate_curve(after_class, after_config);
    csv << "# after learning (" << artifact_path << ")\n";
    append_curve_rows(after, csv);

    summary << " worst_after=" << after.peak_max_nodes << " reduction=";
    if (after.peak_max_nodes == 0) {
      summary << "inf";
    } else {
      summary << static_cast<double>(before.peak_max_nodes) /
                     static_cast<double>(after.peak_max_nodes);
    }
  }
  csv << "# summary: " << summary.str() << "\n";

  if (csv_path.empty() || csv_path == "-") {
    std::cout << csv.str();
  } else {
    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + csv_path);
    out << csv.str();
    std::cout << "wrote " << csv_path << "\n";
  }
  std::cout << "summary: " << summary.str() << "\n";
  return 0;
}

// Re-derive everything the artifact claims: the hash and partition are
// checked by load_artifact; on top of that, every learned clause must still
// follow from the original formula. --full swaps the production solver for
// exhaustive enumeration, which only fits small instances.
int run_check(const std::string& path, bool full) {
  const minsat::CompiledClass compiled = minsat::load_artifact(path);

  minsat::CompiledClass base;
  base.instance = compiled.instance;
  for (const minsat::Clause& clause : base.instance.formula.clauses) {
    minsat::DbClause entry;
    entry.clause = clause;
    base.clause_db.push_back(std::move(entry));
  }
  base.original_clause_count = base.clause_db.size();
  base.partition = minsat::compute_partition(
      base.instance.formula.clauses, base.instance.costs,
      base.instance.formula.num_vars);

  const minsat::LemmaOracle solver_oracle =
      minsat::make_solver_oracle(base, -1);
  auto ask = [&](const minsat::Fixing& fixing, minsat::SolveMode mode) {
    minsat::OracleAnswer answer;
    if (full) {
      const minsat::OracleResult res =
          minsat::brute_force(base.instance, fixing, mode);
      answer.unsat = res.outcome == minsat::OracleOutcome::kUnsat;
      answer.cost = res.cost;
    } else {
      answer = solver_oracle(fixing, mode);
    }
    return answer;
  };
  auto violate = [](const minsat::Clause& clause) {
    minsat::Fixing fixing;
    for (const minsat::Lit lit : clause.lits()) {
      fixing.add(minsat::var_of(lit), !minsat::is_pos(lit));
    }
    return fixing;
  };

  int checked = 0;
  int failed = 0;
  for (const minsat::DbClause& db : compiled.clause_db) {
    if (!db.is_lemma) continue;
    ++checked;
    if (!ask(violate(db.clause), minsat::SolveMode::kSat).unsat) {
      ++failed;
      std::cout << "unsound lemma:";
      for (const minsat::Lit lit : db.clause.lits()) std::cout << ' ' << lit;
      std::cout << "\n";
    }
  }
  for (const minsat::Lemma& pair : compiled.pairs) {
    ++checked;
    const minsat::OracleAnswer answer =
        ask(violate(pair.clause), minsat::SolveMode::kMinsat);
    if (!answer.unsat && answer.cost < pair.threshold) {
      ++failed;
      std::cout << "unsound pair (threshold " << pair.threshold << "):";
      for (const minsat::Lit lit : pair.clause.lits()) std::cout << ' ' << lit;
      std::cout << "\n";
    }
  }

  print_class_summary(compiled, std::cout);
  for (const minsat::LearnPhase& phase : compiled.log.phases) {
    std::cout << (phase.mode == minsat::SolveMode::kSat ? "cost-blind"
                                                        : "cost-aware")
              << " pass: " << minsat::to_string(phase.stop) << " after "
              << phase.levels.size() << " level(s)\n";
  }
  std::cout << "lemma audit: " << checked << " checked, " << failed
            << " unsound" << (full ? " (exhaustive)" : "") << "\n";
  if (failed > 0) return kExitError;
  std::cout << "artifact: ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-step learning compiler for minimum-cost SAT"};
  app.require_subcommand(1);

  // compile
  auto* compile = app.add_subcommand(
      "compile", "build and train an artifact from a CNF and costs");
  std::string cnf_path, costs_path, artifact_out = "compiled.json";
  std::string compile_mode = "both";
  bool use_unit = false;
  minsat::LearnConfig learn_config;
  compile->add_option("cnf", cnf_path, "DIMACS CNF file")->required();
  auto* compile_costs =
      compile->add_option("--costs", costs_path, "per-variable cost file");
  compile->add_flag("--unit-costs", use_unit,
                    "cost 1 for True, 0 for False everywhere")
      ->excludes(compile_costs);
  compile->add_option("--mode", compile_mode,
                      "learning passes: sat, minsat, or both")
      ->capture_default_str();
  compile->add_option("-o,--out", artifact_out, "artifact path")
      ->capture_default_str();
  compile->add_option("--samples", learn_config.samples_per_level,
                      "samples per fixing level")
      ->capture_default_str();
  compile->add_option("--max-level", learn_config.max_level,
                      "highest fixing level (-1: all)");
  compile->add_option("--seed", learn_config.seed, "sampling seed");
  compile->add_option("--lemma-max-len", learn_config.lemma_max_len,
                      "longest learned clause worth keeping")
      ->capture_default_str();
  compile->add_option("--clause-cap", learn_config.clause_cap_factor,
                      "database size budget, times the original count")
      ->capture_default_str();
  compile->add_option("--node-budget", learn_config.minimize_node_budget,
                      "node budget per minimization query")
      ->capture_default_str();

  // solve
  auto* solve_cmd = app.add_subcommand(
      "solve", "solve an instance of a compiled class (exit 0 optimal, "
               "20 unsat)");
  std::string solve_input, solve_costs, fixing_spec;
  std::string solve_mode = "minsat";
  bool solve_unit = false, no_pairs = false;
  int64_t solve_budget = -1;
  solve_cmd->add_option("input", solve_input, "compiled artifact or DIMACS")
      ->required();
  auto* solve_costs_opt = solve_cmd->add_option(
      "--costs", solve_costs, "cost file when solving a raw DIMACS");
  solve_cmd->add_flag("--unit-costs", solve_unit,
                      "unit costs when solving a raw DIMACS")
      ->excludes(solve_costs_opt);
  solve_cmd->add_option("--fix", fixing_spec,
                        "comma list of fixings, e.g. 1=T,5=F");
  solve_cmd->add_option("--mode", solve_mode,
                        "sat stops at the first solution; minsat optimizes")
      ->capture_default_str();
  solve_cmd->add_flag("--no-pairs", no_pairs,
                      "ignore cost-conditional clauses");
  solve_cmd->add_option("--node-budget", solve_budget,
                        "node budget (-1: unbounded)");

  // bench
  auto* bench = app.add_subcommand(
      "bench", "sweep the per-level curve before and after learning");
  std::string bench_cnf, bench_costs, bench_artifact, bench_csv;
  std::string bench_max_level = "auto";
  minsat::CurveConfig curve_config;
  bool bench_unit = false, serial = false;
  bench->add_option("cnf", bench_cnf, "DIMACS CNF file")->required();
  auto* bench_costs_opt =
      bench->add_option("--costs", bench_costs, "per-variable cost file");
  bench->add_flag("--unit-costs", bench_unit,
                  "cost 1 for True, 0 for False everywhere")
      ->excludes(bench_costs_opt);
  bench->add_option("--artifact", bench_artifact,
                    "compiled artifact for the after-curve");
  bench->add_option("--csv", bench_csv, "CSV output path ('-' for stdout)")
      ->required();
  bench->add_option("--samples", curve_config.samples_per_level,
                    "samples per level")
      ->capture_default_str();
  bench->add_option("--max-level", bench_max_level,
                    "highest level, or auto to stop on a quiet tail")
      ->capture_default_str();
  bench->add_option("--seed", curve_config.seed, "sampling seed");
  bench->add_flag("--serial", serial, "disable parallel sampling");

  // check
  auto* check = app.add_subcommand(
      "check", "validate an artifact: hash, partition, lemma soundness");
  std::string check_artifact;
  bool check_full = false;
  check->add_option("artifact", check_artifact, "compiled artifact")
      ->required();
  check->add_flag("--full", check_full,
                  "audit lemmas by exhaustive enumeration (small inputs)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (compile->parsed()) {
      return run_compile(cnf_path, costs_path, use_unit, artifact_out,
                         compile_mode, learn_config);
    }
    if (solve_cmd->parsed()) {
      const std::string text = read_file(solve_input);
      minsat::CompiledClass compiled;
      if (looks_like_artifact(text)) {
        compiled = minsat::artifact_from_json(text);
      } else {
        const minsat::CnfFormula formula = minsat::parse_dimacs(text);
        minsat::RawCosts raw;
        if (!solve_costs.empty()) {
          raw = minsat::parse_costs(read_file(solve_costs), formula.num_vars);
        } else if (solve_unit) {
          raw = make_costs(formula.num_vars, 1, 0);
        } else {
          raw = make_costs(formula.num_vars, 0, 0);
        }
        compiled = minsat::make_compiled(formula, raw);
      }
      return run_solve(compiled, fixing_spec, parse_solve_mode(solve_mode),
                       no_pairs, solve_budget);
    }
    if (bench->parsed()) {
      curve_config.parallel = !serial;
      if (bench_max_level == "auto") {
        curve_config.max_level = -1;
      } else {
        try {
          curve_config.max_level = std::stoi(bench_max_level);
        } catch (const std::exception&) {
          throw std::runtime_error("bad --max-level '" + bench_max_level +
                                   "' (want an integer or auto)");
        }
      }
      return run_bench(bench_cnf, bench_costs, bench_unit, bench_artifact,
                       curve_config, bench_csv);
    }
    if (check->parsed()) {
      return run_check(check_artifact, check_full);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
