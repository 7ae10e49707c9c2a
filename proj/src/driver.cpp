#include "minsat/driver.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <future>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace minsat {

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::kRunning:
      return "running";
    case StopReason::kVIncrease:
      return "vIncrease";
    case StopReason::kSmallEnumeratedSet:
      return "smallEnumeratedSet";
    case StopReason::kClauseCap:
      return "clauseCap";
    case StopReason::kLevelsExhausted:
      return "levelsExhausted";
  }
  return "unknown";
}

namespace {

StopReason stop_reason_from_string(const std::string& name) {
  for (StopReason r :
       {StopReason::kRunning, StopReason::kVIncrease,
        StopReason::kSmallEnumeratedSet, StopReason::kClauseCap,
        StopReason::kLevelsExhausted}) {
    if (name == to_string(r)) return r;
  }
  throw std::runtime_error("artifact: unknown stop reason '" + name + "'");
}

const char* mode_name(SolveMode mode) {
  return mode == SolveMode::kSat ? "sat" : "minsat";
}

SolveMode mode_from_name(const std::string& name) {
  if (name == "sat") return SolveMode::kSat;
  if (name == "minsat") return SolveMode::kMinsat;
  throw std::runtime_error("artifact: unknown learning mode '" + name + "'");
}

std::vector<Clause> hard_clauses(const CompiledClass& compiled) {
  std::vector<Clause> out;
  for (const DbClause& db : compiled.clause_db) {
    if (!db.global) out.push_back(db.clause);
  }
  return out;
}

bool mentions_easy(const std::vector<Lit>& lits, const Partition& partition) {
  for (Lit lit : lits) {
    if (!partition.is_enumerated(var_of(lit))) return true;
  }
  return false;
}

// Extract, minimize, and flag this solve's candidates against the current
// database state. Cost-blind solves yield only plain lemmas; cost-aware
// solves also yield threshold pairs from the non-refuted siblings.
std::vector<Lemma> build_batch(const CompiledClass& compiled,
                               const SolveResult& res,
                               const LearnConfig& config) {
  std::vector<CandidateLemma> candidates;
  if (config.mode == SolveMode::kMinsat &&
      res.outcome == SolveOutcome::kOptimal) {
    candidates = extract_cost_pairs(res.trace);
  } else {
    candidates =
        extract_sat_lemmas(res.trace, res.outcome == SolveOutcome::kUnsat);
  }
  if (candidates.empty()) return {};

  const LemmaOracle oracle =
      make_solver_oracle(compiled, config.minimize_node_budget);
  std::vector<Lemma> batch;
  for (CandidateLemma& candidate : candidates) {
    if (already_known(compiled, Clause(candidate.lits), candidate.kind,
                      candidate.threshold)) {
      continue;
    }
    std::optional<CandidateLemma> minimized =
        minimize_lemma(std::move(candidate), oracle);
    if (!minimized.has_value()) continue;
    if (minimized->lits.size() > config.lemma_max_len) continue;

    Lemma lemma;
    lemma.clause = Clause(minimized->lits);
    lemma.kind = minimized->kind;
    lemma.threshold = minimized->threshold;
    lemma.global = mentions_easy(minimized->lits, compiled.partition);
    if (already_known(compiled, lemma.clause, lemma.kind, lemma.threshold)) {
      continue;
    }
    if (config.on_lemma) config.on_lemma(lemma);
    batch.push_back(std::move(lemma));
  }
  return batch;
}

}  // namespace

CompiledClass make_compiled(const CnfFormula& formula, const RawCosts& raw) {
  CompiledClass compiled;
  compiled.instance = normalize(formula, raw);
  compiled.original_clause_count = compiled.instance.formula.clauses.size();
  for (const Clause& clause : compiled.instance.formula.clauses) {
    DbClause entry;
    entry.clause = clause;
    compiled.clause_db.push_back(std::move(entry));
  }
  compiled.partition =
      compute_partition(compiled.instance.formula.clauses,
                        compiled.instance.costs, formula.num_vars);
  compiled.formula_hash = formula_hash(compiled.instance);
  return compiled;
}

Fixing sample_fixing(int num_vars, int level, std::mt19937_64& rng) {
  if (level < 0 || level > num_vars) {
    throw std::invalid_argument("sample_fixing: level out of range");
  }
  std::vector<Var> pool(static_cast<size_t>(num_vars));
  for (int i = 0; i < num_vars; ++i) pool[static_cast<size_t>(i)] = i + 1;
  Fixing out;
  for (int j = 0; j < level; ++j) {
    // Partial Fisher-Yates with a plain modulo draw: the bias is irrelevant
    // here, identical streams across platforms are not.
    const size_t span = static_cast<size_t>(num_vars - j);
    const size_t pick = static_cast<size_t>(j) + rng() % span;
    std::swap(pool[static_cast<size_t>(j)], pool[pick]);
    out.add(pool[static_cast<size_t>(j)], (rng() & 1) != 0);
  }
  return out;
}

void learn(CompiledClass& compiled, const LearnConfig& config) {
  compiled.log.phases.emplace_back();
  LearnPhase& phase = compiled.log.phases.back();
  phase.mode = config.mode;
  const int num_vars = compiled.instance.formula.num_vars;
  const auto clause_cap = static_cast<size_t>(
      config.clause_cap_factor *
      static_cast<double>(compiled.original_clause_count));

  if (static_cast<int>(compiled.partition.enumerated.size()) <=
      config.small_enumerated_stop) {
    phase.stop = StopReason::kSmallEnumeratedSet;
    return;
  }

  std::mt19937_64 rng(config.seed);
  const int top_level =
      config.max_level < 0 ? num_vars : std::min(config.max_level, num_vars);
  int64_t prev_level_worst = 0;  // worst node count of the previous level

  for (int level = 0; level <= top_level; ++level) {
    LevelRecord rec;
    rec.level = level;
    int64_t level_worst = 0;
    double nodes_sum = 0.0;
    double ms_sum = 0.0;
    bool stopped = false;

    for (int s = 0; s < config.samples_per_level; ++s) {
      const Fixing fixing = sample_fixing(num_vars, level, rng);
      SolveOptions options;
      options.mode = config.mode;
      const SolveResult res = solve(compiled.view(), fixing, options);

      ++rec.samples;
      nodes_sum += static_cast<double>(res.stats.nodes_expanded);
      level_worst = std::max(level_worst, res.stats.nodes_expanded);
      ms_sum += res.stats.elapsed_ms;
      rec.max_ms = std::max(rec.max_ms, res.stats.elapsed_ms);

      // This depth just got harder than the previous one ever was: more
      // fixed variables should mean easier instances, so learning has
      // stopped paying off. Quit before investing in the offending sample.
      if (level >= 1 && res.stats.nodes_expanded > prev_level_worst) {
        phase.stop = StopReason::kVIncrease;
        stopped = true;
        break;
      }

      const std::vector<Lemma> batch = build_batch(compiled, res, config);
      if (!batch.empty()) {
        const IncorporateResult inc =
            incorporate(compiled, batch, clause_cap);
        rec.lemmas_added += inc.lemmas_added;
        rec.pairs_added += inc.pairs_added;
        rec.clauses_deleted += inc.clauses_deleted;
        if (inc.lemmas_added > 0 || inc.clauses_deleted > 0) {
          compiled.partition =
              compute_partition(hard_clauses(compiled),
                                compiled.instance.costs, num_vars);
          if (static_cast<int>(compiled.partition.enumerated.size()) <=
              config.small_enumerated_stop) {
            phase.stop = StopReason::kSmallEnumeratedSet;
            stopped = true;
          }
        }
        if (!stopped && inc.cap_hit) {
          phase.stop = StopReason::kClauseCap;
          stopped = true;
        }
      }
      if (stopped) break;
    }

    if (rec.samples > 0) {
      rec.mean_nodes = nodes_sum / rec.samples;
      rec.mean_ms = ms_sum / rec.samples;
    }
    rec.max_nodes = level_worst;
    phase.levels.push_back(rec);
    if (stopped) return;
    prev_level_worst = level_worst;
  }
  phase.stop = StopReason::kLevelsExhausted;
}

PerformanceCurve estimate_curve(const CompiledClass& compiled,
                                const CurveConfig& config) {
  PerformanceCurve curve;
  const int num_vars = compiled.instance.formula.num_vars;
  const int top_level =
      config.max_level < 0 ? num_vars : std::min(config.max_level, num_vars);
  const bool auto_stop = config.max_level < 0;
  std::mt19937_64 rng(config.seed);
  int quiet_levels = 0;

  for (int level = 0; level <= top_level; ++level) {
    const int samples = config.samples_per_level;
    std::vector<Fixing> fixings;
    fixings.reserve(static_cast<size_t>(samples));
    for (int s = 0; s < samples; ++s) {
      fixings.push_back(sample_fixing(num_vars, level, rng));
    }

    std::vector<SolveStats> stats(static_cast<size_t>(samples));
    auto run_one = [&compiled, &fixings, &stats](size_t i) {
      SolveOptions options;
      options.mode = SolveMode::kMinsat;
      options.want_trace = false;
      stats[i] = solve(compiled.view(), fixings[i], options).stats;
    };
    const unsigned workers =
        config.parallel
            ? std::min<unsigned>(std::thread::hardware_concurrency(),
                                 static_cast<unsigned>(samples))
            : 1;
    if (workers > 1) {
      std::vector<std::future<void>> tasks;
      tasks.reserve(workers);
      for (unsigned w = 0; w < workers; ++w) {
        tasks.push_back(std::async(std::launch::async, [&, w] {
          for (size_t i = w; i < static_cast<size_t>(samples); i += workers) {
            run_one(i);
          }
        }));
      }
      for (auto& task : tasks) task.get();
    } else {
      for (size_t i = 0; i < static_cast<size_t>(samples); ++i) run_one(i);
    }

    CurvePoint point;
    point.level = level;
    point.samples = samples;
    double nodes_sum = 0.0;
    double ms_sum = 0.0;
    for (const SolveStats& s : stats) {
      nodes_sum += static_cast<double>(s.nodes_expanded);
      point.max_nodes = std::max(point.max_nodes, s.nodes_expanded);
      ms_sum += s.elapsed_ms;
      point.max_ms = std::max(point.max_ms, s.elapsed_ms);
    }
    if (samples > 0) {
      point.mean_nodes = nodes_sum / samples;
      point.mean_ms = ms_sum / samples;
    }
    curve.points.push_back(point);

    if (point.max_nodes > curve.peak_max_nodes) {
      curve.peak_max_nodes = point.max_nodes;
      curve.peak_level = level;
    }
    if (auto_stop) {
      if (point.max_nodes * 100 <= curve.peak_max_nodes) {
        if (++quiet_levels >= 3 && level < top_level) {
          curve.truncated = true;
          break;
        }
      } else {
        quiet_levels = 0;
      }
    }
  }
  return curve;
}

// --- artifact serialization ---

uint64_t fnv1a64(std::string_view bytes) {
  uint64_t hash = 14695981039346656037ull;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string formula_hash(const MinsatInstance& inst) {
  std::string blob = emit_dimacs(inst.formula);
  blob += "costs";
  for (const Cost c : inst.costs.true_cost) {
    blob += ' ';
    blob += std::to_string(c);
  }
  blob += "\nflipped";
  for (const Var v : inst.norm.flipped) {
    blob += ' ';
    blob += std::to_string(v);
  }
  blob += "\noffset " + std::to_string(inst.norm.offset);
  blob += " scale " + std::to_string(inst.norm.scale_pow10);
  char digest[17];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(fnv1a64(blob)));
  return std::string(digest);
}

std::string artifact_to_json(const CompiledClass& compiled) {
  nlohmann::json j;
  j["formatVersion"] = 1;
  j["dimacsEcho"] = emit_dimacs(compiled.instance.formula);
  j["formulaHash"] = compiled.formula_hash;
  j["originalClauseCount"] = compiled.original_clause_count;

  j["costs"]["trueCosts"] = compiled.instance.costs.true_cost;
  j["costs"]["flippedVars"] = compiled.instance.norm.flipped;
  j["costs"]["offset"] = compiled.instance.norm.offset;
  j["costs"]["scalePow10"] = compiled.instance.norm.scale_pow10;

  j["clauseDb"] = nlohmann::json::array();
  for (const DbClause& db : compiled.clause_db) {
    nlohmann::json entry;
    entry["lits"] = db.clause.lits();
    entry["lemma"] = db.is_lemma;
    entry["global"] = db.global;
    j["clauseDb"].push_back(std::move(entry));
  }

  j["pairs"] = nlohmann::json::array();
  for (const Lemma& pair : compiled.pairs) {
    nlohmann::json entry;
    entry["lits"] = pair.clause.lits();
    entry["threshold"] = pair.threshold;
    entry["global"] = pair.global;
    j["pairs"].push_back(std::move(entry));
  }

  j["partition"]["easy"] = compiled.partition.easy;
  j["partition"]["enumerated"] = compiled.partition.enumerated;
  j["partition"]["flippedVars"] =
      compiled.partition.easy_renaming.flipped_vars;

  j["log"]["phases"] = nlohmann::json::array();
  for (const LearnPhase& phase : compiled.log.phases) {
    nlohmann::json p;
    p["mode"] = mode_name(phase.mode);
    p["stopReason"] = to_string(phase.stop);
    p["levels"] = nlohmann::json::array();
    for (const LevelRecord& rec : phase.levels) {
      nlohmann::json entry;
      entry["level"] = rec.level;
      entry["samples"] = rec.samples;
      entry["meanNodes"] = rec.mean_nodes;
      entry["maxNodes"] = rec.max_nodes;
      entry["lemmasAdded"] = rec.lemmas_added;
      entry["pairsAdded"] = rec.pairs_added;
      entry["clausesDeleted"] = rec.clauses_deleted;
      p["levels"].push_back(std::move(entry));
    }
    j["log"]["phases"].push_back(std::move(p));
  }
  return j.dump(2) + "\n";
}

CompiledClass artifact_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(std::string("artifact: ") + e.what());
  }
  try {
    if (j.at("formatVersion").get<int>() != 1) {
      throw std::runtime_error("artifact: unsupported format version");
    }
    CompiledClass compiled;
    compiled.instance.formula =
        parse_dimacs(j.at("dimacsEcho").get<std::string>());
    const int num_vars = compiled.instance.formula.num_vars;

    const nlohmann::json& costs = j.at("costs");
    compiled.instance.costs.true_cost =
        costs.at("trueCosts").get<std::vector<Cost>>();
    if (static_cast<int>(compiled.instance.costs.true_cost.size()) !=
        num_vars) {
      throw std::runtime_error("artifact: cost vector length mismatch");
    }
    compiled.instance.norm.flipped =
        costs.at("flippedVars").get<std::vector<Var>>();
    compiled.instance.norm.offset = costs.at("offset").get<Cost>();
    compiled.instance.norm.scale_pow10 = costs.at("scalePow10").get<int>();

    compiled.original_clause_count =
        j.at("originalClauseCount").get<size_t>();
    compiled.formula_hash = j.at("formulaHash").get<std::string>();

    for (const nlohmann::json& entry : j.at("clauseDb")) {
      DbClause db;
      db.clause = Clause(entry.at("lits").get<std::vector<Lit>>());
      db.is_lemma = entry.at("lemma").get<bool>();
      db.global = entry.at("global").get<bool>();
      compiled.clause_db.push_back(std::move(db));
    }
    for (const nlohmann::json& entry : j.at("pairs")) {
      Lemma pair;
      pair.clause = Clause(entry.at("lits").get<std::vector<Lit>>());
      pair.kind = LemmaKind::kCostConditional;
      pair.threshold = entry.at("threshold").get<Cost>();
      pair.global = entry.at("global").get<bool>();
      compiled.pairs.push_back(std::move(pair));
    }

    const nlohmann::json& part = j.at("partition");
    compiled.partition.easy = part.at("easy").get<std::vector<Var>>();
    compiled.partition.enumerated =
        part.at("enumerated").get<std::vector<Var>>();
    compiled.partition.easy_renaming.flipped_vars =
        part.at("flippedVars").get<std::vector<Var>>();

    for (const nlohmann::json& p : j.at("log").at("phases")) {
      LearnPhase phase;
      phase.mode = mode_from_name(p.at("mode").get<std::string>());
      phase.stop =
          stop_reason_from_string(p.at("stopReason").get<std::string>());
      for (const nlohmann::json& entry : p.at("levels")) {
        LevelRecord rec;
        rec.level = entry.at("level").get<int>();
        rec.samples = entry.at("samples").get<int>();
        rec.mean_nodes = entry.at("meanNodes").get<double>();
        rec.max_nodes = entry.at("maxNodes").get<int64_t>();
        rec.lemmas_added = entry.at("lemmasAdded").get<int>();
        rec.pairs_added = entry.at("pairsAdded").get<int>();
        rec.clauses_deleted = entry.at("clausesDeleted").get<int>();
        phase.levels.push_back(rec);
      }
      compiled.log.phases.push_back(std::move(phase));
    }

    if (formula_hash(compiled.instance) != compiled.formula_hash) {
      throw std::runtime_error(
          "artifact: formula hash does not match its contents");
    }
    if (!verify_partition(hard_clauses(compiled), compiled.instance.costs,
                          num_vars, compiled.partition)) {
      throw std::runtime_error("artifact: stored partition is not a witness");
    }
    return compiled;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("artifact: ") + e.what());
  }
}

void save_artifact(const CompiledClass& compiled, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << artifact_to_json(compiled);
  if (!out) throw std::runtime_error("failed writing " + path);
}

CompiledClass load_artifact(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return artifact_from_json(buffer.str());
}

bool structurally_equal(const CompiledClass& a, const CompiledClass& b) {
  return artifact_to_json(a) == artifact_to_json(b);
}

}  // namespace minsat
