// End-to-end acceptance checks, one printed line per criterion. Each check
// is self-contained and seeded; the binary exits nonzero if any line fails.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "minsat/driver.hpp"
#include "minsat/learner.hpp"
#include "minsat/oracle.hpp"
#include "test_util.hpp"

using namespace minsat;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void report(int id, const char* label, bool pass, const std::string& note) {
  std::printf("criterion %2d [%s]: %s%s%s\n", id, pass ? "PASS" : "FAIL",
              label, note.empty() ? "" : " | ", note.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), format, a, b);
  return buf;
}

Fixing violation_of(const std::vector<Lit>& lits) {
  Fixing fx;
  for (Lit l : lits) fx.add(var_of(l), !is_pos(l));
  return fx;
}

// Stop reasons and level records gathered from every compile this binary
// performs, inspected wholesale by the termination criterion.
std::vector<LearnPhase> observed_phases;

void collect_phases(const CompiledClass& compiled) {
  for (const LearnPhase& phase : compiled.log.phases)
    observed_phases.push_back(phase);
}

CompiledClass compile_both(const CnfFormula& f, const RawCosts& raw,
                           int samples, uint64_t seed,
                           std::vector<Lemma>* produced = nullptr) {
  CompiledClass compiled = make_compiled(f, raw);
  LearnConfig cfg;
  cfg.samples_per_level = samples;
  cfg.seed = seed;
  if (produced != nullptr)
    cfg.on_lemma = [produced](const Lemma& l) { produced->push_back(l); };
  cfg.mode = SolveMode::kSat;
  learn(compiled, cfg);
  cfg.mode = SolveMode::kMinsat;
  learn(compiled, cfg);
  return compiled;
}

// --- criterion 1: optimum costs equal the exhaustive reference ---

void criterion_oracle_equivalence() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(10001);
  int checked = 0;
  std::string note;
  bool pass = true;

  for (int round = 0; round < 500 && pass; ++round) {
    int n = 6 + static_cast<int>(rng() % 13);  // 6..18 variables
    double ratio = 2.0 + static_cast<double>(rng() % 301) / 100.0;
    int m = static_cast<int>(std::lround(ratio * n));
    CnfFormula f = testutil::random3sat(n, m, rng());
    RawCosts raw = testutil::random_costs(n, 0, 10, rng());
    CompiledClass compiled = make_compiled(f, raw);

    SolveOptions opts;
    opts.mode = SolveMode::kMinsat;
    opts.want_trace = false;
    SolveResult res = solve(compiled.view(), Fixing{}, opts);
    OracleResult ref = brute_force(compiled.instance, Fixing{},
                                   SolveMode::kMinsat);

    if ((res.outcome == SolveOutcome::kOptimal) !=
        (ref.outcome == OracleOutcome::kOptimal)) {
      note = "outcome mismatch at round " + std::to_string(round);
      pass = false;
    } else if (ref.outcome == OracleOutcome::kOptimal &&
               (res.cost != ref.cost ||
                res.cost != total_cost(compiled.instance, res.assignment))) {
      note = "cost mismatch at round " + std::to_string(round);
      pass = false;
    }
    ++checked;
  }
  double elapsed = seconds_since(t0);
  if (pass && elapsed > 120.0) {
    pass = false;
    note = fmt("took %.1fs, budget 120s", elapsed);
  }
  if (pass)
    note = std::to_string(checked) + " instances, " + fmt("%.1fs", elapsed);
  report(1, "optimum equals exhaustive reference on random instances", pass,
         note);
}

// --- criteria 2 and 3 share one compiled corpus ---

struct LearnedClass {
  CompiledClass compiled;
  std::vector<Lemma> produced;
};

std::vector<LearnedClass> build_corpus() {
  std::vector<LearnedClass> corpus;
  std::mt19937_64 rng(10002);
  for (int round = 0; round < 50; ++round) {
    int n = 8 + static_cast<int>(rng() % 9);  // 8..16 variables
    double ratio = 3.0 + static_cast<double>(rng() % 151) / 100.0;
    int m = static_cast<int>(std::lround(ratio * n));
    CnfFormula f = testutil::random3sat(n, m, rng());
    RawCosts raw = testutil::random_costs(n, 0, 10, rng());

    LearnedClass lc;
    lc.compiled = compile_both(f, raw, 40, rng(), &lc.produced);
    collect_phases(lc.compiled);
    corpus.push_back(std::move(lc));
  }
  return corpus;
}

void criterion_lemma_soundness(const std::vector<LearnedClass>& corpus) {
  const auto t0 = Clock::now();
  int clause_checks = 0, pair_checks = 0, violations = 0;

  for (const LearnedClass& lc : corpus) {
    for (const Lemma& lemma : lc.produced) {
      Fixing fx = violation_of(lemma.clause.lits());
      if (lemma.kind == LemmaKind::kUnconditional) {
        ++clause_checks;
        if (brute_force(lc.compiled.instance, fx, SolveMode::kSat).outcome !=
            OracleOutcome::kUnsat)
          ++violations;
      } else {
        ++pair_checks;
        OracleResult ref =
            brute_force(lc.compiled.instance, fx, SolveMode::kMinsat);
        if (ref.outcome == OracleOutcome::kOptimal &&
            ref.cost < lemma.threshold)
          ++violations;
      }
    }
  }

  bool pass = violations == 0 && clause_checks > 0 && pair_checks > 0;
  std::string note = std::to_string(clause_checks) + " clauses, " +
                     std::to_string(pair_checks) + " pairs, " +
                     std::to_string(violations) + " unsound, " +
                     fmt("%.1fs", seconds_since(t0));
  report(2, "every lemma produced during compilation is sound", pass, note);
}

void criterion_lemma_minimality(const std::vector<LearnedClass>& corpus) {
  const auto t0 = Clock::now();
  int deletions = 0, violations = 0;

  for (const LearnedClass& lc : corpus) {
    for (const DbClause& db : lc.compiled.clause_db) {
      if (!db.is_lemma) continue;
      const std::vector<Lit>& lits = db.clause.lits();
      for (size_t skip = 0; skip < lits.size(); ++skip) {
        std::vector<Lit> rest;
        for (size_t i = 0; i < lits.size(); ++i)
          if (i != skip) rest.push_back(lits[i]);
        ++deletions;
        if (brute_force(lc.compiled.instance, violation_of(rest),
                        SolveMode::kSat)
                .outcome == OracleOutcome::kUnsat)
          ++violations;
      }
    }
  }

  bool pass = violations == 0 && deletions > 0;
  std::string note = std::to_string(deletions) + " deletions tried, " +
                     std::to_string(violations) + " still valid, " +
                     fmt("%.1fs", seconds_since(t0));
  report(3, "retained lemmas lose validity when any literal is dropped", pass,
         note);
}

// --- criterion 4: the renamable-Horn fast path never branches ---

void criterion_horn_fast_path() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(10004);
  int branched = 0, mismatched = 0, compared = 0;

  for (int round = 0; round < 100; ++round) {
    bool small = round < 30;
    int n = small ? 8 + static_cast<int>(rng() % 11)
                  : 30 + static_cast<int>(rng() % 171);  // up to 200
    CnfFormula f = testutil::random_horn(n, 2 * n, rng());
    RawCosts raw;
    raw.pairs.resize(static_cast<size_t>(n));
    for (auto& pair : raw.pairs)
      pair = {1 + static_cast<Cost>(rng() % 9), 0};
    CompiledClass compiled = make_compiled(f, raw);

    SolveOptions opts;
    opts.mode = SolveMode::kMinsat;
    opts.want_trace = false;
    SolveResult res = solve(compiled.view(), Fixing{}, opts);
    if (res.stats.nodes_expanded != 0) ++branched;

    if (small) {
      ++compared;
      OracleResult ref =
          brute_force(compiled.instance, Fixing{}, SolveMode::kMinsat);
      bool ok = (res.outcome == SolveOutcome::kOptimal) ==
                (ref.outcome == OracleOutcome::kOptimal);
      if (ok && ref.outcome == OracleOutcome::kOptimal)
        ok = res.cost == ref.cost;
      if (!ok) ++mismatched;
    }
  }

  double elapsed = seconds_since(t0);
  bool pass = branched == 0 && mismatched == 0 && elapsed < 30.0;
  std::string note = "100 instances, " + std::to_string(branched) +
                     " branched, " + std::to_string(mismatched) +
                     " oracle mismatches on " + std::to_string(compared) +
                     " small ones, " + fmt("%.1fs", elapsed);
  report(4, "horn-shaped instances solve with zero branch nodes", pass, note);
}

// --- criterion 5: nothing to learn from monotone formulas ---

void criterion_monotone_no_learning() {
  std::mt19937_64 rng(10005);
  int lemmas = 0, runs = 0;

  for (int round = 0; round < 20; ++round) {
    int n = 10 + static_cast<int>(rng() % 7);  // 10..16
    std::set<Clause> distinct;
    while (distinct.size() < static_cast<size_t>(3 * n)) {
      Fixing pick = sample_fixing(n, 3, rng);
      std::vector<Lit> lits;
      for (const auto& [v, value] : pick.entries) lits.push_back(v);
      distinct.insert(Clause(std::move(lits)));
    }
    CnfFormula f;
    f.num_vars = n;
    f.clauses.assign(distinct.begin(), distinct.end());
    CompiledClass compiled =
        make_compiled(f, testutil::uniform_costs(n, 1, 0));

    LearnConfig cfg;
    cfg.mode = SolveMode::kSat;
    cfg.samples_per_level = 40;
    cfg.seed = rng();
    learn(compiled, cfg);
    collect_phases(compiled);
    ++runs;

    for (const LearnPhase& phase : compiled.log.phases)
      for (const LevelRecord& level : phase.levels) lemmas += level.lemmas_added;
    if (compiled.clause_db.size() != static_cast<size_t>(3 * n)) ++lemmas;
  }

  report(5, "cost-blind learning finds nothing on all-positive formulas",
         lemmas == 0,
         std::to_string(runs) + " formulas, " + std::to_string(lemmas) +
             " unexpected lemmas");
}

// --- criterion 6: the branching rule reproduces its worked example ---

void criterion_branch_example() {
  std::vector<std::vector<Lit>> reduced = {{1, 2}, {1, -2}, {-1, 2, 3}};
  std::vector<char> enumerated(4, 0);
  enumerated[1] = enumerated[2] = 1;
  CostVector costs;
  costs.true_cost = {1, 1, 1};

  BoehmChoice choice =
      boehm_select(reduced, enumerated, enumerated, false, costs);
  BoehmScore s1 = boehm_score_of(reduced, enumerated, 1);
  BoehmScore s2 = boehm_score_of(reduced, enumerated, 2);

  bool pass = choice.variable == 2 && choice.first_value == true &&
              s1.e.size() == 4 && s1.e[2] == 2 && s1.e[3] == 1 &&
              s2.e[2] == 3 && s2.e[3] == 1;
  report(6, "branch selection reproduces the worked example (x2, true)", pass,
         pass ? "" : "selected x" + std::to_string(choice.variable));
}

// --- criterion 7: learning flattens the per-level worst case ---

double mean_peak(const PerformanceCurve& curve) {
  if (curve.points.empty()) return 0.0;
  double total = 0.0;
  for (const CurvePoint& p : curve.points)
    total += static_cast<double>(p.max_nodes);
  return total / static_cast<double>(curve.points.size());
}

void criterion_effort_reduction() {
  const auto t0 = Clock::now();
  int improved = 0;
  std::string detail;
  bool overtime = false;

  for (uint64_t seed = 1; seed <= 5; ++seed) {
    const auto seed_start = Clock::now();
    CnfFormula f = testutil::random3sat(60, 258, seed);
    RawCosts raw = testutil::uniform_costs(60, 1, 0);
    CompiledClass compiled = make_compiled(f, raw);

    CurveConfig curve_cfg;
    curve_cfg.samples_per_level = 30;
    curve_cfg.max_level = 5;
    curve_cfg.seed = 77;
    PerformanceCurve before = estimate_curve(compiled, curve_cfg);

    LearnConfig learn_cfg;
    learn_cfg.samples_per_level = 100;
    learn_cfg.seed = 5;
    learn_cfg.mode = SolveMode::kSat;
    learn(compiled, learn_cfg);
    learn_cfg.mode = SolveMode::kMinsat;
    learn(compiled, learn_cfg);
    collect_phases(compiled);

    PerformanceCurve after = estimate_curve(compiled, curve_cfg);
    double b = mean_peak(before), a = mean_peak(after);
    double ratio = b > 0.0 ? a / b : 0.0;
    if (ratio <= 0.5) ++improved;
    if (!detail.empty()) detail += " ";
    detail += fmt("%.3f", ratio);
    if (seconds_since(seed_start) > 600.0) overtime = true;
  }

  bool pass = improved >= 4 && !overtime;
  std::string note = "ratios " + detail + ", " +
                     fmt("%.1fs total", seconds_since(t0)) +
                     (overtime ? ", over per-seed budget" : "");
  report(7, "compiled classes at least halve the mean per-level worst case",
         pass, note);
}

// --- criterion 8: subsumption actually deletes clauses at scale ---

int64_t deletions_of(const CompiledClass& compiled) {
  int64_t total = 0;
  for (const LearnPhase& phase : compiled.log.phases)
    for (const LevelRecord& level : phase.levels)
      total += level.clauses_deleted;
  return total;
}

void criterion_subsumption_shrinkage() {
  const auto t0 = Clock::now();
  int64_t deleted = 0;

  for (uint64_t seed = 1; seed <= 5 && deleted == 0; ++seed) {
    CnfFormula f = testutil::random3sat(100, 430, seed);
    CompiledClass compiled =
        make_compiled(f, testutil::uniform_costs(100, 1, 0));
    LearnConfig cfg;
    cfg.samples_per_level = 100;
    cfg.seed = 5;
    cfg.mode = SolveMode::kSat;
    learn(compiled, cfg);
    if (deletions_of(compiled) == 0) {
      cfg.mode = SolveMode::kMinsat;
      learn(compiled, cfg);
    }
    collect_phases(compiled);
    deleted += deletions_of(compiled);
  }

  report(8, "learning a 100-variable class deletes subsumed clauses",
         deleted > 0,
         std::to_string(deleted) + " deletions, " +
             fmt("%.1fs", seconds_since(t0)));
}

// --- criterion 9: every learning run halts for a stated reason ---

void criterion_termination() {
  // A class whose enumerated side is small from the start stops on entry.
  CnfFormula f;
  f.num_vars = 3;
  f.clauses.emplace_back(std::vector<Lit>{1, 2, 3});
  f.clauses.emplace_back(std::vector<Lit>{1, 2, -3});
  CompiledClass near_horn =
      make_compiled(f, testutil::uniform_costs(3, 1, 0));
  LearnConfig cfg;
  learn(near_horn, cfg);
  collect_phases(near_horn);
  bool small_stop = near_horn.partition.enumerated.size() == 2 &&
                    !near_horn.log.phases.empty() &&
                    near_horn.log.phases.back().stop ==
                        StopReason::kSmallEnumeratedSet;

  int indefinite = 0, bad_v = 0;
  for (const LearnPhase& phase : observed_phases) {
    if (phase.stop == StopReason::kRunning) ++indefinite;
    if (phase.stop == StopReason::kVIncrease) {
      if (phase.levels.size() < 2)
        ++bad_v;
      else if (phase.levels.back().max_nodes <=
               phase.levels[phase.levels.size() - 2].max_nodes)
        ++bad_v;
    }
  }

  bool pass = small_stop && indefinite == 0 && bad_v == 0;
  std::string note = std::to_string(observed_phases.size()) +
                     " learning runs, " + std::to_string(indefinite) +
                     " unfinished, " + std::to_string(bad_v) +
                     " broken effort-increase records" +
                     (small_stop ? "" : ", small-set stop missing");
  report(9, "every learning run ends with a definite stop reason", pass, note);
}

// --- criterion 10: artifacts survive repetition and reject tampering ---

void criterion_artifact_integrity(const std::vector<LearnedClass>& corpus) {
  const CompiledClass* sample = nullptr;
  for (const LearnedClass& lc : corpus)
    if (!lc.produced.empty()) sample = &lc.compiled;
  if (sample == nullptr) sample = &corpus.front().compiled;

  std::string first = artifact_to_json(*sample);
  bool stable = true;
  CompiledClass current = artifact_from_json(first);
  for (int round = 0; round < 100; ++round) {
    std::string text = artifact_to_json(current);
    if (text != first || !structurally_equal(current, *sample)) {
      stable = false;
      break;
    }
    current = artifact_from_json(text);
  }

  int rejected = 0;
  auto expect_reject = [&rejected](const std::string& text) {
    try {
      artifact_from_json(text);
    } catch (const std::exception&) {
      ++rejected;
    }
  };
  std::string tampered = first;
  size_t hash_pos = tampered.find("\"formulaHash\"");
  if (hash_pos != std::string::npos) {
    size_t colon = tampered.find(':', hash_pos);
    tampered[colon + 3] = tampered[colon + 3] == '0' ? '1' : '0';
  }
  expect_reject(tampered);
  expect_reject(first.substr(0, first.size() / 2));  // truncated
  expect_reject("{}");
  expect_reject("not an artifact");

  bool pass = stable && rejected == 4;
  report(10, "artifacts round-trip identically and reject corruption", pass,
         stable ? (std::to_string(rejected) + "/4 corruptions rejected")
                : "round trip diverged");
}

}  // namespace

int main() {
  const auto t0 = Clock::now();

  criterion_oracle_equivalence();

  std::vector<LearnedClass> corpus = build_corpus();
  criterion_lemma_soundness(corpus);
  criterion_lemma_minimality(corpus);

  criterion_horn_fast_path();
  criterion_monotone_no_learning();
  criterion_branch_example();
  criterion_effort_reduction();
  criterion_subsumption_shrinkage();
  criterion_termination();
  criterion_artifact_integrity(corpus);

  std::printf("acceptance: %s (%d failing) in %.1fs\n",
              failures == 0 ? "all criteria hold" : "criteria failing",
              failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
