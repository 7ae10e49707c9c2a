// A compiled class bundles everything the search needs for one formula:
// the normalized instance, the clause database (originals plus learned
// clauses), the cost-conditional clauses, the variable partition, and the
// record of how learning went.

#pragma once

#include <string>

#include "minsat/core.hpp"
#include "minsat/partition.hpp"
#include "minsat/solver.hpp"

namespace minsat {

enum class StopReason {
  kRunning,            // learning has not finished
  kVIncrease,          // per-level worst case grew: lemmas stopped paying off
  kSmallEnumeratedSet, // few enough enumerated variables to call it done
  kClauseCap,          // database reached its size budget
  kLevelsExhausted,    // every fixing depth was trained
};

const char* to_string(StopReason reason);

struct LevelRecord {
  int level = 0;
  int samples = 0;
  double mean_nodes = 0.0;
  int64_t max_nodes = 0;
  double mean_ms = 0.0;  // not serialized: artifacts must be byte-stable
  double max_ms = 0.0;   // not serialized
  int lemmas_added = 0;
  int pairs_added = 0;
  int clauses_deleted = 0;
};

// One invocation of the learning loop. Compilation normally runs two:
// a cost-blind pass first, then the cost-aware pass over the result.
struct LearnPhase {
  SolveMode mode = SolveMode::kSat;
  std::vector<LevelRecord> levels;
  StopReason stop = StopReason::kRunning;
};

struct LearningLog {
  std::vector<LearnPhase> phases;
};

struct CompiledClass {
  MinsatInstance instance;
  std::vector<DbClause> clause_db;
  std::vector<Lemma> pairs;  // cost-conditional clauses only
  Partition partition;
  size_t original_clause_count = 0;
  std::string formula_hash;
  LearningLog log;

  ClassView view() const {
    return ClassView{&instance, &clause_db, &pairs, &partition};
  }
};

}  // namespace minsat
