// Branch-and-bound search over the enumerated variables with the Horn-form
// fast path on the easy side, plus the lemma vocabulary it shares with the
// learning pipeline. Branching follows Böhm's rule; cost-conditional lemmas
// participate only once the incumbent makes them binding.

#pragma once

#include <limits>

#include "minsat/core.hpp"
#include "minsat/partition.hpp"

namespace minsat {

constexpr Cost kInfiniteCost = std::numeric_limits<Cost>::max();

enum class LemmaKind { kUnconditional, kCostConditional };

struct Lemma {
  Clause clause;
  LemmaKind kind = LemmaKind::kUnconditional;
  // Cost-conditional only: every satisfying assignment violating the clause
  // costs at least this much, so the clause binds once the incumbent is <= it.
  Cost threshold = 0;
  // Mentions an easy-side variable; kept out of the easy-form bookkeeping.
  bool global = false;
};

// Clauses that participate in propagation for a given incumbent.
std::vector<Clause> active_lemmas(const std::vector<Lemma>& lemmas,
                                  std::optional<Cost> incumbent);

// One entry of the clause database: an original clause or an unconditional
// lemma (cost-conditional lemmas are stored separately as Lemma records).
struct DbClause {
  Clause clause;
  bool is_lemma = false;
  bool global = false;
};

// Everything a solve needs from a compiled class.
struct ClassView {
  const MinsatInstance* instance = nullptr;
  const std::vector<DbClause>* clause_db = nullptr;
  const std::vector<Lemma>* pairs = nullptr;
  const Partition* partition = nullptr;
};

// --- Böhm's branching rule ---

struct BoehmScore {
  // Indexed by clause length; g counts positive occurrences in clauses with
  // at most one easy-side literal, h negative ones, e = max + 2*min.
  std::vector<int64_t> g, h, e;
};

struct BoehmChoice {
  Var variable = 0;
  bool first_value = true;
  BoehmScore score;  // of the winner
};

// `reduced_clauses` is the unit-free reduct; masks are variable-indexed
// (size num_vars+1). Picks the candidate with the lexicographically largest
// e-vector over ascending clause length, ties to the lowest index. First
// value is True iff sum(g) > sum(h) and (no incumbent yet or the candidate's
// True-cost is zero).
BoehmChoice boehm_select(const std::vector<std::vector<Lit>>& reduced_clauses,
                         const std::vector<char>& enumerated_mask,
                         const std::vector<char>& candidate_mask,
                         bool has_incumbent, const CostVector& costs);

// Score of one variable against the same reduct (for inspection/tests).
BoehmScore boehm_score_of(const std::vector<std::vector<Lit>>& reduced_clauses,
                          const std::vector<char>& enumerated_mask, Var v);

// --- reference unit propagation over a plain clause list ---

struct PropagationResult {
  bool conflict = false;
  Assignment assignment;          // fixings plus everything forced
  std::vector<Clause> residual;   // unsatisfied clauses, falsified lits gone
};

PropagationResult propagate(const std::vector<Clause>& clauses,
                            const Fixing& fixing, int num_vars);

// --- search ---

struct TraceNode {
  Var variable = 0;
  bool value = false;
  // The opposite value at this point of the path is known unsatisfiable.
  bool opposite_refuted = false;
  // Otherwise: a lower bound on the cost of any satisfying completion that
  // takes the opposite value here.
  std::optional<Cost> opposite_evidence;
};

struct SearchTrace {
  Fixing initial_path;
  std::vector<TraceNode> final_path;
  std::optional<Cost> optimal_cost;
  int64_t nodes_expanded = 0;

  // For unsatisfiable outcomes that branched at the root.
  struct RootBranch {
    Var variable = 0;
    bool first_refuted = false;
    bool second_refuted = false;
  };
  std::optional<RootBranch> root_branch;
};

struct SolveStats {
  int64_t nodes_expanded = 0;
  int64_t propagations = 0;
  int64_t conflicts = 0;
  int64_t bound_prunes = 0;
  int64_t easy_form_prunes = 0;
  int64_t pair_activations = 0;
  double elapsed_ms = 0.0;
};

enum class SolveOutcome { kUnsat, kOptimal };

struct SolveResult {
  SolveOutcome outcome = SolveOutcome::kUnsat;
  Assignment assignment;  // total, normalized space; valid when kOptimal
  Cost cost = 0;
  SolveStats stats;
  SearchTrace trace;
  bool budget_exhausted = false;
};

struct SolveOptions {
  SolveMode mode = SolveMode::kSat;
  bool want_trace = true;
  int64_t node_budget = -1;  // < 0: unbounded
  bool use_pairs = true;
};

SolveResult solve(const ClassView& view, const Fixing& fixing,
                  const SolveOptions& options);

}  // namespace minsat
