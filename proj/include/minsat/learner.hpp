// Turning search traces into clauses: extraction of candidates from the
// final path, greedy literal minimization against a solver oracle, and
// incorporation into the clause database.

#pragma once

#include <functional>

#include "minsat/compiled.hpp"

namespace minsat {

// A candidate before minimization. Literals are kept in source order — the
// negated initial fixing first, then the negated branch prefix, then the
// asserted literal — because minimization walks them from the back and must
// never drop the asserted literal.
struct CandidateLemma {
  std::vector<Lit> lits;
  LemmaKind kind = LemmaKind::kUnconditional;
  Cost threshold = 0;  // cost-conditional only
};

// Implied clauses: one candidate per path node whose opposite value was
// genuinely refuted. When `unsat_outcome` is set and the initial fixing is
// empty the whole formula is unsatisfiable and the single candidate is the
// empty clause; an unsatisfiable fixing yields no candidates.
std::vector<CandidateLemma> extract_sat_lemmas(const SearchTrace& trace,
                                               bool unsat_outcome);

// Candidates from a min-cost solve that reached an optimum: per path node,
// an implied clause when the opposite value was genuinely refuted, otherwise
// a cost-conditional candidate thresholded by the cheapest cost any
// satisfying assignment on the opposite side could have.
std::vector<CandidateLemma> extract_cost_pairs(const SearchTrace& trace);

// What the minimization oracle reports about S under a unit fixing.
struct OracleAnswer {
  bool budget_exhausted = false;
  bool unsat = false;
  Cost cost = 0;  // valid when satisfiable and asked in min-cost mode
};

using LemmaOracle = std::function<OracleAnswer(const Fixing&, SolveMode)>;

// Greedy removal pass: literals are dropped from the next-to-last backwards,
// a removal sticking only if the shortened clause is still justified —
// unconditional: S forbids violating it; cost-conditional: every violation
// still costs at least the threshold. Returns nullopt when the oracle runs
// out of budget (the candidate is discarded rather than kept unverified).
std::optional<CandidateLemma> minimize_lemma(CandidateLemma candidate,
                                             const LemmaOracle& oracle);

// An oracle backed by the production search on the compiled class with
// cost-conditional clauses disabled.
LemmaOracle make_solver_oracle(const CompiledClass& compiled,
                               int64_t node_budget);

// True when an equally strong clause is already in the database, so the
// candidate can be skipped before any oracle work.
bool already_known(const CompiledClass& compiled, const Clause& clause,
                   LemmaKind kind, Cost threshold);

struct IncorporateResult {
  int lemmas_added = 0;
  int pairs_added = 0;
  int clauses_deleted = 0;
  bool cap_hit = false;
};

// Adds the batch to the database. Unconditional non-global lemmas displace
// every clause they subsume; global lemmas are stored but never delete
// anything (they are invisible to the easy-side obligations, so a clause
// they subsume must keep its own enforcer). Cost-conditional clauses never
// delete; duplicates keep the larger threshold. Each addition is checked
// against `clause_cap` first; once the database is full the rest of the
// batch is dropped and cap_hit reported.
IncorporateResult incorporate(CompiledClass& compiled,
                              const std::vector<Lemma>& batch,
                              size_t clause_cap);

}  // namespace minsat
