// Special-form recognition and the fast solver those forms admit:
//  - hidden Horn restricted to complementing zero-cost-of-True variables,
//    decided as a 2-SAT problem over per-variable flip choices;
//  - minimum-cost solving of a (renamed) Horn system via its least model;
//  - network-form diagnosis through parity constraint systems.

#pragma once

#include "minsat/core.hpp"

namespace minsat {

// A renaming complements all literals of the listed variables and/or all
// literals of the listed clauses (by index into the formula at hand).
struct Renaming {
  std::vector<Var> flipped_vars;        // sorted
  std::vector<size_t> flipped_clauses;  // sorted

  bool flips_var(Var v) const;
};

// Decides whether complementing some subset of the zero-cost variables makes
// every clause contain at most one positive literal. Clauses may mention only
// variables of the instance; empty clauses are fine (they constrain nothing).
// Returns the canonical witness renaming, or nullopt.
std::optional<Renaming> detect_restricted_hidden_horn(
    const std::vector<Clause>& clauses, const CostVector& costs, int num_vars);

// Underlying flip search. Always fills `flips` (size num_vars+1, positive
// costs forced unflipped) and reports whether the pairwise constraint system
// is consistent; on inconsistency the assignment is the best effort used to
// rank violated constraints.
bool hidden_horn_flip_attempt(const std::vector<Clause>& clauses,
                              const CostVector& costs, int num_vars,
                              std::vector<char>& flips);

// True iff `renaming` really is a witness: it flips only zero-cost variables
// and leaves at most one positive literal per clause.
bool check_hidden_horn_witness(const std::vector<Clause>& clauses,
                               const CostVector& costs,
                               const Renaming& renaming);

struct HornResult {
  bool sat = false;
  Assignment assignment;  // total over the instance's variables
  Cost cost = 0;
};

// Minimum-cost solve of a restricted-hidden-Horn instance under a fixing:
// unit propagation from the all-False end of the renamed ordering yields the
// least model, which is cost-optimal because every flipped variable is free.
HornResult solve_horn_minsat(const MinsatInstance& inst,
                             const Renaming& renaming, const Fixing& fixing);

// Low-level engine used by solve_horn_minsat and by the search at its leaves:
// clauses are literal lists in original polarity, `flipped` marks renamed
// variables (size num_vars+1). Returns the least renamed-space model as the
// set of original-space values, or nullopt when unsatisfiable.
std::optional<std::vector<bool>> horn_minimal_model(
    const std::vector<std::vector<Lit>>& clauses,
    const std::vector<char>& flipped, int num_vars);

struct FormDiagnosis {
  // Condition A: every clause has at most two literals and some variable
  // renaming gives each 2-clause exactly one negative literal.
  std::optional<Renaming> two_literal_form;
  // Condition B: every variable occurs in at most two clauses and some clause
  // renaming gives each twice-occurring variable exactly one negative
  // occurrence.
  std::optional<Renaming> two_occurrence_form;

  bool any() const {
    return two_literal_form.has_value() || two_occurrence_form.has_value();
  }
};

FormDiagnosis detect_network_form(const CnfFormula& formula);

}  // namespace minsat
