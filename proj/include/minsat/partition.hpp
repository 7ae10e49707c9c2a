// Splitting the variables into an "easy" set, whose induced partial instance
// is restricted hidden Horn, and an "enumerated" remainder that the search
// branches over.

#pragma once

#include "minsat/core.hpp"
#include "minsat/forms.hpp"

namespace minsat {

struct Partition {
  std::vector<Var> easy;        // sorted
  std::vector<Var> enumerated;  // sorted
  Renaming easy_renaming;       // witness for the easy side

  bool is_enumerated(Var v) const;
};

// Delete every literal over variables outside `keep`. Clauses that lose all
// their literals stay as empty clauses: an unsatisfiable partial instance
// must remain visible, not vanish.
MinsatInstance partial_instance(const MinsatInstance& inst,
                                const std::vector<Var>& keep);

// Same literal deletion on a bare clause list (keep_mask is indexed by
// variable, size num_vars+1).
std::vector<Clause> partial_clauses(const std::vector<Clause>& clauses,
                                    const std::vector<char>& keep_mask);

// Greedy construction: start with every variable easy; while detection fails,
// move out the variable occurring positively in the most violated pairwise
// constraints (ties to the lowest index); finish with a move-back sweep so no
// single enumerated variable could rejoin the easy side (1-maximality).
Partition compute_partition(const std::vector<Clause>& clauses,
                            const CostVector& costs, int num_vars);

// True iff the stored partition is a genuine witness for the clause set:
// easy/enumerated partition the variables and the easy-side partial instance
// is hidden Horn under the stored renaming.
bool verify_partition(const std::vector<Clause>& clauses,
                      const CostVector& costs, int num_vars,
                      const Partition& partition);

}  // namespace minsat
