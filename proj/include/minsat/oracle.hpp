// Reference solver: plain exhaustive enumeration over the free variables.
// Kept deliberately free of any search-engine machinery so it can act as an
// independent check on the real solver.

#pragma once

#include "minsat/core.hpp"

namespace minsat {

enum class OracleOutcome { kUnsat, kOptimal };

struct OracleResult {
  OracleOutcome outcome = OracleOutcome::kUnsat;
  Assignment assignment;  // total; meaningful only when kOptimal
  Cost cost = 0;
};

// Enumerates every extension of `fixing`. kSat returns the first satisfying
// assignment in enumeration order, kMinsat the cheapest one. Throws
// std::invalid_argument when more than 24 variables are free.
OracleResult brute_force(const MinsatInstance& inst, const Fixing& fixing,
                         SolveMode mode);

}  // namespace minsat
