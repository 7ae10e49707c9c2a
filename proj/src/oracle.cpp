#include "minsat/oracle.hpp"

#include <stdexcept>

namespace minsat {

OracleResult brute_force(const MinsatInstance& inst, const Fixing& fixing,
                         SolveMode mode) {
  const int nv = inst.formula.num_vars;
  Assignment base(nv);
  for (const auto& [v, val] : fixing.entries) {
    if (v < 1 || v > nv) throw std::invalid_argument("fixing out of range");
    base.set(v, val);
  }

  std::vector<Var> free_vars;
  for (Var v = 1; v <= nv; ++v)
    if (base.get(v) == Value::kUnassigned) free_vars.push_back(v);
  if (free_vars.size() > 24)
    throw std::invalid_argument("brute force limited to 24 free variables");

  // Per clause: satisfied already, or bitmasks over free-variable slots.
  struct MaskedClause {
    uint32_t pos = 0, neg = 0;
  };
  std::vector<int> slot_of(static_cast<size_t>(nv) + 1, -1);
  for (size_t i = 0; i < free_vars.size(); ++i)
    slot_of[static_cast<size_t>(free_vars[i])] = static_cast<int>(i);

  std::vector<MaskedClause> masked;
  for (const Clause& c : inst.formula.clauses) {
    MaskedClause mc;
    bool satisfied = false;
    for (Lit l : c.lits()) {
      Value fixed = base.get(var_of(l));
      if (fixed != Value::kUnassigned) {
        if ((fixed == Value::kTrue) == is_pos(l)) {
          satisfied = true;
          break;
        }
        continue;  // falsified literal
      }
      int slot = slot_of[static_cast<size_t>(var_of(l))];
      if (is_pos(l))
        mc.pos |= 1u << slot;
      else
        mc.neg |= 1u << slot;
    }
    if (satisfied) continue;
    if (mc.pos == 0 && mc.neg == 0) {
      return OracleResult{};  // clause cannot be satisfied
    }
    masked.push_back(mc);
  }

  Cost fixed_cost = 0;
  for (Var v = 1; v <= nv; ++v)
    if (base.get(v) == Value::kTrue) fixed_cost += inst.costs.of(v);

  OracleResult best;
  const uint32_t limit =
      free_vars.empty() ? 1u : (1u << free_vars.size());
  for (uint32_t combo = 0; combo < limit; ++combo) {
    bool ok = true;
    for (const MaskedClause& mc : masked) {
      if ((mc.pos & combo) == 0 && (mc.neg & ~combo) == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;

    Cost cost = fixed_cost;
    for (uint32_t bits = combo; bits != 0; bits &= bits - 1) {
      int slot = __builtin_ctz(bits);
      cost += inst.costs.of(free_vars[static_cast<size_t>(slot)]);
    }
    if (best.outcome == OracleOutcome::kUnsat || cost < best.cost) {
      best.outcome = OracleOutcome::kOptimal;
      best.cost = cost;
      best.assignment = base;
      for (size_t i = 0; i < free_vars.size(); ++i)
        best.assignment.set(free_vars[i], (combo >> i) & 1u);
      if (mode == SolveMode::kSat) return best;
    }
  }
  return best;
}

}  // namespace minsat
