#include "minsat/partition.hpp"

#include <algorithm>

namespace minsat {

bool Partition::is_enumerated(Var v) const {
  return std::binary_search(enumerated.begin(), enumerated.end(), v);
}

std::vector<Clause> partial_clauses(const std::vector<Clause>& clauses,
                                    const std::vector<char>& keep_mask) {
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (const Clause& c : clauses) {
    std::vector<Lit> kept;
    for (Lit l : c.lits())
      if (keep_mask[static_cast<size_t>(var_of(l))]) kept.push_back(l);
    out.emplace_back(std::move(kept));
  }
  return out;
}

MinsatInstance partial_instance(const MinsatInstance& inst,
                                const std::vector<Var>& keep) {
  std::vector<char> mask(static_cast<size_t>(inst.formula.num_vars) + 1, 0);
  for (Var v : keep) mask[static_cast<size_t>(v)] = 1;

  MinsatInstance out = inst;
  out.formula.clauses = partial_clauses(inst.formula.clauses, mask);
  for (Var v = 1; v <= inst.formula.num_vars; ++v)
    if (!mask[static_cast<size_t>(v)])
      out.costs.true_cost[static_cast<size_t>(v) - 1] = 0;
  return out;
}

namespace {

// Pick the variable to evict from the easy side: the one whose positive
// occurrences sit in the most pairwise at-most-one-positive constraints that
// the best-effort flip assignment leaves violated. Falls back to counting any
// occurrence in a violated pair.
Var eviction_candidate(const std::vector<Clause>& scoped,
                       const std::vector<char>& flips, int num_vars) {
  std::vector<int> pos_count(static_cast<size_t>(num_vars) + 1, 0);
  std::vector<int> any_count(static_cast<size_t>(num_vars) + 1, 0);
  auto positive_after = [&flips](Lit l) {
    return is_pos(l) != static_cast<bool>(flips[static_cast<size_t>(var_of(l))]);
  };
  for (const Clause& c : scoped) {
    const auto& lits = c.lits();
    for (size_t i = 0; i < lits.size(); ++i) {
      if (!positive_after(lits[i])) continue;
      for (size_t j = i + 1; j < lits.size(); ++j) {
        if (!positive_after(lits[j])) continue;
        for (Lit l : {lits[i], lits[j]}) {
          ++any_count[static_cast<size_t>(var_of(l))];
          if (is_pos(l)) ++pos_count[static_cast<size_t>(var_of(l))];
        }
      }
    }
  }
  Var best = 0;
  for (const auto& counts : {pos_count, any_count}) {
    for (Var v = 1; v <= num_vars; ++v)
      if (counts[static_cast<size_t>(v)] >
          (best == 0 ? 0 : counts[static_cast<size_t>(best)]))
        best = v;
    if (best != 0) return best;
  }
  return 0;
}

}  // namespace

Partition compute_partition(const std::vector<Clause>& clauses,
                            const CostVector& costs, int num_vars) {
  std::vector<char> easy_mask(static_cast<size_t>(num_vars) + 1, 1);
  easy_mask[0] = 0;
  std::vector<Var> enumerated;

  std::vector<char> flips;
  while (true) {
    std::vector<Clause> scoped = partial_clauses(clauses, easy_mask);
    if (hidden_horn_flip_attempt(scoped, costs, num_vars, flips)) break;
    Var evict = eviction_candidate(scoped, flips, num_vars);
    if (evict == 0) {
      // Should be unreachable: an inconsistent system violates some pair.
      for (Var v = 1; v <= num_vars && evict == 0; ++v)
        if (easy_mask[static_cast<size_t>(v)]) evict = v;
      if (evict == 0) break;
    }
    easy_mask[static_cast<size_t>(evict)] = 0;
    enumerated.push_back(evict);
  }

  // Move-back sweep: restore any enumerated variable the form can absorb,
  // until no single variable can return (1-maximality).
  bool moved = true;
  while (moved && !enumerated.empty()) {
    moved = false;
    std::sort(enumerated.begin(), enumerated.end());
    for (size_t i = 0; i < enumerated.size(); ++i) {
      Var v = enumerated[i];
      easy_mask[static_cast<size_t>(v)] = 1;
      std::vector<Clause> scoped = partial_clauses(clauses, easy_mask);
      if (detect_restricted_hidden_horn(scoped, costs, num_vars)) {
        enumerated.erase(enumerated.begin() + static_cast<ptrdiff_t>(i));
        moved = true;
        break;
      }
      easy_mask[static_cast<size_t>(v)] = 0;
    }
  }

  Partition p;
  std::sort(enumerated.begin(), enumerated.end());
  p.enumerated = std::move(enumerated);
  for (Var v = 1; v <= num_vars; ++v)
    if (easy_mask[static_cast<size_t>(v)]) p.easy.push_back(v);

  std::vector<Clause> scoped = partial_clauses(clauses, easy_mask);
  auto witness = detect_restricted_hidden_horn(scoped, costs, num_vars);
  p.easy_renaming = witness ? *witness : Renaming{};
  return p;
}

bool verify_partition(const std::vector<Clause>& clauses,
                      const CostVector& costs, int num_vars,
                      const Partition& partition) {
  std::vector<char> seen(static_cast<size_t>(num_vars) + 1, 0);
  for (const auto* side : {&partition.easy, &partition.enumerated}) {
    for (Var v : *side) {
      if (v < 1 || v > num_vars || seen[static_cast<size_t>(v)]) return false;
      seen[static_cast<size_t>(v)] = 1;
    }
  }
  for (Var v = 1; v <= num_vars; ++v)
    if (!seen[static_cast<size_t>(v)]) return false;

  std::vector<char> mask(static_cast<size_t>(num_vars) + 1, 0);
  for (Var v : partition.easy) mask[static_cast<size_t>(v)] = 1;
  for (Var v : partition.easy_renaming.flipped_vars)
    if (!mask[static_cast<size_t>(v)]) return false;  // flip outside easy side
  std::vector<Clause> scoped = partial_clauses(clauses, mask);
  return check_hidden_horn_witness(scoped, costs, partition.easy_renaming);
}

}  // namespace minsat
