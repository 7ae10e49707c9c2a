#include "minsat/learner.hpp"

#include <algorithm>

namespace minsat {

namespace {

// Negations of the initial fixing, in fixing order.
std::vector<Lit> negated_prefix(const Fixing& fixing) {
  std::vector<Lit> prefix;
  prefix.reserve(fixing.size());
  for (const auto& [v, value] : fixing.entries) {
    prefix.push_back(make_lit(v, !value));
  }
  return prefix;
}

}  // namespace

std::vector<CandidateLemma> extract_sat_lemmas(const SearchTrace& trace,
                                               bool unsat_outcome) {
  std::vector<CandidateLemma> out;
  if (unsat_outcome) {
    // An unsatisfiable empty fixing refutes the formula itself; the empty
    // clause says so. A refuted nonempty fixing teaches nothing worth the
    // clause it would cost.
    if (trace.initial_path.empty()) out.push_back(CandidateLemma{});
    return out;
  }
  std::vector<Lit> prefix = negated_prefix(trace.initial_path);
  for (const TraceNode& node : trace.final_path) {
    if (node.opposite_refuted) {
      CandidateLemma cand;
      cand.lits = prefix;
      cand.lits.push_back(make_lit(node.variable, node.value));
      out.push_back(std::move(cand));
    }
    prefix.push_back(make_lit(node.variable, !node.value));
  }
  return out;
}

std::vector<CandidateLemma> extract_cost_pairs(const SearchTrace& trace) {
  std::vector<CandidateLemma> out;
  std::vector<Lit> prefix = negated_prefix(trace.initial_path);
  for (const TraceNode& node : trace.final_path) {
    CandidateLemma cand;
    cand.lits = prefix;
    cand.lits.push_back(make_lit(node.variable, node.value));
    if (node.opposite_refuted) {
      out.push_back(std::move(cand));
    } else if (node.opposite_evidence.has_value()) {
      cand.kind = LemmaKind::kCostConditional;
      cand.threshold = *node.opposite_evidence;
      out.push_back(std::move(cand));
    }
    prefix.push_back(make_lit(node.variable, !node.value));
  }
  return out;
}

std::optional<CandidateLemma> minimize_lemma(CandidateLemma candidate,
                                             const LemmaOracle& oracle) {
  if (candidate.lits.size() < 2) return candidate;
  const SolveMode mode = candidate.kind == LemmaKind::kUnconditional
                             ? SolveMode::kSat
                             : SolveMode::kMinsat;
  for (int idx = static_cast<int>(candidate.lits.size()) - 2; idx >= 0;
       --idx) {
    std::vector<Lit> trial = candidate.lits;
    trial.erase(trial.begin() + idx);
    Fixing violation;
    for (Lit lit : trial) violation.add(var_of(lit), !is_pos(lit));
    const OracleAnswer ans = oracle(violation, mode);

    bool keep;
    if (ans.unsat) {
      // An exhausted budget leaves "unsatisfiable" unproven.
      if (ans.budget_exhausted) return std::nullopt;
      keep = true;
    } else if (candidate.kind == LemmaKind::kUnconditional) {
      keep = false;  // a witness against the removal is conclusive
    } else if (ans.cost < candidate.threshold) {
      keep = false;  // ditto: some violation is cheaper than the threshold
    } else {
      if (ans.budget_exhausted) return std::nullopt;  // minimum unproven
      keep = true;
    }
    if (keep) candidate.lits = std::move(trial);
  }
  return candidate;
}

LemmaOracle make_solver_oracle(const CompiledClass& compiled,
                               int64_t node_budget) {
  return [&compiled, node_budget](const Fixing& fixing,
                                  SolveMode mode) -> OracleAnswer {
    SolveOptions options;
    options.mode = mode;
    options.want_trace = false;
    options.node_budget = node_budget;
    options.use_pairs = false;
    const SolveResult res = solve(compiled.view(), fixing, options);
    OracleAnswer ans;
    ans.budget_exhausted = res.budget_exhausted;
    ans.unsat = res.outcome == SolveOutcome::kUnsat;
    if (res.outcome == SolveOutcome::kOptimal) ans.cost = res.cost;
    return ans;
  };
}

bool already_known(const CompiledClass& compiled, const Clause& clause,
                   LemmaKind kind, Cost threshold) {
  for (const DbClause& db : compiled.clause_db) {
    if (db.clause == clause) return true;  // already unconditionally enforced
  }
  if (kind == LemmaKind::kCostConditional) {
    for (const Lemma& pair : compiled.pairs) {
      if (pair.clause == clause && pair.threshold >= threshold) return true;
    }
  }
  return false;
}

IncorporateResult incorporate(CompiledClass& compiled,
                              const std::vector<Lemma>& batch,
                              size_t clause_cap) {
  IncorporateResult result;
  auto total = [&compiled] {
    return compiled.clause_db.size() + compiled.pairs.size();
  };

  for (const Lemma& lemma : batch) {
    if (lemma.kind == LemmaKind::kCostConditional) {
      bool handled = false;
      for (const DbClause& db : compiled.clause_db) {
        if (db.clause == lemma.clause) {
          handled = true;  // a hard copy makes the conditional one pointless
          break;
        }
      }
      for (Lemma& existing : compiled.pairs) {
        if (handled) break;
        if (existing.clause == lemma.clause) {
          existing.threshold = std::max(existing.threshold, lemma.threshold);
          handled = true;
        }
      }
      if (handled) continue;
      if (total() >= clause_cap) {
        result.cap_hit = true;
        break;
      }
      compiled.pairs.push_back(lemma);
      ++result.pairs_added;
      continue;
    }

    bool skip = false;
    for (DbClause& db : compiled.clause_db) {
      if (db.clause != lemma.clause) continue;
      if (!lemma.global && db.is_lemma && db.global) {
        // Same clause, but the stored copy was opaque to the easy side;
        // promote it instead of storing a duplicate.
        db.global = false;
        ++result.lemmas_added;
      }
      skip = true;
      break;
    }
    if (skip) continue;

    if (total() >= clause_cap) {
      result.cap_hit = true;
      break;
    }
    DbClause entry;
    entry.clause = lemma.clause;
    entry.is_lemma = true;
    entry.global = lemma.global;
    compiled.clause_db.push_back(entry);
    ++result.lemmas_added;

    if (!lemma.global) {
      const Clause& winner = compiled.clause_db.back().clause;
      const size_t before = compiled.clause_db.size();
      auto last = compiled.clause_db.end() - 1;
      compiled.clause_db.erase(
          std::remove_if(compiled.clause_db.begin(), last,
                         [&winner](const DbClause& db) {
                           return subsumes(winner, db.clause);
                         }),
          last);
      result.clauses_deleted +=
          static_cast<int>(before - compiled.clause_db.size());
    }
  }
  return result;
}

}  // namespace minsat
