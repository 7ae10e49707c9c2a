#include "minsat/solver.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "minsat/forms.hpp"

namespace minsat {

std::vector<Clause> active_lemmas(const std::vector<Lemma>& lemmas,
                                  std::optional<Cost> incumbent) {
  std::vector<Clause> out;
  for (const Lemma& lemma : lemmas) {
    if (lemma.kind == LemmaKind::kUnconditional ||
        (incumbent.has_value() && *incumbent <= lemma.threshold)) {
      out.push_back(lemma.clause);
    }
  }
  return out;
}

namespace {

// At most one literal outside the enumerated side.
bool qualifies(const Lit* begin, const Lit* end,
               const std::vector<char>& enumerated_mask) {
  int outside = 0;
  for (const Lit* p = begin; p != end; ++p) {
    if (!enumerated_mask[var_of(*p)] && ++outside > 1) return false;
  }
  return true;
}

// Shared scoring core over a flattened clause list (offsets has one extra
// trailing entry). Scratch buffers are caller-owned so the search can reuse
// them across nodes.
BoehmChoice boehm_core(const std::vector<Lit>& flat,
                       const std::vector<int32_t>& offsets,
                       const std::vector<char>& enumerated_mask,
                       const std::vector<char>& candidate_mask,
                       bool has_incumbent, const CostVector& costs,
                       std::vector<int64_t>& g_scratch,
                       std::vector<int64_t>& h_scratch) {
  const size_t num_clauses = offsets.size() - 1;
  const size_t width = enumerated_mask.size();  // num_vars + 1
  size_t max_len = 1;
  for (size_t i = 0; i < num_clauses; ++i) {
    max_len = std::max(max_len, static_cast<size_t>(offsets[i + 1] - offsets[i]));
  }
  g_scratch.assign((max_len + 1) * width, 0);
  h_scratch.assign((max_len + 1) * width, 0);

  for (size_t i = 0; i < num_clauses; ++i) {
    const Lit* begin = flat.data() + offsets[i];
    const Lit* end = flat.data() + offsets[i + 1];
    if (!qualifies(begin, end, enumerated_mask)) continue;
    const size_t len = static_cast<size_t>(end - begin);
    for (const Lit* p = begin; p != end; ++p) {
      const Var v = var_of(*p);
      if (!candidate_mask[v]) continue;
      auto& row = is_pos(*p) ? g_scratch : h_scratch;
      ++row[len * width + v];
    }
  }

  auto e_of = [&](Var v, size_t len) {
    const int64_t gv = g_scratch[len * width + v];
    const int64_t hv = h_scratch[len * width + v];
    return std::max(gv, hv) + 2 * std::min(gv, hv);
  };

  Var best = 0;
  for (Var v = 1; v < static_cast<Var>(width); ++v) {
    if (!candidate_mask[v]) continue;
    if (best == 0) {
      best = v;
      continue;
    }
    for (size_t len = 1; len <= max_len; ++len) {
      const int64_t ev = e_of(v, len);
      const int64_t eb = e_of(best, len);
      if (ev != eb) {
        if (ev > eb) best = v;
        break;
      }
    }
  }
  if (best == 0) throw std::logic_error("branch selection without candidates");

  BoehmChoice choice;
  choice.variable = best;
  choice.score.g.assign(max_len + 1, 0);
  choice.score.h.assign(max_len + 1, 0);
  choice.score.e.assign(max_len + 1, 0);
  int64_t sum_g = 0;
  int64_t sum_h = 0;
  for (size_t len = 1; len <= max_len; ++len) {
    choice.score.g[len] = g_scratch[len * width + best];
    choice.score.h[len] = h_scratch[len * width + best];
    choice.score.e[len] = e_of(best, len);
    sum_g += choice.score.g[len];
    sum_h += choice.score.h[len];
  }
  choice.first_value =
      sum_g > sum_h && (!has_incumbent || costs.of(best) == 0);
  return choice;
}

}  // namespace

BoehmChoice boehm_select(const std::vector<std::vector<Lit>>& reduced_clauses,
                         const std::vector<char>& enumerated_mask,
                         const std::vector<char>& candidate_mask,
                         bool has_incumbent, const CostVector& costs) {
  std::vector<Lit> flat;
  std::vector<int32_t> offsets{0};
  for (const auto& clause : reduced_clauses) {
    flat.insert(flat.end(), clause.begin(), clause.end());
    offsets.push_back(static_cast<int32_t>(flat.size()));
  }
  std::vector<int64_t> g_scratch, h_scratch;
  return boehm_core(flat, offsets, enumerated_mask, candidate_mask,
                    has_incumbent, costs, g_scratch, h_scratch);
}

BoehmScore boehm_score_of(const std::vector<std::vector<Lit>>& reduced_clauses,
                          const std::vector<char>& enumerated_mask, Var v) {
  size_t max_len = 1;
  for (const auto& clause : reduced_clauses) {
    max_len = std::max(max_len, clause.size());
  }
  BoehmScore score;
  score.g.assign(max_len + 1, 0);
  score.h.assign(max_len + 1, 0);
  score.e.assign(max_len + 1, 0);
  for (const auto& clause : reduced_clauses) {
    if (clause.empty() ||
        !qualifies(clause.data(), clause.data() + clause.size(),
                   enumerated_mask)) {
      continue;
    }
    for (Lit lit : clause) {
      if (var_of(lit) != v) continue;
      if (is_pos(lit)) {
        ++score.g[clause.size()];
      } else {
        ++score.h[clause.size()];
      }
    }
  }
  for (size_t len = 0; len <= max_len; ++len) {
    score.e[len] = std::max(score.g[len], score.h[len]) +
                   2 * std::min(score.g[len], score.h[len]);
  }
  return score;
}

PropagationResult propagate(const std::vector<Clause>& clauses,
                            const Fixing& fixing, int num_vars) {
  for (const auto& [v, value] : fixing.entries) {
    (void)value;
    if (v < 1 || v > num_vars)
      throw std::invalid_argument("fixing references unknown variable " +
                                  std::to_string(v));
  }
  PropagationResult res;
  res.assignment = Assignment(num_vars);

  std::vector<std::pair<Var, bool>> queue(fixing.entries);
  size_t head = 0;
  auto flush = [&]() -> bool {
    for (; head < queue.size(); ++head) {
      const auto [v, value] = queue[head];
      const Value cur = res.assignment.get(v);
      if (cur != Value::kUnassigned) {
        if ((cur == Value::kTrue) != value) return false;
        continue;
      }
      res.assignment.set(v, value);
    }
    return true;
  };
  if (!flush()) {
    res.conflict = true;
    return res;
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& clause : clauses) {
      bool satisfied = false;
      Lit open = 0;
      int open_count = 0;
      for (Lit lit : clause.lits()) {
        const Value v = res.assignment.get(var_of(lit));
        if (v == Value::kUnassigned) {
          open = lit;
          ++open_count;
        } else if ((v == Value::kTrue) == is_pos(lit)) {
          satisfied = true;
          break;
        }
      }
      if (satisfied) continue;
      if (open_count == 0) {
        res.conflict = true;
        return res;
      }
      if (open_count == 1) {
        queue.emplace_back(var_of(open), is_pos(open));
        if (!flush()) {
          res.conflict = true;
          return res;
        }
        changed = true;
      }
    }
  }

  for (const Clause& clause : clauses) {
    bool satisfied = false;
    std::vector<Lit> open;
    for (Lit lit : clause.lits()) {
      const Value v = res.assignment.get(var_of(lit));
      if (v == Value::kUnassigned) {
        open.push_back(lit);
      } else if ((v == Value::kTrue) == is_pos(lit)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) res.residual.push_back(Clause(std::move(open)));
  }
  return res;
}

namespace {

struct EngineClause {
  std::vector<Lit> lits;
  bool is_pair = false;
  bool global = false;
  Cost threshold = 0;
  bool active = true;
  int num_true = 0;
  int num_false = 0;
  int unfixed_enum = 0;  // unfixed literals over enumerated variables
};

// What a closed subtree tells its parent.
struct Summary {
  bool refuted = false;        // genuinely unsatisfiable, no pair/bound help
  Cost best = kInfiniteCost;   // cheapest solution observed inside
};

struct Pending {
  Var var;
  bool value;
  bool from_pair;
};

class Engine {
 public:
  Engine(const ClassView& view, const SolveOptions& options)
      : instance_(*view.instance),
        partition_(*view.partition),
        options_(options),
        num_vars_(instance_.formula.num_vars) {
    values_.assign(static_cast<size_t>(num_vars_) + 1, Value::kUnassigned);
    enumerated_mask_.assign(static_cast<size_t>(num_vars_) + 1, 0);
    for (Var v : partition_.enumerated) enumerated_mask_[v] = 1;
    easy_flip_.assign(static_cast<size_t>(num_vars_) + 1, 0);
    for (Var v : partition_.easy_renaming.flipped_vars) easy_flip_[v] = 1;
    candidate_mask_.assign(static_cast<size_t>(num_vars_) + 1, 0);

    for (const DbClause& db : *view.clause_db) {
      EngineClause ec;
      ec.lits = db.clause.lits();
      ec.global = db.global;
      clauses_.push_back(std::move(ec));
    }
    if (options_.use_pairs) {
      for (const Lemma& lemma : *view.pairs) {
        EngineClause ec;
        ec.lits = lemma.clause.lits();
        ec.is_pair = true;
        ec.global = lemma.global;
        ec.threshold = lemma.threshold;
        ec.active = false;
        inactive_pairs_.push_back(clauses_.size());
        clauses_.push_back(std::move(ec));
      }
    }

    occ_.assign(2 * static_cast<size_t>(num_vars_), {});
    for (size_t ci = 0; ci < clauses_.size(); ++ci) {
      for (Lit lit : clauses_[ci].lits) {
        occ_[enc(lit)].push_back(ci);
        if (enumerated_mask_[var_of(lit)]) ++clauses_[ci].unfixed_enum;
      }
    }
    unfixed_enum_count_ = static_cast<int>(partition_.enumerated.size());
  }

  SolveResult run(const Fixing& fixing) {
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    res.trace.initial_path = fixing;

    bool empty_clause = false;
    for (const EngineClause& c : clauses_) {
      if (!c.is_pair && c.lits.empty()) {
        empty_clause = true;
        break;
      }
    }

    Summary root;
    if (empty_clause) {
      ++stats_.conflicts;
      root.refuted = true;
    } else {
      pending_.clear();
      for (const auto& [v, value] : fixing.entries) {
        pending_.push_back({v, value, false});
      }
      root = explore(false);
    }

    res.stats = stats_;
    res.budget_exhausted = budget_hit_;
    if (incumbent_.has_value()) {
      res.outcome = SolveOutcome::kOptimal;
      res.assignment = best_assignment_;
      res.cost = *incumbent_;
      check_against_formula(best_assignment_);
      res.trace.optimal_cost = res.cost;
      if (options_.want_trace) {
        for (const CapNode& node : best_path_) {
          TraceNode tn;
          tn.variable = node.var;
          tn.value = node.value;
          if (node.opp_known) {
            if (node.opp.refuted) {
              tn.opposite_refuted = true;
            } else {
              const Cost close = node.opp_close_incumbent.has_value()
                                     ? *node.opp_close_incumbent
                                     : kInfiniteCost;
              const Cost evidence = std::min(node.opp.best, close);
              if (evidence < kInfiniteCost) tn.opposite_evidence = evidence;
            }
          }
          res.trace.final_path.push_back(tn);
        }
      }
    } else {
      res.outcome = SolveOutcome::kUnsat;
      res.trace.root_branch = root_branch_;
    }
    res.trace.nodes_expanded = stats_.nodes_expanded;
    res.stats.elapsed_ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    return res;
  }

 private:
  struct Frame {
    Var var = 0;
    bool value = false;
    int64_t node_id = 0;
    bool second = false;  // currently exploring the second child
    Summary first;        // summary of the first child once it closed
    std::optional<Cost> first_close_incumbent;
  };

  struct CapNode {
    Var var = 0;
    bool value = false;
    int64_t node_id = 0;
    bool opp_known = false;
    Summary opp;
    std::optional<Cost> opp_close_incumbent;
  };

  size_t enc(Lit lit) const {
    return 2 * (static_cast<size_t>(var_of(lit)) - 1) + (is_pos(lit) ? 0 : 1);
  }

  // Explores the subtree under the assignments queued in pending_.
  // `inherited_taint` is true when any ancestor propagation relied on a
  // cost-conditional clause, which demotes refutations to mere closes.
  Summary explore(bool inherited_taint) {
    const size_t mark = trail_.size();
    bool used_pair = false;
    refresh_pairs();
    const bool ok = propagate_node(&used_pair);
    const bool taint = inherited_taint || used_pair;

    Summary out;
    if (!ok) {
      ++stats_.conflicts;
      out.refuted = !taint;
      undo_to(mark);
      return out;
    }

    if (options_.mode == SolveMode::kMinsat && incumbent_.has_value() &&
        cost_so_far_ >= *incumbent_) {
      ++stats_.bound_prunes;
      undo_to(mark);
      return out;
    }

    if (unfixed_enum_count_ == 0) {
      leaf(taint, &out);
      undo_to(mark);
      return out;
    }

    // Interior node: the easy-side obligations (residual clauses with no
    // remaining enumerated literal) must stay satisfiable on their own.
    if (!easy_obligations_model().has_value()) {
      ++stats_.easy_form_prunes;
      out.refuted = !taint;
      undo_to(mark);
      return out;
    }

    if (options_.node_budget >= 0 &&
        stats_.nodes_expanded >= options_.node_budget) {
      budget_hit_ = true;
      undo_to(mark);
      return out;
    }

    ++stats_.nodes_expanded;
    const BoehmChoice choice = pick_branch();
    const int64_t node_id = next_node_id_++;
    const size_t depth = frames_.size();
    frames_.push_back({choice.variable, choice.first_value, node_id, false,
                       Summary{}, std::nullopt});

    seed_pending(choice.variable, choice.first_value);
    const Summary first = explore(taint);

    if (budget_hit_ || (options_.mode == SolveMode::kSat && found_)) {
      frames_.pop_back();
      undo_to(mark);
      out.best = first.best;
      return out;
    }

    frames_[depth].second = true;
    frames_[depth].first = first;
    frames_[depth].first_close_incumbent = incumbent_;
    frames_[depth].value = !choice.first_value;
    seed_pending(choice.variable, !choice.first_value);
    const Summary second = explore(taint);

    // If the best path runs through the first child, its entry at this depth
    // still lacks the opposite subtree; it just closed, so fill it in.
    if (options_.want_trace && best_path_.size() > depth &&
        best_path_[depth].node_id == node_id && !best_path_[depth].opp_known) {
      best_path_[depth].opp_known = true;
      best_path_[depth].opp = second;
      best_path_[depth].opp_close_incumbent = incumbent_;
    }

    if (depth == 0) {
      root_branch_ = SearchTrace::RootBranch{choice.variable, first.refuted,
                                             second.refuted};
    }

    frames_.pop_back();
    undo_to(mark);
    out.refuted = first.refuted && second.refuted;
    out.best = std::min(first.best, second.best);
    return out;
  }

  void seed_pending(Var v, bool value) {
    pending_.clear();
    pending_.push_back({v, value, false});
  }

  // Activates cost-conditional clauses whose threshold the incumbent now
  // meets. Counters were maintained all along, so only the pending unit or
  // conflict they may already imply needs collecting. Activation is never
  // undone: the incumbent only improves.
  void refresh_pairs() {
    if (inactive_pairs_.empty() || !incumbent_.has_value()) return;
    size_t kept = 0;
    for (size_t idx : inactive_pairs_) {
      EngineClause& c = clauses_[idx];
      if (*incumbent_ > c.threshold) {
        inactive_pairs_[kept++] = idx;
        continue;
      }
      c.active = true;
      ++stats_.pair_activations;
      if (c.num_true == 0) {
        const int unfixed =
            static_cast<int>(c.lits.size()) - c.num_true - c.num_false;
        if (unfixed == 0) {
          pair_conflict_pending_ = true;
        } else if (unfixed == 1) {
          for (Lit lit : c.lits) {
            if (values_[var_of(lit)] == Value::kUnassigned) {
              pending_.push_back({var_of(lit), is_pos(lit), true});
              break;
            }
          }
        }
      }
    }
    inactive_pairs_.resize(kept);
  }

  // Applies everything queued in pending_ to fixpoint. Returns false on
  // conflict; *used_pair reports whether any cost-conditional clause fed a
  // unit or the conflict.
  bool propagate_node(bool* used_pair) {
    if (pair_conflict_pending_) {
      pair_conflict_pending_ = false;
      *used_pair = true;
      pending_.clear();
      return false;
    }
    for (size_t qi = 0; qi < pending_.size(); ++qi) {
      const Pending p = pending_[qi];
      const Value cur = values_[p.var];
      if (cur != Value::kUnassigned) {
        if ((cur == Value::kTrue) != p.value) {
          *used_pair |= p.from_pair;
          pending_.clear();
          return false;
        }
        continue;
      }
      *used_pair |= p.from_pair;
      if (!assign(p.var, p.value, used_pair)) {
        pending_.clear();
        return false;
      }
    }
    pending_.clear();
    return true;
  }

  bool assign(Var v, bool value, bool* used_pair) {
    values_[v] = value ? Value::kTrue : Value::kFalse;
    trail_.push_back(v);
    ++stats_.propagations;
    if (value) cost_so_far_ += instance_.costs.of(v);
    const bool enumerated = enumerated_mask_[v] != 0;
    if (enumerated) --unfixed_enum_count_;

    for (size_t ci : occ_[enc(make_lit(v, value))]) {
      ++clauses_[ci].num_true;
      if (enumerated) --clauses_[ci].unfixed_enum;
    }
    bool conflict = false;
    for (size_t ci : occ_[enc(make_lit(v, !value))]) {
      EngineClause& c = clauses_[ci];
      ++c.num_false;
      if (enumerated) --c.unfixed_enum;
      if (conflict || !c.active || c.num_true > 0) continue;
      const int unfixed =
          static_cast<int>(c.lits.size()) - c.num_true - c.num_false;
      if (unfixed == 0) {
        conflict = true;
        *used_pair |= c.is_pair;
      } else if (unfixed == 1) {
        for (Lit lit : c.lits) {
          if (values_[var_of(lit)] == Value::kUnassigned) {
            pending_.push_back({var_of(lit), is_pos(lit), c.is_pair});
            break;
          }
        }
      }
    }
    return !conflict;
  }

  void undo_to(size_t mark) {
    while (trail_.size() > mark) {
      const Var v = trail_.back();
      trail_.pop_back();
      const bool value = values_[v] == Value::kTrue;
      values_[v] = Value::kUnassigned;
      if (value) cost_so_far_ -= instance_.costs.of(v);
      const bool enumerated = enumerated_mask_[v] != 0;
      if (enumerated) ++unfixed_enum_count_;
      for (size_t ci : occ_[enc(make_lit(v, value))]) {
        --clauses_[ci].num_true;
        if (enumerated) ++clauses_[ci].unfixed_enum;
      }
      for (size_t ci : occ_[enc(make_lit(v, !value))]) {
        --clauses_[ci].num_false;
        if (enumerated) ++clauses_[ci].unfixed_enum;
      }
    }
    pending_.clear();
    pair_conflict_pending_ = false;
  }

  // Residuals of the active, implied (non-pair, non-global) clauses whose
  // enumerated literals are exhausted, solved as a renamed Horn system. At a
  // leaf that is every unsatisfied clause, and the least model doubles as the
  // cheapest completion.
  std::optional<std::vector<bool>> easy_obligations_model() {
    obligations_.clear();
    for (const EngineClause& c : clauses_) {
      if (!c.active || c.is_pair || c.global) continue;
      if (c.num_true > 0 || c.unfixed_enum > 0) continue;
      std::vector<Lit> open;
      for (Lit lit : c.lits) {
        if (values_[var_of(lit)] == Value::kUnassigned) open.push_back(lit);
      }
      obligations_.push_back(std::move(open));
    }
    return horn_minimal_model(obligations_, easy_flip_, num_vars_);
  }

  void leaf(bool taint, Summary* out) {
    const auto model = easy_obligations_model();
    if (!model.has_value()) {
      ++stats_.easy_form_prunes;
      out->refuted = !taint;
      return;
    }
    Cost total = cost_so_far_;
    for (Var v = 1; v <= num_vars_; ++v) {
      if (values_[v] == Value::kUnassigned && (*model)[v]) {
        total += instance_.costs.of(v);
      }
    }
    out->best = total;

    bool improved = false;
    if (options_.mode == SolveMode::kSat) {
      if (!found_) {
        found_ = true;
        improved = true;
      }
    } else {
      improved = !incumbent_.has_value() || total < *incumbent_;
    }
    if (improved) {
      incumbent_ = total;
      best_assignment_ = Assignment(num_vars_);
      for (Var v = 1; v <= num_vars_; ++v) {
        if (values_[v] == Value::kUnassigned) {
          best_assignment_.set(v, (*model)[v]);
        } else {
          best_assignment_.set(v, values_[v] == Value::kTrue);
        }
      }
      if (options_.want_trace) capture_path();
    }
  }

  void capture_path() {
    best_path_.clear();
    best_path_.reserve(frames_.size());
    for (const Frame& f : frames_) {
      CapNode node;
      node.var = f.var;
      node.value = f.value;
      node.node_id = f.node_id;
      node.opp_known = f.second;
      if (f.second) {
        node.opp = f.first;
        node.opp_close_incumbent = f.first_close_incumbent;
      }
      best_path_.push_back(node);
    }
  }

  BoehmChoice pick_branch() {
    sprime_lits_.clear();
    sprime_offsets_.assign(1, 0);
    for (const EngineClause& c : clauses_) {
      if (!c.active || c.num_true > 0 || c.unfixed_enum == 0) continue;
      for (Lit lit : c.lits) {
        if (values_[var_of(lit)] == Value::kUnassigned) {
          sprime_lits_.push_back(lit);
        }
      }
      sprime_offsets_.push_back(static_cast<int32_t>(sprime_lits_.size()));
    }
    std::fill(candidate_mask_.begin(), candidate_mask_.end(), 0);
    for (Var v : partition_.enumerated) {
      if (values_[v] == Value::kUnassigned) candidate_mask_[v] = 1;
    }
    const bool has_incumbent =
        options_.mode == SolveMode::kMinsat && incumbent_.has_value();
    return boehm_core(sprime_lits_, sprime_offsets_, enumerated_mask_,
                      candidate_mask_, has_incumbent, instance_.costs,
                      g_scratch_, h_scratch_);
  }

  void check_against_formula(const Assignment& a) const {
    for (const Clause& clause : instance_.formula.clauses) {
      bool satisfied = false;
      for (Lit lit : clause.lits()) {
        if (a.is_true(var_of(lit)) == is_pos(lit)) {
          satisfied = true;
          break;
        }
      }
      if (!satisfied) {
        throw std::logic_error("search returned a non-satisfying assignment");
      }
    }
  }

  const MinsatInstance& instance_;
  const Partition& partition_;
  const SolveOptions& options_;
  const int num_vars_;

  std::vector<EngineClause> clauses_;
  std::vector<size_t> inactive_pairs_;
  std::vector<std::vector<size_t>> occ_;
  std::vector<Value> values_;
  std::vector<char> enumerated_mask_;
  std::vector<char> easy_flip_;
  std::vector<Var> trail_;
  std::vector<Pending> pending_;
  bool pair_conflict_pending_ = false;

  Cost cost_so_far_ = 0;
  int unfixed_enum_count_ = 0;
  std::optional<Cost> incumbent_;
  Assignment best_assignment_;
  bool found_ = false;
  bool budget_hit_ = false;

  std::vector<Frame> frames_;
  std::vector<CapNode> best_path_;
  std::optional<SearchTrace::RootBranch> root_branch_;
  int64_t next_node_id_ = 0;

  SolveStats stats_;

  // Reused per-node scratch.
  std::vector<std::vector<Lit>> obligations_;
  std::vector<Lit> sprime_lits_;
  std::vector<int32_t> sprime_offsets_;
  std::vector<char> candidate_mask_;
  std::vector<int64_t> g_scratch_, h_scratch_;
};

}  // namespace

SolveResult solve(const ClassView& view, const Fixing& fixing,
                  const SolveOptions& options) {
  if (view.instance == nullptr || view.clause_db == nullptr ||
      view.pairs == nullptr || view.partition == nullptr) {
    throw std::invalid_argument("solve: incomplete class view");
  }
  for (const auto& [v, value] : fixing.entries) {
    (void)value;
    if (v < 1 || v > view.instance->formula.num_vars)
      throw std::invalid_argument("fixing references unknown variable " +
                                  std::to_string(v));
  }
  Engine engine(view, options);
  return engine.run(fixing);
}

}  // namespace minsat
