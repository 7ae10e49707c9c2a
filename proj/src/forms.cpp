#include "minsat/forms.hpp"

#include <algorithm>
#include <numeric>

namespace minsat {

bool Renaming::flips_var(Var v) const {
  return std::binary_search(flipped_vars.begin(), flipped_vars.end(), v);
}

namespace {

// 2-SAT over flip variables f_1..f_n by Tarjan SCC on the implication graph.
// Vertex 2v-1 is literal ¬f_v, vertex 2v-2 is f_v; visiting the negative
// vertex first makes the canonical solution prefer not flipping.
class FlipTwoSat {
 public:
  explicit FlipTwoSat(int n) : n_(n), adj_(static_cast<size_t>(2 * n)) {}

  static int node(Var v, bool positive) { return 2 * (v - 1) + (positive ? 0 : 1); }

  void add_or(int a, int b) {
    adj_[static_cast<size_t>(a ^ 1)].push_back(b);
    adj_[static_cast<size_t>(b ^ 1)].push_back(a);
  }

  void add_unit(int a) { adj_[static_cast<size_t>(a ^ 1)].push_back(a); }

  // Always produces an assignment (flips[v] for v=1..n); returns whether the
  // system is consistent. On inconsistency the assignment is best-effort and
  // only used to rank violated constraints.
  bool solve(std::vector<char>& flips) {
    index_.assign(adj_.size(), -1);
    low_.assign(adj_.size(), 0);
    comp_.assign(adj_.size(), -1);
    on_stack_.assign(adj_.size(), 0);
    next_index_ = 0;
    next_comp_ = 0;
    // Negative vertices first so unconstrained variables stay unflipped.
    for (int v = 1; v <= n_; ++v) {
      if (index_[static_cast<size_t>(node(v, false))] < 0)
        tarjan(node(v, false));
      if (index_[static_cast<size_t>(node(v, true))] < 0) tarjan(node(v, true));
    }
    bool consistent = true;
    flips.assign(static_cast<size_t>(n_) + 1, 0);
    for (int v = 1; v <= n_; ++v) {
      int cp = comp_[static_cast<size_t>(node(v, true))];
      int cn = comp_[static_cast<size_t>(node(v, false))];
      if (cp == cn) consistent = false;
      // Tarjan numbers sink components first; the later-numbered literal is
      // the implied one. Ties (inconsistent) default to not flipping.
      flips[static_cast<size_t>(v)] = cp < cn ? 1 : 0;
    }
    return consistent;
  }

 private:
  void tarjan(int root) {
    // Iterative Tarjan to survive deep implication chains.
    struct Frame {
      int v;
      size_t edge;
    };
    std::vector<Frame> stack{{root, 0}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.edge == 0) {
        index_[static_cast<size_t>(f.v)] = low_[static_cast<size_t>(f.v)] =
            next_index_++;
        scc_stack_.push_back(f.v);
        on_stack_[static_cast<size_t>(f.v)] = 1;
      }
      bool descended = false;
      while (f.edge < adj_[static_cast<size_t>(f.v)].size()) {
        int w = adj_[static_cast<size_t>(f.v)][f.edge++];
        if (index_[static_cast<size_t>(w)] < 0) {
          stack.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack_[static_cast<size_t>(w)])
          low_[static_cast<size_t>(f.v)] = std::min(
              low_[static_cast<size_t>(f.v)], index_[static_cast<size_t>(w)]);
      }
      if (descended) continue;
      if (low_[static_cast<size_t>(f.v)] == index_[static_cast<size_t>(f.v)]) {
        int w;
        do {
          w = scc_stack_.back();
          scc_stack_.pop_back();
          on_stack_[static_cast<size_t>(w)] = 0;
          comp_[static_cast<size_t>(w)] = next_comp_;
        } while (w != f.v);
        ++next_comp_;
      }
      int child = f.v;
      stack.pop_back();
      if (!stack.empty()) {
        Frame& parent = stack.back();
        low_[static_cast<size_t>(parent.v)] =
            std::min(low_[static_cast<size_t>(parent.v)],
                     low_[static_cast<size_t>(child)]);
      }
    }
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> index_, low_, comp_;
  std::vector<char> on_stack_;
  std::vector<int> scc_stack_;
  int next_index_ = 0, next_comp_ = 0;
};

// The 2-SAT literal expressing "this clause literal is negative after the
// flips": for an original positive literal that is f_v, for a negative one
// it is ¬f_v.
int not_positive_after(Lit l) {
  return FlipTwoSat::node(var_of(l), is_pos(l));
}

}  // namespace

bool hidden_horn_flip_attempt(const std::vector<Clause>& clauses,
                              const CostVector& costs, int num_vars,
                              std::vector<char>& flips) {
  FlipTwoSat two_sat(num_vars);
  for (Var v = 1; v <= num_vars; ++v)
    if (costs.of(v) != 0) two_sat.add_unit(FlipTwoSat::node(v, false));

  for (const Clause& c : clauses) {
    const auto& lits = c.lits();
    // "At most one positive literal" is pairwise: no two literals may both
    // end up positive.
    for (size_t i = 0; i < lits.size(); ++i)
      for (size_t j = i + 1; j < lits.size(); ++j)
        two_sat.add_or(not_positive_after(lits[i]),
                       not_positive_after(lits[j]));
  }

  bool consistent = two_sat.solve(flips);
  // Flipping a positive-cost variable is never legal, even in a best-effort
  // assignment.
  for (Var v = 1; v <= num_vars; ++v)
    if (costs.of(v) != 0) flips[static_cast<size_t>(v)] = 0;
  return consistent;
}

std::optional<Renaming> detect_restricted_hidden_horn(
    const std::vector<Clause>& clauses, const CostVector& costs,
    int num_vars) {
  std::vector<char> flips;
  if (!hidden_horn_flip_attempt(clauses, costs, num_vars, flips))
    return std::nullopt;
  Renaming r;
  for (Var v = 1; v <= num_vars; ++v)
    if (flips[static_cast<size_t>(v)]) r.flipped_vars.push_back(v);
  return r;
}

bool check_hidden_horn_witness(const std::vector<Clause>& clauses,
                               const CostVector& costs,
                               const Renaming& renaming) {
  for (Var v : renaming.flipped_vars)
    if (costs.of(v) != 0) return false;
  for (const Clause& c : clauses) {
    int positives = 0;
    for (Lit l : c.lits())
      if (is_pos(l) != renaming.flips_var(var_of(l))) ++positives;
    if (positives > 1) return false;
  }
  return true;
}

std::optional<std::vector<bool>> horn_minimal_model(
    const std::vector<std::vector<Lit>>& clauses,
    const std::vector<char>& flipped, int num_vars) {
  // Renamed space: literal is positive iff original sign differs from the
  // variable's flip. Start from the all-False model and propagate forced
  // positives; a clause whose negatives are exhausted with no positive head
  // refutes the system.
  struct ClauseState {
    Var head = 0;       // renamed-positive variable, 0 if none
    int neg_left = 0;   // renamed-negative literals not yet falsified
  };
  std::vector<ClauseState> state(clauses.size());
  std::vector<std::vector<size_t>> watch(static_cast<size_t>(num_vars) + 1);
  std::vector<char> value(static_cast<size_t>(num_vars) + 1, 0);
  std::vector<Var> queue;

  for (size_t i = 0; i < clauses.size(); ++i) {
    ClauseState& cs = state[i];
    for (Lit l : clauses[i]) {
      Var v = var_of(l);
      bool renamed_pos = is_pos(l) != static_cast<bool>(flipped[static_cast<size_t>(v)]);
      if (renamed_pos) {
        if (cs.head != 0)
          throw std::invalid_argument(
              "clause has two positive literals under the renaming");
        cs.head = v;
      } else {
        ++cs.neg_left;
        watch[static_cast<size_t>(v)].push_back(i);
      }
    }
    if (cs.neg_left == 0) {
      if (cs.head == 0) return std::nullopt;  // empty clause
      if (!value[static_cast<size_t>(cs.head)]) {
        value[static_cast<size_t>(cs.head)] = 1;
        queue.push_back(cs.head);
      }
    }
  }

  while (!queue.empty()) {
    Var v = queue.back();
    queue.pop_back();
    for (size_t ci : watch[static_cast<size_t>(v)]) {
      if (--state[ci].neg_left > 0) continue;
      Var head = state[ci].head;
      if (head == 0) return std::nullopt;
      if (!value[static_cast<size_t>(head)]) {
        value[static_cast<size_t>(head)] = 1;
        queue.push_back(head);
      }
    }
  }

  // Map the renamed model back: original True iff renamed value XOR flip.
  std::vector<bool> original(static_cast<size_t>(num_vars) + 1, false);
  for (Var v = 1; v <= num_vars; ++v)
    original[static_cast<size_t>(v)] =
        static_cast<bool>(value[static_cast<size_t>(v)]) !=
        static_cast<bool>(flipped[static_cast<size_t>(v)]);
  return original;
}

HornResult solve_horn_minsat(const MinsatInstance& inst,
                             const Renaming& renaming, const Fixing& fixing) {
  const int nv = inst.formula.num_vars;
  Assignment fixed(nv);
  for (const auto& [v, val] : fixing.entries) fixed.set(v, val);

  // Reduce by the fixing first; shrinking clauses cannot break the form.
  std::vector<std::vector<Lit>> reduced;
  reduced.reserve(inst.formula.clauses.size());
  for (const Clause& c : inst.formula.clauses) {
    std::vector<Lit> rest;
    bool satisfied = false;
    for (Lit l : c.lits()) {
      Value val = fixed.get(var_of(l));
      if (val == Value::kUnassigned) {
        rest.push_back(l);
      } else if ((val == Value::kTrue) == is_pos(l)) {
        satisfied = true;
        break;
      }
    }
    if (!satisfied) reduced.push_back(std::move(rest));
  }

  std::vector<char> flipped(static_cast<size_t>(nv) + 1, 0);
  for (Var v : renaming.flipped_vars) flipped[static_cast<size_t>(v)] = 1;

  HornResult result;
  auto model = horn_minimal_model(reduced, flipped, nv);
  if (!model) return result;

  result.sat = true;
  result.assignment = Assignment(nv);
  for (Var v = 1; v <= nv; ++v) {
    Value val = fixed.get(v);
    bool b = val == Value::kUnassigned ? (*model)[static_cast<size_t>(v)]
                                       : val == Value::kTrue;
    result.assignment.set(v, b);
    if (b) result.cost += inst.costs.of(v);
  }
  return result;
}

namespace {

// Union-find with parity to the root; used by both network conditions.
class ParityUnionFind {
 public:
  explicit ParityUnionFind(size_t n) : parent_(n), parity_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), size_t{0});
  }

  // find returns (root, parity of x relative to root)
  std::pair<size_t, int> find(size_t x) {
    if (parent_[x] == x) return {x, 0};
    auto [root, p] = find(parent_[x]);
    parent_[x] = root;
    parity_[x] ^= p;
    return {root, parity_[x]};
  }

  // Enforce parity(a) xor parity(b) == want; false on contradiction.
  bool merge(size_t a, size_t b, int want) {
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == want;
    // Lower index roots keep the canonical solution stable.
    if (ra > rb) {
      std::swap(ra, rb);
      std::swap(pa, pb);
    }
    parent_[rb] = ra;
    parity_[rb] = pa ^ pb ^ want;
    return true;
  }

  int parity_to_root(size_t x) { return find(x).second; }

 private:
  std::vector<size_t> parent_;
  std::vector<int> parity_;  // relative to parent, folded to root by find
};

}  // namespace

FormDiagnosis detect_network_form(const CnfFormula& formula) {
  FormDiagnosis diag;

  // Condition A: at most two literals per clause; a 2-clause over x,y needs
  // flip(x) xor flip(y) == pos(x) xor pos(y) xor 1 so exactly one literal
  // ends up negative. Clause complementation flips both and is irrelevant.
  {
    bool sizes_ok = true;
    ParityUnionFind uf(static_cast<size_t>(formula.num_vars) + 1);
    bool consistent = true;
    for (const Clause& c : formula.clauses) {
      if (c.size() > 2) {
        sizes_ok = false;
        break;
      }
      if (c.size() == 2) {
        Lit a = c.lits()[0], b = c.lits()[1];
        int want = (is_pos(a) == is_pos(b)) ? 1 : 0;
        if (!uf.merge(static_cast<size_t>(var_of(a)),
                      static_cast<size_t>(var_of(b)), want)) {
          consistent = false;
          break;
        }
      }
    }
    if (sizes_ok && consistent) {
      Renaming r;
      for (Var v = 1; v <= formula.num_vars; ++v)
        if (uf.parity_to_root(static_cast<size_t>(v))) r.flipped_vars.push_back(v);
      diag.two_literal_form = std::move(r);
    }
  }

  // Condition B: each variable in at most two clauses; for a variable in
  // clauses i,j the clause flips need flip(i) xor flip(j) ==
  // pos(i-occurrence) xor pos(j-occurrence) xor 1. Variable flips cancel out.
  {
    struct Occurrence {
      int count = 0;
      size_t clause[2] = {0, 0};
      bool pos[2] = {false, false};
    };
    std::vector<Occurrence> occ(static_cast<size_t>(formula.num_vars) + 1);
    bool counts_ok = true;
    for (size_t ci = 0; ci < formula.clauses.size() && counts_ok; ++ci) {
      for (Lit l : formula.clauses[ci].lits()) {
        Occurrence& o = occ[static_cast<size_t>(var_of(l))];
        if (o.count == 2) {
          counts_ok = false;
          break;
        }
        o.clause[o.count] = ci;
        o.pos[o.count] = is_pos(l);
        ++o.count;
      }
    }
    if (counts_ok) {
      ParityUnionFind uf(formula.clauses.size());
      bool consistent = true;
      for (Var v = 1; v <= formula.num_vars && consistent; ++v) {
        const Occurrence& o = occ[static_cast<size_t>(v)];
        if (o.count != 2) continue;
        int want = (o.pos[0] == o.pos[1]) ? 1 : 0;
        consistent = uf.merge(o.clause[0], o.clause[1], want);
      }
      if (consistent) {
        Renaming r;
        for (size_t ci = 0; ci < formula.clauses.size(); ++ci)
          if (uf.parity_to_root(ci)) r.flipped_clauses.push_back(ci);
        diag.two_occurrence_form = std::move(r);
      }
    }
  }

  return diag;
}

}  // namespace minsat
