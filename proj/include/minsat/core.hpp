// Core CNF and cost data model: literals, clauses, formulas, exact integer
// costs with True/False normalization, DIMACS and cost-file I/O, the
// variable/clause removal encodings, and clause subsumption.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace minsat {

using Var = int32_t;   // 1-based variable index
using Lit = int32_t;   // signed DIMACS-style literal, never 0
using Cost = int64_t;  // exact integer cost (decimal inputs pre-scaled)

inline Var var_of(Lit l) { return l > 0 ? l : -l; }
inline bool is_pos(Lit l) { return l > 0; }
inline Lit negate(Lit l) { return -l; }
inline Lit make_lit(Var v, bool positive) { return positive ? v : -v; }

// Thrown by the parsers with a 1-based input line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// A clause is a sorted, duplicate-free disjunction of literals.
// Construction rejects tautologies (a variable with both signs).
class Clause {
 public:
  Clause() = default;
  explicit Clause(std::vector<Lit> lits);

  const std::vector<Lit>& lits() const { return lits_; }
  size_t size() const { return lits_.size(); }
  bool empty() const { return lits_.empty(); }
  bool contains(Lit l) const;

  bool operator==(const Clause& other) const { return lits_ == other.lits_; }
  bool operator<(const Clause& other) const { return lits_ < other.lits_; }

 private:
  std::vector<Lit> lits_;
};

// True iff every literal of a occurs in b.
bool subsumes(const Clause& a, const Clause& b);

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;
};

// Raw per-variable (cost of True, cost of False) before normalization.
// Values are integers after scaling all decimal inputs by 10^scale_pow10.
struct RawCosts {
  std::vector<std::pair<Cost, Cost>> pairs;  // index var-1
  int scale_pow10 = 0;
};

struct CostVector {
  std::vector<Cost> true_cost;  // index var-1; cost of False is 0 everywhere
  Cost of(Var v) const { return true_cost[static_cast<size_t>(v) - 1]; }
  size_t size() const { return true_cost.size(); }
};

// How raw costs were turned into the normalized form c(x) >= 0, d(x) = 0:
// which variables were complemented, the constant folded out of the
// objective, and the power-of-ten scaling applied to decimal inputs.
struct NormalizationRecord {
  std::vector<Var> flipped;  // sorted
  Cost offset = 0;           // scaled units
  int scale_pow10 = 0;
  bool is_flipped(Var v) const;
};

struct MinsatInstance {
  CnfFormula formula;
  CostVector costs;
  NormalizationRecord norm;
};

enum class Value : int8_t { kFalse = 0, kTrue = 1, kUnassigned = 2 };

struct Assignment {
  std::vector<Value> values;  // index var-1

  Assignment() = default;
  explicit Assignment(int num_vars)
      : values(static_cast<size_t>(num_vars), Value::kUnassigned) {}
  Value get(Var v) const { return values[static_cast<size_t>(v) - 1]; }
  void set(Var v, bool b) {
    values[static_cast<size_t>(v) - 1] = b ? Value::kTrue : Value::kFalse;
  }
  bool is_true(Var v) const { return get(v) == Value::kTrue; }
  bool total() const;
};

// Ordered (variable, value) pairs, duplicate-free by variable.
struct Fixing {
  std::vector<std::pair<Var, bool>> entries;

  void add(Var v, bool value);
  bool fixes(Var v) const;
  size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
};

// SAT ignores costs; MINSAT proves a minimum-cost satisfying assignment.
enum class SolveMode { kSat, kMinsat };

// --- DIMACS CNF ---
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(const std::string& text);
std::string emit_dimacs(const CnfFormula& formula);

// --- cost files: "var costTrue costFalse" lines, 'c' comments ---
RawCosts parse_costs(std::istream& in, int num_vars);
RawCosts parse_costs(const std::string& text, int num_vars);
std::string emit_costs(const RawCosts& costs);

// Reduce (c,d) pairs to c >= 0, d = 0 by constant subtraction and variable
// complementation; complemented variables get their literals flipped in the
// formula.
MinsatInstance normalize(const CnfFormula& formula, const RawCosts& raw);

// Sum of c(x) over variables assigned True. Throws on partial assignments.
Cost total_cost(const MinsatInstance& inst, const Assignment& a);

// Map a normalized-space assignment back to the original polarity.
Assignment to_original_space(const MinsatInstance& inst, const Assignment& a);

// Original-space objective value of a normalized total cost, as an exact
// decimal string (undoes offset and power-of-ten scaling).
std::string format_original_cost(const NormalizationRecord& norm,
                                 Cost normalized_total);

// Replace variable x by switch-controlled copies so that fixing the fresh
// variable v to True restores x and fixing v to False deletes x's literals.
MinsatInstance model_variable_removal(const MinsatInstance& inst, Var x);

// Add a fresh positive switch literal to one clause so that fixing it True
// satisfies (removes) the clause and False restores it.
MinsatInstance model_clause_removal(const MinsatInstance& inst,
                                    size_t clause_index);

// Append lemmas and delete every clause subsumed by one of them.
CnfFormula remove_dominated(const CnfFormula& formula,
                            const std::vector<Clause>& lemmas);

}  // namespace minsat
