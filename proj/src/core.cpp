#include "minsat/core.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>

namespace minsat {

Clause::Clause(std::vector<Lit> lits) : lits_(std::move(lits)) {
  std::sort(lits_.begin(), lits_.end(), [](Lit a, Lit b) {
    if (var_of(a) != var_of(b)) return var_of(a) < var_of(b);
    return a < b;
  });
  lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
  for (size_t i = 1; i < lits_.size(); ++i) {
    if (var_of(lits_[i]) == var_of(lits_[i - 1]))
      throw std::invalid_argument("tautological clause on variable " +
                                  std::to_string(var_of(lits_[i])));
  }
}

bool Clause::contains(Lit l) const {
  return std::find(lits_.begin(), lits_.end(), l) != lits_.end();
}

bool subsumes(const Clause& a, const Clause& b) {
  if (a.size() > b.size()) return false;
  // Both literal lists are sorted by (variable, sign).
  size_t j = 0;
  for (Lit l : a.lits()) {
    while (j < b.size() && var_of(b.lits()[j]) < var_of(l)) ++j;
    while (j < b.size() && var_of(b.lits()[j]) == var_of(l) && b.lits()[j] != l)
      ++j;
    if (j == b.size() || b.lits()[j] != l) return false;
    ++j;
  }
  return true;
}

bool NormalizationRecord::is_flipped(Var v) const {
  return std::binary_search(flipped.begin(), flipped.end(), v);
}

bool Assignment::total() const {
  for (Value v : values)
    if (v == Value::kUnassigned) return false;
  return true;
}

void Fixing::add(Var v, bool value) {
  if (fixes(v))
    throw std::invalid_argument("variable " + std::to_string(v) +
                                " fixed twice");
  entries.emplace_back(v, value);
}

bool Fixing::fixes(Var v) const {
  for (const auto& [w, val] : entries)
    if (w == v) return true;
  return false;
}

namespace {

// Whitespace tokenizer that tracks the current 1-based line number.
class TokenStream {
 public:
  explicit TokenStream(std::istream& in) : in_(in) {}

  // Next whitespace-delimited token; empty string at end of input.
  std::string next() {
    std::string tok;
    int c;
    while ((c = in_.get()) != EOF) {
      if (c == '\n') {
        if (!tok.empty()) {
          in_.unget();
          return tok;
        }
        ++line_;
      } else if (std::isspace(c)) {
        if (!tok.empty()) return tok;
      } else {
        tok.push_back(static_cast<char>(c));
      }
    }
    return tok;
  }

  // Skip the rest of the current line (for comments).
  void skip_line() {
    int c;
    while ((c = in_.get()) != EOF && c != '\n') {
    }
    if (c == '\n') ++line_;
  }

  int line() const { return line_; }

 private:
  std::istream& in_;
  int line_ = 1;
};

int parse_int(const std::string& tok, int line, const char* what) {
  size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(tok, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok +
                               "'");
  }
  if (pos != tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok +
                               "'");
  return static_cast<int>(value);
}

}  // namespace

CnfFormula parse_dimacs(std::istream& in) {
  TokenStream ts(in);
  CnfFormula formula;
  int declared_clauses = -1;

  std::string tok;
  while (!(tok = ts.next()).empty()) {
    if (tok[0] == 'c' && tok.size() == 1) {
      ts.skip_line();
      continue;
    }
    if (tok[0] == 'c' && !std::isdigit(static_cast<unsigned char>(tok[1])) &&
        tok[1] != '-') {
      ts.skip_line();
      continue;
    }
    if (tok == "p") {
      if (declared_clauses >= 0)
        throw ParseError(ts.line(), "duplicate problem line");
      std::string fmt = ts.next();
      if (fmt != "cnf")
        throw ParseError(ts.line(), "expected 'p cnf', got 'p " + fmt + "'");
      formula.num_vars = parse_int(ts.next(), ts.line(), "variable count");
      declared_clauses = parse_int(ts.next(), ts.line(), "clause count");
      if (formula.num_vars < 0 || declared_clauses < 0)
        throw ParseError(ts.line(), "negative count in problem line");
      continue;
    }
    if (declared_clauses < 0)
      throw ParseError(ts.line(), "clause before 'p cnf' header");

    // Read one zero-terminated clause starting with tok.
    std::vector<Lit> lits;
    int clause_line = ts.line();
    std::string t = tok;
    while (true) {
      int lit = parse_int(t, ts.line(), "literal");
      if (lit == 0) break;
      if (var_of(lit) > formula.num_vars)
        throw ParseError(ts.line(), "literal " + t + " out of range (" +
                                        std::to_string(formula.num_vars) +
                                        " variables declared)");
      lits.push_back(lit);
      t = ts.next();
      if (t.empty())
        throw ParseError(ts.line(), "clause not terminated by 0");
    }
    try {
      formula.clauses.emplace_back(std::move(lits));
    } catch (const std::invalid_argument& e) {
      throw ParseError(clause_line, e.what());
    }
  }

  if (declared_clauses < 0) throw ParseError(ts.line(), "missing 'p cnf' header");
  if (static_cast<int>(formula.clauses.size()) != declared_clauses)
    throw ParseError(
        ts.line(),
        "clause count mismatch: declared " + std::to_string(declared_clauses) +
            ", found " + std::to_string(formula.clauses.size()));
  return formula;
}

CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

std::string emit_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.clauses.size() << '\n';
  for (const Clause& c : formula.clauses) {
    for (Lit l : c.lits()) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

namespace {

// Exact decimal cost literal -> integer numerator plus its decimal places.
struct DecimalTok {
  Cost units = 0;  // digits with the point removed, sign applied
  int places = 0;
};

DecimalTok parse_decimal(const std::string& tok, int line) {
  DecimalTok d;
  size_t i = 0;
  bool negative = false;
  if (i < tok.size() && (tok[i] == '-' || tok[i] == '+')) {
    negative = tok[i] == '-';
    ++i;
  }
  bool any_digit = false;
  bool seen_point = false;
  for (; i < tok.size(); ++i) {
    char ch = tok[i];
    if (ch == '.') {
      if (seen_point) throw ParseError(line, "malformed cost '" + tok + "'");
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      any_digit = true;
      d.units = d.units * 10 + (ch - '0');
      if (seen_point) ++d.places;
    } else {
      throw ParseError(line, "malformed cost '" + tok + "'");
    }
  }
  if (!any_digit) throw ParseError(line, "malformed cost '" + tok + "'");
  if (negative) d.units = -d.units;
  return d;
}

Cost pow10(int p) {
  Cost r = 1;
  while (p-- > 0) r *= 10;
  return r;
}

}  // namespace

RawCosts parse_costs(std::istream& in, int num_vars) {
  struct Entry {
    Var var;
    DecimalTok c, d;
  };
  std::vector<Entry> entries;
  std::vector<bool> seen(static_cast<size_t>(num_vars), false);
  int max_places = 0;

  std::string line_text;
  int line_no = 0;
  while (std::getline(in, line_text)) {
    ++line_no;
    std::istringstream ls(line_text);
    std::string first;
    if (!(ls >> first)) continue;  // blank
    if (first == "c" || first[0] == '#') continue;

    int v = parse_int(first, line_no, "variable index");
    if (v < 1 || v > num_vars)
      throw ParseError(line_no, "variable " + std::to_string(v) +
                                    " out of range (1.." +
                                    std::to_string(num_vars) + ")");
    if (seen[static_cast<size_t>(v) - 1])
      throw ParseError(line_no,
                       "duplicate cost line for variable " + std::to_string(v));
    seen[static_cast<size_t>(v) - 1] = true;

    std::string ct, cf, extra;
    if (!(ls >> ct >> cf))
      throw ParseError(line_no, "expected 'var costTrue costFalse'");
    if (ls >> extra)
      throw ParseError(line_no, "trailing token '" + extra + "'");
    Entry e{v, parse_decimal(ct, line_no), parse_decimal(cf, line_no)};
    max_places = std::max({max_places, e.c.places, e.d.places});
    entries.push_back(e);
  }

  RawCosts raw;
  raw.scale_pow10 = max_places;
  raw.pairs.assign(static_cast<size_t>(num_vars), {0, 0});
  for (const Entry& e : entries) {
    Cost ct = e.c.units * pow10(max_places - e.c.places);
    Cost cf = e.d.units * pow10(max_places - e.d.places);
    raw.pairs[static_cast<size_t>(e.var) - 1] = {ct, cf};
  }
  return raw;
}

RawCosts parse_costs(const std::string& text, int num_vars) {
  std::istringstream in(text);
  return parse_costs(in, num_vars);
}

namespace {

std::string format_scaled(Cost units, int scale_pow10) {
  if (scale_pow10 == 0) return std::to_string(units);
  bool negative = units < 0;
  std::string digits = std::to_string(negative ? -units : units);
  if (static_cast<int>(digits.size()) <= scale_pow10)
    digits.insert(0, static_cast<size_t>(scale_pow10) + 1 - digits.size(), '0');
  digits.insert(digits.size() - static_cast<size_t>(scale_pow10), ".");
  return (negative ? "-" : "") + digits;
}

}  // namespace

std::string emit_costs(const RawCosts& costs) {
  std::ostringstream out;
  for (size_t i = 0; i < costs.pairs.size(); ++i) {
    const auto& [ct, cf] = costs.pairs[i];
    if (ct == 0 && cf == 0) continue;
    out << (i + 1) << ' ' << format_scaled(ct, costs.scale_pow10) << ' '
        << format_scaled(cf, costs.scale_pow10) << '\n';
  }
  return out.str();
}

MinsatInstance normalize(const CnfFormula& formula, const RawCosts& raw) {
  if (raw.pairs.size() != static_cast<size_t>(formula.num_vars))
    throw std::invalid_argument("cost vector size mismatch");

  MinsatInstance inst;
  inst.formula.num_vars = formula.num_vars;
  inst.norm.scale_pow10 = raw.scale_pow10;
  inst.costs.true_cost.assign(static_cast<size_t>(formula.num_vars), 0);

  std::vector<bool> flip(static_cast<size_t>(formula.num_vars), false);
  for (int i = 0; i < formula.num_vars; ++i) {
    auto [c, d] = raw.pairs[static_cast<size_t>(i)];
    Cost m = std::min(c, d);
    inst.norm.offset += m;
    c -= m;
    d -= m;
    if (d > 0) {
      // Complement the variable: cost of True becomes the old cost of False.
      flip[static_cast<size_t>(i)] = true;
      inst.norm.flipped.push_back(i + 1);
      inst.costs.true_cost[static_cast<size_t>(i)] = d;
    } else {
      inst.costs.true_cost[static_cast<size_t>(i)] = c;
    }
  }

  inst.formula.clauses.reserve(formula.clauses.size());
  for (const Clause& c : formula.clauses) {
    std::vector<Lit> lits = c.lits();
    for (Lit& l : lits)
      if (flip[static_cast<size_t>(var_of(l)) - 1]) l = negate(l);
    inst.formula.clauses.emplace_back(std::move(lits));
  }
  return inst;
}

Cost total_cost(const MinsatInstance& inst, const Assignment& a) {
  if (a.values.size() != static_cast<size_t>(inst.formula.num_vars) ||
      !a.total())
    throw std::invalid_argument("total_cost requires a total assignment");
  Cost sum = 0;
  for (Var v = 1; v <= inst.formula.num_vars; ++v)
    if (a.is_true(v)) sum += inst.costs.of(v);
  return sum;
}

Assignment to_original_space(const MinsatInstance& inst, const Assignment& a) {
  Assignment out = a;
  for (Var v : inst.norm.flipped) {
    Value val = out.get(v);
    if (val != Value::kUnassigned) out.set(v, val == Value::kFalse);
  }
  return out;
}

std::string format_original_cost(const NormalizationRecord& norm,
                                 Cost normalized_total) {
  return format_scaled(normalized_total + norm.offset, norm.scale_pow10);
}

namespace {

MinsatInstance copy_with_extra_vars(const MinsatInstance& inst, int extra) {
  MinsatInstance out = inst;
  out.formula.num_vars += extra;
  out.costs.true_cost.resize(static_cast<size_t>(out.formula.num_vars), 0);
  return out;
}

}  // namespace

MinsatInstance model_variable_removal(const MinsatInstance& inst, Var x) {
  if (x < 1 || x > inst.formula.num_vars)
    throw std::invalid_argument("variable out of range");
  MinsatInstance out = copy_with_extra_vars(inst, 3);
  Var v = inst.formula.num_vars + 1;   // removal switch: True keeps x
  Var wt = inst.formula.num_vars + 2;  // stands in for literal x
  Var wf = inst.formula.num_vars + 3;  // stands in for literal ¬x

  for (Clause& c : out.formula.clauses) {
    std::vector<Lit> lits = c.lits();
    bool touched = false;
    for (Lit& l : lits) {
      if (l == x) {
        l = wt;
        touched = true;
      } else if (l == -x) {
        l = wf;
        touched = true;
      }
    }
    if (touched) c = Clause(std::move(lits));
  }

  // wt <-> (v and x), wf <-> (v and ¬x)
  auto add = [&out](std::initializer_list<Lit> lits) {
    out.formula.clauses.emplace_back(std::vector<Lit>(lits));
  };
  add({-wt, v});
  add({-wt, x});
  add({-v, -x, wt});
  add({-wf, v});
  add({-wf, -x});
  add({-v, x, wf});
  return out;
}

MinsatInstance model_clause_removal(const MinsatInstance& inst,
                                    size_t clause_index) {
  if (clause_index >= inst.formula.clauses.size())
    throw std::invalid_argument("clause index out of range");
  MinsatInstance out = copy_with_extra_vars(inst, 1);
  Var w = inst.formula.num_vars + 1;  // removal switch: True drops the clause
  std::vector<Lit> lits = inst.formula.clauses[clause_index].lits();
  lits.push_back(w);
  out.formula.clauses[clause_index] = Clause(std::move(lits));
  return out;
}

CnfFormula remove_dominated(const CnfFormula& formula,
                            const std::vector<Clause>& lemmas) {
  CnfFormula out;
  out.num_vars = formula.num_vars;
  std::vector<Clause> all = formula.clauses;
  all.insert(all.end(), lemmas.begin(), lemmas.end());
  size_t lemma_base = formula.clauses.size();

  for (size_t i = 0; i < all.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < lemmas.size(); ++j) {
      if (lemma_base + j == i) continue;  // a lemma does not delete itself
      if (!subsumes(lemmas[j], all[i])) continue;
      // Lemmas always displace formula clauses; among identical lemmas the
      // first copy survives.
      if (i < lemma_base || !(all[i] == lemmas[j]) || lemma_base + j < i) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.clauses.push_back(all[i]);
  }
  return out;
}

}  // namespace minsat
