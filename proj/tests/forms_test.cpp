#include "minsat/forms.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"
#include "minsat/oracle.hpp"
#include "test_util.hpp"

using namespace minsat;

namespace {

Clause mk(std::vector<Lit> lits) { return Clause(std::move(lits)); }

CostVector costs_of(std::vector<Cost> per_var) {
  CostVector cv;
  cv.true_cost = std::move(per_var);
  return cv;
}

// Reference decision: does any complementation of zero-cost variables leave
// at most one positive literal in every clause? Exponential, small n only.
bool flip_subset_exists(const std::vector<Clause>& clauses,
                        const CostVector& costs, int n) {
  std::vector<Var> flippable;
  for (Var v = 1; v <= n; ++v)
    if (costs.of(v) == 0) flippable.push_back(v);
  for (uint32_t mask = 0; mask < (1u << flippable.size()); ++mask) {
    std::vector<char> flip(static_cast<size_t>(n) + 1, 0);
    for (size_t i = 0; i < flippable.size(); ++i)
      if ((mask >> i) & 1u) flip[static_cast<size_t>(flippable[i])] = 1;
    bool ok = true;
    for (const Clause& c : clauses) {
      int positives = 0;
      for (Lit l : c.lits())
        if (is_pos(l) != static_cast<bool>(flip[static_cast<size_t>(var_of(l))]))
          ++positives;
      if (positives > 1) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

// Complement the listed variables' literals inside every clause.
std::vector<Clause> apply_var_flips(const std::vector<Clause>& clauses,
                                    const std::vector<Var>& flips) {
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (const Clause& c : clauses) {
    std::vector<Lit> lits = c.lits();
    for (Lit& l : lits)
      if (std::find(flips.begin(), flips.end(), var_of(l)) != flips.end())
        l = negate(l);
    out.emplace_back(std::move(lits));
  }
  return out;
}

}  // namespace

TEST_CASE("plain Horn formulas are recognized with an empty flip set") {
  std::vector<Clause> clauses = {mk({-1, 2}), mk({-2})};
  auto r = detect_restricted_hidden_horn(clauses, costs_of({3, 4}), 2);
  REQUIRE(r.has_value());
  CHECK(r->flipped_vars.empty());
  CHECK(check_hidden_horn_witness(clauses, costs_of({3, 4}), *r));
}

TEST_CASE("a free variable can be complemented to reach Horn shape") {
  std::vector<Clause> clauses = {mk({1, 2}), mk({-1, -2})};
  CostVector costs = costs_of({1, 0});  // only x2 may flip

  auto r = detect_restricted_hidden_horn(clauses, costs, 2);
  REQUIRE(r.has_value());
  CHECK(r->flipped_vars == std::vector<Var>{2});
  CHECK(check_hidden_horn_witness(clauses, costs, *r));

  // After the flip both clauses really have one positive literal each.
  std::vector<Clause> renamed = apply_var_flips(clauses, r->flipped_vars);
  CHECK(renamed[0] == mk({1, -2}));
  CHECK(renamed[1] == mk({-1, 2}));
}

TEST_CASE("positive costs block the only possible complementation") {
  std::vector<Clause> clauses = {mk({1, 2}), mk({-1, -2})};
  CHECK(!detect_restricted_hidden_horn(clauses, costs_of({1, 1}), 2));
  // Witness checking rejects flips of positive-cost variables outright.
  Renaming bogus;
  bogus.flipped_vars = {2};
  CHECK(!check_hidden_horn_witness(clauses, costs_of({1, 1}), bogus));
}

TEST_CASE("empty clauses do not constrain the complementation") {
  std::vector<Clause> clauses = {mk({}), mk({-1})};
  auto r = detect_restricted_hidden_horn(clauses, costs_of({1}), 1);
  REQUIRE(r.has_value());
  CHECK(r->flipped_vars.empty());
}

TEST_CASE("detection agrees with exhaustive flip search on small inputs") {
  std::mt19937_64 rng(41);
  int positive = 0, negative = 0;
  for (int round = 0; round < 200; ++round) {
    int n = 2 + static_cast<int>(rng() % 7);  // up to 8 variables
    CnfFormula f = testutil::random_cnf(n, 1 + static_cast<int>(rng() % 12), 3,
                                        rng());
    std::vector<Cost> per_var(static_cast<size_t>(n));
    for (Cost& c : per_var) c = static_cast<Cost>(rng() % 3);  // many zeros
    CostVector costs = costs_of(per_var);

    auto r = detect_restricted_hidden_horn(f.clauses, costs, n);
    bool expect = flip_subset_exists(f.clauses, costs, n);
    CHECK(r.has_value() == expect);
    if (r) {
      ++positive;
      CHECK(check_hidden_horn_witness(f.clauses, costs, *r));
      auto again = detect_restricted_hidden_horn(f.clauses, costs, n);
      REQUIRE(again.has_value());
      CHECK(again->flipped_vars == r->flipped_vars);  // deterministic
    } else {
      ++negative;
    }
  }
  // The generator must exercise both outcomes for this to mean anything.
  CHECK(positive > 20);
  CHECK(negative > 20);
}

TEST_CASE("flip attempt reports consistency and honours cost restrictions") {
  std::vector<Clause> clauses = {mk({1, 2}), mk({-1, -2})};
  std::vector<char> flips;
  CHECK(hidden_horn_flip_attempt(clauses, costs_of({1, 0}), 2, flips));
  REQUIRE(flips.size() == 3);
  CHECK(flips[1] == 0);
  CHECK(flips[2] == 1);
  CHECK(!hidden_horn_flip_attempt(clauses, costs_of({1, 1}), 2, flips));
  CHECK(flips[1] == 0);  // positive cost stays pinned even on failure
}

TEST_CASE("horn solving finds the least model and its cost") {
  CnfFormula f;
  f.num_vars = 3;
  f.clauses = {mk({1}), mk({-1, 2}), mk({-2, -3})};
  MinsatInstance inst = normalize(f, testutil::uniform_costs(3, 1, 0));
  auto r = detect_restricted_hidden_horn(inst.formula.clauses, inst.costs, 3);
  REQUIRE(r.has_value());

  SUBCASE("unconstrained solve") {
    HornResult res = solve_horn_minsat(inst, *r, Fixing{});
    REQUIRE(res.sat);
    CHECK(res.assignment.is_true(1));
    CHECK(res.assignment.is_true(2));
    CHECK(!res.assignment.is_true(3));
    CHECK(res.cost == 2);
  }
  SUBCASE("a fixing is respected") {
    Fixing fx;
    fx.add(3, true);
    HornResult res = solve_horn_minsat(inst, *r, fx);
    CHECK(!res.sat);  // x3 forces ¬x2, contradicting x1 -> x2
  }
  SUBCASE("contradictory units are unsatisfiable") {
    CnfFormula g;
    g.num_vars = 1;
    g.clauses = {mk({1}), mk({-1})};
    MinsatInstance bad = normalize(g, testutil::uniform_costs(1, 1, 0));
    auto rb = detect_restricted_hidden_horn(bad.formula.clauses, bad.costs, 1);
    REQUIRE(rb.has_value());
    CHECK(!solve_horn_minsat(bad, *rb, Fixing{}).sat);
  }
  SUBCASE("no clauses: everything false at cost zero") {
    CnfFormula g;
    g.num_vars = 3;
    MinsatInstance empty = normalize(g, testutil::uniform_costs(3, 5, 0));
    auto re = detect_restricted_hidden_horn(empty.formula.clauses, empty.costs, 3);
    REQUIRE(re.has_value());
    HornResult res = solve_horn_minsat(empty, *re, Fixing{});
    REQUIRE(res.sat);
    CHECK(res.cost == 0);
    for (Var v = 1; v <= 3; ++v) CHECK(!res.assignment.is_true(v));
  }
}

TEST_CASE("horn solving matches the exhaustive reference on hidden inputs") {
  std::mt19937_64 rng(43);
  for (int round = 0; round < 60; ++round) {
    int n = 3 + static_cast<int>(rng() % 10);  // up to 12 variables
    CnfFormula f = testutil::random_horn(n, 2 * n, rng());

    // Hide the Horn shape behind complemented zero-cost variables.
    std::vector<Var> hidden;
    for (Var v = 1; v <= n; ++v)
      if (rng() & 1) hidden.push_back(v);
    f.clauses = apply_var_flips(f.clauses, hidden);

    RawCosts raw;
    raw.pairs.assign(static_cast<size_t>(n), {0, 0});
    for (Var v = 1; v <= n; ++v)
      if (std::find(hidden.begin(), hidden.end(), v) == hidden.end())
        raw.pairs[static_cast<size_t>(v) - 1].first =
            static_cast<Cost>(rng() % 6);
    MinsatInstance inst = normalize(f, raw);

    auto r = detect_restricted_hidden_horn(inst.formula.clauses, inst.costs, n);
    REQUIRE(r.has_value());
    HornResult res = solve_horn_minsat(inst, *r, Fixing{});
    OracleResult ref = brute_force(inst, Fixing{}, SolveMode::kMinsat);

    REQUIRE(res.sat == (ref.outcome == OracleOutcome::kOptimal));
    if (res.sat) {
      CHECK(res.cost == ref.cost);
      CHECK(res.cost == total_cost(inst, res.assignment));
      for (const Clause& c : inst.formula.clauses) {
        bool sat = false;
        for (Lit l : c.lits())
          sat = sat || (res.assignment.is_true(var_of(l)) == is_pos(l));
        CHECK(sat);
      }
    }
  }
}

TEST_CASE("the least renamed model is contained in every model") {
  std::mt19937_64 rng(47);
  for (int round = 0; round < 30; ++round) {
    int n = 3 + static_cast<int>(rng() % 8);
    CnfFormula f = testutil::random_horn(n, 2 * n, rng());
    MinsatInstance inst = normalize(f, testutil::uniform_costs(n, 1, 0));
    auto r = detect_restricted_hidden_horn(inst.formula.clauses, inst.costs, n);
    REQUIRE(r.has_value());
    HornResult res = solve_horn_minsat(inst, *r, Fixing{});

    std::vector<uint32_t> models = testutil::model_set(inst.formula.clauses, n);
    REQUIRE(res.sat == !models.empty());
    if (!res.sat) continue;

    uint32_t least = 0;
    for (Var v = 1; v <= n; ++v)
      if (res.assignment.is_true(v)) least |= 1u << (v - 1);
    // Renamed-space true set of the result is a subset of every model's.
    auto renamed = [&](uint32_t bits) {
      uint32_t out = 0;
      for (Var v = 1; v <= n; ++v) {
        bool value = (bits >> (v - 1)) & 1u;
        if (value != r->flips_var(v)) out |= 1u << (v - 1);
      }
      return out;
    };
    for (uint32_t m : models) CHECK((renamed(least) & ~renamed(m)) == 0);
  }
}

TEST_CASE("the minimal-model engine rejects non-horn renamed input") {
  std::vector<std::vector<Lit>> clauses = {{1, 2}};
  std::vector<char> flipped(3, 0);
  CHECK_THROWS_AS(horn_minimal_model(clauses, flipped, 2),
                  std::invalid_argument);
  flipped[1] = 1;  // renames x1 negative: now proper Horn
  auto model = horn_minimal_model(clauses, flipped, 2);
  REQUIRE(model.has_value());
  CHECK((*model)[1] == true);  // renamed-false means original true
  CHECK((*model)[2] == false);
}

TEST_CASE("network diagnosis accepts the four-variable chain example") {
  // x1 v ¬x2 v x3 v x4,  ¬x2 v x3 v x4 v ¬x5,  x1
  CnfFormula f;
  f.num_vars = 5;
  f.clauses = {mk({1, -2, 3, 4}), mk({-2, 3, 4, -5}), mk({1})};

  FormDiagnosis diag = detect_network_form(f);
  CHECK(!diag.two_literal_form.has_value());  // 4-literal clauses
  REQUIRE(diag.two_occurrence_form.has_value());
  const Renaming& r = *diag.two_occurrence_form;
  CHECK(r.flipped_vars.empty());

  // Verify the witness: after complementing the listed clauses, every
  // variable occurs at most twice and twice-occurring ones once negatively.
  std::vector<int> occurrences(6, 0), negatives(6, 0);
  for (size_t ci = 0; ci < f.clauses.size(); ++ci) {
    bool clause_flipped =
        std::find(r.flipped_clauses.begin(), r.flipped_clauses.end(), ci) !=
        r.flipped_clauses.end();
    for (Lit l : f.clauses[ci].lits()) {
      ++occurrences[static_cast<size_t>(var_of(l))];
      if (is_pos(l) == clause_flipped) ++negatives[static_cast<size_t>(var_of(l))];
    }
  }
  for (Var v = 1; v <= 5; ++v) {
    CHECK(occurrences[static_cast<size_t>(v)] <= 2);
    if (occurrences[static_cast<size_t>(v)] == 2)
      CHECK(negatives[static_cast<size_t>(v)] == 1);
  }
}

TEST_CASE("network diagnosis accepts renamable 2-cnf") {
  CnfFormula f;
  f.num_vars = 3;
  f.clauses = {mk({1, 2}), mk({-2, 3}), mk({1})};
  FormDiagnosis diag = detect_network_form(f);
  REQUIRE(diag.two_literal_form.has_value());
  const Renaming& r = *diag.two_literal_form;
  // Every 2-clause ends up with exactly one negative literal.
  for (const Clause& c : f.clauses) {
    if (c.size() != 2) continue;
    int neg = 0;
    for (Lit l : c.lits())
      if (is_pos(l) == r.flips_var(var_of(l))) ++neg;
    CHECK(neg == 1);
  }
  CHECK(diag.any());
}

TEST_CASE("network diagnosis rejects formulas with neither shape") {
  CnfFormula f;
  f.num_vars = 3;
  f.clauses = {mk({1, 2, 3}), mk({1, 2}), mk({1, 3})};
  FormDiagnosis diag = detect_network_form(f);
  CHECK(!diag.two_literal_form.has_value());   // a 3-literal clause
  CHECK(!diag.two_occurrence_form.has_value());  // x1 occurs three times
  CHECK(!diag.any());
}

TEST_CASE("unit-only formulas satisfy both network conditions trivially") {
  CnfFormula f;
  f.num_vars = 2;
  f.clauses = {mk({1}), mk({-2})};
  FormDiagnosis diag = detect_network_form(f);
  CHECK(diag.two_literal_form.has_value());
  CHECK(diag.two_occurrence_form.has_value());
}
