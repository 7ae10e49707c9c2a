// Compilation driver: builds a compiled class from raw input, runs the
// two-step learning loop over fixing levels, estimates the per-level
// performance curve, and round-trips compiled classes through a JSON
// artifact.

#pragma once

#include <random>
#include <string>
#include <string_view>

#include "minsat/compiled.hpp"
#include "minsat/learner.hpp"

namespace minsat {

// Normalize, partition, hash; the clause database starts as the formula.
CompiledClass make_compiled(const CnfFormula& formula, const RawCosts& raw);

// A fixing of `level` distinct variables at fair-coin values.
Fixing sample_fixing(int num_vars, int level, std::mt19937_64& rng);

struct LearnConfig {
  SolveMode mode = SolveMode::kMinsat;  // which kind of lemmas to hunt for
  int samples_per_level = 100;
  int max_level = -1;  // < 0: through num_vars
  size_t lemma_max_len = 3;
  double clause_cap_factor = 3.0;  // of the original clause count
  int64_t minimize_node_budget = 1'000'000;
  uint64_t seed = 0x9e3779b97f4a7c15ull;
  int small_enumerated_stop = 5;
  std::function<void(const Lemma&)> on_lemma;  // observation hook
};

// Level-by-level learning in the configured mode; appends one phase to
// compiled.log. Stops on the first of: a level whose worst case exceeds the
// previous level's, the enumerated set shrinking to the configured size,
// the clause cap, or levels running out. Cost-blind learning should run
// before cost-aware learning; callers wanting both invoke learn twice.
void learn(CompiledClass& compiled, const LearnConfig& config);

struct CurveConfig {
  int samples_per_level = 100;
  int max_level = -1;  // < 0: stop after three consecutive quiet levels
  uint64_t seed = 0x2545f4914f6cdd1dull;
  bool parallel = true;
};

struct CurvePoint {
  int level = 0;
  int samples = 0;
  double mean_nodes = 0.0;
  int64_t max_nodes = 0;
  double mean_ms = 0.0;
  double max_ms = 0.0;
};

struct PerformanceCurve {
  std::vector<CurvePoint> points;
  int peak_level = 0;
  int64_t peak_max_nodes = 0;
  bool truncated = false;  // the quiet-tail rule cut the sweep short
};

// Samples every level without learning. A level is quiet when its worst
// node count is at most 1% of the running peak; three quiet levels in a row
// end the sweep (unless max_level pins the range). Samples of one level may
// run in parallel; node counts are deterministic either way.
PerformanceCurve estimate_curve(const CompiledClass& compiled,
                                const CurveConfig& config);

// --- artifact serialization ---

uint64_t fnv1a64(std::string_view bytes);

// Hex digest binding the artifact to its normalized formula and costs.
std::string formula_hash(const MinsatInstance& inst);

std::string artifact_to_json(const CompiledClass& compiled);

// Parses, checks the format version and hash, and re-verifies the stored
// partition before returning. Throws std::runtime_error on any mismatch.
CompiledClass artifact_from_json(const std::string& text);

void save_artifact(const CompiledClass& compiled, const std::string& path);
CompiledClass load_artifact(const std::string& path);

// Field-by-field equality of everything an artifact stores.
bool structurally_equal(const CompiledClass& a, const CompiledClass& b);

}  // namespace minsat
