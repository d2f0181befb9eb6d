#pragma once

#include <string>
#include <utility>
#include <vector>

#include "moeadps/engine.hpp"

namespace moeadps {

// Recipe for the size-matched comparison set: either the final population or
// the union of the populations of the last k checkpoints. capacity is the
// target size (k * N for the union policy).
struct EvalArchivePolicy {
  enum class Kind { final_population, last_k_union };
  Kind kind = Kind::final_population;
  int k = 1;
  int capacity = 0;

  void validate() const;
};

// Parses "final_population" or "last_k_union:K" against a population size.
EvalArchivePolicy parse_policy(const std::string& key, int population_size);
std::string policy_key(const EvalArchivePolicy& policy);

struct EvaluationSet {
  std::vector<std::vector<double>> points;           // raw objective vectors
  std::vector<std::pair<long, int>> provenance;      // (iteration, slot)
};

// Comparison set over the whole run.
EvaluationSet build_evaluation_set(const RunResult& result,
                                   const EvalArchivePolicy& policy);

// Same policy applied to the checkpoint prefix ending at the last checkpoint
// with evals_used <= upto_evals. The union policy returns fewer than
// `capacity` points while fewer than k checkpoints exist.
EvaluationSet build_anytime_set(const RunResult& result,
                                const EvalArchivePolicy& policy,
                                long upto_evals);

}  // namespace moeadps
