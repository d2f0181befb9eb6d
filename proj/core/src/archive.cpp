#include "moeadps/archive.hpp"

#include <algorithm>
#include <string>

#include "moeadps/errors.hpp"

namespace moeadps {

void EvalArchivePolicy::validate() const {
  if (capacity <= 0) {
    throw ConfigError("archive capacity must be positive");
  }
  if (kind == Kind::last_k_union && k < 1) {
    throw ConfigError("last_k_union requires k >= 1");
  }
}

EvalArchivePolicy parse_policy(const std::string& key, int population_size) {
  EvalArchivePolicy policy;
  if (key == "final_population") {
    policy.kind = EvalArchivePolicy::Kind::final_population;
    policy.k = 1;
    policy.capacity = population_size;
  } else if (key.rfind("last_k_union:", 0) == 0) {
    policy.kind = EvalArchivePolicy::Kind::last_k_union;
    try {
      policy.k = std::stoi(key.substr(std::string("last_k_union:").size()));
    } catch (const std::exception&) {
      throw ConfigError("malformed archive policy key: " + key);
    }
    policy.capacity = policy.k * population_size;
  } else {
    throw ConfigError("unknown archive policy key: " + key);
  }
  policy.validate();
  return policy;
}

std::string policy_key(const EvalArchivePolicy& policy) {
  if (policy.kind == EvalArchivePolicy::Kind::final_population) {
    return "final_population";
  }
  return "last_k_union:" + std::to_string(policy.k);
}

namespace {

void append_checkpoint(const Checkpoint& cp, int num_objectives,
                       EvaluationSet& out) {
  const int slots = static_cast<int>(cp.objectives.size()) / num_objectives;
  for (int s = 0; s < slots; ++s) {
    out.points.emplace_back(
        cp.objectives.begin() + static_cast<std::size_t>(s) * num_objectives,
        cp.objectives.begin() + static_cast<std::size_t>(s + 1) * num_objectives);
    out.provenance.emplace_back(cp.iteration, s);
  }
}

EvaluationSet from_checkpoint_range(const RunResult& result, std::size_t first,
                                    std::size_t last) {
  EvaluationSet set;
  for (std::size_t i = first; i < last; ++i) {
    append_checkpoint(result.checkpoints[i], result.config.num_objectives, set);
  }
  return set;
}

}  // namespace

EvaluationSet build_evaluation_set(const RunResult& result,
                                   const EvalArchivePolicy& policy) {
  policy.validate();
  if (result.checkpoints.empty()) {
    throw AnalysisError("run result has no checkpoints");
  }
  const std::size_t total = result.checkpoints.size();
  if (policy.kind == EvalArchivePolicy::Kind::final_population) {
    return from_checkpoint_range(result, total - 1, total);
  }
  if (total < static_cast<std::size_t>(policy.k)) {
    throw AnalysisError("run has " + std::to_string(total) +
                        " checkpoints, fewer than the k=" +
                        std::to_string(policy.k) + " the archive policy needs");
  }
  return from_checkpoint_range(result, total - policy.k, total);
}

EvaluationSet build_anytime_set(const RunResult& result,
                                const EvalArchivePolicy& policy,
                                long upto_evals) {
  policy.validate();
  if (result.checkpoints.empty()) {
    throw AnalysisError("run result has no checkpoints");
  }
  if (upto_evals < result.checkpoints.front().evals_used) {
    throw AnalysisError("no checkpoint at or below " +
                        std::to_string(upto_evals) + " evaluations");
  }

  std::size_t end = 0;
  while (end < result.checkpoints.size() &&
         result.checkpoints[end].evals_used <= upto_evals) {
    ++end;
  }

  if (policy.kind == EvalArchivePolicy::Kind::final_population) {
    return from_checkpoint_range(result, end - 1, end);
  }
  const std::size_t first =
      end >= static_cast<std::size_t>(policy.k) ? end - policy.k : 0;
  return from_checkpoint_range(result, first, end);
}

}  // namespace moeadps
