#pragma once

#include <string>
#include <vector>

namespace moeadps {

enum class ProblemFamily { dtlz, dtlz_inverted, uf };

struct ProblemDescriptor {
  ProblemFamily family = ProblemFamily::dtlz;
  int id = 1;                  // index within the family
  int num_objectives = 2;
  int dimension = 40;
  std::vector<double> lower;   // per-variable box bounds
  std::vector<double> upper;
  std::string key;             // registry key, e.g. "uf3", "dtlz1_inv"
};

// Builds a descriptor with the correct box bounds, or throws ConfigError for
// a combination outside the supported suite (DTLZ1-4 and their inverted
// variants at m=2; UF1-7 at m=2; UF8-10 at m=3).
ProblemDescriptor make_problem(ProblemFamily family, int id, int num_objectives,
                               int dimension = 40);

// Registry lookup by string key ("dtlz3", "dtlz1_inv", "uf8", ...).
ProblemDescriptor make_problem(const std::string& key, int dimension = 40);

// All in-scope registry keys: dtlz1-4, dtlz1_inv-dtlz4_inv, uf1-10.
std::vector<std::string> problem_keys();

// Raw objective vector (minimization). Pure; the caller owns evaluation
// counting. Throws EvaluationError on non-finite input.
std::vector<double> evaluate(const ProblemDescriptor& problem,
                             const std::vector<double>& x);

// k points on the analytic Pareto front, first objective ascending for the
// plain families and the image of that sweep for the inverted ones. Only the
// DTLZ families have closed-form fronts; UF requests throw AnalysisError.
std::vector<std::vector<double>> true_front_sample(
    const ProblemDescriptor& problem, int k);

}  // namespace moeadps
