#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "moeadps/problems.hpp"
#include "moeadps/rng.hpp"
#include "moeadps/weights.hpp"

namespace moeadps {

// Every tunable of a single optimizer run. Defaults follow the reference
// parameterization of MOEA/D-DE; update_count = population_size turns the
// partial update off and yields the plain generational algorithm.
struct AlgorithmConfig {
  int population_size = 500;    // N
  int update_count = 50;        // n: sub-problems varied per iteration
  int num_objectives = 2;       // m
  double de_scale = 0.25;       // F
  double mutation_eta = 20.0;   // eta_m
  double mutation_prob = 0.01;  // p_m
  int max_replacements = 2;     // nr
  double neighbor_prob = 0.9;   // delta_p
  int neighborhood_size = 0;    // T; 0 resolves to ceil(0.2 * N)
  long budget = 100000;         // max objective evaluations
  std::string archive_policy = "final_population";
  int checkpoint_stride = 1;    // iterations between population snapshots

  int neighborhood() const;     // resolved T
  void validate() const;        // throws ConfigError
};

struct Subproblem {
  WeightVector weight;
  std::vector<int> neighbor_ids;
  std::vector<double> incumbent_x;
  std::vector<double> incumbent_f;  // raw objectives of incumbent_x
};

struct Checkpoint {
  long iteration = 0;
  long evals_used = 0;
  std::vector<double> objectives;  // population_size * m, slot-major
};

struct RunResult {
  std::vector<Checkpoint> checkpoints;
  std::vector<std::vector<double>> final_x;
  std::vector<std::vector<double>> final_f;
  std::uint64_t seed = 0;
  AlgorithmConfig config;
  std::string problem_key;
  long evals_used = 0;
};

// Produces one priority value per sub-problem each iteration. The shipped
// strategy is uniform random sampling; alternatives plug in per run.
using PriorityFunction = std::function<std::vector<double>(Rng&, int)>;

struct EngineState {
  AlgorithmConfig config;
  ProblemDescriptor problem;
  std::vector<Subproblem> subproblems;
  std::vector<int> boundary_ids;
  std::vector<double> priorities;  // resampled every iteration
  std::vector<double> ideal;       // running raw componentwise minimum
  std::vector<double> worst;       // running raw componentwise maximum
  long evals_used = 0;
  long iteration = 0;
  Rng rng;
  PriorityFunction priority_fn;    // empty means uniform sampling
};

struct Offspring {
  int source = 0;               // sub-problem the candidate was generated for
  std::vector<double> x;
  std::vector<double> f;        // raw objectives
  std::vector<int> pool;        // mating pool, reused as the replacement pool
};

// Per-iteration linear rescaling of the population objectives to [0,1];
// degenerate components map to 0. apply() scales a raw vector with the same
// frame (offspring may land outside [0,1], which keeps comparisons coherent).
struct ObjectiveScaling {
  std::vector<double> lo, hi;
  std::vector<double> values;  // N * m, slot-major
  std::vector<double> apply(const std::vector<double>& f) const;
};

// One uniform [0,1) priority per sub-problem.
std::vector<double> sample_priorities(Rng& rng, int count);

// The update_count non-boundary indices with highest priority plus all
// boundary indices, ascending. Ties break toward the lower index.
// comparison_count, when given, accumulates priority comparisons (the
// instrumentation hook for the O(N) selection contract).
std::vector<int> select_subproblems(const std::vector<double>& priorities,
                                    int update_count,
                                    const std::vector<int>& boundary_ids,
                                    long* comparison_count = nullptr);

// Neighborhood of `index` with probability neighbor_prob, otherwise the whole
// index range. Consumes exactly one uniform draw.
std::vector<int> make_mating_pool(EngineState& state, int index,
                                  double neighbor_prob);

void repair_truncate(std::vector<double>& x, const std::vector<double>& lower,
                     const std::vector<double>& upper);

// Deb's bounded polynomial mutation. Draw order per variable: one gate
// uniform against prob, then one shape uniform if the gate passes.
void polynomial_mutation(std::vector<double>& x, double eta, double prob,
                         const std::vector<double>& lower,
                         const std::vector<double>& upper, Rng& rng);

// Differential variation y = x_i + F (x_r1 - x_r2) with r1 != r2 drawn from
// the pool (both distinct from index when the pool has more than two
// entries), followed by polynomial mutation and truncation repair. Pools
// smaller than three fall back to the whole population for donor sampling.
std::vector<double> de_variation(EngineState& state, int index,
                                 const std::vector<int>& pool);

ObjectiveScaling scale_objectives(const std::vector<Subproblem>& subproblems);

// Weighted Tchebycheff with a 1e-6 floor on zero weights.
double scalarize(const std::vector<double>& f_scaled, const WeightVector& weight,
                 const std::vector<double>& reference);

// Whole-population update: offspring processed in ascending source order,
// each traversing its pool in a fresh random order and replacing at most
// max_replacements incumbents that it improves under the iteration's scaled
// Tchebycheff values. The running ideal/worst absorb every offspring.
void replacement(EngineState& state, const std::vector<Offspring>& offspring,
                 int max_replacements);

EngineState initialize_state(const AlgorithmConfig& config,
                             const ProblemDescriptor& problem,
                             std::uint64_t seed);

// Sub-problems selected per iteration: min(n, N - m) + m.
int selection_size(const AlgorithmConfig& config);

// One generational step: priorities, selection, variation from the
// iteration-start population, then replacement.
void advance_iteration(EngineState& state);

RunResult run(const AlgorithmConfig& config, const ProblemDescriptor& problem,
              std::uint64_t seed);

}  // namespace moeadps
