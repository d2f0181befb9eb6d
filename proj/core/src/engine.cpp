#include "moeadps/engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "moeadps/errors.hpp"

namespace moeadps {

int AlgorithmConfig::neighborhood() const {
  if (neighborhood_size > 0) return neighborhood_size;
  return static_cast<int>(
      std::ceil(0.2 * static_cast<double>(population_size)));
}

void AlgorithmConfig::validate() const {
  if (num_objectives < 2 || num_objectives > 3) {
    throw ConfigError("num_objectives must be 2 or 3");
  }
  if (population_size < num_objectives) {
    throw ConfigError("population_size must be at least num_objectives");
  }
  if (update_count < 1 || update_count > population_size) {
    throw ConfigError("update_count must lie in [1, population_size]");
  }
  if (!(de_scale > 0.0)) {
    throw ConfigError("de_scale must be positive");
  }
  if (mutation_prob < 0.0 || mutation_prob > 1.0) {
    throw ConfigError("mutation_prob must lie in [0, 1]");
  }
  if (neighbor_prob < 0.0 || neighbor_prob > 1.0) {
    throw ConfigError("neighbor_prob must lie in [0, 1]");
  }
  if (max_replacements < 1) {
    throw ConfigError("max_replacements must be at least 1");
  }
  const int t = neighborhood();
  if (t < num_objectives || t > population_size) {
    throw ConfigError("neighborhood size must lie in [num_objectives, population_size]");
  }
  if (checkpoint_stride < 1) {
    throw ConfigError("checkpoint_stride must be at least 1");
  }
  if (budget < population_size) {
    throw ConfigError("budget cannot cover the initial population evaluation");
  }
}

std::vector<double> sample_priorities(Rng& rng, int count) {
  std::vector<double> u(count);
  for (auto& v : u) v = rng.uniform01();
  return u;
}

std::vector<int> select_subproblems(const std::vector<double>& priorities,
                                    int update_count,
                                    const std::vector<int>& boundary_ids,
                                    long* comparison_count) {
  const int n = static_cast<int>(priorities.size());
  std::vector<char> is_boundary(n, 0);
  for (int b : boundary_ids) is_boundary[b] = 1;

  std::vector<int> candidates;
  candidates.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (!is_boundary[i]) candidates.push_back(i);
  }
  if (update_count > static_cast<int>(candidates.size())) {
    throw ConfigError("cannot select more non-boundary sub-problems than exist");
  }

  auto better = [&](int a, int b) {
    if (comparison_count) ++*comparison_count;
    if (priorities[a] != priorities[b]) return priorities[a] > priorities[b];
    return a < b;
  };
  if (update_count < static_cast<int>(candidates.size())) {
    std::nth_element(candidates.begin(), candidates.begin() + update_count,
                     candidates.end(), better);
  }

  std::vector<char> selected(n, 0);
  for (int i = 0; i < update_count; ++i) selected[candidates[i]] = 1;
  for (int b : boundary_ids) selected[b] = 1;

  std::vector<int> out;
  out.reserve(update_count + boundary_ids.size());
  for (int i = 0; i < n; ++i) {
    if (selected[i]) out.push_back(i);
  }
  return out;
}

std::vector<int> make_mating_pool(EngineState& state, int index,
                                  double neighbor_prob) {
  if (state.rng.uniform01() < neighbor_prob) {
    return state.subproblems[index].neighbor_ids;
  }
  std::vector<int> pool(state.subproblems.size());
  std::iota(pool.begin(), pool.end(), 0);
  return pool;
}

void repair_truncate(std::vector<double>& x, const std::vector<double>& lower,
                     const std::vector<double>& upper) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    x[j] = std::clamp(x[j], lower[j], upper[j]);
  }
}

void polynomial_mutation(std::vector<double>& x, double eta, double prob,
                         const std::vector<double>& lower,
                         const std::vector<double>& upper, Rng& rng) {
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (rng.uniform01() >= prob) continue;
    const double range = upper[j] - lower[j];
    if (range <= 0.0) continue;
    const double u = rng.uniform01();
    const double d1 = (x[j] - lower[j]) / range;
    const double d2 = (upper[j] - x[j]) / range;
    double dq = 0.0;
    if (u < 0.5) {
      const double val = 2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - d1, eta + 1.0);
      dq = std::pow(val, 1.0 / (eta + 1.0)) - 1.0;
    } else {
      const double val =
          2.0 * (1.0 - u) + 2.0 * (u - 0.5) * std::pow(1.0 - d2, eta + 1.0);
      dq = 1.0 - std::pow(val, 1.0 / (eta + 1.0));
    }
    x[j] = std::clamp(x[j] + dq * range, lower[j], upper[j]);
  }
}

std::vector<double> de_variation(EngineState& state, int index,
                                 const std::vector<int>& pool) {
  std::vector<int> fallback;
  const std::vector<int>* donors = &pool;
  if (pool.size() < 3) {
    fallback.resize(state.subproblems.size());
    std::iota(fallback.begin(), fallback.end(), 0);
    donors = &fallback;
  }

  const auto& d = *donors;
  const bool exclude_self = d.size() > 2;
  int r1 = d[state.rng.uniform_index(d.size())];
  while (exclude_self && r1 == index) {
    r1 = d[state.rng.uniform_index(d.size())];
  }
  int r2 = r1;
  if (d.size() > 1) {
    r2 = d[state.rng.uniform_index(d.size())];
    while (r2 == r1 || (exclude_self && r2 == index)) {
      r2 = d[state.rng.uniform_index(d.size())];
    }
  }

  const auto& base = state.subproblems[index].incumbent_x;
  const auto& xa = state.subproblems[r1].incumbent_x;
  const auto& xb = state.subproblems[r2].incumbent_x;
  std::vector<double> y(base.size());
  for (std::size_t j = 0; j < y.size(); ++j) {
    y[j] = base[j] + state.config.de_scale * (xa[j] - xb[j]);
  }
  polynomial_mutation(y, state.config.mutation_eta, state.config.mutation_prob,
                      state.problem.lower, state.problem.upper, state.rng);
  repair_truncate(y, state.problem.lower, state.problem.upper);
  return y;
}

std::vector<double> ObjectiveScaling::apply(const std::vector<double>& f) const {
  std::vector<double> scaled(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double range = hi[j] - lo[j];
    scaled[j] = range > 0.0 ? (f[j] - lo[j]) / range : 0.0;
  }
  return scaled;
}

ObjectiveScaling scale_objectives(const std::vector<Subproblem>& subproblems) {
  const std::size_t m = subproblems.front().incumbent_f.size();
  ObjectiveScaling s;
  s.lo.assign(m, std::numeric_limits<double>::infinity());
  s.hi.assign(m, -std::numeric_limits<double>::infinity());
  for (const auto& sp : subproblems) {
    for (std::size_t j = 0; j < m; ++j) {
      s.lo[j] = std::min(s.lo[j], sp.incumbent_f[j]);
      s.hi[j] = std::max(s.hi[j], sp.incumbent_f[j]);
    }
  }
  s.values.resize(subproblems.size() * m);
  for (std::size_t i = 0; i < subproblems.size(); ++i) {
    const auto scaled = s.apply(subproblems[i].incumbent_f);
    std::copy(scaled.begin(), scaled.end(), s.values.begin() + i * m);
  }
  return s;
}

double scalarize(const std::vector<double>& f_scaled, const WeightVector& weight,
                 const std::vector<double>& reference) {
  double g = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < f_scaled.size(); ++j) {
    const double w = std::max(weight[j], 1e-6);
    g = std::max(g, w * (f_scaled[j] - reference[j]));
  }
  return g;
}

void replacement(EngineState& state, const std::vector<Offspring>& offspring,
                 int max_replacements) {
  const std::size_t m = state.ideal.size();
  // Whole-population generational update: every candidate is judged against
  // the incumbents as they stood when the iteration started, so a slot
  // claimed by several offspring keeps the last one in processing order.
  const ObjectiveScaling scaling = scale_objectives(state.subproblems);
  const std::vector<double> reference(m, 0.0);

  std::vector<int> order;
  for (const auto& child : offspring) {
    for (std::size_t j = 0; j < m; ++j) {
      state.ideal[j] = std::min(state.ideal[j], child.f[j]);
      state.worst[j] = std::max(state.worst[j], child.f[j]);
    }

    const auto child_scaled = scaling.apply(child.f);
    order = child.pool;
    state.rng.shuffle(order);

    int replaced = 0;
    for (int j : order) {
      if (replaced >= max_replacements) break;
      const auto& sp = state.subproblems[j];
      const std::vector<double> incumbent_scaled(
          scaling.values.begin() + j * m, scaling.values.begin() + (j + 1) * m);
      if (scalarize(child_scaled, sp.weight, reference) <
          scalarize(incumbent_scaled, sp.weight, reference)) {
        state.subproblems[j].incumbent_x = child.x;
        state.subproblems[j].incumbent_f = child.f;
        ++replaced;
      }
    }
  }
}

EngineState initialize_state(const AlgorithmConfig& config,
                             const ProblemDescriptor& problem,
                             std::uint64_t seed) {
  config.validate();
  if (config.num_objectives != problem.num_objectives) {
    throw ConfigError("config objectives do not match problem " + problem.key);
  }

  EngineState state{config, problem, {}, {}, {}, {}, {}, 0, 0, Rng(seed)};
  const auto weights =
      generate_weights(config.population_size, config.num_objectives, seed);
  const auto table = build_neighborhoods(weights, config.neighborhood());
  state.boundary_ids = table.boundary;

  const int m = config.num_objectives;
  state.ideal.assign(m, std::numeric_limits<double>::infinity());
  state.worst.assign(m, -std::numeric_limits<double>::infinity());

  state.subproblems.resize(config.population_size);
  for (int i = 0; i < config.population_size; ++i) {
    auto& sp = state.subproblems[i];
    sp.weight = weights[i];
    sp.neighbor_ids = table.neighbors[i];
    sp.incumbent_x.resize(problem.dimension);
    for (int j = 0; j < problem.dimension; ++j) {
      sp.incumbent_x[j] = problem.lower[j] +
                          state.rng.uniform01() *
                              (problem.upper[j] - problem.lower[j]);
    }
    sp.incumbent_f = evaluate(problem, sp.incumbent_x);
    ++state.evals_used;
    for (int j = 0; j < m; ++j) {
      state.ideal[j] = std::min(state.ideal[j], sp.incumbent_f[j]);
      state.worst[j] = std::max(state.worst[j], sp.incumbent_f[j]);
    }
  }
  return state;
}

int selection_size(const AlgorithmConfig& config) {
  const int non_boundary =
      std::min(config.update_count,
               config.population_size - config.num_objectives);
  return non_boundary + config.num_objectives;
}

void advance_iteration(EngineState& state) {
  const auto& config = state.config;
  ++state.iteration;
  state.priorities =
      state.priority_fn
          ? state.priority_fn(state.rng, config.population_size)
          : sample_priorities(state.rng, config.population_size);
  if (static_cast<int>(state.priorities.size()) != config.population_size) {
    throw ConfigError("priority function returned the wrong number of values");
  }
  const int non_boundary = std::min(
      config.update_count, config.population_size - config.num_objectives);
  const auto selected =
      select_subproblems(state.priorities, non_boundary, state.boundary_ids);

  // Variation is generational: every candidate is built from the population
  // as it stood when the iteration began.
  std::vector<Offspring> offspring;
  offspring.reserve(selected.size());
  for (int i : selected) {
    Offspring child;
    child.source = i;
    child.pool = make_mating_pool(state, i, config.neighbor_prob);
    child.x = de_variation(state, i, child.pool);
    child.f = evaluate(state.problem, child.x);
    ++state.evals_used;
    offspring.push_back(std::move(child));
  }

  replacement(state, offspring, config.max_replacements);
}

namespace {

Checkpoint snapshot(const EngineState& state) {
  const int m = state.config.num_objectives;
  Checkpoint cp;
  cp.iteration = state.iteration;
  cp.evals_used = state.evals_used;
  cp.objectives.reserve(state.subproblems.size() * m);
  for (const auto& sp : state.subproblems) {
    cp.objectives.insert(cp.objectives.end(), sp.incumbent_f.begin(),
                         sp.incumbent_f.end());
  }
  return cp;
}

}  // namespace

RunResult run(const AlgorithmConfig& config, const ProblemDescriptor& problem,
              std::uint64_t seed) {
  EngineState state = initialize_state(config, problem, seed);

  RunResult result;
  result.seed = seed;
  result.config = config;
  result.problem_key = problem.key;
  result.checkpoints.push_back(snapshot(state));

  const int per_iteration = selection_size(config);
  while (state.evals_used + per_iteration <= config.budget) {
    advance_iteration(state);
    if (state.iteration % config.checkpoint_stride == 0) {
      result.checkpoints.push_back(snapshot(state));
    }
  }
  if (result.checkpoints.back().evals_used != state.evals_used) {
    result.checkpoints.push_back(snapshot(state));
  }

  result.evals_used = state.evals_used;
  result.final_x.reserve(state.subproblems.size());
  result.final_f.reserve(state.subproblems.size());
  for (const auto& sp : state.subproblems) {
    result.final_x.push_back(sp.incumbent_x);
    result.final_f.push_back(sp.incumbent_f);
  }
  return result;
}

}  // namespace moeadps
