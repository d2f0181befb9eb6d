#include <doctest.h>

#include <vector>

#include "moeadps/archive.hpp"
#include "moeadps/engine.hpp"
#include "moeadps/errors.hpp"
#include "moeadps/problems.hpp"

using namespace moeadps;

namespace {

// A fabricated run whose checkpoint objectives encode (iteration, slot) so
// provenance is verifiable.
RunResult fake_run(int population, int iterations, int per_iteration) {
  RunResult result;
  result.config.population_size = population;
  result.config.num_objectives = 2;
  result.config.update_count = per_iteration - 2;
  result.problem_key = "fake";
  for (int it = 0; it <= iterations; ++it) {
    Checkpoint cp;
    cp.iteration = it;
    cp.evals_used = population + static_cast<long>(it) * per_iteration;
    for (int s = 0; s < population; ++s) {
      cp.objectives.push_back(it + s * 0.001);
      cp.objectives.push_back(1000.0 + it + s * 0.001);
    }
    result.checkpoints.push_back(std::move(cp));
  }
  result.evals_used = result.checkpoints.back().evals_used;
  return result;
}

}  // namespace

TEST_CASE("policy keys round-trip and validate") {
  const auto final_pop = parse_policy("final_population", 500);
  CHECK(final_pop.kind == EvalArchivePolicy::Kind::final_population);
  CHECK(final_pop.capacity == 500);
  CHECK(policy_key(final_pop) == "final_population");

  const auto last10 = parse_policy("last_k_union:10", 50);
  CHECK(last10.kind == EvalArchivePolicy::Kind::last_k_union);
  CHECK(last10.k == 10);
  CHECK(last10.capacity == 500);
  CHECK(policy_key(last10) == "last_k_union:10");

  CHECK_THROWS_AS(parse_policy("bogus", 50), ConfigError);
  CHECK_THROWS_AS(parse_policy("last_k_union:x", 50), ConfigError);
}

TEST_CASE("final population policy returns the last snapshot") {
  const auto run = fake_run(500, 20, 52);
  const auto set = build_evaluation_set(run, parse_policy("final_population", 500));
  REQUIRE(set.points.size() == 500);
  for (int s = 0; s < 500; ++s) {
    CHECK(set.points[s][0] == doctest::Approx(20 + s * 0.001));
    CHECK(set.provenance[s].first == 20);
    CHECK(set.provenance[s].second == s);
  }
}

TEST_CASE("last-k union stacks the trailing checkpoints to capacity") {
  const auto run = fake_run(50, 40, 50);
  const auto set = build_evaluation_set(run, parse_policy("last_k_union:10", 50));
  REQUIRE(set.points.size() == 500);
  // Oldest contributing checkpoint first: iteration 31 through 40.
  CHECK(set.provenance.front().first == 31);
  CHECK(set.provenance.back().first == 40);
}

TEST_CASE("a single-checkpoint union equals the final population") {
  const auto run = fake_run(500, 12, 52);
  const auto a = build_evaluation_set(run, parse_policy("last_k_union:1", 500));
  const auto b = build_evaluation_set(run, parse_policy("final_population", 500));
  CHECK(a.points == b.points);
}

TEST_CASE("too few checkpoints for the union policy is an analysis error") {
  const auto run = fake_run(50, 5, 50);  // 6 checkpoints including startup
  CHECK_THROWS_AS(build_evaluation_set(run, parse_policy("last_k_union:10", 50)),
                  AnalysisError);
}

TEST_CASE("anytime set at the final count equals the full evaluation set") {
  const auto run = fake_run(50, 40, 50);
  const auto policy = parse_policy("last_k_union:10", 50);
  const auto full = build_evaluation_set(run, policy);
  const auto any = build_anytime_set(run, policy, run.evals_used);
  CHECK(full.points == any.points);
}

TEST_CASE("anytime set before k checkpoints shrinks to what exists") {
  const auto run = fake_run(50, 40, 50);
  const auto policy = parse_policy("last_k_union:10", 50);
  // Two checkpoints exist at or below 100 evals: startup and iteration 1.
  const auto set = build_anytime_set(run, policy, 100);
  CHECK(set.points.size() == 100);

  CHECK_THROWS_AS(build_anytime_set(run, policy, 49), AnalysisError);
}

TEST_CASE("anytime union matches a by-hand recomputation from checkpoints") {
  const auto run = fake_run(50, 100, 50);
  const auto policy = parse_policy("last_k_union:10", 50);
  const long upto = 50 + 73 * 50;  // lands exactly on iteration 73
  const auto set = build_anytime_set(run, policy, upto);
  REQUIRE(set.points.size() == 500);
  // Expect iterations 64..73, in order, each contributing its population.
  std::size_t idx = 0;
  for (int it = 64; it <= 73; ++it) {
    for (int s = 0; s < 50; ++s, ++idx) {
      CHECK(set.points[idx][0] == doctest::Approx(it + s * 0.001));
      CHECK(set.provenance[idx].first == it);
    }
  }
}

TEST_CASE("anytime set between checkpoints uses the last one at or below") {
  const auto run = fake_run(50, 10, 50);
  const auto policy = parse_policy("final_population", 50);
  const auto set = build_anytime_set(run, policy, 50 + 3 * 50 + 25);
  REQUIRE(set.points.size() == 50);
  CHECK(set.provenance.front().first == 3);
}

TEST_CASE("capacity invariant holds once k checkpoints exist") {
  const auto run = fake_run(50, 40, 50);
  const auto policy = parse_policy("last_k_union:10", 50);
  for (long e : {50L, 550L, 2050L, run.evals_used}) {
    const auto set = build_anytime_set(run, policy, e);
    CHECK(set.points.size() <= 500);
    if (e >= 50 + 9 * 50) {
      CHECK(set.points.size() == 500);
    }
  }
}
