#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "moeadps/errors.hpp"
#include "moeadps/rng.hpp"
#include "moeadps/weights.hpp"

using namespace moeadps;

namespace {

bool is_basis(const WeightVector& w, std::size_t axis) {
  for (std::size_t j = 0; j < w.size(); ++j) {
    if (w[j] != (j == axis ? 1.0 : 0.0)) return false;
  }
  return true;
}

// Centered L2 discrepancy of a 1-d point set, straight from the definition.
double centered_l2_discrepancy(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double sum1 = 0.0;
  for (double xi : x) {
    const double a = std::abs(xi - 0.5);
    sum1 += 1.0 + 0.5 * a - 0.5 * a * a;
  }
  double sum2 = 0.0;
  for (double xi : x) {
    for (double xj : x) {
      const double ai = std::abs(xi - 0.5);
      const double aj = std::abs(xj - 0.5);
      sum2 += 1.0 + 0.5 * ai + 0.5 * aj - 0.5 * std::abs(xi - xj);
    }
  }
  return 13.0 / 12.0 - 2.0 / n * sum1 + sum2 / (n * n);
}

}  // namespace

TEST_CASE("two weights for two objectives are exactly the axes") {
  const auto weights = generate_weights(2, 2, 0);
  REQUIRE(weights.size() == 2);
  std::set<std::vector<double>> set(weights.begin(), weights.end());
  CHECK(set.count({1.0, 0.0}) == 1);
  CHECK(set.count({0.0, 1.0}) == 1);
}

TEST_CASE("500-vector set is simplex-valid and holds both boundaries") {
  const auto weights = generate_weights(500, 2, 42);
  REQUIRE(weights.size() == 500);
  bool has_e1 = false, has_e2 = false;
  for (const auto& w : weights) {
    REQUIRE(w.size() == 2);
    CHECK(w[0] >= 0.0);
    CHECK(w[1] >= 0.0);
    CHECK(std::abs(w[0] + w[1] - 1.0) < 1e-9);
    has_e1 |= is_basis(w, 0);
    has_e2 |= is_basis(w, 1);
  }
  CHECK(has_e1);
  CHECK(has_e2);
}

TEST_CASE("three-objective weights stay on the simplex") {
  const auto weights = generate_weights(200, 3, 7);
  for (const auto& w : weights) {
    REQUIRE(w.size() == 3);
    double sum = 0.0;
    for (double v : w) {
      CHECK(v >= 0.0);
      sum += v;
    }
    CHECK(std::abs(sum - 1.0) < 1e-9);
  }
  const auto boundary = boundary_indices(weights);
  REQUIRE(boundary.size() == 3);
}

TEST_CASE("weight generation is deterministic in (N, m, seed)") {
  const auto a = generate_weights(100, 2, 9);
  const auto b = generate_weights(100, 2, 9);
  CHECK(a == b);
  const auto c = generate_weights(100, 2, 10);
  CHECK(a != c);
}

TEST_CASE("fewer weights than objectives is a configuration error") {
  CHECK_THROWS_AS(generate_weights(2, 3, 0), ConfigError);
}

TEST_CASE("sobol first components beat uniform random on discrepancy") {
  const auto weights = generate_weights(100, 2, 5);
  std::vector<double> first;
  for (const auto& w : weights) first.push_back(w[0]);
  const double sobol_cd2 = centered_l2_discrepancy(first);

  std::vector<double> uniform_cd2;
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<double> draw(100);
    for (auto& v : draw) v = rng.uniform01();
    uniform_cd2.push_back(centered_l2_discrepancy(draw));
  }
  std::sort(uniform_cd2.begin(), uniform_cd2.end());
  const double median = 0.5 * (uniform_cd2[14] + uniform_cd2[15]);
  CHECK(sobol_cd2 < median);
}

TEST_CASE("boundary indices come back in objective order") {
  const std::vector<WeightVector> weights = {{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
  const auto boundary = boundary_indices(weights);
  REQUIRE(boundary.size() == 2);
  CHECK(boundary[0] == 2);
  CHECK(boundary[1] == 0);
}

TEST_CASE("boundary lookup on a large generated set finds exactly m vectors") {
  const auto weights = generate_weights(500, 2, 3);
  const auto boundary = boundary_indices(weights);
  REQUIRE(boundary.size() == 2);
  CHECK(is_basis(weights[boundary[0]], 0));
  CHECK(is_basis(weights[boundary[1]], 1));
}

TEST_CASE("missing basis vector is an invariant violation") {
  const std::vector<WeightVector> weights = {{0.5, 0.5}, {0.25, 0.75}};
  CHECK_THROWS_AS(boundary_indices(weights), std::logic_error);
}

TEST_CASE("neighborhood lists have the configured size and lead with self") {
  const auto weights = generate_weights(50, 2, 11);
  const auto table = build_neighborhoods(weights, 10);
  REQUIRE(table.neighbors.size() == 50);
  for (int i = 0; i < 50; ++i) {
    const auto& list = table.neighbors[i];
    REQUIRE(list.size() == 10);
    CHECK(list[0] == i);
    std::set<int> unique(list.begin(), list.end());
    CHECK(unique.size() == 10);
    for (int id : list) {
      CHECK(id >= 0);
      CHECK(id < 50);
    }
  }
  CHECK(table.boundary.size() == 2);
}

TEST_CASE("neighborhoods match an exhaustive all-pairs sort") {
  const auto weights = generate_weights(10, 2, 13);
  const auto table = build_neighborhoods(weights, 3);

  for (int i = 0; i < 10; ++i) {
    std::vector<std::pair<double, int>> dist;
    for (int j = 0; j < 10; ++j) {
      double d = 0.0;
      for (std::size_t k = 0; k < weights[i].size(); ++k) {
        d += (weights[i][k] - weights[j][k]) * (weights[i][k] - weights[j][k]);
      }
      dist.emplace_back(d, j);
    }
    std::sort(dist.begin(), dist.end());
    for (int k = 0; k < 3; ++k) {
      CHECK(table.neighbors[i][k] == dist[k].second);
    }
  }
}

TEST_CASE("neighbors are never farther than excluded sub-problems") {
  const auto weights = generate_weights(60, 3, 17);
  const auto table = build_neighborhoods(weights, 12);
  auto dist2 = [&](int a, int b) {
    double d = 0.0;
    for (std::size_t k = 0; k < weights[a].size(); ++k) {
      d += (weights[a][k] - weights[b][k]) * (weights[a][k] - weights[b][k]);
    }
    return d;
  };
  for (int i = 0; i < 60; ++i) {
    std::set<int> in(table.neighbors[i].begin(), table.neighbors[i].end());
    double worst_in = 0.0;
    for (int j : in) worst_in = std::max(worst_in, dist2(i, j));
    for (int j = 0; j < 60; ++j) {
      if (!in.count(j)) {
        CHECK(dist2(i, j) >= worst_in);
      }
    }
  }
}

TEST_CASE("neighborhood size outside [1, N] is a configuration error") {
  const auto weights = generate_weights(10, 2, 1);
  CHECK_THROWS_AS(build_neighborhoods(weights, 11), ConfigError);
  CHECK_THROWS_AS(build_neighborhoods(weights, 0), ConfigError);
}
