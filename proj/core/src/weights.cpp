#include "moeadps/weights.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>

#include "moeadps/errors.hpp"
#include "moeadps/rng.hpp"

namespace moeadps {

namespace {

// Primitive polynomials and initial direction numbers for the first Sobol
// dimensions (Joe & Kuo tables). Dimension 1 is the van der Corput sequence.
struct SobolDim {
  int s;
  unsigned a;
  unsigned m[5];
};

constexpr SobolDim kSobolDims[] = {
    {1, 0, {1, 0, 0, 0, 0}},    // dim 2
    {2, 1, {1, 3, 0, 0, 0}},    // dim 3
    {3, 1, {1, 3, 1, 0, 0}},    // dim 4
    {3, 2, {1, 1, 1, 0, 0}},    // dim 5
    {4, 1, {1, 1, 3, 3, 0}},    // dim 6
    {4, 4, {1, 3, 5, 13, 0}},   // dim 7
    {5, 2, {1, 1, 5, 5, 17}},   // dim 8
};

constexpr int kMaxSobolDims = 8;
constexpr int kSobolBits = 52;

// Direction vectors for one dimension, scaled to 52 fractional bits.
std::vector<std::uint64_t> direction_vectors(int dim) {
  std::vector<std::uint64_t> v(kSobolBits);
  if (dim == 0) {
    for (int i = 0; i < kSobolBits; ++i) {
      v[i] = 1ULL << (kSobolBits - 1 - i);
    }
    return v;
  }
  const SobolDim& d = kSobolDims[dim - 1];
  std::vector<std::uint64_t> m(kSobolBits);
  for (int i = 0; i < d.s; ++i) m[i] = d.m[i];
  for (int i = d.s; i < kSobolBits; ++i) {
    m[i] = m[i - d.s] ^ (m[i - d.s] << d.s);
    for (int k = 1; k < d.s; ++k) {
      m[i] ^= ((d.a >> (d.s - 1 - k)) & 1u) * (m[i - k] << k);
    }
  }
  for (int i = 0; i < kSobolBits; ++i) {
    v[i] = m[i] << (kSobolBits - 1 - i);
  }
  return v;
}

// First `count` Sobol points in [0,1)^dims via Gray-code stepping, starting
// at index 1 so the all-zeros point is skipped. A per-dimension digital
// shift derived from the seed scrambles the stream without hurting the
// discrepancy.
std::vector<std::vector<double>> sobol_points(int count, int dims,
                                              std::uint64_t seed) {
  if (dims > kMaxSobolDims) {
    throw ConfigError("sobol generator supports at most " +
                      std::to_string(kMaxSobolDims) + " dimensions");
  }
  std::vector<std::vector<std::uint64_t>> v(dims);
  for (int d = 0; d < dims; ++d) v[d] = direction_vectors(d);

  constexpr std::uint64_t mask = (1ULL << kSobolBits) - 1;
  Rng scramble_rng(seed);
  std::vector<std::uint64_t> shift(dims);
  for (auto& s : shift) s = scramble_rng.next_u64() & mask;

  std::vector<std::uint64_t> x(dims, 0);
  std::vector<std::vector<double>> points(count, std::vector<double>(dims));
  for (int k = 0; k < count; ++k) {
    // Gray-code step from index k to k+1 flips bit ctz(k+1).
    int bit = 0;
    std::uint64_t idx = static_cast<std::uint64_t>(k) + 1;
    while ((idx & 1) == 0) {
      idx >>= 1;
      ++bit;
    }
    for (int d = 0; d < dims; ++d) {
      x[d] ^= v[d][bit];
      points[k][d] =
          static_cast<double>((x[d] ^ shift[d]) & mask) * 0x1.0p-52;
    }
  }
  return points;
}

// Sorted-uniform transform: m-1 cube coordinates to one simplex point.
WeightVector cube_to_simplex(std::vector<double> u) {
  std::sort(u.begin(), u.end());
  WeightVector w(u.size() + 1);
  double prev = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    w[i] = u[i] - prev;
    prev = u[i];
  }
  w.back() = 1.0 - prev;
  return w;
}

double squared_distance(const WeightVector& a, const WeightVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

}  // namespace

std::vector<WeightVector> generate_weights(int count, int num_objectives,
                                           std::uint64_t seed) {
  if (num_objectives < 2) {
    throw ConfigError("weight generation needs at least 2 objectives");
  }
  if (count < num_objectives) {
    throw ConfigError("weight count " + std::to_string(count) +
                      " cannot host boundary vectors for " +
                      std::to_string(num_objectives) + " objectives");
  }

  const auto cube = sobol_points(count, num_objectives - 1, seed);
  std::vector<WeightVector> weights;
  weights.reserve(count);
  for (const auto& u : cube) weights.push_back(cube_to_simplex(u));

  // Overwrite the nearest distinct generated point per axis with the exact
  // basis vector, keeping the set size at `count`.
  std::vector<bool> taken(weights.size(), false);
  for (int axis = 0; axis < num_objectives; ++axis) {
    WeightVector basis(num_objectives, 0.0);
    basis[axis] = 1.0;
    int best = -1;
    double best_dist = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (taken[i]) continue;
      const double d = squared_distance(weights[i], basis);
      if (best < 0 || d < best_dist) {
        best = static_cast<int>(i);
        best_dist = d;
      }
    }
    weights[best] = basis;
    taken[best] = true;
  }
  return weights;
}

std::vector<int> boundary_indices(const std::vector<WeightVector>& weights) {
  if (weights.empty()) {
    throw ConfigError("boundary_indices on empty weight set");
  }
  const std::size_t m = weights.front().size();
  std::vector<int> boundary;
  boundary.reserve(m);
  for (std::size_t axis = 0; axis < m; ++axis) {
    int found = -1;
    for (std::size_t i = 0; i < weights.size() && found < 0; ++i) {
      bool match = true;
      for (std::size_t j = 0; j < m; ++j) {
        const double expect = (j == axis) ? 1.0 : 0.0;
        if (weights[i][j] != expect) {
          match = false;
          break;
        }
      }
      if (match) found = static_cast<int>(i);
    }
    if (found < 0) {
      throw std::logic_error("weight set lost the basis vector for axis " +
                             std::to_string(axis));
    }
    boundary.push_back(found);
  }
  return boundary;
}

NeighborhoodTable build_neighborhoods(const std::vector<WeightVector>& weights,
                                      int neighborhood_size) {
  const int n = static_cast<int>(weights.size());
  if (neighborhood_size < 1 || neighborhood_size > n) {
    throw ConfigError("neighborhood size " + std::to_string(neighborhood_size) +
                      " out of range for " + std::to_string(n) + " weights");
  }

  NeighborhoodTable table;
  table.boundary = boundary_indices(weights);
  table.neighbors.resize(n);

  std::vector<std::pair<double, int>> dist(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      dist[j] = {squared_distance(weights[i], weights[j]), j};
    }
    std::partial_sort(dist.begin(), dist.begin() + neighborhood_size,
                      dist.end());
    auto& list = table.neighbors[i];
    list.reserve(neighborhood_size);
    for (int k = 0; k < neighborhood_size; ++k) list.push_back(dist[k].second);
  }
  return table;
}

}  // namespace moeadps
