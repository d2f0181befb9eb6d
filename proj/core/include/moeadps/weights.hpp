#pragma once

#include <cstdint>
#include <vector>

namespace moeadps {

// Simplex coordinates of one sub-problem: length m, non-negative, sums to 1.
using WeightVector = std::vector<double>;

struct NeighborhoodTable {
  // For each sub-problem, the T nearest sub-problem indices in weight space,
  // nearest first (the sub-problem itself leads its own list).
  std::vector<std::vector<int>> neighbors;
  // Index of the canonical axis vector for each objective, in objective order.
  std::vector<int> boundary;
};

// Low-discrepancy weight set covering the m-simplex. Sobol points in the
// (m-1)-cube are mapped through the sorted-uniform simplex transform, then
// the m generated points nearest to each canonical axis are overwritten with
// the exact basis vectors, keeping the set size at `count` while guaranteeing
// one boundary sub-problem per objective. Deterministic in (count,
// num_objectives, seed); the seed drives a digital-shift scramble of the
// Sobol stream.
std::vector<WeightVector> generate_weights(int count, int num_objectives,
                                           std::uint64_t seed);

// Positions of the canonical basis vectors, one per objective, in objective
// order. Vectors must match bit-exactly (generate_weights guarantees this).
std::vector<int> boundary_indices(const std::vector<WeightVector>& weights);

// T nearest neighbors per sub-problem by Euclidean distance in weight space,
// ties broken by lower index. Also records the boundary indices.
NeighborhoodTable build_neighborhoods(const std::vector<WeightVector>& weights,
                                      int neighborhood_size);

}  // namespace moeadps
