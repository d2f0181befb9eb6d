#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "moeadps/archive.hpp"
#include "moeadps/engine.hpp"

namespace moeadps {

using PointSet = std::vector<std::vector<double>>;

// Per-objective bounds of a comparison group, taken over the union of every
// compared algorithm's evaluation sets.
struct NormalizationFrame {
  std::vector<double> lo, hi;
};

NormalizationFrame make_frame(const std::vector<const EvaluationSet*>& sets);

// true where no other point weakly dominates the point without being equal
// to it. Duplicates of a non-dominated point all stay true.
std::vector<bool> nondominated_filter(const PointSet& points);

struct NondominatedProportions {
  double unique = 0.0;      // distinct non-dominated vectors / |set|
  double unfiltered = 0.0;  // non-dominated vectors (duplicates counted) / |set|
};

// Distinctness compares vectors rounded to 12 decimals.
NondominatedProportions nondominated_proportions(const EvaluationSet& set);
double unique_nondominated_proportion(const EvaluationSet& set);

// (f - lo) / (hi - lo) componentwise, clamped to [0,1]; degenerate
// components map to 0.
PointSet normalize_objectives(const PointSet& points,
                              const NormalizationFrame& frame);

// Lebesgue measure of the region dominated by `points` up to `ref`
// (minimization; ref is (1,...,1) in scaled space). Supports m = 2 by
// sort-and-sweep and m = 3 by dimension sweep.
double hypervolume(const PointSet& points, const std::vector<double>& ref);

struct TrajectorySeries {
  std::vector<std::pair<long, double>> points;  // (evals, hv), evals ascending
};

// Scaled hypervolume of the policy's anytime set at every checkpoint.
TrajectorySeries anytime_trajectory(const RunResult& result,
                                    const EvalArchivePolicy& policy,
                                    const NormalizationFrame& frame);

// Attainment levels on the cross product of the break lists. level(i, j) is
// stored x-major: the probability (or signed difference) for the grid point
// (x_breaks[i], y_breaks[j]).
struct EafGrid {
  std::vector<double> x_breaks, y_breaks;
  std::vector<double> level;

  double at(std::size_t xi, std::size_t yj) const {
    return level[xi * y_breaks.size() + yj];
  }
};

// Grid breaks from the union of observed coordinates, thinned to at most
// max_breaks per axis by quantile subsampling (extremes always kept).
EafGrid make_eaf_grid(const std::vector<PointSet>& point_sets,
                      std::size_t max_breaks = 2000);

// Fraction of runs whose point set attains (weakly dominates) each grid
// point. Two-objective only.
EafGrid eaf(const std::vector<PointSet>& run_sets, const EafGrid& grid);

struct EafDiff {
  EafGrid grid;  // level = eaf(a) - eaf(b), zeros canonicalized to +0.0
  std::vector<std::pair<double, double>> grand_best;   // attained by >= 1 run
  std::vector<std::pair<double, double>> grand_worst;  // attained by all runs
};

EafDiff eaf_diff(const std::vector<PointSet>& runs_a,
                 const std::vector<PointSet>& runs_b, const EafGrid& grid);

// Area fraction of the grid's bounding box where the (diff) level is
// strictly positive.
double positive_area_fraction(const EafGrid& grid);

}  // namespace moeadps
