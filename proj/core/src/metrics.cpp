#include "moeadps/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "moeadps/errors.hpp"

namespace moeadps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool weakly_dominates(const std::vector<double>& a,
                      const std::vector<double>& b) {
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (a[j] > b[j]) return false;
  }
  return true;
}

}  // namespace

NormalizationFrame make_frame(const std::vector<const EvaluationSet*>& sets) {
  if (sets.empty() || sets.front()->points.empty()) {
    throw AnalysisError("cannot build a normalization frame from no points");
  }
  const std::size_t m = sets.front()->points.front().size();
  NormalizationFrame frame;
  frame.lo.assign(m, kInf);
  frame.hi.assign(m, -kInf);
  for (const auto* set : sets) {
    for (const auto& p : set->points) {
      for (std::size_t j = 0; j < m; ++j) {
        frame.lo[j] = std::min(frame.lo[j], p[j]);
        frame.hi[j] = std::max(frame.hi[j], p[j]);
      }
    }
  }
  return frame;
}

std::vector<bool> nondominated_filter(const PointSet& points) {
  const std::size_t n = points.size();
  std::vector<bool> mask(n, true);
  if (n == 0) return mask;

  // In lexicographic order any dominator of a point sorts at or before it,
  // so each point only needs checking against the kept prefix.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return points[a] < points[b]; });

  std::vector<int> kept;
  kept.reserve(n);
  for (int idx : order) {
    const auto& p = points[idx];
    bool dominated = false;
    for (int q : kept) {
      if (points[q] != p && weakly_dominates(points[q], p)) {
        dominated = true;
        break;
      }
    }
    mask[idx] = !dominated;
    if (!dominated) kept.push_back(idx);
  }
  return mask;
}

NondominatedProportions nondominated_proportions(const EvaluationSet& set) {
  if (set.points.empty()) {
    throw AnalysisError("non-dominated proportion of an empty set");
  }
  const auto mask = nondominated_filter(set.points);

  std::size_t unfiltered = 0;
  std::set<std::vector<double>> distinct;
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    if (!mask[i]) continue;
    ++unfiltered;
    std::vector<double> rounded(set.points[i].size());
    for (std::size_t j = 0; j < rounded.size(); ++j) {
      rounded[j] = std::round(set.points[i][j] * 1e12);
    }
    distinct.insert(std::move(rounded));
  }

  NondominatedProportions out;
  out.unique = static_cast<double>(distinct.size()) / set.points.size();
  out.unfiltered = static_cast<double>(unfiltered) / set.points.size();
  return out;
}

double unique_nondominated_proportion(const EvaluationSet& set) {
  return nondominated_proportions(set).unique;
}

PointSet normalize_objectives(const PointSet& points,
                              const NormalizationFrame& frame) {
  PointSet scaled(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    scaled[i].resize(points[i].size());
    for (std::size_t j = 0; j < points[i].size(); ++j) {
      const double range = frame.hi[j] - frame.lo[j];
      const double v = range > 0.0 ? (points[i][j] - frame.lo[j]) / range : 0.0;
      scaled[i][j] = std::clamp(v, 0.0, 1.0);
    }
  }
  return scaled;
}

namespace {

// Staircase of mutually non-dominated (x, y) pairs, x ascending and y
// strictly descending, with its dominated area against (ref_x, ref_y).
class Staircase2d {
 public:
  Staircase2d(double ref_x, double ref_y) : ref_x_(ref_x), ref_y_(ref_y) {}

  // Returns true when the staircase changed.
  bool insert(double x, double y) {
    auto it = stairs_.upper_bound(x);
    if (it != stairs_.begin() && std::prev(it)->second <= y) {
      return false;  // dominated by an existing step (covers exact repeats)
    }
    while (it != stairs_.end() && it->second >= y) {
      it = stairs_.erase(it);
    }
    stairs_[x] = y;
    return true;
  }

  double area() const {
    double total = 0.0;
    for (auto it = stairs_.begin(); it != stairs_.end(); ++it) {
      auto next = std::next(it);
      const double right = next == stairs_.end() ? ref_x_ : next->first;
      total += (right - it->first) * (ref_y_ - it->second);
    }
    return total;
  }

 private:
  double ref_x_, ref_y_;
  std::map<double, double> stairs_;
};

double hypervolume_2d(const PointSet& points, const std::vector<double>& ref) {
  Staircase2d stairs(ref[0], ref[1]);
  bool any = false;
  for (const auto& p : points) {
    if (p[0] >= ref[0] || p[1] >= ref[1]) continue;  // contributes nothing
    stairs.insert(p[0], p[1]);
    any = true;
  }
  return any ? stairs.area() : 0.0;
}

// Dimension sweep: grow a 2d staircase while advancing through the third
// objective from best to worst, integrating the slab areas.
double hypervolume_3d(PointSet points, const std::vector<double>& ref) {
  points.erase(std::remove_if(points.begin(), points.end(),
                              [&](const std::vector<double>& p) {
                                return p[0] >= ref[0] || p[1] >= ref[1] ||
                                       p[2] >= ref[2];
                              }),
               points.end());
  if (points.empty()) return 0.0;
  std::sort(points.begin(), points.end(),
            [](const std::vector<double>& a, const std::vector<double>& b) {
              return std::tie(a[2], a[0], a[1]) < std::tie(b[2], b[0], b[1]);
            });

  Staircase2d stairs(ref[0], ref[1]);
  double hv = 0.0;
  double area = 0.0;
  double z_prev = points.front()[2];
  std::size_t i = 0;
  while (i < points.size()) {
    const double z = points[i][2];
    hv += area * (z - z_prev);
    z_prev = z;
    bool changed = false;
    while (i < points.size() && points[i][2] == z) {
      changed |= stairs.insert(points[i][0], points[i][1]);
      ++i;
    }
    if (changed) area = stairs.area();
  }
  hv += area * (ref[2] - z_prev);
  return hv;
}

}  // namespace

double hypervolume(const PointSet& points, const std::vector<double>& ref) {
  if (ref.size() == 2) return hypervolume_2d(points, ref);
  if (ref.size() == 3) return hypervolume_3d(points, ref);
  throw AnalysisError("hypervolume supports 2 or 3 objectives only");
}

TrajectorySeries anytime_trajectory(const RunResult& result,
                                    const EvalArchivePolicy& policy,
                                    const NormalizationFrame& frame) {
  const std::vector<double> ref(frame.lo.size(), 1.0);
  TrajectorySeries series;
  series.points.reserve(result.checkpoints.size());
  for (const auto& cp : result.checkpoints) {
    const auto set = build_anytime_set(result, policy, cp.evals_used);
    const double hv = hypervolume(normalize_objectives(set.points, frame), ref);
    series.points.emplace_back(cp.evals_used, hv);
  }
  return series;
}

namespace {

std::vector<double> thinned_breaks(std::vector<double> values,
                                   std::size_t max_breaks) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() <= max_breaks || max_breaks < 2) return values;
  std::vector<double> thin;
  thin.reserve(max_breaks);
  const std::size_t last = values.size() - 1;
  for (std::size_t i = 0; i < max_breaks; ++i) {
    thin.push_back(values[i * last / (max_breaks - 1)]);
  }
  thin.erase(std::unique(thin.begin(), thin.end()), thin.end());
  return thin;
}

// For each x break, the lowest second objective among the run's points with
// first objective <= x; +inf where the run attains nothing.
std::vector<double> attainment_floor(const PointSet& run,
                                     const std::vector<double>& x_breaks) {
  std::vector<std::pair<double, double>> pts;
  pts.reserve(run.size());
  for (const auto& p : run) pts.emplace_back(p[0], p[1]);
  std::sort(pts.begin(), pts.end());

  std::vector<double> floor(x_breaks.size(), kInf);
  std::size_t next = 0;
  double best = kInf;
  for (std::size_t i = 0; i < x_breaks.size(); ++i) {
    while (next < pts.size() && pts[next].first <= x_breaks[i]) {
      best = std::min(best, pts[next].second);
      ++next;
    }
    floor[i] = best;
  }
  return floor;
}

void check_two_objectives(const std::vector<PointSet>& run_sets) {
  for (const auto& run : run_sets) {
    for (const auto& p : run) {
      if (p.size() != 2) {
        throw AnalysisError("attainment functions support 2 objectives only");
      }
    }
  }
}

}  // namespace

EafGrid make_eaf_grid(const std::vector<PointSet>& point_sets,
                      std::size_t max_breaks) {
  check_two_objectives(point_sets);
  std::vector<double> xs, ys;
  for (const auto& set : point_sets) {
    for (const auto& p : set) {
      xs.push_back(p[0]);
      ys.push_back(p[1]);
    }
  }
  if (xs.empty()) {
    throw AnalysisError("cannot build an attainment grid from no points");
  }
  EafGrid grid;
  grid.x_breaks = thinned_breaks(std::move(xs), max_breaks);
  grid.y_breaks = thinned_breaks(std::move(ys), max_breaks);
  return grid;
}

EafGrid eaf(const std::vector<PointSet>& run_sets, const EafGrid& grid) {
  if (run_sets.empty()) {
    throw AnalysisError("attainment function needs at least one run");
  }
  check_two_objectives(run_sets);

  const std::size_t nx = grid.x_breaks.size();
  const std::size_t ny = grid.y_breaks.size();
  EafGrid out;
  out.x_breaks = grid.x_breaks;
  out.y_breaks = grid.y_breaks;
  std::vector<int> bumps(nx * ny, 0);

  for (const auto& run : run_sets) {
    const auto floor = attainment_floor(run, grid.x_breaks);
    for (std::size_t i = 0; i < nx; ++i) {
      if (floor[i] == kInf) continue;
      // Attained for every y break at or above the floor; mark the first and
      // resolve with a running sum below.
      const auto jt = std::lower_bound(grid.y_breaks.begin(),
                                       grid.y_breaks.end(), floor[i]);
      const std::size_t j0 = jt - grid.y_breaks.begin();
      if (j0 < ny) ++bumps[i * ny + j0];
    }
  }

  out.level.resize(nx * ny);
  const double runs = static_cast<double>(run_sets.size());
  for (std::size_t i = 0; i < nx; ++i) {
    int attained = 0;
    for (std::size_t j = 0; j < ny; ++j) {
      attained += bumps[i * ny + j];
      out.level[i * ny + j] = attained / runs;
    }
  }
  return out;
}

EafDiff eaf_diff(const std::vector<PointSet>& runs_a,
                 const std::vector<PointSet>& runs_b, const EafGrid& grid) {
  const EafGrid eaf_a = eaf(runs_a, grid);
  const EafGrid eaf_b = eaf(runs_b, grid);

  EafDiff diff;
  diff.grid.x_breaks = grid.x_breaks;
  diff.grid.y_breaks = grid.y_breaks;
  diff.grid.level.resize(eaf_a.level.size());
  for (std::size_t c = 0; c < eaf_a.level.size(); ++c) {
    const double d = eaf_a.level[c] - eaf_b.level[c];
    diff.grid.level[c] = d == 0.0 ? 0.0 : d;  // canonicalize -0.0
  }

  // Envelopes over the union of both algorithms' runs: best = attained by at
  // least one run, worst = attained by every run.
  std::vector<const PointSet*> all;
  for (const auto& r : runs_a) all.push_back(&r);
  for (const auto& r : runs_b) all.push_back(&r);
  std::vector<std::vector<double>> floors;
  floors.reserve(all.size());
  for (const auto* run : all) {
    floors.push_back(attainment_floor(*run, grid.x_breaks));
  }
  for (std::size_t i = 0; i < grid.x_breaks.size(); ++i) {
    double best = kInf;
    double worst = -kInf;
    for (const auto& floor : floors) {
      best = std::min(best, floor[i]);
      worst = std::max(worst, floor[i]);
    }
    if (best != kInf) {
      diff.grand_best.emplace_back(grid.x_breaks[i], best);
    }
    if (worst != kInf && worst != -kInf) {
      diff.grand_worst.emplace_back(grid.x_breaks[i], worst);
    }
  }
  return diff;
}

double positive_area_fraction(const EafGrid& grid) {
  const std::size_t nx = grid.x_breaks.size();
  const std::size_t ny = grid.y_breaks.size();
  if (nx < 2 || ny < 2) return 0.0;
  const double total = (grid.x_breaks.back() - grid.x_breaks.front()) *
                       (grid.y_breaks.back() - grid.y_breaks.front());
  if (total <= 0.0) return 0.0;
  double positive = 0.0;
  for (std::size_t i = 0; i + 1 < nx; ++i) {
    for (std::size_t j = 0; j + 1 < ny; ++j) {
      if (grid.at(i, j) > 0.0) {
        positive += (grid.x_breaks[i + 1] - grid.x_breaks[i]) *
                    (grid.y_breaks[j + 1] - grid.y_breaks[j]);
      }
    }
  }
  return positive / total;
}

}  // namespace moeadps
