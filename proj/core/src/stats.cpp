#include "moeadps/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "moeadps/errors.hpp"

namespace moeadps {

namespace {

// Midranks of the pooled sample, doubled so ties stay integral.
std::vector<long> doubled_midranks(const std::vector<double>& pooled_sorted,
                                   const std::vector<double>& values) {
  std::vector<long> doubled(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto lo = std::lower_bound(pooled_sorted.begin(), pooled_sorted.end(),
                                     values[i]);
    const auto hi = std::upper_bound(pooled_sorted.begin(), pooled_sorted.end(),
                                     values[i]);
    const long first = lo - pooled_sorted.begin() + 1;
    const long last = hi - pooled_sorted.begin();
    doubled[i] = first + last;  // 2 * midrank
  }
  return doubled;
}

double normal_upper_tail(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

// Exact two-sided p of the rank-sum under random assignment of the pooled
// (mid)ranks: counts size-na subsets by doubled rank sum with a DP table.
double exact_rank_sum_p(const std::vector<long>& doubled_ranks, std::size_t na,
                        long observed_doubled) {
  const std::size_t n = doubled_ranks.size();
  const long total = std::accumulate(doubled_ranks.begin(), doubled_ranks.end(), 0L);
  // counts[k][s]: subsets of size k with doubled rank sum s.
  std::vector<std::vector<double>> counts(
      na + 1, std::vector<double>(total + 1, 0.0));
  counts[0][0] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const long r = doubled_ranks[i];
    for (std::size_t k = std::min(na, i + 1); k >= 1; --k) {
      for (long s = total; s >= r; --s) {
        counts[k][s] += counts[k - 1][s - r];
      }
    }
  }

  // Two-sided: mass at least as far from the mean as the observation.
  // The doubled mean is na * total / n; scale by n to stay integral.
  const long mean_scaled = static_cast<long>(na) * total;
  const long dev = std::llabs(observed_doubled * static_cast<long>(n) - mean_scaled);

  double extreme = 0.0;
  double all = 0.0;
  for (long s = 0; s <= total; ++s) {
    const double c = counts[na][s];
    if (c == 0.0) continue;
    all += c;
    if (std::llabs(s * static_cast<long>(n) - mean_scaled) >= dev) extreme += c;
  }
  return extreme / all;
}

double approx_rank_sum_p(const std::vector<long>& doubled_ranks,
                         const std::vector<double>& pooled_sorted,
                         std::size_t na, long observed_doubled) {
  const double n = static_cast<double>(doubled_ranks.size());
  const double m = static_cast<double>(na);
  const double nb = n - m;

  const double w = observed_doubled / 2.0;
  const double mean = m * (n + 1.0) / 2.0;

  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled_sorted.size();) {
    std::size_t j = i;
    while (j < pooled_sorted.size() && pooled_sorted[j] == pooled_sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    i = j;
  }
  const double var =
      m * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (var <= 0.0) return 1.0;

  const double dev = std::abs(w - mean);
  const double z = (dev - 0.5) / std::sqrt(var);  // continuity correction
  return std::min(1.0, 2.0 * normal_upper_tail(z));
}

}  // namespace

double wilcoxon_rank_sum(const std::vector<double>& a,
                         const std::vector<double>& b, WilcoxonMethod method) {
  if (a.size() < 3 || b.size() < 3) {
    throw AnalysisError("rank-sum test needs at least 3 values per sample");
  }
  std::vector<double> pooled = a;
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());
  if (pooled.front() == pooled.back()) return 1.0;  // all values identical

  const auto doubled_a = doubled_midranks(pooled, a);
  const long observed =
      std::accumulate(doubled_a.begin(), doubled_a.end(), 0L);
  const auto doubled_all = doubled_midranks(pooled, pooled);

  const bool exact =
      method == WilcoxonMethod::exact ||
      (method == WilcoxonMethod::automatic && pooled.size() <= 20);
  if (exact) {
    return exact_rank_sum_p(doubled_all, a.size(), observed);
  }
  return approx_rank_sum_p(doubled_all, pooled, a.size(), observed);
}

std::vector<double> hommel_adjust(const std::vector<double>& ps) {
  const std::size_t n = ps.size();
  for (double p : ps) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw AnalysisError("p-values must lie in [0, 1]");
    }
  }
  if (n <= 1) return ps;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return ps[x] < ps[y]; });
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = ps[order[i]];

  std::vector<double> pa(n), q(n);
  double q_all = p[0] * n;
  for (std::size_t i = 1; i < n; ++i) {
    q_all = std::min(q_all, p[i] * n / static_cast<double>(i + 1));
  }
  std::fill(pa.begin(), pa.end(), q_all);
  std::fill(q.begin(), q.end(), q_all);

  for (std::size_t m = n - 1; m >= 2; --m) {
    // Simes bound over the m largest p-values.
    double q1 = p[n - m + 1] * m / 2.0;
    for (std::size_t i = n - m + 2; i < n; ++i) {
      q1 = std::min(q1, p[i] * m / static_cast<double>(i - (n - m) + 1));
    }
    for (std::size_t i = 0; i <= n - m; ++i) {
      q[i] = std::min(p[i] * m, q1);
    }
    for (std::size_t i = n - m + 1; i < n; ++i) {
      q[i] = q[n - m];
    }
    for (std::size_t i = 0; i < n; ++i) pa[i] = std::max(pa[i], q[i]);
  }

  std::vector<double> adjusted(n);
  for (std::size_t i = 0; i < n; ++i) {
    adjusted[order[i]] = std::min(1.0, std::max(pa[i], p[i]));
  }
  return adjusted;
}

namespace {

// Null CDF of the signed-rank statistic for sample size n, by the standard
// generating-function recursion. counts[t] = number of sign patterns with
// positive-rank sum t.
std::vector<double> signrank_counts(std::size_t n) {
  const std::size_t max_t = n * (n + 1) / 2;
  std::vector<double> counts(max_t + 1, 0.0);
  counts[0] = 1.0;
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t t = max_t + 1; t-- > r;) {
      counts[t] += counts[t - r];
    }
  }
  return counts;
}

// Smallest q with P(T <= q) >= prob.
long signrank_quantile(double prob, std::size_t n) {
  const auto counts = signrank_counts(n);
  const double total = std::pow(2.0, static_cast<double>(n));
  double cum = 0.0;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    cum += counts[t];
    if (cum / total >= prob) return static_cast<long>(t);
  }
  return static_cast<long>(counts.size() - 1);
}

}  // namespace

MedianCi paired_median_ci(const std::vector<double>& diffs, double alpha) {
  const std::size_t n = diffs.size();
  if (n < 6) {
    throw AnalysisError("median confidence interval needs at least 6 pairs");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw AnalysisError("alpha must lie in (0, 1)");
  }

  std::vector<double> walsh;
  walsh.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      walsh.push_back((diffs[i] + diffs[j]) / 2.0);
    }
  }
  std::sort(walsh.begin(), walsh.end());
  const std::size_t total = walsh.size();

  MedianCi ci;
  ci.estimate = total % 2 == 1
                    ? walsh[total / 2]
                    : 0.5 * (walsh[total / 2 - 1] + walsh[total / 2]);

  long qu = signrank_quantile(alpha / 2.0, n);
  if (qu == 0) qu = 1;
  const long ql = static_cast<long>(total) - qu;
  ci.low = walsh[qu - 1];
  ci.high = walsh[ql];
  return ci;
}

}  // namespace moeadps
