#pragma once

#include <string>
#include <vector>

namespace moeadps {

enum class WilcoxonMethod { automatic, exact, normal_approx };

// Two-sided Wilcoxon rank-sum p-value with midrank tie handling. The
// automatic method uses the exact conditional distribution of the rank sum
// for combined sizes up to 20 and the tie-corrected, continuity-corrected
// normal approximation beyond. Degenerate pooled samples give p = 1.
double wilcoxon_rank_sum(const std::vector<double>& a,
                         const std::vector<double>& b,
                         WilcoxonMethod method = WilcoxonMethod::automatic);

// Hommel step-up adjusted p-values; order preserving, each adjusted value at
// least its raw value.
std::vector<double> hommel_adjust(const std::vector<double>& ps);

struct MedianCi {
  double low = 0.0;
  double high = 0.0;
  double estimate = 0.0;  // Hodges-Lehmann pseudo-median
};

// Distribution-free confidence interval for the pseudo-median of paired
// differences, built by inverting the Wilcoxon signed-rank test over the
// Walsh averages. Needs at least 6 differences.
MedianCi paired_median_ci(const std::vector<double>& diffs, double alpha = 0.05);

struct TestReport {
  std::string label;
  double raw_p = 1.0;
  double adjusted_p = 1.0;
  int direction = 0;  // +1 first sample superior, -1 second, 0 no significance
  double alpha = 0.05;
};

}  // namespace moeadps
