#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "moeadps/archive.hpp"
#include "moeadps/engine.hpp"
#include "moeadps/metrics.hpp"
#include "moeadps/stats.hpp"

namespace moeadps {

struct VariantSpec {
  std::string label;
  AlgorithmConfig config;
};

// A batch of seeded runs plus the derived analysis, fully determining every
// byte under the output directory.
struct ExperimentManifest {
  std::vector<std::string> problems;
  std::vector<VariantSpec> variants;
  int runs = 10;
  std::uint64_t base_seed = 1;
  long budget = 100000;
  std::vector<long> stats_checkpoints;  // empty resolves to {5000, 15000, budget}
  std::size_t eaf_export_breaks = 200;  // grid thinning for exported EAF diffs
  std::string out_dir;

  void validate() const;
  std::vector<long> resolved_stats_checkpoints() const;
};

// The three-variant comparison the library ships: partial update (N=500,
// n=50), plain big population (N=500, n=498) and plain small population
// (N=50, n=48) with a 10-iteration union archive. subset selects the problem
// list: "dtlz" (plain + inverted), "uf", or "all".
ExperimentManifest default_manifest(const std::string& subset = "all");

ExperimentManifest load_manifest(const std::filesystem::path& path);
void save_manifest(const ExperimentManifest& manifest,
                   const std::filesystem::path& path);

struct ResultsStore {
  std::filesystem::path root;

  std::filesystem::path manifest_path() const { return root / "manifest.json"; }
  std::filesystem::path runs_dir() const { return root / "runs"; }
  std::filesystem::path metrics_dir() const { return root / "metrics"; }
  std::filesystem::path plots_dir() const { return root / "plots"; }
  std::filesystem::path run_dir(const std::string& problem,
                                const std::string& variant, int run) const;
};

void save_run(const ResultsStore& store, const std::string& problem,
              const std::string& variant, int run, const RunResult& result);
RunResult load_run(const ResultsStore& store, const std::string& problem,
                   const std::string& variant, int run);

// Executes every (problem, variant, run) with seed = base_seed + run index,
// persists the runs, then derives all metric tables (frames, final table,
// anytime trajectories, EAF diffs, stats battery).
ResultsStore execute(const ExperimentManifest& manifest, int workers = 1);

struct RecomputeOptions {
  // Replaces every variant's archive policy ("final_population" or
  // "last_k_union:K"); the same policy applies to all variants so
  // comparisons stay fair.
  std::optional<std::string> policy_override;
  std::optional<std::vector<long>> stats_checkpoints;
  std::optional<std::size_t> eaf_export_breaks;
  bool per_run_pooling = false;  // pool per-run values instead of problem means
};

// Re-derives every metric and stats output from the persisted runs. Never
// evaluates an objective function.
void recompute_metrics(const ResultsStore& store,
                       const RecomputeOptions& options = {});

// kind: "anytime", "eaf_diff" or "ci". Renders static SVG from the metric
// tables written by execute/recompute.
void render_plots(const ResultsStore& store, const std::string& kind);

}  // namespace moeadps
