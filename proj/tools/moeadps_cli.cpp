#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "moeadps/archive.hpp"
#include "moeadps/csv.hpp"
#include "moeadps/errors.hpp"
#include "moeadps/experiment.hpp"
#include "moeadps/weights.hpp"

namespace fs = std::filesystem;

namespace {

// --out wins; otherwise a relative manifest out_dir is anchored under
// MOEADPS_OUT when that is set.
std::string resolve_out_dir(const std::string& manifest_dir,
                            const std::string& override_dir) {
  if (!override_dir.empty()) return override_dir;
  const char* root = std::getenv("MOEADPS_OUT");
  if (root && *root && fs::path(manifest_dir).is_relative()) {
    return (fs::path(root) / manifest_dir).string();
  }
  return manifest_dir;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MOEA/D-PS experiment harness"};
  app.require_subcommand(1);

  // run
  std::string run_manifest_path, run_out;
  int run_workers = 1;
  auto* cmd_run = app.add_subcommand("run", "Execute a manifest of seeded runs");
  cmd_run->add_option("manifest", run_manifest_path, "Manifest JSON path")
      ->required();
  cmd_run->add_option("--workers", run_workers, "Parallel run workers");
  cmd_run->add_option("--out", run_out, "Output directory override");

  // metrics
  std::string metrics_store, metrics_policy;
  std::vector<long> metrics_at;
  std::size_t metrics_eaf_breaks = 0;
  bool metrics_per_run = false;
  auto* cmd_metrics =
      app.add_subcommand("metrics", "Recompute metric tables from stored runs");
  cmd_metrics->add_option("store", metrics_store, "Results directory")
      ->required();
  cmd_metrics->add_option("--policy", metrics_policy,
                          "Archive policy override (final_population or "
                          "last_k_union:K), applied to every variant");
  cmd_metrics->add_option("--at", metrics_at,
                          "Stats checkpoints (evaluation counts)");
  cmd_metrics->add_option("--eaf-breaks", metrics_eaf_breaks,
                          "EAF export grid breaks per axis (max 2000)");
  cmd_metrics->add_flag("--per-run", metrics_per_run,
                        "Pool per-run values instead of per-problem means");

  // stats
  std::string stats_store;
  std::vector<long> stats_at;
  bool stats_per_run = false;
  auto* cmd_stats =
      app.add_subcommand("stats", "Recompute the rank-sum battery");
  cmd_stats->add_option("store", stats_store, "Results directory")->required();
  cmd_stats->add_option("--at", stats_at,
                        "Stats checkpoints (evaluation counts)");
  cmd_stats->add_flag("--per-run", stats_per_run,
                      "Pool per-run values instead of per-problem means");

  // plot
  std::string plot_store, plot_kind;
  auto* cmd_plot = app.add_subcommand("plot", "Render SVG plots from metrics");
  cmd_plot->add_option("store", plot_store, "Results directory")->required();
  cmd_plot->add_option("--kind", plot_kind, "anytime, eaf_diff or ci")
      ->required();

  // weights
  int weights_count = 0, weights_m = 2;
  std::uint64_t weights_seed = 1;
  std::string weights_out;
  auto* cmd_weights =
      app.add_subcommand("weights", "Write a weight-vector set as CSV");
  cmd_weights->add_option("count", weights_count, "Number of vectors")
      ->required();
  cmd_weights->add_option("--objectives", weights_m, "Objective count");
  cmd_weights->add_option("--seed", weights_seed, "Scramble seed");
  cmd_weights->add_option("--out", weights_out, "Output file (default stdout)");

  // export-set
  std::string set_store, set_problem, set_variant, set_policy, set_out;
  int set_run = 0;
  long set_upto = 0;
  auto* cmd_set = app.add_subcommand(
      "export-set", "Write one run's evaluation set as CSV");
  cmd_set->add_option("store", set_store, "Results directory")->required();
  cmd_set->add_option("problem", set_problem, "Problem key")->required();
  cmd_set->add_option("variant", set_variant, "Variant label")->required();
  cmd_set->add_option("run", set_run, "Run index")->required();
  cmd_set->add_option("--policy", set_policy,
                      "Archive policy override for this export");
  cmd_set->add_option("--upto", set_upto,
                      "Build the anytime set at this evaluation count");
  cmd_set->add_option("--out", set_out, "Output file (default stdout)");

  // paper-suite
  std::string suite_subset = "all", suite_out;
  int suite_workers = 1, suite_runs = 0;
  long suite_budget = 0;
  std::uint64_t suite_seed = 0;
  auto* cmd_suite = app.add_subcommand(
      "paper-suite", "Run the shipped three-variant comparison");
  cmd_suite->add_option("--subset", suite_subset, "dtlz, uf or all");
  cmd_suite->add_option("--out", suite_out, "Output directory");
  cmd_suite->add_option("--workers", suite_workers, "Parallel run workers");
  cmd_suite->add_option("--runs", suite_runs, "Repetitions override");
  cmd_suite->add_option("--budget", suite_budget, "Evaluation budget override");
  cmd_suite->add_option("--base-seed", suite_seed, "Base seed override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_run) {
      moeadps::ExperimentManifest manifest =
          moeadps::load_manifest(run_manifest_path);
      manifest.out_dir = resolve_out_dir(manifest.out_dir, run_out);
      moeadps::execute(manifest, run_workers);
      std::cout << "results written to " << manifest.out_dir << "\n";
    } else if (*cmd_metrics) {
      moeadps::RecomputeOptions options;
      if (!metrics_policy.empty()) options.policy_override = metrics_policy;
      if (!metrics_at.empty()) options.stats_checkpoints = metrics_at;
      if (metrics_eaf_breaks > 0) options.eaf_export_breaks = metrics_eaf_breaks;
      options.per_run_pooling = metrics_per_run;
      moeadps::recompute_metrics({fs::path(metrics_store)}, options);
      std::cout << "metrics updated under " << metrics_store << "\n";
    } else if (*cmd_stats) {
      moeadps::RecomputeOptions options;
      if (!stats_at.empty()) options.stats_checkpoints = stats_at;
      options.per_run_pooling = stats_per_run;
      moeadps::recompute_metrics({fs::path(stats_store)}, options);
      std::cout << "stats updated under " << stats_store << "\n";
    } else if (*cmd_plot) {
      moeadps::render_plots({fs::path(plot_store)}, plot_kind);
      std::cout << "plots written under " << plot_store << "\n";
    } else if (*cmd_weights) {
      const auto weights =
          moeadps::generate_weights(weights_count, weights_m, weights_seed);
      moeadps::csv::Table table;
      for (int j = 0; j < weights_m; ++j) {
        table.header.push_back("w" + std::to_string(j));
      }
      for (const auto& w : weights) {
        std::vector<std::string> row;
        for (double v : w) row.push_back(moeadps::csv::format(v));
        table.rows.push_back(std::move(row));
      }
      if (weights_out.empty()) {
        std::cout << "w0";
        for (int j = 1; j < weights_m; ++j) std::cout << ",w" << j;
        std::cout << "\n";
        for (const auto& row : table.rows) {
          for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) std::cout << ',';
            std::cout << row[c];
          }
          std::cout << "\n";
        }
      } else {
        moeadps::csv::write(weights_out, table);
      }
    } else if (*cmd_set) {
      const moeadps::ResultsStore store{fs::path(set_store)};
      const auto result =
          moeadps::load_run(store, set_problem, set_variant, set_run);
      const std::string policy_key =
          set_policy.empty() ? result.config.archive_policy : set_policy;
      const auto policy = moeadps::parse_policy(
          policy_key, result.config.population_size);
      const auto set =
          set_upto > 0 ? moeadps::build_anytime_set(result, policy, set_upto)
                       : moeadps::build_evaluation_set(result, policy);
      moeadps::csv::Table table;
      table.header = {"iteration", "slot"};
      for (int j = 0; j < result.config.num_objectives; ++j) {
        table.header.push_back("f" + std::to_string(j));
      }
      for (std::size_t i = 0; i < set.points.size(); ++i) {
        std::vector<std::string> row = {
            std::to_string(set.provenance[i].first),
            std::to_string(set.provenance[i].second)};
        for (double v : set.points[i]) row.push_back(moeadps::csv::format(v));
        table.rows.push_back(std::move(row));
      }
      if (set_out.empty()) {
        for (std::size_t c = 0; c < table.header.size(); ++c) {
          if (c) std::cout << ',';
          std::cout << table.header[c];
        }
        std::cout << "\n";
        for (const auto& row : table.rows) {
          for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) std::cout << ',';
            std::cout << row[c];
          }
          std::cout << "\n";
        }
      } else {
        moeadps::csv::write(set_out, table);
      }
    } else if (*cmd_suite) {
      moeadps::ExperimentManifest manifest =
          moeadps::default_manifest(suite_subset);
      if (suite_runs > 0) manifest.runs = suite_runs;
      if (suite_budget > 0) manifest.budget = suite_budget;
      if (suite_seed > 0) manifest.base_seed = suite_seed;
      manifest.out_dir =
          resolve_out_dir(suite_out.empty() ? "paper_suite_" + suite_subset
                                            : suite_out,
                          "");
      moeadps::execute(manifest, suite_workers);
      std::cout << "results written to " << manifest.out_dir << "\n";
    }
  } catch (const moeadps::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const moeadps::AnalysisError& e) {
    std::cerr << "analysis error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
