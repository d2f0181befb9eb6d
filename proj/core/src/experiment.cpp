#include "moeadps/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "moeadps/csv.hpp"
#include "moeadps/errors.hpp"
#include "moeadps/svg.hpp"

namespace moeadps {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json config_to_json(const AlgorithmConfig& c) {
  json j;
  j["population_size"] = c.population_size;
  j["update_count"] = c.update_count;
  j["num_objectives"] = c.num_objectives;
  j["de_scale"] = c.de_scale;
  j["mutation_eta"] = c.mutation_eta;
  j["mutation_prob"] = c.mutation_prob;
  j["max_replacements"] = c.max_replacements;
  j["neighbor_prob"] = c.neighbor_prob;
  j["neighborhood_size"] = c.neighborhood_size;
  j["budget"] = c.budget;
  j["archive_policy"] = c.archive_policy;
  j["checkpoint_stride"] = c.checkpoint_stride;
  return j;
}

AlgorithmConfig config_from_json(const json& j) {
  AlgorithmConfig defaults;
  AlgorithmConfig c;
  c.population_size = j.value("population_size", defaults.population_size);
  c.update_count = j.value("update_count", defaults.update_count);
  c.num_objectives = j.value("num_objectives", defaults.num_objectives);
  c.de_scale = j.value("de_scale", defaults.de_scale);
  c.mutation_eta = j.value("mutation_eta", defaults.mutation_eta);
  c.mutation_prob = j.value("mutation_prob", defaults.mutation_prob);
  c.max_replacements = j.value("max_replacements", defaults.max_replacements);
  c.neighbor_prob = j.value("neighbor_prob", defaults.neighbor_prob);
  c.neighborhood_size = j.value("neighborhood_size", defaults.neighborhood_size);
  c.budget = j.value("budget", defaults.budget);
  c.archive_policy = j.value("archive_policy", defaults.archive_policy);
  c.checkpoint_stride = j.value("checkpoint_stride", defaults.checkpoint_stride);
  return c;
}

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double sample_sd(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double mu = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - mu) * (x - mu);
  return std::sqrt(ss / (v.size() - 1));
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

void ExperimentManifest::validate() const {
  if (problems.empty()) {
    throw ConfigError("manifest lists no problems");
  }
  for (const auto& key : problems) {
    make_problem(key);  // throws ConfigError on unknown keys
  }
  if (variants.empty()) {
    throw ConfigError("manifest lists no variants");
  }
  std::set<std::string> labels;
  for (const auto& v : variants) {
    if (v.label.empty() || !labels.insert(v.label).second) {
      throw ConfigError("variant labels must be unique and non-empty");
    }
    AlgorithmConfig c = v.config;
    c.budget = budget;  // every variant shares the manifest budget
    c.validate();
    parse_policy(c.archive_policy, c.population_size);
  }
  if (runs < 1) {
    throw ConfigError("manifest needs at least one run per variant");
  }
  if (eaf_export_breaks < 2 || eaf_export_breaks > 2000) {
    throw ConfigError("eaf_export_breaks must lie in [2, 2000]");
  }
  if (out_dir.empty()) {
    throw ConfigError("manifest needs an output directory");
  }
}

std::vector<long> ExperimentManifest::resolved_stats_checkpoints() const {
  std::vector<long> cps = stats_checkpoints;
  if (cps.empty()) cps = {5000, 15000, budget};
  std::vector<long> valid;
  for (long e : cps) {
    if (e >= 1 && e <= budget) valid.push_back(e);
  }
  std::sort(valid.begin(), valid.end());
  valid.erase(std::unique(valid.begin(), valid.end()), valid.end());
  return valid;
}

ExperimentManifest default_manifest(const std::string& subset) {
  ExperimentManifest m;
  for (const auto& key : problem_keys()) {
    const bool is_uf = key.rfind("uf", 0) == 0;
    if (subset == "all" || (subset == "uf" && is_uf) ||
        (subset == "dtlz" && !is_uf)) {
      m.problems.push_back(key);
    }
  }
  if (m.problems.empty()) {
    throw ConfigError("unknown problem subset: " + subset);
  }

  VariantSpec ps;
  ps.label = "ps";
  ps.config.population_size = 500;
  ps.config.update_count = 50;
  ps.config.archive_policy = "final_population";
  // Ten-iteration snapshot stride keeps full-budget run tables compact while
  // the anytime grid stays much denser than the big-population variant's.
  ps.config.checkpoint_stride = 10;

  VariantSpec big;
  big.label = "big";
  big.config.population_size = 500;
  big.config.update_count = 498;
  big.config.archive_policy = "final_population";
  big.config.checkpoint_stride = 1;

  VariantSpec small;
  small.label = "small";
  small.config.population_size = 50;
  small.config.update_count = 48;
  small.config.archive_policy = "last_k_union:10";
  small.config.checkpoint_stride = 1;

  m.variants = {ps, big, small};
  m.runs = 10;
  m.base_seed = 1;
  m.budget = 100000;
  m.out_dir = "results";
  return m;
}

ExperimentManifest load_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open manifest " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("malformed manifest " + path.string() + ": " + e.what());
  }

  ExperimentManifest m;
  m.problems = j.value("problems", std::vector<std::string>{});
  m.runs = j.value("runs", 10);
  m.base_seed = j.value("base_seed", std::uint64_t{1});
  m.budget = j.value("budget", 100000L);
  m.stats_checkpoints = j.value("stats_checkpoints", std::vector<long>{});
  m.eaf_export_breaks = j.value("eaf_export_breaks", std::size_t{200});
  m.out_dir = j.value("out_dir", std::string{});
  for (const auto& jv : j.value("variants", json::array())) {
    VariantSpec v;
    v.label = jv.value("label", std::string{});
    v.config = config_from_json(jv.value("config", json::object()));
    v.config.budget = m.budget;
    m.variants.push_back(v);
  }
  return m;
}

void save_manifest(const ExperimentManifest& manifest, const fs::path& path) {
  json j;
  j["problems"] = manifest.problems;
  j["runs"] = manifest.runs;
  j["base_seed"] = manifest.base_seed;
  j["budget"] = manifest.budget;
  j["stats_checkpoints"] = manifest.resolved_stats_checkpoints();
  j["eaf_export_breaks"] = manifest.eaf_export_breaks;
  j["out_dir"] = manifest.out_dir;
  json variants = json::array();
  for (const auto& v : manifest.variants) {
    json jv;
    jv["label"] = v.label;
    AlgorithmConfig c = v.config;
    c.budget = manifest.budget;
    jv["config"] = config_to_json(c);
    variants.push_back(jv);
  }
  j["variants"] = variants;
  csv::write_text(path, j.dump(2) + "\n");
}

fs::path ResultsStore::run_dir(const std::string& problem,
                               const std::string& variant, int run) const {
  return runs_dir() / problem / variant / ("run_" + std::to_string(run));
}

void save_run(const ResultsStore& store, const std::string& problem,
              const std::string& variant, int run, const RunResult& result) {
  const fs::path dir = store.run_dir(problem, variant, run);
  fs::create_directories(dir);

  json j;
  j["config"] = config_to_json(result.config);
  j["evals_used"] = result.evals_used;
  j["problem"] = result.problem_key;
  j["seed"] = result.seed;
  csv::write_text(dir / "run.json", j.dump(2) + "\n");

  const int m = result.config.num_objectives;
  const int n = result.config.population_size;
  csv::Table checkpoints;
  checkpoints.header = {"iteration", "evals"};
  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < m; ++k) {
      checkpoints.header.push_back("s" + std::to_string(s) + "_f" +
                                   std::to_string(k));
    }
  }
  for (const auto& cp : result.checkpoints) {
    std::vector<std::string> row;
    row.reserve(2 + cp.objectives.size());
    row.push_back(std::to_string(cp.iteration));
    row.push_back(std::to_string(cp.evals_used));
    for (double v : cp.objectives) row.push_back(csv::format(v));
    checkpoints.rows.push_back(std::move(row));
  }
  csv::write(dir / "checkpoints.csv", checkpoints);

  csv::Table pop;
  const int dim = result.final_x.empty() ? 0
                                         : static_cast<int>(result.final_x[0].size());
  for (int d = 0; d < dim; ++d) pop.header.push_back("x" + std::to_string(d));
  for (int k = 0; k < m; ++k) pop.header.push_back("f" + std::to_string(k));
  for (std::size_t s = 0; s < result.final_x.size(); ++s) {
    std::vector<std::string> row;
    row.reserve(dim + m);
    for (double v : result.final_x[s]) row.push_back(csv::format(v));
    for (double v : result.final_f[s]) row.push_back(csv::format(v));
    pop.rows.push_back(std::move(row));
  }
  csv::write(dir / "final_population.csv", pop);
}

RunResult load_run(const ResultsStore& store, const std::string& problem,
                   const std::string& variant, int run) {
  const fs::path dir = store.run_dir(problem, variant, run);
  std::ifstream in(dir / "run.json");
  if (!in) {
    throw AnalysisError("missing run file " + (dir / "run.json").string());
  }
  json j;
  in >> j;

  RunResult result;
  result.config = config_from_json(j.at("config"));
  result.evals_used = j.at("evals_used").get<long>();
  result.problem_key = j.at("problem").get<std::string>();
  result.seed = j.at("seed").get<std::uint64_t>();

  const int m = result.config.num_objectives;
  const auto checkpoints = csv::read(dir / "checkpoints.csv");
  for (const auto& row : checkpoints.rows) {
    Checkpoint cp;
    cp.iteration = csv::to_long(row.at(0));
    cp.evals_used = csv::to_long(row.at(1));
    cp.objectives.reserve(row.size() - 2);
    for (std::size_t c = 2; c < row.size(); ++c) {
      cp.objectives.push_back(csv::to_double(row[c]));
    }
    result.checkpoints.push_back(std::move(cp));
  }

  const auto pop = csv::read(dir / "final_population.csv");
  const int dim = static_cast<int>(pop.header.size()) - m;
  for (const auto& row : pop.rows) {
    std::vector<double> x, f;
    for (int c = 0; c < dim; ++c) x.push_back(csv::to_double(row.at(c)));
    for (int c = dim; c < dim + m; ++c) f.push_back(csv::to_double(row.at(c)));
    result.final_x.push_back(std::move(x));
    result.final_f.push_back(std::move(f));
  }
  return result;
}

ResultsStore execute(const ExperimentManifest& manifest, int workers) {
  manifest.validate();
  ResultsStore store{fs::path(manifest.out_dir)};
  try {
    fs::create_directories(store.root);
  } catch (const fs::filesystem_error& e) {
    throw ConfigError("cannot create output directory " + store.root.string() +
                      ": " + e.what());
  }
  save_manifest(manifest, store.manifest_path());

  struct Job {
    std::string problem;
    const VariantSpec* variant;
    int run;
  };
  std::vector<Job> jobs;
  for (const auto& problem : manifest.problems) {
    for (const auto& variant : manifest.variants) {
      for (int r = 0; r < manifest.runs; ++r) {
        jobs.push_back({problem, &variant, r});
      }
    }
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      try {
        const Job& job = jobs[i];
        const ProblemDescriptor problem = make_problem(job.problem);
        AlgorithmConfig config = job.variant->config;
        config.num_objectives = problem.num_objectives;
        config.budget = manifest.budget;
        const RunResult result =
            run(config, problem, manifest.base_seed + job.run);
        save_run(store, job.problem, job.variant->label, job.run, result);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  const int thread_count = std::max(1, workers);
  std::vector<std::thread> pool;
  pool.reserve(thread_count);
  for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  recompute_metrics(store, {});
  return store;
}

namespace {

struct VariantRuns {
  const VariantSpec* spec;
  EvalArchivePolicy policy;
  std::vector<RunResult> runs;
  std::vector<EvaluationSet> final_sets;
};

std::string pair_name(const std::string& a, const std::string& b) {
  return a + "_vs_" + b;
}

}  // namespace

void recompute_metrics(const ResultsStore& store,
                       const RecomputeOptions& options) {
  const ExperimentManifest manifest = load_manifest(store.manifest_path());

  const auto stats_checkpoints =
      options.stats_checkpoints.value_or(manifest.resolved_stats_checkpoints());
  const std::size_t eaf_breaks =
      options.eaf_export_breaks.value_or(manifest.eaf_export_breaks);

  // Variants survive if their run directory exists for some problem; deleted
  // variants simply drop out of the analysis. Partially missing runs are an
  // error, listed below.
  std::vector<std::string> problems;
  for (const auto& p : manifest.problems) {
    if (fs::exists(store.runs_dir() / p)) problems.push_back(p);
  }
  if (problems.empty()) {
    throw AnalysisError("store has no runs under " + store.runs_dir().string());
  }
  std::vector<const VariantSpec*> variants;
  for (const auto& v : manifest.variants) {
    for (const auto& p : problems) {
      if (fs::exists(store.runs_dir() / p / v.label)) {
        variants.push_back(&v);
        break;
      }
    }
  }

  std::vector<std::string> missing;
  for (const auto& p : problems) {
    for (const auto* v : variants) {
      for (int r = 0; r < manifest.runs; ++r) {
        for (const char* file : {"run.json", "checkpoints.csv",
                                 "final_population.csv"}) {
          const fs::path path = store.run_dir(p, v->label, r) / file;
          if (!fs::exists(path)) missing.push_back(path.string());
        }
      }
    }
  }
  if (!missing.empty()) {
    std::string what = "store is missing run files:";
    for (const auto& m : missing) what += "\n  " + m;
    throw AnalysisError(what);
  }

  csv::Table frames_table;
  frames_table.header = {"problem", "objective", "lo", "hi"};
  csv::Table final_table;
  final_table.header = {"problem",    "variant",       "hv_mean",
                        "hv_se",      "nndom_mean",    "nndom_se",
                        "nndom_all_mean", "nndom_all_se"};

  // Per stats checkpoint, per variant: one value per problem (means) or per
  // run (pooled option).
  std::map<long, std::map<std::string, std::vector<double>>> stats_values;

  for (const auto& problem_key : problems) {
    const ProblemDescriptor problem = make_problem(problem_key);

    std::vector<VariantRuns> loaded;
    for (const auto* v : variants) {
      VariantRuns vr;
      vr.spec = v;
      const std::string policy_key =
          options.policy_override.value_or(v->config.archive_policy);
      vr.policy = parse_policy(policy_key, v->config.population_size);
      for (int r = 0; r < manifest.runs; ++r) {
        vr.runs.push_back(load_run(store, problem_key, v->label, r));
        vr.final_sets.push_back(
            build_evaluation_set(vr.runs.back(), vr.policy));
      }
      loaded.push_back(std::move(vr));
    }

    std::vector<const EvaluationSet*> all_sets;
    for (const auto& vr : loaded) {
      for (const auto& set : vr.final_sets) all_sets.push_back(&set);
    }
    const NormalizationFrame frame = make_frame(all_sets);
    for (int j = 0; j < problem.num_objectives; ++j) {
      frames_table.rows.push_back({problem_key, std::to_string(j),
                                   csv::format(frame.lo[j]),
                                   csv::format(frame.hi[j])});
    }

    const std::vector<double> ref(problem.num_objectives, 1.0);
    for (const auto& vr : loaded) {
      std::vector<double> hv, nndom, nndom_all;
      for (const auto& set : vr.final_sets) {
        hv.push_back(hypervolume(normalize_objectives(set.points, frame), ref));
        const auto props = nondominated_proportions(set);
        nndom.push_back(props.unique);
        nndom_all.push_back(props.unfiltered);
      }
      const double r = static_cast<double>(hv.size());
      final_table.rows.push_back(
          {problem_key, vr.spec->label, csv::format(mean_of(hv)),
           csv::format(sample_sd(hv) / std::sqrt(r)), csv::format(mean_of(nndom)),
           csv::format(sample_sd(nndom) / std::sqrt(r)),
           csv::format(mean_of(nndom_all)),
           csv::format(sample_sd(nndom_all) / std::sqrt(r))});
    }

    // Anytime trajectories; runs of a variant share their eval grid.
    for (const auto& vr : loaded) {
      std::vector<TrajectorySeries> series;
      for (const auto& run : vr.runs) {
        series.push_back(anytime_trajectory(run, vr.policy, frame));
      }
      csv::Table table;
      table.header = {"evals"};
      for (int r = 0; r < manifest.runs; ++r) {
        table.header.push_back("hv_run" + std::to_string(r));
      }
      table.header.push_back("hv_mean");
      table.header.push_back("hv_sd");
      for (std::size_t k = 0; k < series.front().points.size(); ++k) {
        std::vector<std::string> row;
        row.push_back(std::to_string(series.front().points[k].first));
        std::vector<double> values;
        for (const auto& s : series) values.push_back(s.points[k].second);
        for (double v : values) row.push_back(csv::format(v));
        row.push_back(csv::format(mean_of(values)));
        row.push_back(csv::format(sample_sd(values)));
        table.rows.push_back(std::move(row));
      }
      csv::write(store.metrics_dir() / "anytime" /
                     (problem_key + "__" + vr.spec->label + ".csv"),
                 table);
    }

    // EAF differences for every variant pair (two-objective problems only).
    if (problem.num_objectives == 2) {
      for (std::size_t a = 0; a < loaded.size(); ++a) {
        for (std::size_t b = a + 1; b < loaded.size(); ++b) {
          std::vector<PointSet> sets_a, sets_b;
          for (const auto& s : loaded[a].final_sets) sets_a.push_back(s.points);
          for (const auto& s : loaded[b].final_sets) sets_b.push_back(s.points);
          std::vector<PointSet> all;
          all.insert(all.end(), sets_a.begin(), sets_a.end());
          all.insert(all.end(), sets_b.begin(), sets_b.end());
          const EafGrid grid = make_eaf_grid(all, eaf_breaks);
          const EafDiff diff = eaf_diff(sets_a, sets_b, grid);

          const std::string pair =
              pair_name(loaded[a].spec->label, loaded[b].spec->label);
          csv::Table grid_table;
          grid_table.header = {"x", "y", "level"};
          for (std::size_t i = 0; i < diff.grid.x_breaks.size(); ++i) {
            for (std::size_t j = 0; j < diff.grid.y_breaks.size(); ++j) {
              grid_table.rows.push_back({csv::format(diff.grid.x_breaks[i]),
                                         csv::format(diff.grid.y_breaks[j]),
                                         csv::format(diff.grid.at(i, j))});
            }
          }
          csv::write(store.metrics_dir() / "eaf" /
                         (problem_key + "__" + pair + ".csv"),
                     grid_table);

          csv::Table env_table;
          env_table.header = {"kind", "x", "y"};
          for (const auto& [x, y] : diff.grand_best) {
            env_table.rows.push_back({"best", csv::format(x), csv::format(y)});
          }
          for (const auto& [x, y] : diff.grand_worst) {
            env_table.rows.push_back({"worst", csv::format(x), csv::format(y)});
          }
          csv::write(store.metrics_dir() / "eaf" /
                         (problem_key + "__" + pair + "_envelopes.csv"),
                     env_table);
        }
      }
    }

    // Hypervolume samples for the stats battery.
    for (long e : stats_checkpoints) {
      for (const auto& vr : loaded) {
        std::vector<double> run_values;
        for (const auto& run : vr.runs) {
          const auto set = build_anytime_set(run, vr.policy, e);
          run_values.push_back(
              hypervolume(normalize_objectives(set.points, frame), ref));
        }
        auto& bucket = stats_values[e][vr.spec->label];
        if (options.per_run_pooling) {
          bucket.insert(bucket.end(), run_values.begin(), run_values.end());
        } else {
          bucket.push_back(mean_of(run_values));
        }
      }
    }
  }

  csv::write(store.metrics_dir() / "frames.csv", frames_table);
  csv::write(store.metrics_dir() / "final_metrics.csv", final_table);

  // Rank-sum battery per checkpoint, Hommel-adjusted across the variant
  // pairs of that checkpoint. Needs at least 3 observations per sample.
  const std::size_t observations =
      options.per_run_pooling ? problems.size() * manifest.runs
                              : problems.size();
  if (variants.size() >= 2 && observations >= 3) {
    const double alpha = 0.05;
    for (long e : stats_checkpoints) {
      const auto& values = stats_values[e];
      struct PairResult {
        std::string label_a, label_b;
        double raw_p;
        std::vector<double> diffs;
      };
      std::vector<PairResult> pairs;
      for (std::size_t a = 0; a < variants.size(); ++a) {
        for (std::size_t b = a + 1; b < variants.size(); ++b) {
          PairResult pr;
          pr.label_a = variants[a]->label;
          pr.label_b = variants[b]->label;
          const auto& va = values.at(pr.label_a);
          const auto& vb = values.at(pr.label_b);
          pr.raw_p = wilcoxon_rank_sum(va, vb);
          for (std::size_t i = 0; i < va.size(); ++i) {
            pr.diffs.push_back(va[i] - vb[i]);
          }
          pairs.push_back(std::move(pr));
        }
      }
      std::vector<double> raw;
      for (const auto& pr : pairs) raw.push_back(pr.raw_p);
      const auto adjusted = hommel_adjust(raw);

      csv::Table table;
      table.header = {"pair",      "evals",     "raw_p",  "adjusted_p",
                      "direction", "median_diff", "ci_low", "ci_high"};
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& pr = pairs[i];
        std::string ci_low, ci_high;
        double center = median_of(pr.diffs);
        if (pr.diffs.size() >= 6) {
          const MedianCi ci = paired_median_ci(pr.diffs, alpha);
          center = ci.estimate;
          ci_low = csv::format(ci.low);
          ci_high = csv::format(ci.high);
        }
        std::string direction = "≈";  // not significant
        if (adjusted[i] < alpha) {
          direction = center > 0 ? "↑" : "←";
        }
        table.rows.push_back({pair_name(pr.label_a, pr.label_b),
                              std::to_string(e), csv::format(pr.raw_p),
                              csv::format(adjusted[i]), direction,
                              csv::format(center), ci_low, ci_high});
      }
      csv::write(store.metrics_dir() / "stats" /
                     ("stats_" + std::to_string(e) + ".csv"),
                 table);
    }
  }
}

namespace {

const std::vector<std::pair<std::string, std::string>> kPalette = {
    {"ps", "#c0392b"}, {"big", "#27ae60"}, {"small", "#2980b9"}};

std::string series_color(const std::string& label, std::size_t index) {
  for (const auto& [name, color] : kPalette) {
    if (label == name) return color;
  }
  const std::vector<std::string> fallback = {"#c0392b", "#27ae60", "#2980b9",
                                             "#8e44ad", "#d35400", "#16a085"};
  return fallback[index % fallback.size()];
}

void render_anytime_plot(const ResultsStore& store,
                         const ExperimentManifest& manifest,
                         const std::string& problem) {
  std::vector<std::pair<std::string, csv::Table>> series;
  for (const auto& v : manifest.variants) {
    const fs::path path =
        store.metrics_dir() / "anytime" / (problem + "__" + v.label + ".csv");
    if (fs::exists(path)) series.emplace_back(v.label, csv::read(path));
  }
  if (series.empty()) return;

  svg::Document doc(640, 440);
  svg::Mapper map;
  map.x0 = 0.0;
  map.x1 = static_cast<double>(manifest.budget);
  map.y0 = 0.0;
  map.y1 = 1.0;
  map.px0 = 70;
  map.px1 = 610;
  map.py0 = 390;
  map.py1 = 40;

  doc.text(320, 20, problem, 14, "middle");
  svg::draw_axes(doc, map, "evaluations", "hypervolume");

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& [label, table] = series[s];
    const int evals_col = table.column("evals");
    const int mean_col = table.column("hv_mean");
    const int sd_col = table.column("hv_sd");

    std::vector<std::pair<double, double>> line, upper, lower;
    for (const auto& row : table.rows) {
      const double x = csv::to_double(row[evals_col]);
      const double mu = csv::to_double(row[mean_col]);
      const double sd = csv::to_double(row[sd_col]);
      line.emplace_back(map.px(x), map.py(mu));
      upper.emplace_back(map.px(x), map.py(std::min(1.0, mu + sd)));
      lower.emplace_back(map.px(x), map.py(std::max(0.0, mu - sd)));
    }
    const std::string color = series_color(label, s);
    std::vector<std::pair<double, double>> band = upper;
    band.insert(band.end(), lower.rbegin(), lower.rend());
    doc.polygon(band, color, 0.15);
    doc.polyline(line, color, 1.8);
    // Sparse markers, one shape per series.
    const std::size_t step = std::max<std::size_t>(1, line.size() / 12);
    for (std::size_t k = 0; k < line.size(); k += step) {
      const auto [cx, cy] = line[k];
      if (s % 3 == 0) {
        doc.circle(cx, cy, 3.0, color);
      } else if (s % 3 == 1) {
        doc.polygon({{cx, cy - 3.5}, {cx + 3.5, cy + 3.0}, {cx - 3.5, cy + 3.0}},
                    color);
      } else {
        doc.rect(cx - 3.0, cy - 3.0, 6.0, 6.0, color);
      }
    }
    doc.line(480, 50 + 18 * s, 505, 50 + 18 * s, color, 2.0);
    doc.text(510, 54 + 18 * s, label, 12);
  }

  csv::write_text(store.plots_dir() / ("anytime__" + problem + ".svg"),
                  doc.str());
}

void render_eaf_panels(const ResultsStore& store, const std::string& stem) {
  const auto grid_table = csv::read(store.metrics_dir() / "eaf" / (stem + ".csv"));
  const auto env_table =
      csv::read(store.metrics_dir() / "eaf" / (stem + "_envelopes.csv"));

  std::vector<double> xs, ys, levels;
  for (const auto& row : grid_table.rows) {
    xs.push_back(csv::to_double(row[0]));
    ys.push_back(csv::to_double(row[1]));
    levels.push_back(csv::to_double(row[2]));
  }
  std::vector<double> x_breaks = xs, y_breaks = ys;
  std::sort(x_breaks.begin(), x_breaks.end());
  x_breaks.erase(std::unique(x_breaks.begin(), x_breaks.end()), x_breaks.end());
  std::sort(y_breaks.begin(), y_breaks.end());
  y_breaks.erase(std::unique(y_breaks.begin(), y_breaks.end()), y_breaks.end());
  if (x_breaks.size() < 2 || y_breaks.size() < 2) return;

  const double panel_w = 300, panel_h = 300;
  svg::Document doc(700, 400);
  svg::Mapper map;
  map.x0 = x_breaks.front();
  map.x1 = x_breaks.back();
  map.y0 = y_breaks.front();
  map.y1 = y_breaks.back();
  map.px0 = 0;
  map.px1 = panel_w;
  map.py0 = panel_h;
  map.py1 = 0;

  auto panel = [&](const std::string& id, double tx, bool positive) {
    doc.open_group(id, tx, 50);
    for (std::size_t r = 0; r < levels.size(); ++r) {
      const double level = positive ? levels[r] : -levels[r];
      if (level <= 0.0) continue;
      const auto xi = std::lower_bound(x_breaks.begin(), x_breaks.end(), xs[r]) -
                      x_breaks.begin();
      const auto yj = std::lower_bound(y_breaks.begin(), y_breaks.end(), ys[r]) -
                      y_breaks.begin();
      if (xi + 1 >= static_cast<long>(x_breaks.size()) ||
          yj + 1 >= static_cast<long>(y_breaks.size())) {
        continue;
      }
      const double px = map.px(x_breaks[xi]);
      const double pw = map.px(x_breaks[xi + 1]) - px;
      const double py = map.py(y_breaks[yj + 1]);
      const double ph = map.py(y_breaks[yj]) - py;
      doc.rect(px, py, pw, ph, "#c0392b", level);
    }
    std::vector<std::pair<double, double>> best, worst;
    for (const auto& row : env_table.rows) {
      const double x = map.px(csv::to_double(row[1]));
      const double y = map.py(csv::to_double(row[2]));
      if (row[0] == "best") {
        best.emplace_back(x, y);
      } else {
        worst.emplace_back(x, y);
      }
    }
    doc.polyline(best, "#333", 1.2);
    doc.polyline(worst, "#333", 1.2, "4,3");
    doc.line(0, panel_h, panel_w, panel_h, "#333", 1.0);
    doc.line(0, 0, 0, panel_h, "#333", 1.0);
    doc.close_group();
  };

  const auto sep = stem.find("__");
  const std::string pair = stem.substr(sep + 2);
  const auto vs = pair.find("_vs_");
  doc.text(160, 30, pair.substr(0, vs) + " better", 13, "middle");
  doc.text(520, 30, pair.substr(vs + 4) + " better", 13, "middle");
  panel("panel-left", 30, true);
  panel("panel-right", 390, false);

  csv::write_text(store.plots_dir() / ("eaf__" + stem + ".svg"), doc.str());
}

void render_ci_plot(const ResultsStore& store, const fs::path& stats_csv) {
  const auto table = csv::read(stats_csv);
  const int pair_col = table.column("pair");
  const int dir_col = table.column("direction");
  const int mid_col = table.column("median_diff");
  const int lo_col = table.column("ci_low");
  const int hi_col = table.column("ci_high");

  double span = 0.0;
  for (const auto& row : table.rows) {
    if (!row[lo_col].empty()) {
      span = std::max({span, std::abs(csv::to_double(row[lo_col])),
                       std::abs(csv::to_double(row[hi_col]))});
    }
    span = std::max(span, std::abs(csv::to_double(row[mid_col])));
  }
  if (span == 0.0) span = 1.0;

  svg::Document doc(640, 80 + 50 * table.rows.size());
  svg::Mapper map;
  map.x0 = -span * 1.1;
  map.x1 = span * 1.1;
  map.px0 = 150;
  map.px1 = 610;
  map.y0 = 0;
  map.y1 = 1;
  map.py0 = 1;
  map.py1 = 0;

  doc.line(map.px(0.0), 40, map.px(0.0), 60 + 50 * table.rows.size(), "#999",
           1.0, "3,3");
  doc.text(320, 20, stats_csv.stem().string(), 13, "middle");

  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& row = table.rows[r];
    const double y = 60 + 50 * r;
    const bool significant = row[dir_col] != "≈";
    const std::string color = significant ? "#c0392b" : "#2980b9";
    doc.text(20, y + 4, row[pair_col], 12);
    const double mid = map.px(csv::to_double(row[mid_col]));
    if (!row[lo_col].empty()) {
      const double lo = map.px(csv::to_double(row[lo_col]));
      const double hi = map.px(csv::to_double(row[hi_col]));
      doc.line(lo, y, hi, y, color, 2.0);
      doc.line(lo, y - 5, lo, y + 5, color, 2.0);
      doc.line(hi, y - 5, hi, y + 5, color, 2.0);
    }
    if (significant) {
      doc.polygon({{mid, y - 6}, {mid + 6, y}, {mid, y + 6}, {mid - 6, y}},
                  color);
    } else {
      doc.circle(mid, y, 5.0, color);
    }
  }

  // x-axis ticks
  for (int i = 0; i < 5; ++i) {
    const double v = map.x0 + (map.x1 - map.x0) * i / 4;
    const double px = map.px(v);
    const double base = 60 + 50 * table.rows.size();
    doc.line(px, base, px, base + 4, "#333", 1.0);
    doc.text(px, base + 16, csv::format(v), 10, "middle");
  }

  csv::write_text(store.plots_dir() / ("ci__" + stats_csv.stem().string() + ".svg"),
                  doc.str());
}

}  // namespace

void render_plots(const ResultsStore& store, const std::string& kind) {
  const ExperimentManifest manifest = load_manifest(store.manifest_path());
  if (!fs::exists(store.metrics_dir())) {
    throw AnalysisError("store has no metrics; run the metrics step first");
  }

  if (kind == "anytime") {
    for (const auto& problem : manifest.problems) {
      render_anytime_plot(store, manifest, problem);
    }
  } else if (kind == "eaf_diff") {
    const fs::path dir = store.metrics_dir() / "eaf";
    if (!fs::exists(dir)) return;
    std::vector<std::string> stems;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string name = entry.path().stem().string();
      if (entry.path().extension() == ".csv" &&
          name.find("_envelopes") == std::string::npos) {
        stems.push_back(name);
      }
    }
    std::sort(stems.begin(), stems.end());
    for (const auto& stem : stems) render_eaf_panels(store, stem);
  } else if (kind == "ci") {
    const fs::path dir = store.metrics_dir() / "stats";
    if (!fs::exists(dir)) return;
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.path().extension() == ".csv") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& file : files) render_ci_plot(store, file);
  } else {
    throw ConfigError("unknown plot kind: " + kind);
  }
}

}  // namespace moeadps
