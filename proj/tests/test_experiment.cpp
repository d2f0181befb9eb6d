#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "moeadps/archive.hpp"
#include "moeadps/csv.hpp"
#include "moeadps/errors.hpp"
#include "moeadps/experiment.hpp"
#include "moeadps/metrics.hpp"

using namespace moeadps;
namespace fs = std::filesystem;

namespace {

ExperimentManifest tiny_manifest(const fs::path& out,
                                 std::vector<std::string> problems = {"dtlz2"},
                                 int runs = 2) {
  ExperimentManifest m;
  m.problems = std::move(problems);
  m.runs = runs;
  m.base_seed = 11;
  m.budget = 1200;
  m.eaf_export_breaks = 60;
  m.out_dir = out.string();

  VariantSpec ps;
  ps.label = "ps";
  ps.config.population_size = 30;
  ps.config.update_count = 6;
  ps.config.archive_policy = "final_population";

  VariantSpec big;
  big.label = "big";
  big.config.population_size = 30;
  big.config.update_count = 28;
  big.config.archive_policy = "final_population";

  VariantSpec small;
  small.label = "small";
  small.config.population_size = 10;
  small.config.update_count = 8;
  small.config.archive_policy = "last_k_union:3";

  m.variants = {ps, big, small};
  return m;
}

std::map<std::string, std::string> snapshot_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream content;
    content << in.rdbuf();
    files[fs::relative(entry.path(), root).string()] = content.str();
  }
  return files;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("manifest json round-trips with defaults materialized") {
  TempDir tmp("moeadps_manifest_test");
  auto manifest = tiny_manifest(tmp.path / "out");
  const fs::path path = tmp.path / "manifest.json";
  save_manifest(manifest, path);
  const auto loaded = load_manifest(path);

  CHECK(loaded.problems == manifest.problems);
  CHECK(loaded.runs == manifest.runs);
  CHECK(loaded.base_seed == manifest.base_seed);
  CHECK(loaded.budget == manifest.budget);
  CHECK(loaded.eaf_export_breaks == manifest.eaf_export_breaks);
  REQUIRE(loaded.variants.size() == 3);
  CHECK(loaded.variants[0].label == "ps");
  CHECK(loaded.variants[0].config.update_count == 6);
  CHECK(loaded.variants[2].config.archive_policy == "last_k_union:3");
  // Stored checkpoints are the resolved list (budget below 5000 keeps only
  // the final budget).
  CHECK(loaded.stats_checkpoints == std::vector<long>{1200});
}

TEST_CASE("manifest validation rejects bad setups") {
  TempDir tmp("moeadps_manifest_bad");
  auto manifest = tiny_manifest(tmp.path / "out");
  manifest.problems = {"not_a_problem"};
  CHECK_THROWS_AS(manifest.validate(), ConfigError);

  manifest = tiny_manifest(tmp.path / "out");
  manifest.variants[1].label = "ps";
  CHECK_THROWS_AS(manifest.validate(), ConfigError);

  manifest = tiny_manifest(tmp.path / "out");
  manifest.out_dir.clear();
  CHECK_THROWS_AS(manifest.validate(), ConfigError);

  manifest = tiny_manifest(tmp.path / "out");
  manifest.eaf_export_breaks = 50000;
  CHECK_THROWS_AS(manifest.validate(), ConfigError);

  manifest = tiny_manifest(tmp.path / "out");
  manifest.runs = 0;
  CHECK_THROWS_AS(manifest.validate(), ConfigError);
}

TEST_CASE("default manifest ships the three reference variants") {
  const auto all = default_manifest("all");
  CHECK(all.problems.size() == 18);
  REQUIRE(all.variants.size() == 3);
  CHECK(all.variants[0].label == "ps");
  CHECK(all.variants[0].config.population_size == 500);
  CHECK(all.variants[0].config.update_count == 50);
  CHECK(all.variants[1].config.update_count == 498);
  CHECK(all.variants[2].config.population_size == 50);
  CHECK(all.variants[2].config.archive_policy == "last_k_union:10");
  CHECK(all.runs == 10);
  CHECK(all.budget == 100000);

  CHECK(default_manifest("dtlz").problems.size() == 8);
  CHECK(default_manifest("uf").problems.size() == 10);
  CHECK_THROWS_AS(default_manifest("zdt"), ConfigError);
}

TEST_CASE("run persistence round-trips exactly") {
  TempDir tmp("moeadps_roundtrip");
  ResultsStore store{tmp.path / "store"};

  AlgorithmConfig config;
  config.population_size = 12;
  config.update_count = 4;
  config.budget = 12 + 6 * 5;
  const auto problem = make_problem("uf2");
  AlgorithmConfig run_config = config;
  run_config.num_objectives = problem.num_objectives;
  const auto result = run(run_config, problem, 99);

  save_run(store, "uf2", "ps", 0, result);
  const auto loaded = load_run(store, "uf2", "ps", 0);

  CHECK(loaded.seed == result.seed);
  CHECK(loaded.evals_used == result.evals_used);
  CHECK(loaded.problem_key == result.problem_key);
  CHECK(loaded.config.update_count == result.config.update_count);
  REQUIRE(loaded.checkpoints.size() == result.checkpoints.size());
  for (std::size_t k = 0; k < loaded.checkpoints.size(); ++k) {
    CHECK(loaded.checkpoints[k].iteration == result.checkpoints[k].iteration);
    CHECK(loaded.checkpoints[k].evals_used == result.checkpoints[k].evals_used);
    CHECK(loaded.checkpoints[k].objectives == result.checkpoints[k].objectives);
  }
  CHECK(loaded.final_x == result.final_x);
  CHECK(loaded.final_f == result.final_f);
}

TEST_CASE("execute writes the expected artifact counts") {
  TempDir tmp("moeadps_counts");
  const auto manifest = tiny_manifest(tmp.path / "store");
  const auto store = execute(manifest, 1);

  int run_csvs = 0;
  for (const auto& problem : manifest.problems) {
    for (const auto& variant : manifest.variants) {
      for (int r = 0; r < manifest.runs; ++r) {
        const auto dir = store.run_dir(problem, variant.label, r);
        CHECK(fs::exists(dir / "run.json"));
        CHECK(fs::exists(dir / "final_population.csv"));
        if (fs::exists(dir / "checkpoints.csv")) ++run_csvs;
      }
    }
  }
  CHECK(run_csvs == 6);  // 1 problem x 3 variants x 2 runs

  CHECK(fs::exists(store.metrics_dir() / "final_metrics.csv"));
  CHECK(fs::exists(store.metrics_dir() / "frames.csv"));

  int eaf_grids = 0;
  for (const auto& entry : fs::directory_iterator(store.metrics_dir() / "eaf")) {
    const auto name = entry.path().filename().string();
    if (name.find("_envelopes") == std::string::npos) ++eaf_grids;
  }
  CHECK(eaf_grids == 3);  // three variant pairs

  // Table rows: 3 variants for the single problem.
  const auto table = csv::read(store.metrics_dir() / "final_metrics.csv");
  CHECK(table.rows.size() == 3);
}

TEST_CASE("re-executing a manifest overwrites the tree bit-identically") {
  TempDir tmp("moeadps_determinism");
  const auto manifest = tiny_manifest(tmp.path / "store");
  execute(manifest, 1);
  const auto first = snapshot_tree(tmp.path / "store");
  execute(manifest, 2);  // parallel workers must not change any byte
  const auto second = snapshot_tree(tmp.path / "store");
  REQUIRE(first.size() == second.size());
  for (const auto& [name, content] : first) {
    REQUIRE(second.count(name) == 1);
    const bool same = second.at(name) == content;
    CHECK(same);
    if (!same) {
      MESSAGE("file differs between runs: ", name);
    }
  }
}

TEST_CASE("recompute on an untouched store reproduces the tables") {
  TempDir tmp("moeadps_recompute");
  const auto manifest = tiny_manifest(tmp.path / "store");
  const auto store = execute(manifest, 1);
  const auto before = snapshot_tree(store.metrics_dir());
  recompute_metrics(store, {});
  const auto after = snapshot_tree(store.metrics_dir());
  CHECK(before == after);
}

TEST_CASE("deleting a variant restricts the analysis to the rest") {
  TempDir tmp("moeadps_restrict");
  const auto manifest = tiny_manifest(tmp.path / "store");
  const auto store = execute(manifest, 1);

  fs::remove_all(store.runs_dir() / "dtlz2" / "small");
  recompute_metrics(store, {});

  const auto table = csv::read(store.metrics_dir() / "final_metrics.csv");
  CHECK(table.rows.size() == 2);
  for (const auto& row : table.rows) {
    CHECK(row[1] != "small");
  }
}

TEST_CASE("a missing run file is reported by path") {
  TempDir tmp("moeadps_missing");
  const auto manifest = tiny_manifest(tmp.path / "store");
  const auto store = execute(manifest, 1);

  fs::remove(store.run_dir("dtlz2", "big", 1) / "checkpoints.csv");
  try {
    recompute_metrics(store, {});
    FAIL("expected AnalysisError");
  } catch (const AnalysisError& e) {
    const std::string what = e.what();
    CHECK(what.find("big") != std::string::npos);
    CHECK(what.find("checkpoints.csv") != std::string::npos);
  }
}

TEST_CASE("policy override changes tables consistently with the archive") {
  TempDir tmp("moeadps_policy");
  const auto manifest = tiny_manifest(tmp.path / "store");
  const auto store = execute(manifest, 1);

  RecomputeOptions options;
  options.policy_override = "last_k_union:2";
  recompute_metrics(store, options);

  // Cross-check one variant's mean hypervolume against direct library calls.
  const auto policy_ps = parse_policy("last_k_union:2", 30);
  const auto policy_big = parse_policy("last_k_union:2", 30);
  const auto policy_small = parse_policy("last_k_union:2", 10);

  std::vector<EvaluationSet> sets;
  for (int r = 0; r < manifest.runs; ++r) {
    sets.push_back(build_evaluation_set(load_run(store, "dtlz2", "ps", r), policy_ps));
    sets.push_back(build_evaluation_set(load_run(store, "dtlz2", "big", r), policy_big));
    sets.push_back(
        build_evaluation_set(load_run(store, "dtlz2", "small", r), policy_small));
  }
  std::vector<const EvaluationSet*> pointers;
  for (const auto& s : sets) pointers.push_back(&s);
  const auto frame = make_frame(pointers);

  double hv_sum = 0.0;
  for (int r = 0; r < manifest.runs; ++r) {
    hv_sum += hypervolume(normalize_objectives(sets[r * 3].points, frame),
                          {1.0, 1.0});
  }
  const double expected_mean = hv_sum / manifest.runs;

  const auto table = csv::read(store.metrics_dir() / "final_metrics.csv");
  bool found = false;
  for (const auto& row : table.rows) {
    if (row[0] == "dtlz2" && row[1] == "ps") {
      CHECK(csv::to_double(row[2]) == doctest::Approx(expected_mean));
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("anytime plot covers the budget and draws one series per variant") {
  TempDir tmp("moeadps_plot");
  const auto manifest = tiny_manifest(tmp.path / "store");
  const auto store = execute(manifest, 1);
  render_plots(store, "anytime");

  const fs::path svg_path = store.plots_dir() / "anytime__dtlz2.svg";
  REQUIRE(fs::exists(svg_path));
  std::ifstream in(svg_path);
  std::ostringstream content;
  content << in.rdbuf();
  const std::string svg = content.str();

  std::size_t polylines = 0;
  for (std::size_t pos = svg.find("<polyline"); pos != std::string::npos;
       pos = svg.find("<polyline", pos + 1)) {
    ++polylines;
  }
  CHECK(polylines == 3);
  // Axis tick labels include both ends of the evaluation range.
  CHECK(svg.find(">0</text>") != std::string::npos);
  CHECK(svg.find(">1200</text>") != std::string::npos);

  CHECK_THROWS_AS(render_plots(store, "sideways"), ConfigError);
}

TEST_CASE("swapped attainment panels mirror each other") {
  TempDir tmp("moeadps_eaf_mirror");
  const auto manifest = tiny_manifest(tmp.path / "store");
  const auto store = execute(manifest, 1);

  // Fabricate the reversed pair by negating the exported grid.
  const auto fwd = csv::read(store.metrics_dir() / "eaf" / "dtlz2__ps_vs_big.csv");
  csv::Table rev = fwd;
  for (auto& row : rev.rows) {
    const double level = csv::to_double(row[2]);
    row[2] = csv::format(level == 0.0 ? 0.0 : -level);
  }
  csv::write(store.metrics_dir() / "eaf" / "dtlz2__big_vs_ps.csv", rev);
  const auto env =
      csv::read(store.metrics_dir() / "eaf" / "dtlz2__ps_vs_big_envelopes.csv");
  csv::write(store.metrics_dir() / "eaf" / "dtlz2__big_vs_ps_envelopes.csv", env);

  render_plots(store, "eaf_diff");

  auto read_file = [](const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string ab = read_file(store.plots_dir() / "eaf__dtlz2__ps_vs_big.svg");
  const std::string ba = read_file(store.plots_dir() / "eaf__dtlz2__big_vs_ps.svg");

  auto group = [](const std::string& svg, const std::string& id) {
    const auto start = svg.find("<g id=\"" + id + "\"");
    const auto end = svg.find("</g>", start);
    const auto open = svg.find('>', start);
    return svg.substr(open + 1, end - open - 1);
  };
  CHECK(group(ab, "panel-left") == group(ba, "panel-right"));
  CHECK(group(ab, "panel-right") == group(ba, "panel-left"));
}

TEST_CASE("cli exports weight sets and evaluation sets") {
  TempDir tmp("moeadps_cli_exports");
  const auto manifest = tiny_manifest(tmp.path / "store", {"dtlz2"}, 1);
  const auto store = execute(manifest, 1);

  const std::string cli = MOEADPS_CLI_PATH;
  const fs::path weights_csv = tmp.path / "weights.csv";
  REQUIRE(std::system((cli + " weights 40 --objectives 2 --seed 3 --out " +
                       weights_csv.string())
                          .c_str()) == 0);
  const auto weights = csv::read(weights_csv);
  CHECK(weights.header == std::vector<std::string>{"w0", "w1"});
  REQUIRE(weights.rows.size() == 40);
  for (const auto& row : weights.rows) {
    CHECK(csv::to_double(row[0]) + csv::to_double(row[1]) ==
          doctest::Approx(1.0));
  }

  const fs::path set_csv = tmp.path / "set.csv";
  REQUIRE(std::system((cli + " export-set " + store.root.string() +
                       " dtlz2 small 0 --out " + set_csv.string())
                          .c_str()) == 0);
  const auto set = csv::read(set_csv);
  CHECK(set.header ==
        std::vector<std::string>{"iteration", "slot", "f0", "f1"});
  CHECK(set.rows.size() == 30);  // last_k_union:3 at population 10

  // Unknown problem keys surface as the configuration exit code.
  const int rc =
      std::system((cli + " export-set " + store.root.string() +
                   " nope small 0 --out " + set_csv.string() + " 2>/dev/null")
                      .c_str());
  CHECK(WEXITSTATUS(rc) == 3);
}

TEST_CASE("stats battery and interval plots appear with enough problems") {
  TempDir tmp("moeadps_stats_files");
  auto manifest = tiny_manifest(tmp.path / "store", {"dtlz1", "dtlz2", "uf1"}, 3);
  const auto store = execute(manifest, 2);

  const fs::path stats_csv = store.metrics_dir() / "stats" / "stats_1200.csv";
  REQUIRE(fs::exists(stats_csv));
  const auto table = csv::read(stats_csv);
  REQUIRE(table.rows.size() == 3);  // three variant pairs
  const int dir_col = table.column("direction");
  for (const auto& row : table.rows) {
    CHECK((row[dir_col] == "↑" || row[dir_col] == "←" ||
           row[dir_col] == "≈"));
  }

  render_plots(store, "ci");
  CHECK(fs::exists(store.plots_dir() / "ci__stats_1200.svg"));
}
