// Command line front end for the mlcc toolkit: synthetic data generation,
// cross-validated evaluation, the chain-position and label-scaling
// experiments, dataset statistics and report comparison.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mlcc/harness.hpp"
#include "mlcc/io.hpp"
#include "mlcc/rng.hpp"
#include "mlcc/synth.hpp"
#include "mlcc/version.hpp"

namespace {

std::string format_double(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << text;
  if (!out) {
    throw std::runtime_error("write to " + path + " failed");
  }
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

struct DataArgs {
  std::string path;
  std::string format = "csv";
  int label_count = 0;
  std::string labels_at = "back";
};

void add_data_options(CLI::App* cmd, DataArgs& args) {
  cmd->add_option("--data", args.path, "Dataset file")->required();
  cmd->add_option("--format", args.format, "Dataset format")
      ->check(CLI::IsMember({"csv", "arff"}))
      ->capture_default_str();
  cmd->add_option("--label-count", args.label_count, "Number of labels m")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--labels-at", args.labels_at,
                  "Label block position in ARFF attribute lists")
      ->check(CLI::IsMember({"front", "back"}))
      ->capture_default_str();
}

mlcc::Dataset load_data(const DataArgs& args) {
  if (args.format == "arff") {
    return mlcc::load_arff(args.path, args.label_count,
                           args.labels_at == "front" ? mlcc::LabelPosition::kFront
                                                     : mlcc::LabelPosition::kBack);
  }
  return mlcc::load_csv(args.path, args.label_count);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mlcc: multi-label classification with classifier chains"};
  app.set_version_flag("--version", std::string("mlcc ") + mlcc::kVersion);
  app.require_subcommand(1);

  // ---- synth ----------------------------------------------------------
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  int synth_labels = 5;
  double synth_tau = 0.0;
  double synth_noise = 0.1;
  mlcc::Index synth_train = 50;
  mlcc::Index synth_test = 1000;
  std::uint64_t synth_seed = 0;
  std::string synth_out;
  synth->add_option("--labels", synth_labels, "Number of labels m")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--tau", synth_tau, "Label dependence knob in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  synth->add_option("--noise", synth_noise, "Label flip probability in [0,1)")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  synth->add_option("--train", synth_train, "Training rows")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  synth->add_option("--test", synth_test, "Test rows (0 to skip the test file)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  synth->add_option("--seed", synth_seed, "Seed")->capture_default_str();
  synth->add_option("--out", synth_out, "Output path prefix")->required();
  synth->callback([&] {
    const mlcc::SyntheticSpec spec =
        mlcc::make_spec(synth_labels, synth_tau, synth_noise,
                        mlcc::derive_seed(synth_seed, 1));
    const mlcc::Dataset train =
        mlcc::sample(spec, synth_train, mlcc::derive_seed(synth_seed, 2));
    mlcc::save_csv(train, synth_out + "_train.csv");
    std::cout << "wrote " << synth_out << "_train.csv (" << train.rows() << " rows)\n";
    if (synth_test > 0) {
      const mlcc::Dataset test =
          mlcc::sample(spec, synth_test, mlcc::derive_seed(synth_seed, 3));
      mlcc::save_csv(test, synth_out + "_test.csv");
      std::cout << "wrote " << synth_out << "_test.csv (" << test.rows() << " rows)\n";
    }
  });

  // ---- eval -----------------------------------------------------------
  auto* eval = app.add_subcommand("eval", "Cross-validated evaluation of one algorithm");
  DataArgs eval_data;
  add_data_options(eval, eval_data);
  std::string eval_algo = "br";
  std::string eval_order = "random";
  bool eval_subset_correction = false;
  bool eval_standardize = false;
  int eval_folds = 10;
  int eval_repeats = 3;
  std::uint64_t eval_seed = 0;
  double eval_threshold = 0.5;
  int eval_members = 10;
  bool eval_no_bootstrap = false;
  bool eval_stacking_true_labels = false;
  int eval_threads = 0;
  std::string eval_out;
  eval->add_option("--algo", eval_algo, "Algorithm")
      ->check(CLI::IsMember({"br", "cc", "ns", "ecc", "stacking"}))
      ->capture_default_str();
  auto* eval_order_opt =
      eval->add_option("--order", eval_order, "Chain order for cc/ns")
          ->check(CLI::IsMember({"random", "identity"}))
          ->capture_default_str();
  eval->add_flag("--subset-correction", eval_subset_correction,
                 "Map predictions to the closest training label combination");
  eval->add_flag("--standardize", eval_standardize,
                 "Standardize feature columns on each training fold");
  eval->add_option("--folds", eval_folds, "Folds k")->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  eval->add_option("--repeats", eval_repeats, "Repetitions of the k-fold run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_option("--seed", eval_seed, "Master seed")->capture_default_str();
  eval->add_option("--threshold", eval_threshold, "Relevance/voting threshold in (0,1)")
      ->capture_default_str();
  eval->add_option("--members", eval_members, "Ensemble size k (ecc)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  eval->add_flag("--no-bootstrap", eval_no_bootstrap,
                 "Train every ecc member on the full sample");
  eval->add_flag("--stacking-true-labels", eval_stacking_true_labels,
                 "Train stacking level 2 on true labels instead of level-1 predictions");
  eval->add_option("--threads", eval_threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  eval->add_option("--out", eval_out, "Report path (default: stdout)");
  eval->callback([&] {
    if (eval_order_opt->count() > 0 && eval_algo != "cc" && eval_algo != "ns") {
      throw CLI::ValidationError("--order only applies to --algo cc or ns");
    }
    const mlcc::Dataset data = load_data(eval_data);
    mlcc::CvConfig config;
    config.algorithm = mlcc::algorithm_from_string(eval_algo);
    config.folds = eval_folds;
    config.repeats = eval_repeats;
    config.seed = eval_seed;
    config.threshold = eval_threshold;
    config.subset_correction = eval_subset_correction;
    config.order_mode = eval_order == "identity" ? mlcc::OrderMode::kIdentity
                                                 : mlcc::OrderMode::kRandom;
    config.standardize = eval_standardize;
    config.ensemble.members = eval_members;
    config.ensemble.bootstrap = !eval_no_bootstrap;
    config.stacking.augment_with_true_labels = eval_stacking_true_labels;
    config.threads = eval_threads;
    mlcc::CvReport report = mlcc::run_cv(data, config);
    report.dataset_path = eval_data.path;
    write_text(eval_out, mlcc::cv_report_to_json(report));
  });

  // ---- positions ------------------------------------------------------
  auto* positions = app.add_subcommand(
      "positions", "Position-wise relative error increase of chaining vs br");
  DataArgs positions_data;
  add_data_options(positions, positions_data);
  int positions_orders = 100;
  int positions_folds = 10;
  std::uint64_t positions_seed = 0;
  double positions_threshold = 0.5;
  int positions_threads = 0;
  std::string positions_out;
  positions->add_option("--orders", positions_orders, "Random label orders")
      ->check(CLI::Range(1, 500))
      ->capture_default_str();
  positions->add_option("--folds", positions_folds, "Folds k")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  positions->add_option("--seed", positions_seed, "Master seed")->capture_default_str();
  positions->add_option("--threshold", positions_threshold, "Relevance threshold")
      ->capture_default_str();
  positions->add_option("--threads", positions_threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  positions->add_option("--out", positions_out, "Curve CSV path (default: stdout)");
  positions->callback([&] {
    const mlcc::Dataset data = load_data(positions_data);
    mlcc::PositionExperimentConfig config;
    config.orders = positions_orders;
    config.folds = positions_folds;
    config.seed = positions_seed;
    config.threshold = positions_threshold;
    config.threads = positions_threads;
    const mlcc::PositionCurve curve = mlcc::chain_position_experiment(data, config);
    write_text(positions_out, mlcc::position_curve_to_csv(curve));
  });

  // ---- scaling --------------------------------------------------------
  auto* scaling = app.add_subcommand(
      "scaling", "Label-count sweep on synthetic data, losses divided by the Bayes loss");
  std::vector<int> scaling_labels = {5, 10, 15, 20, 25};
  double scaling_tau = 0.0;
  double scaling_noise = 0.1;
  int scaling_reps = 10;
  mlcc::Index scaling_train_n = 50;
  mlcc::Index scaling_test_n = 1000;
  std::uint64_t scaling_seed = 0;
  double scaling_threshold = 0.5;
  int scaling_threads = 0;
  std::string scaling_out;
  scaling->add_option("--labels", scaling_labels, "Label counts to sweep")
      ->delimiter(',')
      ->capture_default_str();
  scaling->add_option("--tau", scaling_tau, "Label dependence knob in [0,1]")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  scaling->add_option("--noise", scaling_noise, "Label flip probability in [0,0.5)")
      ->check(CLI::Range(0.0, 0.499999))
      ->capture_default_str();
  scaling->add_option("--reps", scaling_reps, "Repetitions per label count")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling->add_option("--train-n", scaling_train_n, "Training rows per repetition")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling->add_option("--test-n", scaling_test_n, "Test rows per repetition")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scaling->add_option("--seed", scaling_seed, "Master seed")->capture_default_str();
  scaling->add_option("--threshold", scaling_threshold, "Relevance threshold")
      ->capture_default_str();
  scaling->add_option("--threads", scaling_threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  scaling->add_option("--out", scaling_out, "Table CSV path (default: stdout)");
  scaling->callback([&] {
    mlcc::ScalingConfig config;
    config.label_counts = scaling_labels;
    config.tau = scaling_tau;
    config.noise = scaling_noise;
    config.repetitions = scaling_reps;
    config.train_n = scaling_train_n;
    config.test_n = scaling_test_n;
    config.threshold = scaling_threshold;
    config.seed = scaling_seed;
    config.threads = scaling_threads;
    const mlcc::ScalingResult result = mlcc::label_scaling_experiment(config);
    write_text(scaling_out, mlcc::scaling_result_to_csv(result));
  });

  // ---- stats ----------------------------------------------------------
  auto* stats_cmd = app.add_subcommand("stats", "Dataset statistics");
  DataArgs stats_data;
  add_data_options(stats_cmd, stats_data);
  stats_cmd->callback([&] {
    const mlcc::Dataset data = load_data(stats_data);
    const mlcc::DatasetStats s = mlcc::stats(data);
    std::cout << "n=" << s.n << '\n'
              << "d=" << s.d << '\n'
              << "m=" << s.m << '\n'
              << "cardinality=" << format_double(s.cardinality) << '\n'
              << "distinct_subsets=" << s.distinct_subsets << '\n'
              << "observation_rate=" << format_double(s.observation_rate) << '\n';
  });

  // ---- ttest ----------------------------------------------------------
  auto* ttest = app.add_subcommand(
      "ttest", "Paired t-tests per metric between two eval reports");
  std::string ttest_a, ttest_b, ttest_out;
  ttest->add_option("--a", ttest_a, "First report")->required();
  ttest->add_option("--b", ttest_b, "Second report")->required();
  ttest->add_option("--out", ttest_out, "Output path (default: stdout)");
  ttest->callback([&] {
    write_text(ttest_out,
               mlcc::ttest_reports_json(read_text(ttest_a), read_text(ttest_b)));
  });

  try {
    CLI11_PARSE(app, argc, argv);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return 1;
  }
  return 0;
}
