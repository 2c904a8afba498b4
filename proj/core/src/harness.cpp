#include "mlcc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mlcc/folds.hpp"
#include "mlcc/metrics.hpp"
#include "mlcc/rng.hpp"
#include "mlcc/stats_test.hpp"
#include "mlcc/subset_pool.hpp"
#include "mlcc/version.hpp"

namespace mlcc {

namespace {

using Json = nlohmann::ordered_json;

// Stream tags keep the derived seed streams of unrelated components apart.
constexpr std::uint64_t kFoldStream = 0x464f4c44;    // folds
constexpr std::uint64_t kOrderStream = 0x4f524452;   // chain orders
constexpr std::uint64_t kEnsembleStream = 0x454e5345;
constexpr std::uint64_t kSpecStream = 0x53504543;
constexpr std::uint64_t kTrainStream = 0x5452414e;
constexpr std::uint64_t kTestStream = 0x54455354;

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(0..units-1) on up to `threads` workers. Each unit writes only its
// own output slot, so the result is identical to sequential execution.
template <typename Fn>
void parallel_units(int units, int threads, Fn&& fn) {
  threads = std::min(resolve_threads(threads), units);
  if (threads <= 1) {
    for (int i = 0; i < units; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      int unit;
      while ((unit = next.fetch_add(1)) < units) {
        try {
          fn(unit);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& worker : workers) worker.join();
  if (failure) std::rethrow_exception(failure);
}

void standardize_features(Matrix& train, Matrix& test) {
  const Index d = train.cols();
  const double n = static_cast<double>(train.rows());
  for (Index j = 0; j < d; ++j) {
    const double mu = train.col(j).sum() / n;
    double ss = 0.0;
    for (Index i = 0; i < train.rows(); ++i) {
      const double delta = train(i, j) - mu;
      ss += delta * delta;
    }
    double sd = n > 1.0 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    if (sd < 1e-12) sd = 1.0;  // constant column: shift only
    train.col(j) = (train.col(j).array() - mu) / sd;
    test.col(j) = (test.col(j).array() - mu) / sd;
  }
}

struct FoldOutcome {
  double hamming = 0.0;
  double subset = 0.0;
  double f1 = 0.0;
  double jaccard = 0.0;
  std::int64_t audited = 0;
  std::int64_t outside = 0;
};

void finalize(MetricSeries& series) {
  series.mean = mean(series.per_fold);
  series.sd = sample_sd(series.per_fold);
}

LabelMatrix predict_for(const CvConfig& config, const Dataset& train,
                        const Matrix& test_features, std::uint64_t unit_seed) {
  switch (config.algorithm) {
    case Algorithm::kBinaryRelevance: {
      const BRModel model = train_br(train, config.optimizer);
      return predict_br(model, test_features, config.threshold);
    }
    case Algorithm::kClassifierChain:
    case Algorithm::kNestedStacking: {
      const ChainOrder order =
          config.order_mode == OrderMode::kIdentity
              ? identity_order(train.label_dim())
              : random_order(train.label_dim(), derive_seed(unit_seed, kOrderStream));
      const ChainModel model = config.algorithm == Algorithm::kClassifierChain
                                   ? train_cc(train, order, config.optimizer)
                                   : train_ns(train, order, config.optimizer);
      return predict_chain(model, test_features, config.threshold);
    }
    case Algorithm::kStacking: {
      const StackingModel model =
          train_stacking(train, config.optimizer, config.stacking);
      return predict_stacking(model, test_features, config.threshold);
    }
    case Algorithm::kEnsembleOfChains: {
      EnsembleOptions options = config.ensemble;
      options.threshold = config.threshold;
      const EnsembleModel model = train_ecc(
          train, options, config.optimizer, derive_seed(unit_seed, kEnsembleStream));
      return predict_ecc(model, test_features);
    }
  }
  throw std::invalid_argument("run_cv: unknown algorithm");
}

}  // namespace

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kBinaryRelevance: return "br";
    case Algorithm::kClassifierChain: return "cc";
    case Algorithm::kNestedStacking: return "ns";
    case Algorithm::kStacking: return "stacking";
    case Algorithm::kEnsembleOfChains: return "ecc";
  }
  return "unknown";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "br") return Algorithm::kBinaryRelevance;
  if (name == "cc") return Algorithm::kClassifierChain;
  if (name == "ns") return Algorithm::kNestedStacking;
  if (name == "stacking") return Algorithm::kStacking;
  if (name == "ecc") return Algorithm::kEnsembleOfChains;
  throw std::invalid_argument("unknown algorithm '" + name +
                              "' (expected br, cc, ns, stacking or ecc)");
}

CvReport run_cv(const Dataset& data, const CvConfig& config) {
  if (config.folds < 2 || config.repeats < 1) {
    throw std::invalid_argument("run_cv: folds must be >= 2 and repeats >= 1");
  }
  if (!(config.threshold > 0.0 && config.threshold < 1.0)) {
    throw std::invalid_argument("run_cv: threshold must lie in (0,1)");
  }

  const int units = config.repeats * config.folds;
  std::vector<FoldOutcome> outcomes(static_cast<std::size_t>(units));

  // Fold assignments per repeat, derived from the master seed.
  std::vector<std::vector<FoldSplit>> splits;
  splits.reserve(static_cast<std::size_t>(config.repeats));
  for (int r = 0; r < config.repeats; ++r) {
    splits.push_back(kfold_indices(
        data.rows(), config.folds,
        derive_seed(config.seed, kFoldStream, static_cast<std::uint64_t>(r))));
  }

  parallel_units(units, config.threads, [&](int unit) {
    const int repeat = unit / config.folds;
    const int fold = unit % config.folds;
    const FoldSplit& split = splits[static_cast<std::size_t>(repeat)][static_cast<std::size_t>(fold)];

    // Leakage guard: the split must partition the rows.
    {
      std::vector<bool> seen(static_cast<std::size_t>(data.rows()), false);
      for (const std::vector<Index>* part : {&split.train, &split.test}) {
        for (Index row : *part) {
          if (row < 0 || row >= data.rows() || seen[static_cast<std::size_t>(row)]) {
            throw std::logic_error("run_cv: fold split does not partition the rows");
          }
          seen[static_cast<std::size_t>(row)] = true;
        }
      }
      if (split.train.size() + split.test.size() !=
          static_cast<std::size_t>(data.rows())) {
        throw std::logic_error("run_cv: fold split does not cover the rows");
      }
    }

    Dataset train = subset_rows(data, split.train);
    Dataset test = subset_rows(data, split.test);
    if (config.standardize) {
      standardize_features(train.features, test.features);
    }

    const std::uint64_t unit_seed =
        derive_seed(config.seed, static_cast<std::uint64_t>(repeat),
                    static_cast<std::uint64_t>(fold));
    LabelMatrix predictions = predict_for(config, train, test.features, unit_seed);

    FoldOutcome outcome;
    LabelSubsetPool pool;
    if (config.subset_correction) {
      pool = build_subset_pool(train.labels);
    }
    std::vector<InstanceScore> scores;
    scores.reserve(static_cast<std::size_t>(test.rows()));
    LabelVector corrected;
    for (Index i = 0; i < test.rows(); ++i) {
      std::span<const int> prediction = label_row(predictions, i);
      if (config.subset_correction) {
        corrected = subset_correct(prediction, pool);
        ++outcome.audited;
        if (!pool_contains(pool, corrected)) ++outcome.outside;
        prediction = corrected;
      }
      scores.push_back(score_instance(label_row(test, i), prediction));
    }
    const MetricsSummary summary = aggregate(scores);
    outcome.hamming = summary.hamming.mean;
    outcome.subset = summary.subset_zero_one.mean;
    outcome.f1 = summary.f1.mean;
    outcome.jaccard = summary.jaccard.mean;
    outcomes[static_cast<std::size_t>(unit)] = outcome;
  });

  CvReport report;
  report.toolkit_version = kVersion;
  report.n = data.rows();
  report.d = data.feature_dim();
  report.m = data.label_dim();
  report.algorithm = config.algorithm;
  report.folds = config.folds;
  report.repeats = config.repeats;
  report.seed = config.seed;
  report.threshold = config.threshold;
  report.subset_correction = config.subset_correction;
  report.order_mode = config.order_mode;
  report.standardize = config.standardize;
  report.optimizer = config.optimizer;
  report.ensemble = config.ensemble;
  for (const FoldOutcome& outcome : outcomes) {
    report.hamming.per_fold.push_back(outcome.hamming);
    report.subset_zero_one.per_fold.push_back(outcome.subset);
    report.f1.per_fold.push_back(outcome.f1);
    report.jaccard.per_fold.push_back(outcome.jaccard);
    report.audited_predictions += outcome.audited;
    report.outside_pool += outcome.outside;
  }
  finalize(report.hamming);
  finalize(report.subset_zero_one);
  finalize(report.f1);
  finalize(report.jaccard);
  return report;
}

namespace {

Json metric_series_json(const MetricSeries& series) {
  Json j;
  j["per_fold"] = series.per_fold;
  j["mean"] = series.mean;
  j["sd"] = series.sd;
  return j;
}

MetricSeries metric_series_from_json(const Json& j) {
  MetricSeries series;
  series.per_fold = j.at("per_fold").get<std::vector<double>>();
  series.mean = j.at("mean").get<double>();
  series.sd = j.at("sd").get<double>();
  return series;
}

}  // namespace

std::string cv_report_to_json(const CvReport& report) {
  Json j;
  j["format"] = "mlcc-report";
  j["version"] = 1;
  j["toolkit_version"] = report.toolkit_version;
  j["dataset"] = {{"path", report.dataset_path},
                  {"n", report.n},
                  {"d", report.d},
                  {"m", report.m}};
  j["algorithm"] = to_string(report.algorithm);
  Json config;
  config["folds"] = report.folds;
  config["repeats"] = report.repeats;
  config["seed"] = report.seed;
  config["threshold"] = report.threshold;
  config["subset_correction"] = report.subset_correction;
  config["order"] = report.order_mode == OrderMode::kIdentity ? "identity" : "random";
  config["standardize"] = report.standardize;
  config["optimizer"] = {{"max_iterations", report.optimizer.max_iterations},
                         {"gradient_tolerance", report.optimizer.gradient_tolerance},
                         {"regularization", report.optimizer.regularization},
                         {"step_rule", step_rule_description(report.optimizer)}};
  if (report.algorithm == Algorithm::kEnsembleOfChains) {
    config["ensemble"] = {{"members", report.ensemble.members},
                          {"bootstrap", report.ensemble.bootstrap}};
  }
  j["config"] = std::move(config);
  j["metrics"] = {{"hamming", metric_series_json(report.hamming)},
                  {"subset_zero_one", metric_series_json(report.subset_zero_one)},
                  {"f1", metric_series_json(report.f1)},
                  {"jaccard", metric_series_json(report.jaccard)}};
  j["subset_correction_audit"] = {{"predictions", report.audited_predictions},
                                  {"outside_pool", report.outside_pool}};
  return j.dump(2) + "\n";
}

std::string ttest_reports_json(const std::string& report_a,
                               const std::string& report_b) {
  Json a, b;
  try {
    a = Json::parse(report_a);
    b = Json::parse(report_b);
  } catch (const Json::parse_error& error) {
    throw std::runtime_error(std::string("report is not valid JSON: ") + error.what());
  }
  for (const Json* report : {&a, &b}) {
    if (report->value("format", "") != "mlcc-report") {
      throw std::runtime_error("input is not an mlcc evaluation report");
    }
  }

  Json out;
  out["format"] = "mlcc-ttest";
  out["version"] = 1;
  out["toolkit_version"] = kVersion;
  out["a"] = {{"algorithm", a.at("algorithm")}, {"dataset", a.at("dataset")}};
  out["b"] = {{"algorithm", b.at("algorithm")}, {"dataset", b.at("dataset")}};

  Json metrics;
  for (const char* name : {"hamming", "subset_zero_one", "f1", "jaccard"}) {
    const MetricSeries series_a = metric_series_from_json(a.at("metrics").at(name));
    const MetricSeries series_b = metric_series_from_json(b.at("metrics").at(name));
    if (series_a.per_fold.size() != series_b.per_fold.size()) {
      throw std::runtime_error(std::string("reports carry a different number of "
                                           "per-fold values for metric ") + name);
    }
    const PairedTTest test = paired_ttest(series_a.per_fold, series_b.per_fold);
    Json entry;
    if (std::isfinite(test.t)) {
      entry["t"] = test.t;
    } else {
      entry["t"] = test.t > 0 ? "inf" : "-inf";
    }
    entry["dof"] = test.dof;
    entry["p"] = test.p;
    entry["mean_difference"] = test.mean_difference;
    entry["degenerate"] = test.degenerate;
    entry["significant_at_0.05"] = test.p < 0.05;
    entry["significant_at_0.01"] = test.p < 0.01;
    metrics[name] = std::move(entry);
  }
  out["metrics"] = std::move(metrics);
  return out.dump(2) + "\n";
}

PositionCurve chain_position_experiment(const Dataset& data,
                                        const PositionExperimentConfig& config) {
  if (config.orders < 1) {
    throw std::invalid_argument("chain_position_experiment: orders must be >= 1");
  }
  const Index n = data.rows();
  const Index m = data.label_dim();
  const std::vector<FoldSplit> splits =
      kfold_indices(n, config.folds, derive_seed(config.seed, kFoldStream));

  // One BR baseline per evaluation split, shared across all orders.
  std::vector<Dataset> train_sets, test_sets;
  std::vector<std::int64_t> br_errors(static_cast<std::size_t>(m), 0);
  train_sets.reserve(splits.size());
  test_sets.reserve(splits.size());
  for (const FoldSplit& split : splits) {
    train_sets.push_back(subset_rows(data, split.train));
    test_sets.push_back(subset_rows(data, split.test));
    const BRModel model = train_br(train_sets.back(), config.optimizer);
    const LabelMatrix predictions =
        predict_br(model, test_sets.back().features, config.threshold);
    for (Index i = 0; i < predictions.rows(); ++i) {
      for (Index j = 0; j < m; ++j) {
        br_errors[static_cast<std::size_t>(j)] +=
            (predictions(i, j) != test_sets.back().labels(i, j));
      }
    }
  }
  std::vector<double> br_error_rate(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    br_error_rate[static_cast<std::size_t>(j)] =
        static_cast<double>(br_errors[static_cast<std::size_t>(j)]) /
        static_cast<double>(n);
  }

  // Per order: pooled per-position chain error over the same folds.
  std::vector<std::vector<double>> relative(
      static_cast<std::size_t>(config.orders),
      std::vector<double>(static_cast<std::size_t>(m),
                          std::numeric_limits<double>::quiet_NaN()));
  parallel_units(config.orders, config.threads, [&](int o) {
    const ChainOrder order = random_order(
        m, derive_seed(config.seed, kOrderStream, static_cast<std::uint64_t>(o)));
    std::vector<std::int64_t> errors(static_cast<std::size_t>(m), 0);
    for (std::size_t f = 0; f < splits.size(); ++f) {
      const ChainModel model = train_cc(train_sets[f], order, config.optimizer);
      const LabelMatrix predictions =
          predict_chain(model, test_sets[f].features, config.threshold);
      for (Index i = 0; i < predictions.rows(); ++i) {
        for (Index p = 0; p < m; ++p) {
          const Index label = order.at[static_cast<std::size_t>(p)];
          errors[static_cast<std::size_t>(p)] +=
              (predictions(i, label) != test_sets[f].labels(i, label));
        }
      }
    }
    for (Index p = 0; p < m; ++p) {
      const Index label = order.at[static_cast<std::size_t>(p)];
      const double baseline = br_error_rate[static_cast<std::size_t>(label)];
      if (baseline <= 0.0) continue;  // relative increase undefined; excluded
      const double chain_rate =
          static_cast<double>(errors[static_cast<std::size_t>(p)]) /
          static_cast<double>(n);
      relative[static_cast<std::size_t>(o)][static_cast<std::size_t>(p)] =
          (chain_rate - baseline) / baseline;
    }
  });

  PositionCurve curve;
  curve.points.resize(static_cast<std::size_t>(m));
  for (Index p = 0; p < m; ++p) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(config.orders));
    for (int o = 0; o < config.orders; ++o) {
      const double v = relative[static_cast<std::size_t>(o)][static_cast<std::size_t>(p)];
      if (!std::isnan(v)) values.push_back(v);
    }
    PositionCurvePoint& point = curve.points[static_cast<std::size_t>(p)];
    point.orders = static_cast<int>(values.size());
    if (values.empty()) {
      point.mean = std::numeric_limits<double>::quiet_NaN();
      point.std_error = std::numeric_limits<double>::quiet_NaN();
    } else {
      point.mean = mean(values);
      point.std_error =
          sample_sd(values) / std::sqrt(static_cast<double>(values.size()));
    }
  }
  return curve;
}

namespace {

void append_double(std::string& out, double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  out.append(buffer, result.ptr);
}

}  // namespace

std::string position_curve_to_csv(const PositionCurve& curve) {
  std::string out = "position,mean_relative_increase,std_error,orders\n";
  for (std::size_t p = 0; p < curve.points.size(); ++p) {
    out += std::to_string(p + 1);
    out += ',';
    append_double(out, curve.points[p].mean);
    out += ',';
    append_double(out, curve.points[p].std_error);
    out += ',';
    out += std::to_string(curve.points[p].orders);
    out += '\n';
  }
  return out;
}

ScalingResult label_scaling_experiment(const ScalingConfig& config) {
  if (config.label_counts.empty() || config.repetitions < 1) {
    throw std::invalid_argument(
        "label_scaling_experiment: need label counts and repetitions >= 1");
  }
  if (!(config.noise > 0.0 && config.noise < 0.5)) {
    throw std::invalid_argument(
        "label_scaling_experiment: noise must lie in (0, 0.5); the losses are "
        "divided by the Bayes loss, which must be positive and attained by "
        "the clean rule");
  }
  for (int m : config.label_counts) {
    if (m < 1) {
      throw std::invalid_argument("label_scaling_experiment: label counts must be >= 1");
    }
  }

  ScalingResult result;
  result.config = config;
  result.runs.assign(config.label_counts.size(),
                     std::vector<ScalingRun>(
                         static_cast<std::size_t>(config.repetitions)));

  const int units =
      static_cast<int>(config.label_counts.size()) * config.repetitions;
  parallel_units(units, config.threads, [&](int unit) {
    const std::size_t mi = static_cast<std::size_t>(unit / config.repetitions);
    const int rep = unit % config.repetitions;
    const int m = config.label_counts[mi];

    const SyntheticSpec spec =
        make_spec(m, config.tau, config.noise,
                  derive_seed(config.seed, kSpecStream, mi, static_cast<std::uint64_t>(rep)));
    const Dataset train =
        sample(spec, config.train_n,
               derive_seed(config.seed, kTrainStream, mi, static_cast<std::uint64_t>(rep)));
    const Dataset test =
        sample(spec, config.test_n,
               derive_seed(config.seed, kTestStream, mi, static_cast<std::uint64_t>(rep)));

    // CC and NS share one random order per repetition for a paired comparison.
    const ChainOrder order = random_order(
        m, derive_seed(config.seed, kOrderStream, mi, static_cast<std::uint64_t>(rep)));

    const double bayes_hamming = bayes_loss(spec, SynthMetric::kHamming);
    const double bayes_subset = bayes_loss(spec, SynthMetric::kSubsetZeroOne);

    const auto evaluate = [&](const LabelMatrix& predictions, ScalingAlgo algo) {
      double hamming_sum = 0.0;
      double subset_sum = 0.0;
      for (Index i = 0; i < test.rows(); ++i) {
        const InstanceScore s =
            score_instance(label_row(test, i), label_row(predictions, i));
        hamming_sum += s.hamming;
        subset_sum += static_cast<double>(s.subset_zero_one);
      }
      const double count = static_cast<double>(test.rows());
      ScalingRun& run = result.runs[mi][static_cast<std::size_t>(rep)];
      run.normalized_hamming[static_cast<int>(algo)] =
          (hamming_sum / count) / bayes_hamming;
      run.normalized_subset[static_cast<int>(algo)] =
          (subset_sum / count) / bayes_subset;
    };

    const BRModel br = train_br(train, config.optimizer);
    evaluate(predict_br(br, test.features, config.threshold), ScalingAlgo::kBR);
    const ChainModel cc = train_cc(train, order, config.optimizer);
    evaluate(predict_chain(cc, test.features, config.threshold), ScalingAlgo::kCC);
    const ChainModel ns = train_ns(train, order, config.optimizer);
    evaluate(predict_chain(ns, test.features, config.threshold), ScalingAlgo::kNS);
  });

  return result;
}

std::string scaling_result_to_csv(const ScalingResult& result) {
  static constexpr const char* kAlgoNames[kScalingAlgoCount] = {"br", "cc", "ns"};
  std::string out = "m,algorithm,metric,normalized_mean,normalized_sd,repetitions\n";
  for (std::size_t mi = 0; mi < result.config.label_counts.size(); ++mi) {
    for (int algo = 0; algo < kScalingAlgoCount; ++algo) {
      for (const char* metric : {"hamming", "subset_zero_one"}) {
        std::vector<double> values;
        values.reserve(result.runs[mi].size());
        for (const ScalingRun& run : result.runs[mi]) {
          values.push_back(metric == std::string("hamming")
                               ? run.normalized_hamming[algo]
                               : run.normalized_subset[algo]);
        }
        out += std::to_string(result.config.label_counts[mi]);
        out += ',';
        out += kAlgoNames[algo];
        out += ',';
        out += metric;
        out += ',';
        append_double(out, mean(values));
        out += ',';
        append_double(out, sample_sd(values));
        out += ',';
        out += std::to_string(values.size());
        out += '\n';
      }
    }
  }
  return out;
}

}  // namespace mlcc
