// Acceptance suite: runs every toolkit-level criterion end to end and prints
// one PASS/FAIL/SKIP line per criterion. Exit status is nonzero when any
// criterion fails. Criteria 10 and 11 need a user-supplied emotions ARFF
// (593 rows, 72 attributes, 6 labels); they are skipped when it is absent.
//
// Usage: acceptance [--emotions path/to/emotions.arff]
//        (also honors the MLCC_EMOTIONS_ARFF environment variable)

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mlcc/chains.hpp"
#include "mlcc/harness.hpp"
#include "mlcc/io.hpp"
#include "mlcc/linear.hpp"
#include "mlcc/metrics.hpp"
#include "mlcc/rng.hpp"
#include "mlcc/stats_test.hpp"
#include "mlcc/subset_pool.hpp"
#include "mlcc/synth.hpp"

using namespace mlcc;

namespace {

namespace fs = std::filesystem;

enum class Outcome { kPass, kFail, kSkip };

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool condition, const std::string& message) {
    if (!condition) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += message;
    }
  }
};

std::string format_seconds(double seconds) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.1f s", seconds);
  return buffer;
}

// ---- criterion 1: metric exactness ------------------------------------

Outcome criterion_metrics(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  check.require(hamming_loss(LabelVector{1, 0, 1}, LabelVector{1, 0, 1}) == 0.0,
                "hamming of equal vectors");
  check.require(hamming_loss(LabelVector{1, 0, 1}, LabelVector{1, 1, 1}) ==
                    1.0 / 3.0,
                "hamming single mismatch");
  check.require(hamming_loss(LabelVector{1, 0, 1}, LabelVector{0, 1, 0}) == 1.0,
                "hamming of complements");
  check.require(subset_zero_one(LabelVector{0, 1}, LabelVector{0, 1}) == 0,
                "subset01 equal");
  check.require(subset_zero_one(LabelVector{0, 1}, LabelVector{1, 1}) == 1,
                "subset01 single difference");
  check.require(f1_score(LabelVector{1, 1, 0}, LabelVector{1, 0, 1}) == 0.5,
                "f1 worked example");
  check.require(f1_score(LabelVector{1, 0}, LabelVector{0, 1}) == 0.0, "f1 disjoint");
  check.require(f1_score(LabelVector{0, 0}, LabelVector{0, 0}) == 1.0,
                "f1 both-empty convention");
  check.require(jaccard_score(LabelVector{1, 1, 0}, LabelVector{1, 0, 1}) == 1.0 / 3.0,
                "jaccard worked example");
  check.require(jaccard_score(LabelVector{0, 1}, LabelVector{0, 1}) == 1.0,
                "jaccard equal");
  check.require(jaccard_score(LabelVector{0, 0}, LabelVector{0, 0}) == 1.0,
                "jaccard both-empty convention");

  Rng rng = make_rng(1001);
  for (int trial = 0; trial < 100000 && check.ok; ++trial) {
    const std::size_t m = 1 + uniform_below(rng, 32);
    LabelVector y(m), yhat(m);
    for (std::size_t i = 0; i < m; ++i) {
      y[i] = static_cast<int>(uniform_below(rng, 2));
      yhat[i] = static_cast<int>(uniform_below(rng, 2));
    }
    const InstanceScore s = score_instance(y, yhat);
    check.require(s.hamming >= 0.0 && s.hamming <= 1.0 && s.f1 >= 0.0 &&
                      s.f1 <= 1.0 && s.jaccard >= 0.0 && s.jaccard <= 1.0,
                  "metric range bounds");
    check.require((s.hamming == 0.0) == (s.subset_zero_one == 0),
                  "hamming/subset01 consistency");
    check.require(std::fabs(s.f1 - 2.0 * s.jaccard / (1.0 + s.jaccard)) <= 1e-12,
                  "F1 = 2J/(1+J)");
  }

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  check.require(elapsed < 10.0, "runtime bound 10 s");
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criterion 2: subset-correction oracle equivalence ----------------

Outcome criterion_subset_oracle(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  Rng rng = make_rng(2002);
  int agreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + uniform_below(rng, 12);
    const Index n = 1 + static_cast<Index>(uniform_below(rng, 80));
    LabelMatrix labels(n, static_cast<Index>(m));
    for (Index i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        labels(i, static_cast<Index>(j)) = static_cast<int>(uniform_below(rng, 2));
      }
    }
    const LabelSubsetPool pool = build_subset_pool(labels);
    LabelVector prediction(m);
    for (int& v : prediction) v = static_cast<int>(uniform_below(rng, 2));

    // exhaustive reference with the full tie cascade
    std::tuple<int, std::int64_t, std::size_t> best{INT32_MAX, 0, 0};
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < pool.subsets.size(); ++i) {
      int distance = 0;
      for (std::size_t j = 0; j < m; ++j) {
        distance += (prediction[j] != pool.subsets[i][j]);
      }
      const std::tuple<int, std::int64_t, std::size_t> key{distance, -pool.counts[i], i};
      if (key < best) {
        best = key;
        best_index = i;
      }
    }
    agreements += (subset_correct(prediction, pool) == pool.subsets[best_index]);
  }
  check.require(agreements == 1000, "oracle agreement " + std::to_string(agreements) +
                                        "/1000");

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  check.require(elapsed < 10.0, "runtime bound 10 s");
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criterion 3: gradient check ---------------------------------------

Outcome criterion_gradient(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  Rng rng = make_rng(3003);
  const double lambdas[] = {0.0, 1e-4, 0.1, 1.0};
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 1 + static_cast<Index>(uniform_below(rng, 40));
    const Index d = 1 + static_cast<Index>(uniform_below(rng, 10));
    Matrix X(n, d);
    Vector y(n);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < d; ++j) X(i, j) = 4.0 * uniform_double(rng) - 2.0;
      y[i] = static_cast<double>(uniform_below(rng, 2));
    }
    LinearModel model;
    model.weights = Vector(d);
    for (Index j = 0; j < d; ++j) model.weights[j] = 2.0 * uniform_double(rng) - 1.0;
    model.bias = 2.0 * uniform_double(rng) - 1.0;
    model.regularization = lambdas[trial % 4];
    const BinaryProblem problem{X, y};

    const auto [loss, analytic] = loss_and_gradient(model, problem);
    Vector numeric(d + 1);
    for (Index k = 0; k <= d; ++k) {
      LinearModel plus = model;
      LinearModel minus = model;
      double h = 1e-6;
      if (k < d) {
        h *= std::max(1.0, std::fabs(model.weights[k]));
        plus.weights[k] += h;
        minus.weights[k] -= h;
      } else {
        h *= std::max(1.0, std::fabs(model.bias));
        plus.bias += h;
        minus.bias -= h;
      }
      numeric[k] = (loss_and_gradient(plus, problem).first -
                    loss_and_gradient(minus, problem).first) /
                   (2.0 * h);
    }
    const double rel = (analytic - numeric).norm() / std::max(analytic.norm(), 1e-12);
    worst = std::max(worst, rel);
  }
  check.require(worst <= 1e-5, "worst relative error " + std::to_string(worst));

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  check.require(elapsed < 30.0, "runtime bound 30 s");
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criterion 4: structural equivalences ------------------------------

bool bitwise_equal(const LinearModel& a, const LinearModel& b) {
  return a.weights.size() == b.weights.size() &&
         std::memcmp(a.weights.data(), b.weights.data(),
                     sizeof(double) * static_cast<std::size_t>(a.weights.size())) == 0 &&
         std::memcmp(&a.bias, &b.bias, sizeof(double)) == 0;
}

Outcome criterion_structural(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const OptimizerConfig config;

  {
    const SyntheticSpec spec = make_spec(1, 1.0, 0.15, 4004);
    const Dataset data = sample(spec, 140, 4005);
    const BRModel br = train_br(data, config);
    const ChainModel cc = train_cc(data, identity_order(1), config);
    const ChainModel ns = train_ns(data, identity_order(1), config);
    check.require(bitwise_equal(br.classifiers[0], cc.classifiers[0]),
                  "m=1: br and cc models bit-identical");
    check.require(bitwise_equal(br.classifiers[0], ns.classifiers[0]),
                  "m=1: br and ns models bit-identical");
    const Dataset probe = sample(spec, 60, 4006);
    const LabelMatrix pb = predict_br(br, probe.features, 0.5);
    check.require(pb == predict_chain(cc, probe.features, 0.5),
                  "m=1: br and cc predictions identical");
    check.require(pb == predict_chain(ns, probe.features, 0.5),
                  "m=1: br and ns predictions identical");
  }

  {
    const SyntheticSpec spec = make_spec(4, 0.5, 0.1, 4007);
    const Dataset data = sample(spec, 150, 4008);
    const ChainOrder order = random_order(4, 4009);
    EnsembleOptions options;
    options.members = 1;
    options.bootstrap = false;
    options.fixed_order = order;
    const EnsembleModel ensemble = train_ecc(data, options, config, 4010);
    const ChainModel cc = train_cc(data, order, config);
    bool members_equal = true;
    for (std::size_t p = 0; p < cc.classifiers.size(); ++p) {
      members_equal = members_equal &&
                      bitwise_equal(ensemble.members[0].classifiers[p], cc.classifiers[p]);
    }
    check.require(members_equal, "ecc k=1 member equals the cc model");
    const Dataset probe = sample(spec, 70, 4011);
    check.require(predict_ecc(ensemble, probe.features) ==
                      predict_chain(cc, probe.features, 0.5),
                  "ecc k=1 predictions equal cc");
  }

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criterion 5: bayes loss correctness --------------------------------

Outcome criterion_bayes(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const SyntheticSpec spec = make_spec(5, 0.4, 0.1, 5005);
  const double subset = bayes_loss(spec, SynthMetric::kSubsetZeroOne);
  const double hamming = bayes_loss(spec, SynthMetric::kHamming);
  check.require(subset == 1.0 - std::pow(0.9, 5), "subset01 closed form");
  check.require(std::fabs(subset - 0.40951) < 1e-9, "subset01 equals 0.40951");
  check.require(hamming == 0.1, "hamming closed form equals noise");

  const Dataset data = sample(spec, 100000, 5006);
  double hamming_sum = 0.0, subset_sum = 0.0;
  for (Index i = 0; i < data.rows(); ++i) {
    const LabelVector prediction =
        clean_labels(spec, data.features(i, 0), data.features(i, 1));
    hamming_sum += hamming_loss(label_row(data, i), prediction);
    subset_sum += subset_zero_one(label_row(data, i), prediction);
  }
  const double n = static_cast<double>(data.rows());
  check.require(std::fabs(hamming_sum / n - hamming) < 0.005,
                "Monte Carlo hamming within 0.005");
  check.require(std::fabs(subset_sum / n - subset) < 0.005,
                "Monte Carlo subset01 within 0.005");

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criterion 6: label-scaling trend (synthetic, high dependence) ------

Outcome criterion_scaling_trend(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  ScalingConfig config;  // paper defaults: m sweep, tau 0, 50/1000, pi 0.1, 10 reps
  config.seed = 1;
  config.threads = 0;
  const ScalingResult result = label_scaling_experiment(config);

  const auto m_index = [&](int m) {
    for (std::size_t i = 0; i < config.label_counts.size(); ++i) {
      if (config.label_counts[i] == m) return i;
    }
    throw std::logic_error("label count missing from sweep");
  };

  // ns <= cc on normalized subset 0/1 at m=25 in at least 7 of 10 repetitions
  int ns_wins = 0;
  for (const ScalingRun& run : result.runs[m_index(25)]) {
    ns_wins += run.normalized_subset[static_cast<int>(ScalingAlgo::kNS)] <=
               run.normalized_subset[static_cast<int>(ScalingAlgo::kCC)];
  }
  check.require(ns_wins >= 7, "ns beats cc at m=25 in only " +
                                  std::to_string(ns_wins) + "/10 repetitions");

  // cc mean <= br mean on normalized subset 0/1 at m=5
  double cc_mean = 0.0, br_mean = 0.0;
  for (const ScalingRun& run : result.runs[m_index(5)]) {
    cc_mean += run.normalized_subset[static_cast<int>(ScalingAlgo::kCC)];
    br_mean += run.normalized_subset[static_cast<int>(ScalingAlgo::kBR)];
  }
  check.require(cc_mean <= br_mean, "cc mean normalized subset01 at m=5 (" +
                                        std::to_string(cc_mean / 10.0) +
                                        ") exceeds br (" +
                                        std::to_string(br_mean / 10.0) + ")");

  // no method beats the Bayes loss beyond sampling noise (repetition means)
  for (std::size_t mi = 0; mi < result.runs.size(); ++mi) {
    for (int algo = 0; algo < kScalingAlgoCount; ++algo) {
      double hamming_mean = 0.0, subset_mean = 0.0;
      for (const ScalingRun& run : result.runs[mi]) {
        hamming_mean += run.normalized_hamming[algo];
        subset_mean += run.normalized_subset[algo];
      }
      hamming_mean /= static_cast<double>(result.runs[mi].size());
      subset_mean /= static_cast<double>(result.runs[mi].size());
      check.require(hamming_mean >= 0.95 && subset_mean >= 0.95,
                    "normalized losses stay above 1 - 0.05");
    }
  }

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criterion 7: position-wise error propagation trend ------------------

Outcome criterion_position_trend(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const SyntheticSpec spec = make_spec(10, 1.0, 0.1, 7007);
  const Dataset data = sample(spec, 1000, 7008);

  PositionExperimentConfig config;
  config.orders = 100;
  config.folds = 10;
  config.seed = 7;
  config.threads = 0;
  const PositionCurve curve = chain_position_experiment(data, config);

  std::vector<double> positions, means;
  for (std::size_t p = 0; p < curve.points.size(); ++p) {
    if (curve.points[p].orders > 0) {
      positions.push_back(static_cast<double>(p + 1));
      means.push_back(curve.points[p].mean);
    }
  }
  check.require(positions.size() >= 3, "enough positions with a nonzero baseline");
  if (positions.size() >= 3) {
    const double rho = spearman_rank_correlation(positions, means);
    check.require(rho > 0.3,
                  "spearman correlation " + std::to_string(rho) + " not above 0.3");
  }

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criterion 8: closed-world invariant --------------------------------

Outcome criterion_closed_world(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  const SyntheticSpec spec = make_spec(6, 0.5, 0.1, 8008);
  const Dataset data = sample(spec, 240, 8009);
  CvConfig config;
  config.algorithm = Algorithm::kClassifierChain;
  config.folds = 6;
  config.repeats = 2;
  config.seed = 88;
  config.subset_correction = true;
  config.threads = 0;
  const CvReport report = run_cv(data, config);
  check.require(report.audited_predictions ==
                    static_cast<std::int64_t>(data.rows()) * config.repeats,
                "every test prediction audited");
  check.require(report.outside_pool == 0, "predictions outside the training pool");

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criterion 9: CLI determinism ----------------------------------------

Outcome criterion_cli_determinism(Check& check, double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

#ifndef MLCC_CLI_PATH
  check.require(false, "CLI not built");
#else
  const fs::path dir = fs::temp_directory_path() / "mlcc_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);

  const auto run = [&](const std::string& args) {
    const std::string command =
        std::string(MLCC_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    return std::system(command.c_str()) == 0;
  };
  const auto slurp = [](const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  const std::string prefix = (dir / "d").string();
  check.require(run("synth --labels 4 --tau 0.3 --noise 0.1 --train 80 --test 0 "
                    "--seed 21 --out " + prefix),
                "synth run");
  const std::string data = prefix + "_train.csv";

  const std::string eval_flags =
      "eval --data " + data + " --label-count 4 --algo ns --folds 5 --repeats 2 "
      "--seed 33 --subset-correction --out ";
  check.require(run(eval_flags + (dir / "e1.json").string()), "first eval run");
  check.require(run(eval_flags + (dir / "e2.json").string()), "second eval run");
  check.require(slurp(dir / "e1.json") == slurp(dir / "e2.json"),
                "eval outputs byte-identical");
  check.require(!slurp(dir / "e1.json").empty(), "eval output nonempty");

  const std::string scaling_flags =
      "scaling --labels 3,5 --reps 3 --train-n 40 --test-n 200 --seed 44 --out ";
  check.require(run(scaling_flags + (dir / "s1.csv").string()), "first scaling run");
  check.require(run(scaling_flags + (dir / "s2.csv").string()), "second scaling run");
  check.require(slurp(dir / "s1.csv") == slurp(dir / "s2.csv"),
                "scaling outputs byte-identical");
  check.require(!slurp(dir / "s1.csv").empty(), "scaling output nonempty");

  fs::remove_all(dir);
#endif

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

// ---- criteria 10 and 11: supplied emotions dataset ------------------------

Outcome criterion_emotions_stats(const std::string& path, Check& check,
                                 double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (path.empty()) return Outcome::kSkip;

  const Dataset data = load_arff(path, 6, LabelPosition::kBack);
  check.require(data.rows() == 593, "row count 593");
  check.require(data.feature_dim() == 72, "attribute count 72");
  const DatasetStats s = stats(data);
  check.require(std::fabs(s.cardinality - 1.87) <= 0.01,
                "cardinality " + std::to_string(s.cardinality));
  check.require(std::fabs(s.observation_rate - 0.40) <= 0.01,
                "observation rate " + std::to_string(s.observation_rate));

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

Outcome criterion_emotions_cc(const std::string& path, Check& check,
                              double& elapsed) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  if (path.empty()) return Outcome::kSkip;

  const Dataset data = load_arff(path, 6, LabelPosition::kBack);
  CvConfig config;
  config.algorithm = Algorithm::kClassifierChain;
  config.folds = 10;
  config.repeats = 3;
  config.seed = 2013;
  config.standardize = true;
  config.threads = 0;
  const CvReport report = run_cv(data, config);
  std::cout << "       (informational) cc hamming loss " << report.hamming.mean
            << ", reference 0.2367, |delta| "
            << std::fabs(report.hamming.mean - 0.2367) << "\n";
  check.require(report.hamming.mean >= 0.15 && report.hamming.mean <= 0.30,
                "cc hamming loss " + std::to_string(report.hamming.mean) +
                    " outside [0.15, 0.30]");

  elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  return check.ok ? Outcome::kPass : Outcome::kFail;
}

}  // namespace

int main(int argc, char** argv) {
  std::string emotions_path;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--emotions" && i + 1 < argc) {
      emotions_path = argv[i + 1];
      ++i;
    }
  }
  if (emotions_path.empty()) {
    if (const char* env = std::getenv("MLCC_EMOTIONS_ARFF")) emotions_path = env;
  }
  if (emotions_path.empty() && fs::exists("data/emotions.arff")) {
    emotions_path = "data/emotions.arff";
  }
  if (!emotions_path.empty() && !fs::exists(emotions_path)) {
    std::cerr << "emotions file " << emotions_path << " not found; skipping\n";
    emotions_path.clear();
  }

  struct Entry {
    std::string name;
    std::function<Outcome(Check&, double&)> run;
  };
  const std::vector<Entry> criteria = {
      {"1. metric exactness and fuzz invariants", criterion_metrics},
      {"2. subset-correction oracle equivalence", criterion_subset_oracle},
      {"3. base-learner gradient check", criterion_gradient},
      {"4. structural equivalences (m=1, ecc k=1)", criterion_structural},
      {"5. bayes loss closed form and Monte Carlo", criterion_bayes},
      {"6. label-scaling trend (ns vs cc vs br)", criterion_scaling_trend},
      {"7. position-wise error propagation trend", criterion_position_trend},
      {"8. closed-world subset correction audit", criterion_closed_world},
      {"9. CLI determinism (eval, scaling)", criterion_cli_determinism},
      {"10. emotions dataset statistics",
       [&](Check& check, double& elapsed) {
         return criterion_emotions_stats(emotions_path, check, elapsed);
       }},
      {"11. emotions cc hamming loss", [&](Check& check, double& elapsed) {
         return criterion_emotions_cc(emotions_path, check, elapsed);
       }},
  };

  int failures = 0;
  for (const Entry& entry : criteria) {
    Check check;
    double elapsed = 0.0;
    Outcome outcome;
    try {
      outcome = entry.run(check, elapsed);
    } catch (const std::exception& error) {
      outcome = Outcome::kFail;
      check.detail = std::string("exception: ") + error.what();
    }
    switch (outcome) {
      case Outcome::kPass:
        std::cout << "[PASS] " << entry.name << " (" << format_seconds(elapsed) << ")\n";
        break;
      case Outcome::kSkip:
        std::cout << "[SKIP] " << entry.name << " (dataset file not supplied)\n";
        break;
      case Outcome::kFail:
        ++failures;
        std::cout << "[FAIL] " << entry.name << ": " << check.detail << "\n";
        break;
    }
    std::cout.flush();
  }

  if (failures > 0) {
    std::cout << failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all criteria passed (or were skipped for missing optional data)\n";
  return 0;
}
