#include "mlcc/model_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace mlcc {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kFormatVersion = 1;

Json classifier_to_json(const LinearModel& model) {
  Json j;
  j["weights"] = std::vector<double>(model.weights.data(),
                                     model.weights.data() + model.weights.size());
  j["bias"] = model.bias;
  j["lambda"] = model.regularization;
  j["iterations"] = model.meta.iterations;
  j["objective"] = model.meta.objective;
  j["gradient_norm"] = model.meta.gradient_norm;
  return j;
}

LinearModel classifier_from_json(const Json& j) {
  LinearModel model;
  const std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  model.weights = Eigen::Map<const Vector>(weights.data(),
                                           static_cast<Index>(weights.size()));
  model.bias = j.at("bias").get<double>();
  model.regularization = j.at("lambda").get<double>();
  model.meta.iterations = j.value("iterations", 0);
  model.meta.objective = j.value("objective", 0.0);
  model.meta.gradient_norm = j.value("gradient_norm", 0.0);
  return model;
}

Json classifiers_to_json(const std::vector<LinearModel>& classifiers) {
  Json list = Json::array();
  for (const LinearModel& c : classifiers) list.push_back(classifier_to_json(c));
  return list;
}

std::vector<LinearModel> classifiers_from_json(const Json& list) {
  std::vector<LinearModel> out;
  out.reserve(list.size());
  for (const Json& j : list) out.push_back(classifier_from_json(j));
  return out;
}

Json chain_to_json(const ChainModel& model) {
  Json j;
  j["strategy"] = to_string(model.strategy);
  j["feature_dim"] = model.feature_dim;
  j["order"] = std::vector<Index>(model.order.at.begin(), model.order.at.end());
  j["classifiers"] = classifiers_to_json(model.classifiers);
  return j;
}

ChainModel chain_from_json(const Json& j) {
  ChainModel model;
  const std::string strategy = j.at("strategy").get<std::string>();
  if (strategy == "cc") {
    model.strategy = ChainStrategy::kClassifierChain;
  } else if (strategy == "ns") {
    model.strategy = ChainStrategy::kNestedStacking;
  } else {
    throw std::runtime_error("model file: unknown chain strategy '" + strategy + "'");
  }
  model.feature_dim = j.at("feature_dim").get<Index>();
  model.order = make_chain_order(j.at("order").get<std::vector<Index>>());
  model.classifiers = classifiers_from_json(j.at("classifiers"));
  if (model.order.size() != model.label_dim()) {
    throw std::runtime_error("model file: chain order and classifier count disagree");
  }
  for (Index p = 0; p < model.label_dim(); ++p) {
    if (model.classifiers[static_cast<std::size_t>(p)].weights.size() !=
        model.feature_dim + p) {
      throw std::runtime_error("model file: classifier at chain position " +
                               std::to_string(p) + " has the wrong dimension");
    }
  }
  return model;
}

}  // namespace

std::string model_to_json(const AnyModel& model) {
  Json j;
  j["format"] = "mlcc-model";
  j["version"] = kFormatVersion;

  if (const auto* br = std::get_if<BRModel>(&model)) {
    j["kind"] = "br";
    j["feature_dim"] = br->feature_dim;
    j["classifiers"] = classifiers_to_json(br->classifiers);
  } else if (const auto* chain = std::get_if<ChainModel>(&model)) {
    j["kind"] = to_string(chain->strategy);
    j.update(chain_to_json(*chain));
  } else if (const auto* stacking = std::get_if<StackingModel>(&model)) {
    j["kind"] = "stacking";
    j["feature_dim"] = stacking->feature_dim;
    j["level1"] = classifiers_to_json(stacking->level1.classifiers);
    j["level2"] = classifiers_to_json(stacking->level2);
  } else if (const auto* ensemble = std::get_if<EnsembleModel>(&model)) {
    j["kind"] = "ecc";
    j["threshold"] = ensemble->threshold;
    j["member_seeds"] = ensemble->member_seeds;
    Json members = Json::array();
    for (const ChainModel& member : ensemble->members) {
      members.push_back(chain_to_json(member));
    }
    j["members"] = std::move(members);
  }
  return j.dump(2) + "\n";
}

AnyModel model_from_json(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& error) {
    throw std::runtime_error(std::string("model file is not valid JSON: ") +
                             error.what());
  }
  if (j.value("format", "") != "mlcc-model") {
    throw std::runtime_error("model file: missing or wrong format marker");
  }
  if (j.value("version", -1) != kFormatVersion) {
    throw std::runtime_error("model file: unsupported version");
  }

  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "br") {
    BRModel model;
    model.feature_dim = j.at("feature_dim").get<Index>();
    model.classifiers = classifiers_from_json(j.at("classifiers"));
    for (const LinearModel& c : model.classifiers) {
      if (c.weights.size() != model.feature_dim) {
        throw std::runtime_error("model file: br classifier dimension mismatch");
      }
    }
    return model;
  }
  if (kind == "cc" || kind == "ns") {
    return chain_from_json(j);
  }
  if (kind == "stacking") {
    StackingModel model;
    model.feature_dim = j.at("feature_dim").get<Index>();
    model.level1.feature_dim = model.feature_dim;
    model.level1.classifiers = classifiers_from_json(j.at("level1"));
    model.level2 = classifiers_from_json(j.at("level2"));
    const Index m = model.level1.label_dim();
    if (model.level2.size() != model.level1.classifiers.size()) {
      throw std::runtime_error("model file: stacking level sizes disagree");
    }
    for (const LinearModel& c : model.level2) {
      if (c.weights.size() != model.feature_dim + m) {
        throw std::runtime_error("model file: level-2 classifier dimension mismatch");
      }
    }
    return model;
  }
  if (kind == "ecc") {
    EnsembleModel model;
    model.threshold = j.at("threshold").get<double>();
    model.member_seeds = j.value("member_seeds", std::vector<std::uint64_t>{});
    for (const Json& member : j.at("members")) {
      model.members.push_back(chain_from_json(member));
    }
    if (model.members.empty()) {
      throw std::runtime_error("model file: ensemble has no members");
    }
    return model;
  }
  throw std::runtime_error("model file: unknown kind '" + kind + "'");
}

void save_model(const AnyModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("save_model: cannot open " + path.string() + " for writing");
  }
  out << model_to_json(model);
  if (!out) {
    throw std::runtime_error("save_model: write to " + path.string() + " failed");
  }
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("load_model: cannot open " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return model_from_json(buffer.str());
}

}  // namespace mlcc
