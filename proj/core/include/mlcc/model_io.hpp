#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "mlcc/chains.hpp"

namespace mlcc {

using AnyModel = std::variant<BRModel, ChainModel, StackingModel, EnsembleModel>;

/// Versioned JSON model format. Doubles are written with shortest round-trip
/// precision, so save followed by load is value-exact for all finite values.
std::string model_to_json(const AnyModel& model);
AnyModel model_from_json(const std::string& text);

void save_model(const AnyModel& model, const std::filesystem::path& path);
AnyModel load_model(const std::filesystem::path& path);

}  // namespace mlcc
