#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "combandit/config.hpp"

namespace combandit {

/// Epoch constant the presets run DART with: the separation bound
/// 32 log(2/delta) / Delta^2, in place of the worst-case 288.
inline constexpr double kPresetEpochConstant = 32.0;

struct Preset {
  std::string description;
  ExperimentConfig config;
};

/// Built-in experiment configurations, in listing order.
const std::vector<Preset>& presets();

std::optional<ExperimentConfig> find_preset(std::string_view name);

}  // namespace combandit
