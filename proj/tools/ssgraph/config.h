#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssgraph/errors.h"
#include "ssgraph/geometry.h"
#include "ssgraph/signals.h"
#include "ssgraph/systems.h"

namespace ssgraph::cli {

/// Malformed experiment configuration; the message starts with the JSON path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Tolerances {
  double zero_pairing = 1e-6;
  double real_axis_band = 0.02;
  double slack = 1e-6;
  double product_slack = 0.02;
};

struct ExperimentConfig {
  nlohmann::json document;  // effective document after flag overrides
  std::map<std::string, OperatorModel> systems;
  InputFamily inputs;
  Tolerances tolerances;
  TauGrid tau_grid = TauGrid::Default();
  double r = 1e-3;
  std::uint64_t seed = 0;
  std::vector<nlohmann::json> tasks;
  std::filesystem::path output = "out";
  std::filesystem::path base_dir = ".";  // relative input files resolve here

  /// Throws ConfigError naming `path` when the system is not defined.
  const OperatorModel& System(const std::string& name, const std::string& path) const;
  /// FNV-1a of the compact dump of the document without "output".
  std::string Hash() const;
};

ExperimentConfig ParseConfig(const nlohmann::json& document);
nlohmann::json ReadJsonFile(const std::filesystem::path& file);

/// The global input family with the optional task-level "inputs" overrides.
InputFamily TaskInputs(const ExperimentConfig& config, const nlohmann::json& task,
                       const std::string& path);

}  // namespace ssgraph::cli
