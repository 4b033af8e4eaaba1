#pragma once

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ssgraph/catalog.h"
#include "ssgraph/config.h"

namespace ssgraph::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunOptions {
  std::filesystem::path out;  // output directory
  int jobs = 1;
};

/// Runs one task object ({"command": ..., ...}) and returns the written files.
/// `path` prefixes ConfigError diagnostics, e.g. "$.tasks[2]".
std::vector<std::filesystem::path> RunTask(const ExperimentConfig& config,
                                           const nlohmann::json& task, const std::string& path,
                                           const RunOptions& options);

/// Runs every task of the configuration in order.
std::vector<std::filesystem::path> RunAll(const ExperimentConfig& config,
                                          const RunOptions& options);

/// "name" or "name:k" -> analytic region of the catalog.
Region ParseAnalyticSpec(const std::string& spec, GraphKind kind, const std::string& path);

/// 2 for configuration and input errors, 3 for numerical failures.
int ExitCodeFor(const std::exception& error);

}  // namespace ssgraph::cli
