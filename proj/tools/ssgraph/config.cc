#include "ssgraph/config.h"

#include <fstream>
#include <set>

#include "ssgraph/io.h"

namespace ssgraph::cli {
namespace {

using nlohmann::json;

void RejectUnknown(const json& doc, const std::set<std::string>& known, const std::string& path) {
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw ConfigError(path + "." + key + ": unknown field");
  }
}

double Number(const json& doc, const char* key, double fallback, const std::string& path) {
  if (!doc.contains(key)) return fallback;
  if (!doc.at(key).is_number()) throw ConfigError(path + "." + key + ": expected a number");
  return doc.at(key).get<double>();
}

InputFamily ParseFamily(const json& doc, const InputFamily& defaults, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path + ": expected an object");
  if (doc.contains("seed")) throw ConfigError(path + ".seed: set the top-level seed instead");
  try {
    return InputFamilyFromJson(doc, defaults);
  } catch (const ParameterError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

TauGrid ParseTauGrid(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path + ": expected an object");
  RejectUnknown(doc, {"count", "min", "max", "values"}, path);
  if (doc.contains("values")) {
    const json& v = doc.at("values");
    if (!v.is_array() || v.empty()) throw ConfigError(path + ".values: expected a non-empty array");
    TauGrid grid;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) {
        throw ConfigError(path + ".values[" + std::to_string(i) + "]: expected a number");
      }
      const double tau = v[i].get<double>();
      if (!(tau > 0.0 && tau <= 1.0)) {
        throw ConfigError(path + ".values[" + std::to_string(i) + "]: tau must lie in (0, 1]");
      }
      grid.values.push_back(tau);
    }
    grid.description = "values(" + std::to_string(grid.values.size()) + ")";
    return grid;
  }
  const double count = Number(doc, "count", 64, path);
  const double lo = Number(doc, "min", 1e-3, path);
  const double hi = Number(doc, "max", 1.0, path);
  if (count < 1 || count != static_cast<int>(count)) {
    throw ConfigError(path + ".count: expected a positive integer");
  }
  if (!(lo > 0.0 && lo <= hi && hi <= 1.0)) {
    throw ConfigError(path + ": need 0 < min <= max <= 1");
  }
  return TauGrid::Logarithmic(static_cast<int>(count), lo, hi);
}

Tolerances ParseTolerances(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ConfigError(path + ": expected an object");
  RejectUnknown(doc, {"zero_pairing", "real_axis_band", "slack", "product_slack"}, path);
  Tolerances t;
  t.zero_pairing = Number(doc, "zero_pairing", t.zero_pairing, path);
  t.real_axis_band = Number(doc, "real_axis_band", t.real_axis_band, path);
  t.slack = Number(doc, "slack", t.slack, path);
  t.product_slack = Number(doc, "product_slack", t.product_slack, path);
  if (t.zero_pairing < 0 || t.real_axis_band < 0 || t.slack < 0 || t.product_slack < 0) {
    throw ConfigError(path + ": tolerances must be non-negative");
  }
  return t;
}

}  // namespace

const OperatorModel& ExperimentConfig::System(const std::string& name,
                                              const std::string& path) const {
  const auto it = systems.find(name);
  if (it == systems.end()) throw ConfigError(path + ": unknown system '" + name + "'");
  return it->second;
}

std::string ExperimentConfig::Hash() const {
  json copy = document;
  if (copy.is_object()) copy.erase("output");
  return HexDigest(Fnv1a64(copy.dump()));
}

ExperimentConfig ParseConfig(const json& document) {
  if (!document.is_object()) throw ConfigError("$: expected an object");
  RejectUnknown(document,
                {"systems", "inputs", "tolerances", "tau_grid", "r", "seed", "tasks", "output"}, "$");
  ExperimentConfig c;
  c.document = document;
  if (document.contains("seed")) {
    const json& s = document.at("seed");
    if (!s.is_number_integer() || (s.is_number_integer() && !s.is_number_unsigned() &&
                                   s.get<std::int64_t>() < 0)) {
      throw ConfigError("$.seed: expected a non-negative integer");
    }
    c.seed = s.get<std::uint64_t>();
  }
  if (document.contains("systems")) {
    const json& systems = document.at("systems");
    if (!systems.is_object()) throw ConfigError("$.systems: expected an object");
    for (const auto& [name, model] : systems.items()) {
      try {
        c.systems.emplace(name, ModelFromJson(model, "$.systems." + name));
      } catch (const ConfigError&) {
        throw;
      } catch (const Error& e) {
        const std::string what = e.what();
        throw ConfigError(what.starts_with("$") ? what : "$.systems." + name + ": " + what);
      }
    }
  }
  InputFamily defaults;
  defaults.seed = c.seed;
  c.inputs = document.contains("inputs") ? ParseFamily(document.at("inputs"), defaults, "$.inputs")
                                         : defaults;
  c.inputs.seed = c.seed;
  if (document.contains("tolerances")) {
    c.tolerances = ParseTolerances(document.at("tolerances"), "$.tolerances");
  }
  if (document.contains("tau_grid")) c.tau_grid = ParseTauGrid(document.at("tau_grid"), "$.tau_grid");
  c.r = Number(document, "r", c.r, "$");
  if (!(c.r > 0.0)) throw ConfigError("$.r: must be positive");
  if (document.contains("tasks")) {
    const json& tasks = document.at("tasks");
    if (!tasks.is_array()) throw ConfigError("$.tasks: expected an array");
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      const std::string path = "$.tasks[" + std::to_string(i) + "]";
      if (!tasks[i].is_object() || !tasks[i].contains("command") ||
          !tasks[i].at("command").is_string()) {
        throw ConfigError(path + ": expected an object with a string 'command'");
      }
      c.tasks.push_back(tasks[i]);
    }
  }
  if (document.contains("output")) {
    if (!document.at("output").is_string()) throw ConfigError("$.output: expected a string");
    c.output = document.at("output").get<std::string>();
  }
  return c;
}

json ReadJsonFile(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError(file.string() + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(file.string() + ": " + e.what());
  }
}

InputFamily TaskInputs(const ExperimentConfig& config, const json& task, const std::string& path) {
  if (!task.contains("inputs")) return config.inputs;
  InputFamily f = ParseFamily(task.at("inputs"), config.inputs, path + ".inputs");
  f.seed = config.seed;
  return f;
}

}  // namespace ssgraph::cli
