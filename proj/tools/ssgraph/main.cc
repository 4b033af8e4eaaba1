#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ssgraph/commands.h"
#include "ssgraph/config.h"

namespace {

using nlohmann::json;
using namespace ssgraph::cli;

struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  int jobs = 1;
  CLI::Option* seed_option = nullptr;
};

CLI::App* Leaf(CLI::App* parent, const std::string& name, const std::string& description,
               Common& common, bool config_required) {
  CLI::App* app = parent->add_subcommand(name, description);
  auto* config = app->add_option("--config", common.config, "experiment configuration (JSON)")
                     ->check(CLI::ExistingFile);
  if (config_required) config->required();
  app->add_option("--out", common.out, "output directory (overrides the config)");
  common.seed_option = app->add_option("--seed", common.seed, "input seed (overrides the config)");
  app->add_option("--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
  return app;
}

void SetIf(json& task, const char* key, const std::string& value) {
  if (!value.empty()) task[key] = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Signed scaled graphs of sampled operators and graph-separation stability checks"};
  app.require_subcommand(1);
  std::vector<Common> commons(8);
  std::function<json()> make_task;
  bool run_all = false;
  Common* active = nullptr;

  CLI::App* ssg = app.add_subcommand("ssg", "scaled graph estimation")->require_subcommand(1);
  CLI::App* stability = app.add_subcommand("stability", "graph separation")->require_subcommand(1);
  CLI::App* loop = app.add_subcommand("loop", "closed-loop simulation")->require_subcommand(1);

  std::string system, second, property = "passive", reading = "calibrated", name, entry,
                                  kind = "signed", mode = "both", first, input;
  std::vector<std::string> overlays, analytic;
  bool unsigned_graph = false;
  double epsilon = 0.0, tau = 1.0, r = 0.0;
  int sign = -1, index = 0, pad = 0;

  CLI::App* estimate = Leaf(ssg, "estimate", "estimate SSG(H) from seeded inputs", commons[0], true);
  estimate->add_option("--system", system, "system name")->required();
  estimate->add_flag("--unsigned", unsigned_graph, "estimate the unsigned graph SG(H)");
  estimate->add_option("--overlay", overlays, "catalog region drawn under the points");
  estimate->callback([&] {
    active = &commons[0];
    make_task = [&] {
      json t = {{"command", "ssg estimate"}, {"system", system}, {"unsigned", unsigned_graph}};
      if (!overlays.empty()) t["overlays"] = overlays;
      return t;
    };
  });

  CLI::App* region = Leaf(ssg, "analytic", "closed-form catalog region", commons[1], false);
  region->add_option("--entry", entry, "catalog entry, e.g. second-order-perimeter:8")->required();
  region->add_option("--kind", kind, "signed or unsigned");
  region->callback([&] {
    active = &commons[1];
    make_task = [&] { return json{{"command", "ssg analytic"}, {"entry", entry}, {"kind", kind}}; };
  });

  CLI::App* check = Leaf(stability, "check", "tau-homotopy separation check", commons[2], false);
  check->add_option("--first", first, "first system name");
  check->add_option("--second", second, "second system name");
  check->add_option("--analytic", analytic, "catalog specs for the first and second sides")
      ->expected(2);
  check->add_option("--mode", mode, "signed, unsigned or both");
  check->add_option("--r", r, "required margin");
  check->callback([&] {
    active = &commons[2];
    make_task = [&] {
      json t = {{"command", "stability check"}, {"mode", mode}};
      if (analytic.size() == 2) {
        t["first_analytic"] = analytic[0];
        t["second_analytic"] = analytic[1];
      }
      SetIf(t, "first", first);
      SetIf(t, "second", second);
      if (r > 0.0) t["r"] = r;
      return t;
    };
  });

  CLI::App* certify = Leaf(&app, "certify", "sample-based system certification", commons[3], true);
  certify->add_option("--system", system, "system name")->required();
  certify->add_option("--property", property,
                      "passive, input-strictly-passive, ssg-ni, passivity-theorem, ni-theorem");
  certify->add_option("--epsilon", epsilon, "strictness constant");
  certify->add_option("--second", second, "second system for theorem verdicts");
  certify->add_option("--reading", reading, "calibrated or literal pairing sign");
  certify->callback([&] {
    active = &commons[3];
    make_task = [&] {
      json t = {{"command", "certify"},
                {"system", system},
                {"property", property},
                {"epsilon", epsilon},
                {"reading", reading}};
      SetIf(t, "second", second);
      return t;
    };
  });

  CLI::App* simulate = Leaf(loop, "simulate", "simulate one closed loop", commons[4], true);
  simulate->add_option("--first", first, "forward system")->required();
  simulate->add_option("--second", second, "feedback system")->required();
  simulate->add_option("--tau", tau, "homotopy parameter in (0, 1]");
  simulate->add_option("--sign", sign, "-1 negative, 1 positive feedback");
  simulate->add_option("--input", index, "input index within the family");
  simulate->callback([&] {
    active = &commons[4];
    make_task = [&] {
      return json{{"command", "loop simulate"}, {"first", first}, {"second", second},
                  {"tau", tau},                 {"sign", sign},   {"input", index}};
    };
  });

  CLI::App* gain = Leaf(loop, "gain", "empirical closed-loop gain", commons[5], true);
  gain->add_option("--first", first, "forward system")->required();
  gain->add_option("--second", second, "feedback system")->required();
  gain->add_option("--sign", sign, "-1 negative, 1 positive feedback");
  auto* gain_tau = gain->add_option("--tau", tau, "single tau instead of the configured grid");
  gain->callback([&] {
    active = &commons[5];
    make_task = [&] {
      json t = {{"command", "loop gain"}, {"first", first}, {"second", second}, {"sign", sign}};
      if (gain_tau->count() > 0) t["tau"] = tau;
      return t;
    };
  });

  CLI::App* hilbert = Leaf(&app, "hilbert", "Hilbert transform of a t,value CSV", commons[6], false);
  hilbert->add_option("--in", input, "input signal CSV")->required()->check(CLI::ExistingFile);
  hilbert->add_option("--pad", pad, "zero-padding factor");
  hilbert->callback([&] {
    active = &commons[6];
    make_task = [&] {
      json t = {{"command", "hilbert"}, {"input", input}};
      if (pad > 0) t["pad_factor"] = pad;
      return t;
    };
  });

  CLI::App* run = Leaf(&app, "run", "run every task of the configuration", commons[7], true);
  run->callback([&] {
    active = &commons[7];
    run_all = true;
  });

  for (CLI::App* leaf : {estimate, region, check, certify, simulate, gain, hilbert}) {
    leaf->add_option("--name", name, "output file stem");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const Common& common = *active;
    json doc = common.config.empty() ? json::object() : ReadJsonFile(common.config);
    if (common.seed_option->count() > 0) doc["seed"] = common.seed;
    if (!run_all) {
      json task = make_task();
      if (!name.empty()) task["name"] = name;
      doc["tasks"] = json::array({task});
    }
    ExperimentConfig config = ParseConfig(doc);
    if (run_all) config.base_dir = std::filesystem::path(common.config).parent_path();
    if (config.base_dir.empty()) config.base_dir = ".";
    RunOptions options;
    options.out = common.out.empty() ? config.output : std::filesystem::path(common.out);
    options.jobs = common.jobs;
    for (const auto& file : RunAll(config, options)) std::cout << file.string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  }
}
