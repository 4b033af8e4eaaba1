#include "ssgraph/commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <set>

#include "ssgraph/certify.h"
#include "ssgraph/io.h"
#include "ssgraph/loop.h"
#include "ssgraph/ssg.h"
#include "ssgraph/svg.h"

namespace ssgraph::cli {
namespace {

using nlohmann::json;
using Files = std::vector<std::filesystem::path>;

const char* const kPalette[] = {"#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

class Task {
 public:
  Task(const json& doc, std::string path, const std::set<std::string>& allowed)
      : doc_(doc), path_(std::move(path)) {
    for (const auto& [key, value] : doc.items()) {
      if (key != "command" && key != "name" && !allowed.contains(key)) {
        throw ConfigError(Path(key) + ": unknown field for '" + Command() + "'");
      }
    }
  }

  std::string Command() const { return doc_.at("command").get<std::string>(); }
  std::string Path(const std::string& key) const { return path_ + "." + key; }
  const std::string& path() const { return path_; }
  const json& doc() const { return doc_; }
  bool Has(const std::string& key) const { return doc_.contains(key); }

  std::string String(const std::string& key) const {
    if (!Has(key)) throw ConfigError(Path(key) + ": missing field");
    return StringAt(key);
  }
  std::string String(const std::string& key, const std::string& fallback) const {
    return Has(key) ? StringAt(key) : fallback;
  }
  double Number(const std::string& key, double fallback) const {
    if (!Has(key)) return fallback;
    if (!doc_.at(key).is_number()) throw ConfigError(Path(key) + ": expected a number");
    return doc_.at(key).get<double>();
  }
  int Integer(const std::string& key, int fallback) const {
    if (!Has(key)) return fallback;
    if (!doc_.at(key).is_number_integer()) throw ConfigError(Path(key) + ": expected an integer");
    return doc_.at(key).get<int>();
  }
  bool Bool(const std::string& key, bool fallback) const {
    if (!Has(key)) return fallback;
    if (!doc_.at(key).is_boolean()) throw ConfigError(Path(key) + ": expected a boolean");
    return doc_.at(key).get<bool>();
  }
  std::vector<std::string> Strings(const std::string& key) const {
    std::vector<std::string> out;
    if (!Has(key)) return out;
    const json& v = doc_.at(key);
    if (!v.is_array()) throw ConfigError(Path(key) + ": expected an array of strings");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_string()) {
        throw ConfigError(Path(key) + "[" + std::to_string(i) + "]: expected a string");
      }
      out.push_back(v[i].get<std::string>());
    }
    return out;
  }

 private:
  std::string StringAt(const std::string& key) const {
    if (!doc_.at(key).is_string()) throw ConfigError(Path(key) + ": expected a string");
    return doc_.at(key).get<std::string>();
  }

  const json& doc_;
  std::string path_;
};

struct Provenance {
  std::string hash;
  std::uint64_t seed;

  std::string Preamble() const { return "config_hash=" + hash + " seed=" + std::to_string(seed); }
  json Json() const { return {{"config_hash", hash}, {"seed", seed}}; }
};

std::filesystem::path Write(const RunOptions& options, const std::string& file,
                            const std::function<void(std::ostream&)>& body) {
  std::filesystem::create_directories(options.out);
  const std::filesystem::path target = options.out / file;
  std::ofstream out(target, std::ios::binary);
  if (!out) throw ConfigError(target.string() + ": cannot write");
  body(out);
  if (!out) throw ConfigError(target.string() + ": write failed");
  return target;
}

std::filesystem::path WriteJson(const RunOptions& options, const std::string& file,
                                const json& doc) {
  return Write(options, file, [&](std::ostream& out) { out << doc.dump(2) << "\n"; });
}

EstimateOptions Estimation(const ExperimentConfig& config, const RunOptions& options) {
  EstimateOptions e;
  e.zero_pairing_tol = config.tolerances.zero_pairing;
  e.jobs = options.jobs;
  return e;
}

CertifyOptions Certification(const ExperimentConfig& config, const RunOptions& options,
                             const Task& task) {
  CertifyOptions c;
  c.slack = config.tolerances.slack;
  c.zero_pairing_tol = config.tolerances.zero_pairing;
  c.jobs = options.jobs;
  const std::string reading = task.String("reading", "calibrated");
  if (reading == "literal") {
    c.reading = SignReading::kLiteral;
  } else if (reading != "calibrated") {
    throw ConfigError(task.Path("reading") + ": expected 'calibrated' or 'literal'");
  }
  return c;
}

GraphKind ParseKind(const std::string& kind, const std::string& path) {
  if (kind == "signed") return GraphKind::kSigned;
  if (kind == "unsigned") return GraphKind::kUnsigned;
  throw ConfigError(path + ": expected 'signed' or 'unsigned'");
}

void AddLayer(SvgPlot& plot, const Region& region, const std::string& color,
              const std::string& label) {
  if (const auto* set = std::get_if<PointSet>(&region.shape())) {
    plot.AddPoints(set->points, color, label);
  } else {
    plot.AddRegion(region, color);
  }
}

json ShapeJson(const Region& region) {
  auto bound = [](double v) { return std::isfinite(v) ? json(v) : json(v > 0 ? "inf" : "-inf"); };
  struct Visitor {
    const Region& region;
    const std::function<json(double)>& bound;
    json operator()(const Disk& d) const {
      return {{"type", "disk"},
              {"center", {d.center.real(), d.center.imag()}},
              {"radius", d.radius},
              {"filled", d.filled}};
    }
    json operator()(const HalfPlane& h) const {
      return {{"type", "half-plane"},
              {"normal", {h.normal.real(), h.normal.imag()}},
              {"offset", h.offset}};
    }
    json operator()(const VerticalLine& l) const {
      return {{"type", "vertical-line"},
              {"re", l.re},
              {"im_min", bound(l.im_min)},
              {"im_max", bound(l.im_max)}};
    }
    json operator()(const ParametricPerimeter& p) const {
      json vertices = json::array();
      for (Complex z : region.Vertices()) vertices.push_back({z.real(), z.imag()});
      return {{"type", "perimeter"},
              {"filled", p.filled},
              {"approximation_bound", region.ApproximationBound()},
              {"vertices", vertices}};
    }
    json operator()(const PointSet& s) const {
      json points = json::array();
      for (Complex z : s.points) points.push_back({z.real(), z.imag()});
      return {{"type", "points"}, {"points", points}};
    }
  };
  const std::function<json(double)> fn = bound;
  return std::visit(Visitor{region, fn}, region.shape());
}

Files SsgEstimate(const ExperimentConfig& config, const Task& task, const RunOptions& options,
                  const Provenance& prov) {
  const std::string system = task.String("system");
  const OperatorModel& model = config.System(system, task.Path("system"));
  const bool unsigned_graph = task.Bool("unsigned", false);
  const InputFamily family = TaskInputs(config, task.doc(), task.path());
  const auto inputs = GenerateInputs(family, options.jobs);
  PointCloud cloud = unsigned_graph ? EstimateSg(model, inputs, Estimation(config, options))
                                    : EstimateSsg(model, inputs, Estimation(config, options));
  cloud.source = model.Describe() + " | " + family.Describe();
  const std::string name = task.String("name", (unsigned_graph ? "sg_" : "ssg_") + system);
  const GraphKind kind = unsigned_graph ? GraphKind::kUnsigned : GraphKind::kSigned;

  std::vector<Region> overlays;
  for (const std::string& spec : task.Strings("overlays")) {
    overlays.push_back(ParseAnalyticSpec(spec, kind, task.Path("overlays")));
  }
  Files files;
  files.push_back(Write(options, name + "_cloud.csv", [&](std::ostream& out) {
    WriteCloudCsv(out, cloud, prov.Preamble() + "\nsource=" + cloud.source);
  }));
  SvgPlot plot(name + ": " + (unsigned_graph ? "SG(" : "SSG(") + system + ")");
  for (std::size_t i = 0; i < overlays.size(); ++i) {
    plot.AddRegion(overlays[i], kPalette[i % std::size(kPalette)]);
  }
  plot.AddPoints(ExpandedPoints(cloud), "#1f4e9c", system);
  files.push_back(Write(options, name + ".svg", [&](std::ostream& out) { plot.Write(out); }));
  return files;
}

Files SsgAnalytic(const Task& task, const RunOptions& options, const Provenance& prov) {
  const std::string spec = task.String("entry");
  const std::string kind_name = task.String("kind", "signed");
  const GraphKind kind = ParseKind(kind_name, task.Path("kind"));
  const Region region = ParseAnalyticSpec(spec, kind, task.Path("entry"));
  std::string name = task.String("name", spec);
  std::replace(name.begin(), name.end(), ':', '_');
  const json doc = {{"provenance", prov.Json()},
                    {"entry", spec},
                    {"kind", kind_name},
                    {"label", region.label()},
                    {"shape", ShapeJson(region)}};
  Files files;
  files.push_back(WriteJson(options, name + "_region.json", doc));
  SvgPlot plot(name + " (" + kind_name + ")");
  plot.AddRegion(region, kPalette[0]);
  files.push_back(Write(options, name + ".svg", [&](std::ostream& out) { plot.Write(out); }));
  return files;
}

Files Stability(const ExperimentConfig& config, const Task& task, const RunOptions& options,
                const Provenance& prov) {
  struct Side {
    std::string label;
    std::optional<std::string> analytic;
    const OperatorModel* model = nullptr;
  };
  auto side = [&](const std::string& key) {
    Side s;
    const std::string analytic_key = key + "_analytic";
    if (task.Has(key) == task.Has(analytic_key)) {
      throw ConfigError(task.Path(key) + ": give exactly one of '" + key + "' and '" +
                        analytic_key + "'");
    }
    if (task.Has(key)) {
      s.label = task.String(key);
      s.model = &config.System(s.label, task.Path(key));
    } else {
      s.analytic = task.String(analytic_key);
      s.label = *s.analytic;
    }
    return s;
  };
  const Side first = side("first"), second = side("second");
  const std::string mode = task.String("mode", "both");
  std::vector<SeparationMode> modes;
  if (mode == "signed" || mode == "both") modes.push_back(SeparationMode::kSigned);
  if (mode == "unsigned" || mode == "both") modes.push_back(SeparationMode::kUnsigned);
  if (modes.empty()) throw ConfigError(task.Path("mode") + ": expected signed, unsigned or both");
  const double r = task.Number("r", config.r);
  if (!(r > 0.0)) throw ConfigError(task.Path("r") + ": must be positive");

  std::optional<std::vector<SampledSignal>> inputs;
  auto cloud_of = [&](const OperatorModel& model) {
    if (!inputs) inputs = GenerateInputs(TaskInputs(config, task.doc(), task.path()), options.jobs);
    return EstimateSsg(model, *inputs, Estimation(config, options));
  };
  std::optional<PointCloud> cloud1, cloud2;
  if (first.model) cloud1 = cloud_of(*first.model);
  if (second.model) cloud2 = cloud_of(*second.model);

  std::string name = task.String("name", "stability_" + first.label + "_" + second.label);
  std::replace(name.begin(), name.end(), ':', '_');
  json doc = {{"provenance", prov.Json()},
              {"first", first.label},
              {"second", second.label},
              {"r", r},
              {"tau_grid", config.tau_grid.description}};
  Files files;
  std::vector<StabilityVerdict> verdicts;
  for (SeparationMode m : modes) {
    const bool is_signed = m == SeparationMode::kSigned;
    const GraphKind kind = is_signed ? GraphKind::kSigned : GraphKind::kUnsigned;
    auto graph = [&](const PointCloud& c) { return is_signed ? c : SgFromSsg(c); };
    const Region a = first.analytic
                         ? ParseAnalyticSpec(*first.analytic, kind, task.Path("first_analytic"))
                         : CloudRegion(graph(*cloud1), first.label);
    const Region b = second.analytic
                         ? ParseAnalyticSpec(*second.analytic, kind, task.Path("second_analytic"))
                         : CloudRegion(InvertCloud(graph(*cloud2)), second.label);
    const StabilityVerdict v = SeparationCheck(
        a, [&](double tau) { return b.Scaled(-1.0 / tau); }, r, config.tau_grid, m, options.jobs);
    verdicts.push_back(v);
    doc[ToString(m)] = VerdictToJson(v);

    SvgPlot plot(name + " " + ToString(m) + " tau=" + FormatNumber(v.worst_tau));
    AddLayer(plot, a, kPalette[0], first.label);
    AddLayer(plot, b.Scaled(-1.0 / v.worst_tau), kPalette[1], second.label);
    plot.AddPoints({v.worst_from, v.worst_to}, "#000000", "worst-pair");
    files.push_back(Write(options, name + "_" + ToString(m) + ".svg",
                          [&](std::ostream& out) { plot.Write(out); }));
  }
  if (verdicts.size() == 2) {
    const StabilityVerdict &s = verdicts[0], &u = verdicts[1];
    doc["comparison"] = {{"unsigned_conservative", s.separated && !u.separated},
                         {"signed_margin_at_least_unsigned", s.margin >= u.margin}};
  }
  files.insert(files.begin(), WriteJson(options, name + "_verdict.json", doc));
  return files;
}

Files Certify(const ExperimentConfig& config, const Task& task, const RunOptions& options,
              const Provenance& prov) {
  const std::string system = task.String("system");
  const OperatorModel& h1 = config.System(system, task.Path("system"));
  const std::string property = task.String("property");
  const double epsilon = task.Number("epsilon", 0.0);
  if (epsilon < 0.0) throw ConfigError(task.Path("epsilon") + ": must be non-negative");
  const InputFamily family = TaskInputs(config, task.doc(), task.path());
  const CertifyOptions copt = Certification(config, options, task);
  auto second = [&]() -> const OperatorModel& {
    return config.System(task.String("second"), task.Path("second"));
  };

  json doc = {{"provenance", prov.Json()}, {"system", system}, {"property", property}};
  if (property == "passive" || property == "input-strictly-passive") {
    if (property == "input-strictly-passive" && !(epsilon > 0.0)) {
      throw ConfigError(task.Path("epsilon") + ": input strict passivity needs epsilon > 0");
    }
    doc["report"] = ReportToJson(CheckPassive(h1, family, epsilon, copt));
  } else if (property == "ssg-ni") {
    doc["report"] = ReportToJson(CheckSsgNi(h1, family, epsilon, copt));
  } else if (property == "passivity-theorem") {
    if (!(epsilon > 0.0)) {
      throw ConfigError(task.Path("epsilon") + ": the passivity theorem needs epsilon > 0");
    }
    doc["second"] = task.String("second");
    doc["report"] = PassivityVerdictToJson(PassivityTheoremVerdict(h1, second(), family, epsilon, copt));
  } else if (property == "ni-theorem") {
    doc["second"] = task.String("second");
    NiOptions ni;
    ni.real_axis_band = config.tolerances.real_axis_band;
    ni.product_slack = config.tolerances.product_slack;
    try {
      doc["report"] = NiVerdictToJson(NiTheoremVerdict(h1, second(), family, epsilon, copt, ni));
    } catch (const NotNegativeImaginaryError& e) {
      doc["report"] = {{"verdict", "rejected"}, {"reason", e.what()}};
    }
  } else {
    throw ConfigError(task.Path("property") +
                      ": expected passive, input-strictly-passive, ssg-ni, passivity-theorem or "
                      "ni-theorem");
  }
  const std::string name = task.String("name", "certify_" + system + "_" + property);
  return {WriteJson(options, name + "_report.json", doc)};
}

int Sign(const Task& task) {
  const int sign = task.Integer("sign", -1);
  if (sign != 1 && sign != -1) throw ConfigError(task.Path("sign") + ": expected -1 or 1");
  return sign;
}

Files LoopSimulate(const ExperimentConfig& config, const Task& task, const RunOptions& options,
                   const Provenance& prov) {
  const std::string first = task.String("first"), second = task.String("second");
  const OperatorModel& h1 = config.System(first, task.Path("first"));
  const OperatorModel& h2 = config.System(second, task.Path("second"));
  const double tau = task.Number("tau", 1.0);
  if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError(task.Path("tau") + ": must lie in (0, 1]");
  const int sign = Sign(task);
  const InputFamily family = TaskInputs(config, task.doc(), task.path());
  const int input = task.Integer("input", 0);
  if (input < 0) throw ConfigError(task.Path("input") + ": must be non-negative");
  const SampledSignal w = GenerateInput(family, input);
  const LoopTrajectory t = ClosedLoopSimulate(h1, h2, w, tau, sign);
  const double tol = task.Number("w_set_tol", 1e-3);

  const std::string name = task.String("name", "loop_" + first + "_" + second);
  Files files;
  files.push_back(Write(options, name + "_trajectory.csv", [&](std::ostream& out) {
    WriteTrajectoryCsv(out, t, prov.Preamble());
  }));
  const json doc = {{"provenance", prov.Json()},
                    {"first", first},
                    {"second", second},
                    {"tau", tau},
                    {"sign", sign},
                    {"input", input},
                    {"family", family.Describe()},
                    {"gain", Norm(t.u1) / Norm(w)},
                    {"max_residual", t.max_residual},
                    {"w_set", WSetToJson(DiagnoseWSet(t, tol))}};
  files.push_back(WriteJson(options, name + "_loop.json", doc));
  return files;
}

Files LoopGain(const ExperimentConfig& config, const Task& task, const RunOptions& options,
               const Provenance& prov) {
  const std::string first = task.String("first"), second = task.String("second");
  const OperatorModel& h1 = config.System(first, task.Path("first"));
  const OperatorModel& h2 = config.System(second, task.Path("second"));
  const int sign = Sign(task);
  TauGrid grid = config.tau_grid;
  if (task.Has("tau")) {
    const double tau = task.Number("tau", 1.0);
    if (!(tau > 0.0 && tau <= 1.0)) throw ConfigError(task.Path("tau") + ": must lie in (0, 1]");
    grid = TauGrid::Single(tau);
  }
  GainOptions gopt;
  gopt.observation_factor = task.Number("observation_factor", gopt.observation_factor);
  if (!(gopt.observation_factor >= 1.0)) {
    throw ConfigError(task.Path("observation_factor") + ": must be at least 1");
  }
  gopt.jobs = options.jobs;
  const InputFamily family = TaskInputs(config, task.doc(), task.path());
  const GainEstimate e = EmpiricalGain(h1, h2, family, grid, sign, gopt);
  json doc = GainToJson(e, family.seed);
  doc["provenance"] = prov.Json();
  doc["first"] = first;
  doc["second"] = second;
  doc["sign"] = sign;
  doc["tau_grid"] = grid.description;
  doc["family"] = family.Describe();
  const std::string name = task.String("name", "gain_" + first + "_" + second);
  return {WriteJson(options, name + "_gain.json", doc)};
}

Files HilbertCommand(const ExperimentConfig& config, const Task& task, const RunOptions& options,
                     const Provenance& prov) {
  std::filesystem::path input = task.String("input");
  if (input.is_relative()) input = config.base_dir / input;
  const int pad = task.Integer("pad_factor", kDefaultPadFactor);
  if (pad < 1) throw ConfigError(task.Path("pad_factor") + ": must be at least 1");
  std::ifstream in(input);
  if (!in) throw ConfigError(input.string() + ": cannot open");
  SampledSignal u = [&] {
    try {
      return ReadSignalCsv(in);
    } catch (const Error& e) {
      throw ConfigError(input.string() + ": " + e.what());
    }
  }();
  const SampledSignal h = Hilbert(u, pad);
  const std::string name = task.String("name", input.stem().string());
  return {Write(options, name + "_hilbert.csv",
                [&](std::ostream& out) { WriteSignalCsv(out, h, prov.Preamble()); })};
}

}  // namespace

Region ParseAnalyticSpec(const std::string& spec, GraphKind kind, const std::string& path) {
  const auto colon = spec.find(':');
  const std::string entry_name = spec.substr(0, colon);
  double k = 1.0;
  if (colon != std::string::npos) {
    const std::string value = spec.substr(colon + 1);
    std::size_t used = 0;
    try {
      k = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) {
      throw ConfigError(path + ": bad parameter in '" + spec + "'");
    }
  }
  try {
    return AnalyticRegion(ParseCatalogEntry(entry_name), k, kind);
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Files RunTask(const ExperimentConfig& config, const json& task, const std::string& path,
              const RunOptions& options) {
  if (!task.is_object() || !task.contains("command") || !task.at("command").is_string()) {
    throw ConfigError(path + ": expected an object with a string 'command'");
  }
  const std::string command = task.at("command").get<std::string>();
  const Provenance prov{config.Hash(), config.seed};
  if (command == "ssg estimate") {
    return SsgEstimate(config, Task(task, path, {"system", "unsigned", "overlays", "inputs"}),
                       options, prov);
  }
  if (command == "ssg analytic") {
    return SsgAnalytic(Task(task, path, {"entry", "kind"}), options, prov);
  }
  if (command == "stability check") {
    return Stability(config,
                     Task(task, path,
                          {"first", "second", "first_analytic", "second_analytic", "mode", "r",
                           "inputs"}),
                     options, prov);
  }
  if (command == "certify") {
    return Certify(config,
                   Task(task, path, {"system", "second", "property", "epsilon", "reading", "inputs"}),
                   options, prov);
  }
  if (command == "loop simulate") {
    return LoopSimulate(
        config, Task(task, path, {"first", "second", "tau", "sign", "input", "inputs", "w_set_tol"}),
        options, prov);
  }
  if (command == "loop gain") {
    return LoopGain(config,
                    Task(task, path,
                         {"first", "second", "sign", "tau", "observation_factor", "inputs"}),
                    options, prov);
  }
  if (command == "hilbert") {
    return HilbertCommand(config, Task(task, path, {"input", "pad_factor"}), options, prov);
  }
  throw ConfigError(path + ".command: unknown command '" + command + "'");
}

Files RunAll(const ExperimentConfig& config, const RunOptions& options) {
  Files files;
  for (std::size_t i = 0; i < config.tasks.size(); ++i) {
    const Files written =
        RunTask(config, config.tasks[i], "$.tasks[" + std::to_string(i) + "]", options);
    files.insert(files.end(), written.begin(), written.end());
  }
  return files;
}

int ExitCodeFor(const std::exception& error) {
  if (dynamic_cast<const ConfigError*>(&error) || dynamic_cast<const ParameterError*>(&error) ||
      dynamic_cast<const ModelError*>(&error) || dynamic_cast<const CatalogError*>(&error) ||
      dynamic_cast<const UnsupportedModelError*>(&error) ||
      dynamic_cast<const GridMismatchError*>(&error) ||
      dynamic_cast<const nlohmann::json::exception*>(&error) ||
      dynamic_cast<const std::filesystem::filesystem_error*>(&error)) {
    return kExitConfig;
  }
  return kExitNumerical;
}

}  // namespace ssgraph::cli
