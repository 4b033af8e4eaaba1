#include "ssgraph/io.h"

#include <cinttypes>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "ssgraph/errors.h"

namespace ssgraph {
namespace {

using nlohmann::json;

const json& Field(const json& doc, const char* key, const std::string& path) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw ModelError(path + ": missing field '" + key + "'");
  }
  return doc.at(key);
}

double Number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ModelError(path + ": expected a number");
  return v.get<double>();
}

std::vector<double> Numbers(const json& v, const std::string& path) {
  if (!v.is_array()) throw ModelError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(Number(v[i], path + "[" + std::to_string(i) + "]"));
  }
  return out;
}

Eigen::MatrixXd Matrix(const json& v, const std::string& path) {
  if (!v.is_array()) throw ModelError(path + ": expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(v.size());
  const auto cols = rows > 0 && v[0].is_array() ? static_cast<Eigen::Index>(v[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    const std::vector<double> row = Numbers(v[static_cast<std::size_t>(r)], row_path);
    if (static_cast<Eigen::Index>(row.size()) != cols) {
      throw ModelError(row_path + ": rows must have equal length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

json MatrixJson(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

const char* ParameterKey(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::kSaturation: return "limit";
    case NonlinearityKind::kDeadzone: return "width";
    case NonlinearityKind::kRelu: return nullptr;
    case NonlinearityKind::kCubic: return "coefficient";
    case NonlinearityKind::kGain: return "gain";
  }
  return nullptr;
}

json Pair(Complex z) { return json::array({z.real(), z.imag()}); }

void WritePreamble(std::ostream& out, const std::string& preamble) {
  if (preamble.empty()) return;
  std::istringstream lines(preamble);
  std::string line;
  while (std::getline(lines, line)) out << "# " << line << "\n";
}

}  // namespace

OperatorModel ModelFromJson(const json& doc, const std::string& path) {
  if (!doc.is_object()) throw ModelError(path + ": expected an object");
  const json& type_node = Field(doc, "type", path);
  if (!type_node.is_string()) throw ModelError(path + ".type: expected a string");
  const std::string type = type_node.get<std::string>();
  try {
    if (type == "tf") {
      return OperatorModel::Tf(Numbers(Field(doc, "num", path), path + ".num"),
                               Numbers(Field(doc, "den", path), path + ".den"));
    }
    if (type == "ss") {
      return OperatorModel::Ss(Matrix(Field(doc, "A", path), path + ".A"),
                               Matrix(Field(doc, "B", path), path + ".B"),
                               Matrix(Field(doc, "C", path), path + ".C"),
                               Matrix(Field(doc, "D", path), path + ".D"));
    }
    if (type == "static") {
      const json& kind_node = Field(doc, "kind", path);
      if (!kind_node.is_string()) throw ModelError(path + ".kind: expected a string");
      const NonlinearityKind kind = ParseNonlinearityKind(kind_node.get<std::string>());
      double parameter = 1.0;
      if (const char* key = ParameterKey(kind)) {
        if (doc.contains(key)) {
          parameter = Number(doc.at(key), path + "." + key);
        } else if (kind != NonlinearityKind::kCubic) {
          throw ModelError(path + ": missing field '" + key + "'");
        }
      }
      return OperatorModel::Static(kind, parameter);
    }
    if (type == "series" || type == "parallel") {
      const OperatorModel left = ModelFromJson(Field(doc, "left", path), path + ".left");
      const OperatorModel right = ModelFromJson(Field(doc, "right", path), path + ".right");
      return type == "series" ? OperatorModel::MakeSeries(left, right)
                              : OperatorModel::MakeParallel(left, right);
    }
    if (type == "feedback") {
      const OperatorModel forward =
          ModelFromJson(Field(doc, "forward", path), path + ".forward");
      const OperatorModel backward =
          ModelFromJson(Field(doc, "backward", path), path + ".backward");
      int sign = -1;
      if (doc.contains("sign")) sign = static_cast<int>(Number(doc.at("sign"), path + ".sign"));
      return OperatorModel::MakeFeedback(forward, backward, sign);
    }
    if (type == "scale") {
      return OperatorModel::MakeScale(ModelFromJson(Field(doc, "inner", path), path + ".inner"),
                                      Number(Field(doc, "factor", path), path + ".factor"));
    }
  } catch (const ModelError& e) {
    const std::string what = e.what();
    if (what.rfind("$", 0) == 0) throw;
    throw ModelError(path + ": " + what);
  }
  throw ModelError(path + ".type: unknown model type '" + type + "'");
}

json ModelToJson(const OperatorModel& model) {
  struct Visitor {
    json operator()(const TransferFunction& tf) const {
      return {{"type", "tf"}, {"num", tf.numerator}, {"den", tf.denominator}};
    }
    json operator()(const StateSpace& ss) const {
      return {{"type", "ss"},
              {"A", MatrixJson(ss.a)},
              {"B", MatrixJson(ss.b)},
              {"C", MatrixJson(ss.c)},
              {"D", MatrixJson(ss.d)}};
    }
    json operator()(const StaticNonlinearity& s) const {
      json j = {{"type", "static"}, {"kind", ToString(s.kind)}};
      if (const char* key = ParameterKey(s.kind)) j[key] = s.parameter;
      return j;
    }
    json operator()(const Series& s) const {
      return {{"type", "series"}, {"left", ModelToJson(*s.left)}, {"right", ModelToJson(*s.right)}};
    }
    json operator()(const Parallel& s) const {
      return {{"type", "parallel"},
              {"left", ModelToJson(*s.left)},
              {"right", ModelToJson(*s.right)}};
    }
    json operator()(const Feedback& s) const {
      return {{"type", "feedback"},
              {"forward", ModelToJson(*s.forward)},
              {"backward", ModelToJson(*s.backward)},
              {"sign", s.sign}};
    }
    json operator()(const Scale& s) const {
      return {{"type", "scale"}, {"factor", s.factor}, {"inner", ModelToJson(*s.inner)}};
    }
  };
  return std::visit(Visitor{}, model.variant());
}

InputFamily InputFamilyFromJson(const json& doc, const InputFamily& defaults) {
  if (!doc.is_object()) throw ParameterError("input family must be a JSON object");
  InputFamily f = defaults;
  for (const auto& [key, value] : doc.items()) {
    auto number = [&]() {
      if (!value.is_number()) throw ParameterError("inputs." + key + ": expected a number");
      return value.get<double>();
    };
    auto integer = [&]() {
      if (!value.is_number_integer()) {
        throw ParameterError("inputs." + key + ": expected an integer");
      }
      return value.get<std::int64_t>();
    };
    if (key == "kind") {
      if (!value.is_string()) throw ParameterError("inputs.kind: expected a string");
      f.kind = ParseInputKind(value.get<std::string>());
    } else if (key == "omega_min") {
      f.omega_min = number();
    } else if (key == "omega_max") {
      f.omega_max = number();
    } else if (key == "max_tones") {
      f.max_tones = static_cast<int>(integer());
    } else if (key == "pulse_min_width") {
      f.pulse_min_width = number();
    } else if (key == "pulse_max_width") {
      f.pulse_max_width = number();
    } else if (key == "ramp_fraction") {
      f.ramp_fraction = number();
    } else if (key == "settle_fraction") {
      f.settle_fraction = number();
    } else if (key == "tail_fraction") {
      f.tail_fraction = number();
    } else if (key == "tail_energy_limit") {
      f.tail_energy_limit = number();
    } else if (key == "seed") {
      const std::int64_t s = integer();
      if (s < 0) throw ParameterError("inputs.seed: must be non-negative");
      f.seed = static_cast<std::uint64_t>(s);
    } else if (key == "count") {
      f.count = static_cast<int>(integer());
    } else if (key == "horizon") {
      f.horizon = number();
    } else if (key == "dt") {
      f.dt = number();
    } else {
      throw ParameterError("inputs: unknown field '" + key + "'");
    }
  }
  f.Validate();
  return f;
}

json InputFamilyToJson(const InputFamily& f) {
  return {{"kind", ToString(f.kind)},
          {"omega_min", f.omega_min},
          {"omega_max", f.omega_max},
          {"max_tones", f.max_tones},
          {"pulse_min_width", f.pulse_min_width},
          {"pulse_max_width", f.pulse_max_width},
          {"ramp_fraction", f.ramp_fraction},
          {"settle_fraction", f.settle_fraction},
          {"tail_fraction", f.tail_fraction},
          {"tail_energy_limit", f.tail_energy_limit},
          {"seed", f.seed},
          {"count", f.count},
          {"horizon", f.horizon},
          {"dt", f.dt}};
}

std::string FormatNumber(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.15g", value);
  return buffer;
}

void WriteSignalCsv(std::ostream& out, const SampledSignal& signal, const std::string& preamble) {
  WritePreamble(out, preamble);
  out << "t,value\n";
  for (std::size_t i = 0; i < signal.size(); ++i) {
    out << FormatNumber(signal.time(i)) << ',' << FormatNumber(signal[i]) << '\n';
  }
}

SampledSignal ReadSignalCsv(std::istream& in) {
  std::vector<double> t, v;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (line == "t,value") continue;
    const auto comma = line.find(',');
    const std::string where = "line " + std::to_string(line_no);
    if (comma == std::string::npos) throw ParameterError(where + ": expected 't,value'");
    try {
      std::size_t used = 0;
      const std::string a = line.substr(0, comma), b = line.substr(comma + 1);
      const double tv = std::stod(a, &used);
      if (used != a.size()) throw std::invalid_argument(a);
      const double vv = std::stod(b, &used);
      if (used != b.size()) throw std::invalid_argument(b);
      t.push_back(tv);
      v.push_back(vv);
    } catch (const std::logic_error&) {
      throw ParameterError(where + ": malformed number in '" + line + "'");
    }
  }
  if (t.size() < 2) throw ParameterError("signal CSV needs at least two samples");
  const double dt = t[1] - t[0];
  if (!(dt > 0.0)) throw ParameterError("line with the second sample: time must increase");
  for (std::size_t i = 2; i < t.size(); ++i) {
    const double expected = t[0] + static_cast<double>(i) * dt;
    if (std::abs(t[i] - expected) > 1e-6 * dt + 1e-9 * std::abs(expected)) {
      throw ParameterError("sample " + std::to_string(i) + ": time column is not uniform");
    }
  }
  return SampledSignal(std::move(v), dt, t[0]);
}

void WriteSpectrumCsv(std::ostream& out, const Spectrum& s, const std::string& preamble) {
  WritePreamble(out, preamble);
  out << "omega,re,im\n";
  const std::size_t n = s.size();
  auto row = [&](std::size_t k) {
    out << FormatNumber(s.omega(k)) << ',' << FormatNumber(s.coefficients[k].real()) << ','
        << FormatNumber(s.coefficients[k].imag()) << '\n';
  };
  for (std::size_t k = n / 2 + 1; k < n; ++k) row(k);
  for (std::size_t k = 0; k <= n / 2 && k < n; ++k) row(k);
}

void WriteCloudCsv(std::ostream& out, const PointCloud& cloud, const std::string& preamble) {
  WritePreamble(out, preamble);
  out << "input_id,gain,phase,re,im,indeterminate\n";
  for (const SsgPoint& p : cloud.points) {
    for (Complex z : ExpandPoint(p)) {
      const double phase = p.indeterminate ? (z.imag() < 0.0 ? -std::abs(p.phase)
                                                              : std::abs(p.phase))
                                           : p.phase;
      out << p.input_id << ',' << FormatNumber(p.gain) << ',' << FormatNumber(phase) << ','
          << FormatNumber(z.real()) << ',' << FormatNumber(z.imag()) << ','
          << (p.indeterminate ? 1 : 0) << '\n';
    }
  }
}

void WriteTrajectoryCsv(std::ostream& out, const LoopTrajectory& t, const std::string& preamble) {
  WritePreamble(out, preamble);
  out << "t,w,u1,y1,u2,y2\n";
  for (std::size_t i = 0; i < t.w.size(); ++i) {
    out << FormatNumber(t.w.time(i)) << ',' << FormatNumber(t.w[i]) << ','
        << FormatNumber(t.u1[i]) << ',' << FormatNumber(t.y1[i]) << ','
        << FormatNumber(t.u2[i]) << ',' << FormatNumber(t.y2[i]) << '\n';
  }
}

json VerdictToJson(const StabilityVerdict& v) {
  return {{"separated", v.separated},
          {"margin", v.margin},
          {"worst_tau", v.worst_tau},
          {"worst_pair", json::array({Pair(v.worst_from), Pair(v.worst_to)})},
          {"mode", ToString(v.mode)},
          {"r", v.r},
          {"tau_grid", v.tau_grid}};
}

json ReportToJson(const CertificateReport& r) {
  return {{"property", ToString(r.property)},
          {"epsilon", r.epsilon},
          {"verdict", r.pass ? "pass" : "fail"},
          {"worst_margin", r.worst_margin},
          {"worst_input", r.worst_input},
          {"sample_count", r.sample_count},
          {"family", r.family},
          {"summary", (r.pass ? "no violation among " : "violation found among ") +
                          std::to_string(r.sample_count) + " seeded inputs"}};
}

json PassivityVerdictToJson(const PassivityVerdict& v) {
  return {{"verdict", v.pass ? "pass" : "fail"},
          {"first", ReportToJson(v.first)},
          {"second", ReportToJson(v.second)},
          {"separation_margin", v.separation_margin}};
}

json NiVerdictToJson(const NiVerdict& v) {
  return {{"verdict", v.pass ? "pass" : "fail"},
          {"worst_product", v.worst_product},
          {"worst_pair", json::array({Pair(v.worst_first), Pair(v.worst_second)})},
          {"real_axis_points", json::array({v.real_axis_points_first,
                                            v.real_axis_points_second})},
          {"first", ReportToJson(v.first)},
          {"second", ReportToJson(v.second)}};
}

json WSetToJson(const WSetDiagnostic& d) {
  return {{"near_member", d.near_member},
          {"degenerate", d.degenerate},
          {"energy_balance", d.energy_balance},
          {"norm_balance", d.norm_balance},
          {"pairing_product", d.pairing_product}};
}

json GainToJson(const GainEstimate& e, std::uint64_t seed) {
  json samples = json::array();
  for (const GainSample& s : e.samples) {
    samples.push_back({{"seed", seed},
                       {"input_id", s.input_id},
                       {"tau", s.tau},
                       {"gain", s.gain},
                       {"gain_doubled", s.gain_doubled}});
  }
  return {{"gamma", e.gamma},
          {"gamma_doubled", e.gamma_doubled},
          {"growth_ratio", e.growth_ratio},
          {"unstable", e.unstable},
          {"worst_input", e.worst_input},
          {"worst_tau", e.worst_tau},
          {"seed", seed},
          {"summary", e.unstable ? "estimate grows under horizon doubling"
                                 : "no counterexample found"},
          {"samples", samples}};
}

std::uint64_t Fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string HexDigest(std::uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016" PRIx64, value);
  return buffer;
}

}  // namespace ssgraph
