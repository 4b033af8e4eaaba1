#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "ssgraph/errors.h"
#include "ssgraph/parallel.h"
#include "ssgraph/signals.h"
#include "ssgraph/spectral.h"

namespace ssgraph {
namespace {

using std::numbers::pi;

std::mt19937_64 MakeRng(std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

std::size_t ActiveSamples(const InputFamily& f) {
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(f.samples()) * (1.0 - f.settle_fraction)));
}

double LogUniform(std::mt19937_64& rng, double lo, double hi) {
  if (lo == hi) return lo;
  std::uniform_real_distribution<double> d(std::log(lo), std::log(hi));
  return std::exp(d(rng));
}

std::vector<double> Multisine(const InputFamily& f, std::mt19937_64& rng) {
  const std::size_t n = f.samples();
  std::uniform_int_distribution<int> tones_dist(1, f.max_tones);
  std::uniform_real_distribution<double> amp_dist(0.2, 1.0);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * pi);
  const int tones = tones_dist(rng);
  std::vector<double> v(n, 0.0);
  for (int k = 0; k < tones; ++k) {
    const double omega = LogUniform(rng, f.omega_min, f.omega_max);
    const double amp = amp_dist(rng);
    const double phase = phase_dist(rng);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] += amp * std::cos(omega * static_cast<double>(i) * f.dt + phase);
    }
  }
  return v;
}

std::vector<double> FilteredNoise(const InputFamily& f, std::mt19937_64& rng) {
  const std::size_t n = f.samples();
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<double> white(n);
  for (double& x : white) x = noise(rng);
  Spectrum spec = Fourier(SampledSignal(std::move(white), f.dt), 1);
  std::size_t kept = 0;
  for (std::size_t k = 0; k < spec.size(); ++k) {
    const double w = std::abs(spec.omega(k));
    if (w < f.omega_min || w > f.omega_max) {
      spec.coefficients[k] = 0.0;
    } else {
      ++kept;
    }
  }
  if (kept == 0) {
    throw ParameterError("filtered-noise band [" + std::to_string(f.omega_min) + ", " +
                         std::to_string(f.omega_max) +
                         "] rad/s is narrower than the frequency resolution");
  }
  const SampledSignal filtered = InverseFourier(spec);
  return std::vector<double>(filtered.values().begin(), filtered.values().begin() +
                                                            static_cast<std::ptrdiff_t>(n));
}

std::vector<double> Chirp(const InputFamily& f, std::mt19937_64& rng) {
  const std::size_t n = f.samples();
  const double span = static_cast<double>(ActiveSamples(f)) * f.dt;
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * pi);
  std::bernoulli_distribution upward(0.5);
  double w0 = f.omega_min;
  double w1 = f.omega_max;
  if (!upward(rng)) std::swap(w0, w1);
  const double phase0 = phase_dist(rng);
  const double ratio = w1 / w0;
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * f.dt;
    double phase;
    if (std::abs(std::log(ratio)) < 1e-12) {
      phase = w0 * t;
    } else {
      // Exponential sweep: instantaneous frequency w0 * ratio^(t / span).
      const double k = std::log(ratio) / span;
      phase = w0 * (std::exp(k * t) - 1.0) / k;
    }
    v[i] = std::cos(phase + phase0);
  }
  return v;
}

std::vector<double> WindowedPulse(const InputFamily& f, std::mt19937_64& rng) {
  const std::size_t n = f.samples();
  const std::size_t active = ActiveSamples(f);
  std::uniform_real_distribution<double> width_dist(f.pulse_min_width, f.pulse_max_width);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::bernoulli_distribution positive(0.5);
  const auto width = std::max<std::size_t>(
      4, static_cast<std::size_t>(std::llround(width_dist(rng) * static_cast<double>(active))));
  const auto room = active > width ? active - width : 0;
  const auto onset = static_cast<std::size_t>(std::floor(unit(rng) * static_cast<double>(room)));
  const double sign = positive(rng) ? 1.0 : -1.0;
  const std::vector<double> shape = RaisedCosineWindow(width, width, f.ramp_fraction);
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 0; i < width && onset + i < active; ++i) v[onset + i] = sign * shape[i];
  return v;
}

}  // namespace

std::string ToString(InputKind kind) {
  switch (kind) {
    case InputKind::kMultisine: return "multisine";
    case InputKind::kFilteredNoise: return "filtered-noise";
    case InputKind::kChirp: return "chirp";
    case InputKind::kWindowedPulse: return "windowed-pulse";
  }
  return "unknown";
}

InputKind ParseInputKind(const std::string& name) {
  if (name == "multisine") return InputKind::kMultisine;
  if (name == "filtered-noise") return InputKind::kFilteredNoise;
  if (name == "chirp") return InputKind::kChirp;
  if (name == "windowed-pulse") return InputKind::kWindowedPulse;
  throw ParameterError("unknown input kind '" + name + "'");
}

std::size_t InputFamily::samples() const {
  return static_cast<std::size_t>(std::llround(horizon / dt));
}

std::string InputFamily::Describe() const {
  std::ostringstream s;
  s << ToString(kind) << "(omega=[" << omega_min << "," << omega_max << "]";
  if (kind == InputKind::kMultisine) s << ",tones<=" << max_tones;
  if (kind == InputKind::kWindowedPulse) {
    s << ",width=[" << pulse_min_width << "," << pulse_max_width << "]";
  }
  s << ",T=" << horizon << ",dt=" << dt << ",seed=" << seed << ",count=" << count << ")";
  return s.str();
}

void InputFamily::Validate() const {
  if (!(dt > 0.0) || !(horizon > 0.0)) throw ParameterError("dt and horizon must be positive");
  if (samples() < 16) throw ParameterError("horizon must span at least 16 samples");
  if (count < 0) throw ParameterError("count must be non-negative");
  if (!(omega_min > 0.0) || omega_min > omega_max) {
    throw ParameterError("need 0 < omega_min <= omega_max");
  }
  const double nyquist = pi / dt;
  if (omega_max >= nyquist) {
    std::ostringstream msg;
    msg << "omega_max = " << omega_max << " rad/s is at or above the Nyquist frequency "
        << nyquist << " rad/s";
    throw ParameterError(msg.str());
  }
  if (max_tones < 1) throw ParameterError("max_tones must be at least 1");
  if (!(ramp_fraction > 0.0) || ramp_fraction > 0.5) {
    throw ParameterError("ramp_fraction must lie in (0, 0.5]");
  }
  if (settle_fraction < 0.0 || settle_fraction >= 0.5) {
    throw ParameterError("settle_fraction must lie in [0, 0.5)");
  }
  if (!(tail_fraction > 0.0) || tail_fraction >= 1.0) {
    throw ParameterError("tail_fraction must lie in (0, 1)");
  }
  if (!(pulse_min_width > 0.0) || pulse_min_width > pulse_max_width || pulse_max_width > 1.0) {
    throw ParameterError("need 0 < pulse_min_width <= pulse_max_width <= 1");
  }
}

std::vector<double> RaisedCosineWindow(std::size_t n, std::size_t active, double ramp_fraction) {
  std::vector<double> w(n, 0.0);
  active = std::min(active, n);
  const auto ramp = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::llround(ramp_fraction * static_cast<double>(active))), 1,
      std::max<std::size_t>(active / 2, 1));
  for (std::size_t i = 0; i < active; ++i) w[i] = 1.0;
  for (std::size_t i = 0; i < ramp && i < active; ++i) {
    const double r = 0.5 * (1.0 - std::cos(pi * static_cast<double>(i) / static_cast<double>(ramp)));
    w[i] = r;
    w[active - 1 - i] = r;
  }
  return w;
}

SampledSignal GenerateInput(const InputFamily& family, int index) {
  family.Validate();
  auto rng = MakeRng(family.seed, index);
  std::vector<double> v;
  switch (family.kind) {
    case InputKind::kMultisine: v = Multisine(family, rng); break;
    case InputKind::kFilteredNoise: v = FilteredNoise(family, rng); break;
    case InputKind::kChirp: v = Chirp(family, rng); break;
    case InputKind::kWindowedPulse: v = WindowedPulse(family, rng); break;
  }
  if (family.kind != InputKind::kWindowedPulse) {
    const auto w = RaisedCosineWindow(v.size(), ActiveSamples(family), family.ramp_fraction);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] *= w[i];
  }
  SampledSignal u(std::move(v), family.dt);
  const double norm = Norm(u);
  if (!(norm > 0.0)) throw ParameterError("input family produced a zero signal");
  u = u.Scaled(1.0 / norm);
  if (TailEnergyFraction(u, family.tail_fraction) >= family.tail_energy_limit) {
    throw ParameterError("generated input violates the energy-tail criterion");
  }
  return u;
}

std::vector<SampledSignal> GenerateInputs(const InputFamily& family, int jobs) {
  family.Validate();
  std::vector<std::optional<SampledSignal>> slots(static_cast<std::size_t>(family.count));
  ParallelFor(slots.size(), jobs,
              [&](std::size_t i) { slots[i] = GenerateInput(family, static_cast<int>(i)); });
  std::vector<SampledSignal> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace ssgraph
