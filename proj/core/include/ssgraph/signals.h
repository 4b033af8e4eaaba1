#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace ssgraph {

/// A finite-horizon, uniformly sampled real signal. Sample i lives at time
/// start + i * dt. Signals are immutable once built; the arithmetic helpers
/// return new signals.
class SampledSignal {
 public:
  /// Throws ParameterError unless dt > 0 and every sample is finite.
  SampledSignal(std::vector<double> samples, double dt, double start = 0.0);

  static SampledSignal Zeros(std::size_t size, double dt, double start = 0.0);
  static SampledSignal FromFunction(std::size_t size, double dt,
                                    const std::function<double(double)>& f,
                                    double start = 0.0);

  std::span<const double> samples() const { return samples_; }
  const std::vector<double>& values() const { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double dt() const { return dt_; }
  double start() const { return start_; }
  double time(std::size_t i) const { return start_ + static_cast<double>(i) * dt_; }
  /// Length of the support, size() * dt.
  double horizon() const { return static_cast<double>(size()) * dt_; }
  bool IsZero() const;

  /// Appends zeros so the result has `size` samples (no-op if already longer).
  SampledSignal ZeroExtended(std::size_t size) const;
  SampledSignal Truncated(std::size_t size) const;
  SampledSignal Scaled(double factor) const;

  friend SampledSignal operator+(const SampledSignal& a, const SampledSignal& b);
  friend SampledSignal operator-(const SampledSignal& a, const SampledSignal& b);
  friend SampledSignal operator*(double a, const SampledSignal& u) { return u.Scaled(a); }

  friend bool operator==(const SampledSignal&, const SampledSignal&) = default;

 private:
  std::vector<double> samples_;
  double dt_;
  double start_;
};

/// Throws GridMismatchError unless a and b share dt, start and length.
void RequireSameGrid(const SampledSignal& a, const SampledSignal& b);

/// Left-rectangle approximation of the L2 inner product, sum u[i] y[i] dt.
double InnerProduct(const SampledSignal& u, const SampledSignal& y);

double Norm(const SampledSignal& u);

/// Fraction of the energy carried by the last `tail` fraction of the samples.
double TailEnergyFraction(const SampledSignal& u, double tail = 0.05);

// ---------------------------------------------------------------------------
// Input families used to probe operators.

enum class InputKind { kMultisine, kFilteredNoise, kChirp, kWindowedPulse };

std::string ToString(InputKind kind);
/// Accepts "multisine", "filtered-noise", "chirp", "windowed-pulse".
InputKind ParseInputKind(const std::string& name);

/// A deterministic recipe for `count` unit-norm probe signals. Every signal
/// is active on [0, (1 - settle_fraction) * horizon) with raised-cosine
/// ramps and is exactly zero afterwards, so the outputs of stable blocks can
/// settle inside the horizon.
struct InputFamily {
  InputKind kind = InputKind::kMultisine;
  double omega_min = 0.05;  // rad/s
  double omega_max = 50.0;  // rad/s
  int max_tones = 8;        // multisine only
  double pulse_min_width = 0.1;  // fractions of the active span
  double pulse_max_width = 0.9;
  double ramp_fraction = 0.1;
  double settle_fraction = 0.05;
  double tail_fraction = 0.05;
  double tail_energy_limit = 0.01;
  std::uint64_t seed = 0;
  int count = 1;
  double horizon = 60.0;  // seconds
  double dt = 0.01;       // seconds

  std::size_t samples() const;
  /// One-line description used for provenance in reports.
  std::string Describe() const;
  /// Throws ParameterError describing the first violated constraint.
  void Validate() const;
};

/// Raised-cosine (Tukey) window active on the first `active` samples of an
/// n-sample grid, with ramps of round(ramp_fraction * active) samples.
std::vector<double> RaisedCosineWindow(std::size_t n, std::size_t active,
                                       double ramp_fraction);

/// Signal `index` of the family; a pure function of (family, index).
SampledSignal GenerateInput(const InputFamily& family, int index);
std::vector<SampledSignal> GenerateInputs(const InputFamily& family, int jobs = 1);

}  // namespace ssgraph
