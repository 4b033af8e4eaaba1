#include "ssgraph/ssg.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "ssgraph/errors.h"
#include "ssgraph/parallel.h"

namespace ssgraph {
namespace {

constexpr double kPi = std::numbers::pi;

void RequireNonzero(const SampledSignal& u, const SampledSignal& y) {
  RequireSameGrid(u, y);
  if (u.IsZero()) throw DegeneratePairError("input signal has zero norm");
  if (y.IsZero()) throw DegeneratePairError("output signal has zero norm");
}

template <typename MakePoint>
PointCloud Estimate(const OperatorModel& model, std::span<const SampledSignal> inputs,
                    const EstimateOptions& options, MakePoint make_point) {
  std::vector<std::optional<SsgPoint>> slots(inputs.size());
  std::vector<char> zero_input(inputs.size(), 0);
  ParallelFor(inputs.size(), options.jobs, [&](std::size_t i) {
    const SampledSignal& u = inputs[i];
    if (u.IsZero()) {
      zero_input[i] = 1;
      return;
    }
    SampledSignal y = [&] {
      try {
        return Simulate(model, u, options.simulation);
      } catch (const LoopDivergenceError& e) {
        throw LoopDivergenceError("input " + std::to_string(i) + ": " + e.what(), e.step());
      }
    }();
    SsgPoint p;
    p.input_id = static_cast<int>(i);
    if (!y.IsZero()) make_point(u, y, &p);
    slots[i] = p;
  });
  PointCloud cloud;
  for (std::size_t i = 0; i < slots.size(); ++i) {
    if (zero_input[i]) {
      ++cloud.zero_input_count;
      continue;
    }
    if (slots[i]->gain == 0.0) ++cloud.zero_output_count;
    cloud.points.push_back(*slots[i]);
  }
  cloud.source = model.Describe();
  return cloud;
}

}  // namespace

double Gain(const SampledSignal& u, const SampledSignal& y) {
  RequireSameGrid(u, y);
  if (u.IsZero()) throw DegeneratePairError("gain is infinite for a zero input");
  return Norm(y) / Norm(u);
}

double UnsignedPhase(const SampledSignal& u, const SampledSignal& y) {
  RequireNonzero(u, y);
  const double c = InnerProduct(u, y) / (Norm(u) * Norm(y));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

SignedPhase ComputeSignedPhase(const SampledSignal& u, const SampledSignal& y, double tol,
                               int pad_factor) {
  const double theta = UnsignedPhase(u, y);
  const double pairing = HilbertPairing(u, y, pad_factor);
  if (std::abs(pairing) <= tol * Norm(u) * Norm(y)) return {theta, true};
  return {pairing > 0.0 ? theta : -theta, false};
}

PointCloud EstimateSsg(const OperatorModel& model, std::span<const SampledSignal> inputs,
                       const EstimateOptions& options) {
  return Estimate(model, inputs, options,
                  [&](const SampledSignal& u, const SampledSignal& y, SsgPoint* p) {
                    const SignedPhase s = ComputeSignedPhase(u, y, options.zero_pairing_tol,
                                                             options.pad_factor);
                    p->gain = Gain(u, y);
                    p->phase = s.phase;
                    p->indeterminate = s.indeterminate;
                  });
}

PointCloud EstimateSsg(const OperatorModel& model, const InputFamily& family,
                       const EstimateOptions& options) {
  const std::vector<SampledSignal> inputs = GenerateInputs(family, options.jobs);
  PointCloud cloud = EstimateSsg(model, std::span<const SampledSignal>(inputs), options);
  cloud.source += " | " + family.Describe();
  return cloud;
}

PointCloud EstimateSg(const OperatorModel& model, std::span<const SampledSignal> inputs,
                      const EstimateOptions& options) {
  PointCloud cloud = Estimate(model, inputs, options,
                              [](const SampledSignal& u, const SampledSignal& y, SsgPoint* p) {
                                p->gain = Gain(u, y);
                                p->phase = UnsignedPhase(u, y);
                                p->indeterminate = true;
                              });
  cloud.source = "SG " + cloud.source;
  return cloud;
}

PointCloud InvertCloud(const PointCloud& cloud) {
  PointCloud out = cloud;
  for (SsgPoint& p : out.points) {
    if (!(p.gain > 0.0)) {
      throw NonInvertiblePointError("zero-gain point (input " + std::to_string(p.input_id) +
                                    ") has no inverse");
    }
    p.gain = 1.0 / p.gain;
    p.phase = -p.phase;
  }
  out.source = "inverse(" + cloud.source + ")";
  return out;
}

PointCloud ConjugateCloud(const PointCloud& cloud) {
  PointCloud out = cloud;
  for (SsgPoint& p : out.points) p.phase = -p.phase;
  out.source = "conjugate(" + cloud.source + ")";
  return out;
}

PointCloud SgFromSsg(const PointCloud& cloud) {
  PointCloud out = cloud;
  out.points.clear();
  for (const SsgPoint& p : cloud.points) {
    out.points.push_back(p);
    if (!p.indeterminate && p.phase != 0.0) {
      SsgPoint c = p;
      c.phase = -p.phase;
      out.points.push_back(c);
    }
  }
  out.source = "union(" + cloud.source + ")";
  return out;
}

PointCloud ScaleNegateCloud(const PointCloud& cloud, double tau) {
  if (!(tau > 0.0) || !(tau <= 1.0)) throw ParameterError("tau must lie in (0, 1]");
  PointCloud out = cloud;
  for (SsgPoint& p : out.points) {
    if (p.gain == 0.0) continue;
    p.gain *= tau;
    if (p.indeterminate) {
      p.phase = kPi - std::abs(p.phase);
    } else if (p.phase == 0.0) {
      p.phase = kPi;
      p.indeterminate = true;
    } else {
      p.phase = p.phase > 0.0 ? p.phase - kPi : p.phase + kPi;
    }
  }
  out.source = "scale_negate(" + cloud.source + ")";
  return out;
}

std::vector<Complex> ExpandPoint(const SsgPoint& point) {
  const double theta = std::abs(point.phase);
  const double re = point.gain * std::cos(theta);
  const double im = theta == kPi ? 0.0 : point.gain * std::sin(theta);
  if (im == 0.0) return {Complex(re, 0.0)};
  if (point.indeterminate) return {Complex(re, im), Complex(re, -im)};
  return {Complex(re, point.phase < 0.0 ? -im : im)};
}

std::vector<Complex> ExpandedPoints(const PointCloud& cloud) {
  std::vector<Complex> out;
  out.reserve(cloud.points.size() * 2);
  for (const SsgPoint& p : cloud.points) {
    for (Complex z : ExpandPoint(p)) out.push_back(z);
  }
  return out;
}

std::vector<Complex> ExpandedPointSet(const PointCloud& cloud) {
  std::vector<Complex> out = ExpandedPoints(cloud);
  auto less = [](Complex a, Complex b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  };
  std::sort(out.begin(), out.end(), less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Region CloudRegion(const PointCloud& cloud, std::string label) {
  if (label.empty()) label = cloud.source;
  return Region(PointSet{ExpandedPoints(cloud)}, std::move(label));
}

double WrapPhase(double phi) {
  const double w = std::remainder(phi, 2.0 * kPi);
  return w < -kPi ? w + 2.0 * kPi : w;
}

}  // namespace ssgraph
