#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "ssgraph/geometry.h"
#include "ssgraph/signals.h"
#include "ssgraph/spectral.h"
#include "ssgraph/systems.h"

namespace ssgraph {

/// One sample rho * exp(j phi) of a (signed) scaled graph. When
/// `indeterminate` is set the point stands for the conjugate pair
/// rho * exp(+-j |phi|).
struct SsgPoint {
  double gain = 0.0;
  double phase = 0.0;  // in [-pi, pi]
  bool indeterminate = false;
  int input_id = -1;

  friend bool operator==(const SsgPoint&, const SsgPoint&) = default;
};

/// A finite sample of SSG(H) (or SG(H)) with provenance.
struct PointCloud {
  std::vector<SsgPoint> points;
  int zero_input_count = 0;   // u = 0 pairs, excluded (infinite gain)
  int zero_output_count = 0;  // y = 0 pairs, stored as (0, 0)
  std::string source;
};

inline constexpr double kDefaultZeroPairingTolerance = 1e-6;

/// rho(u, y) = ||y|| / ||u||. Throws DegeneratePairError when u = 0.
double Gain(const SampledSignal& u, const SampledSignal& y);

/// theta(u, y) = arccos(<u, y> / (||u|| ||y||)) in [0, pi].
double UnsignedPhase(const SampledSignal& u, const SampledSignal& y);

struct SignedPhase {
  double phase = 0.0;
  bool indeterminate = false;
};

/// sgn(Pi(u, y)) theta(u, y); indeterminate (phase = +theta) when
/// |Pi| <= tol ||u|| ||y||.
SignedPhase ComputeSignedPhase(const SampledSignal& u, const SampledSignal& y,
                               double tol = kDefaultZeroPairingTolerance,
                               int pad_factor = kDefaultPadFactor);

struct EstimateOptions {
  double zero_pairing_tol = kDefaultZeroPairingTolerance;
  int pad_factor = kDefaultPadFactor;
  int jobs = 1;
  SimulationOptions simulation;
};

/// Signed scaled graph sampled with the inputs of `family`, one point per
/// input, ordered by input index.
PointCloud EstimateSsg(const OperatorModel& model, const InputFamily& family,
                       const EstimateOptions& options = {});
PointCloud EstimateSsg(const OperatorModel& model, std::span<const SampledSignal> inputs,
                       const EstimateOptions& options = {});

/// Unsigned scaled graph on the same inputs: every point is (rho, theta)
/// flagged indeterminate, i.e. expands to rho * exp(+-j theta).
PointCloud EstimateSg(const OperatorModel& model, std::span<const SampledSignal> inputs,
                      const EstimateOptions& options = {});

/// (rho, phi) -> (1/rho, -phi). Throws NonInvertiblePointError on rho = 0.
PointCloud InvertCloud(const PointCloud& cloud);
/// (rho, phi) -> (rho, -phi).
PointCloud ConjugateCloud(const PointCloud& cloud);
/// SSG u SSG*; real-axis points are not duplicated.
PointCloud SgFromSsg(const PointCloud& cloud);
/// Complex map z -> -tau z on every set point. Throws ParameterError unless
/// tau is in (0, 1].
PointCloud ScaleNegateCloud(const PointCloud& cloud, double tau);

/// Set points of one SsgPoint (two for an indeterminate point off the real
/// axis). Conjugate pairs are exact mirror images.
std::vector<Complex> ExpandPoint(const SsgPoint& point);
/// All set points of the cloud, in cloud order.
std::vector<Complex> ExpandedPoints(const PointCloud& cloud);
/// Sorted, de-duplicated set points, for set identities.
std::vector<Complex> ExpandedPointSet(const PointCloud& cloud);

Region CloudRegion(const PointCloud& cloud, std::string label = {});

/// Wraps an angle into [-pi, pi].
double WrapPhase(double phi);

}  // namespace ssgraph
