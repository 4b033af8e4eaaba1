#pragma once

#include <vector>

#include "ssgraph/geometry.h"
#include "ssgraph/signals.h"
#include "ssgraph/systems.h"

namespace ssgraph {

/// Signals of the interconnection u1 = w + sign * tau * y2, y1 = H1(u1),
/// u2 = y1, y2 = H2(u2). sign = -1 is negative feedback.
struct LoopTrajectory {
  SampledSignal w, u1, y1, u2, y2;
  double tau = 1.0;
  int sign = -1;
  /// max_t |u1 - w - sign tau y2|.
  double max_residual = 0.0;
};

LoopTrajectory ClosedLoopSimulate(const OperatorModel& h1, const OperatorModel& h2,
                                  const SampledSignal& w, double tau, int sign,
                                  const SimulationOptions& options = {});

struct GainOptions {
  /// Inputs are generated on the family horizon and zero-extended to
  /// observation_factor * horizon before simulating.
  double observation_factor = 2.0;
  /// Flag unstable when the estimate grows by this factor when the
  /// observation horizon doubles.
  double instability_ratio = 2.0;
  int jobs = 1;
  SimulationOptions simulation;
};

struct GainSample {
  int input_id = 0;
  double tau = 1.0;
  double gain = 0.0;          // ||u1|| / ||w|| on the base observation horizon
  double gain_doubled = 0.0;  // same on twice that horizon
};

struct GainEstimate {
  double gamma = 0.0;          // max gain over inputs and tau
  double gamma_doubled = 0.0;  // max over the doubled horizon
  int worst_input = -1;
  double worst_tau = 1.0;
  double growth_ratio = 1.0;   // gamma_doubled / gamma
  bool unstable = false;
  std::vector<GainSample> samples;  // ordered by (input, tau)
};

/// max over sampled w and tau of ||u1|| / ||w||, with the horizon-doubling
/// instability flag.
GainEstimate EmpiricalGain(const OperatorModel& h1, const OperatorModel& h2,
                           const InputFamily& family, const TauGrid& grid, int sign,
                           const GainOptions& options = {});

}  // namespace ssgraph
