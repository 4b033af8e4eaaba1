#include "ssgraph/loop.h"

#include <cmath>
#include <sstream>

#include "ssgraph/errors.h"
#include "ssgraph/parallel.h"
#include "ssgraph/stepper.h"

namespace ssgraph {
namespace {

void RequireTauSign(double tau, int sign) {
  if (!(tau > 0.0) || !(tau <= 1.0)) throw ParameterError("tau must lie in (0, 1]");
  if (sign != -1 && sign != 1) throw ParameterError("loop sign must be -1 or +1");
}

double PrefixNorm(const std::vector<double>& x, std::size_t n, double dt) {
  double s = 0.0;
  for (std::size_t i = 0; i < n && i < x.size(); ++i) s += x[i] * x[i];
  return std::sqrt(s * dt);
}

}  // namespace

LoopTrajectory ClosedLoopSimulate(const OperatorModel& h1, const OperatorModel& h2,
                                  const SampledSignal& w, double tau, int sign,
                                  const SimulationOptions& options) {
  RequireTauSign(tau, sign);
  auto forward = internal::MakeStepper(h1, w.dt(), options);
  auto backward = internal::MakeStepper(h2, w.dt(), options);
  const double gain = sign * tau;
  const std::size_t n = w.size();
  std::vector<double> u1(n), y1(n), y2(n);
  double residual = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double e = internal::SolveLoop(*forward, *backward, gain, w[k], options, k);
    const double out1 = forward->Output(e);
    const double out2 = backward->Output(out1);
    if (!std::isfinite(e) || !std::isfinite(out1) || !std::isfinite(out2)) {
      throw LoopDivergenceError("closed-loop signals became non-finite", k);
    }
    forward->Advance(e);
    backward->Advance(out1);
    u1[k] = e;
    y1[k] = out1;
    y2[k] = out2;
    residual = std::max(residual, std::abs(e - w[k] - gain * out2));
  }
  LoopTrajectory t{w,
                   SampledSignal(std::move(u1), w.dt(), w.start()),
                   SampledSignal(y1, w.dt(), w.start()),
                   SampledSignal(y1, w.dt(), w.start()),
                   SampledSignal(std::move(y2), w.dt(), w.start()),
                   tau,
                   sign,
                   residual};
  return t;
}

GainEstimate EmpiricalGain(const OperatorModel& h1, const OperatorModel& h2,
                           const InputFamily& family, const TauGrid& grid, int sign,
                           const GainOptions& options) {
  if (grid.values.empty()) throw ParameterError("tau grid is empty");
  for (double tau : grid.values) RequireTauSign(tau, sign);
  if (!(options.observation_factor >= 1.0)) {
    throw ParameterError("observation_factor must be at least 1");
  }
  const std::vector<SampledSignal> inputs = GenerateInputs(family, options.jobs);
  const auto base = static_cast<std::size_t>(
      std::llround(options.observation_factor * static_cast<double>(family.samples())));
  const std::size_t doubled = 2 * base;
  const std::size_t taus = grid.values.size();

  std::vector<GainSample> samples(inputs.size() * taus);
  ParallelFor(samples.size(), options.jobs, [&](std::size_t idx) {
    const std::size_t i = idx / taus, j = idx % taus;
    const double tau = grid.values[j];
    const SampledSignal w = inputs[i].ZeroExtended(doubled);
    const LoopTrajectory t = [&] {
      try {
        return ClosedLoopSimulate(h1, h2, w, tau, sign, options.simulation);
      } catch (const LoopDivergenceError& e) {
        std::ostringstream msg;
        msg << "input " << i << ", tau " << tau << ": " << e.what();
        throw LoopDivergenceError(msg.str(), e.step());
      }
    }();
    const double wn = Norm(w);
    GainSample& s = samples[idx];
    s.input_id = static_cast<int>(i);
    s.tau = tau;
    if (wn > 0.0) {
      s.gain = PrefixNorm(t.u1.values(), base, w.dt()) / wn;
      s.gain_doubled = Norm(t.u1) / wn;
    }
  });

  GainEstimate est;
  for (const GainSample& s : samples) {
    if (s.gain > est.gamma || est.worst_input < 0) {
      est.gamma = s.gain;
      est.worst_input = s.input_id;
      est.worst_tau = s.tau;
    }
    est.gamma_doubled = std::max(est.gamma_doubled, s.gain_doubled);
  }
  est.growth_ratio = est.gamma > 0.0 ? est.gamma_doubled / est.gamma : 1.0;
  est.unstable = est.growth_ratio >= options.instability_ratio;
  est.samples = std::move(samples);
  return est;
}

}  // namespace ssgraph
