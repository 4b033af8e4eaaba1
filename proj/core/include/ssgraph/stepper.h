#pragma once

#include <memory>

#include "ssgraph/systems.h"

namespace ssgraph::internal {

// Sample-by-sample evaluation of an OperatorModel. Output() is a pure
// function of the current state and the present input; Advance() commits the
// input and moves to the next sample.
class BlockStepper {
 public:
  virtual ~BlockStepper() = default;
  virtual double Output(double u) const = 0;
  virtual void Advance(double u) = 0;
  virtual bool HasFeedthrough() const = 0;
};

std::unique_ptr<BlockStepper> MakeStepper(const OperatorModel& model, double dt,
                                          const SimulationOptions& options);

// Solves e = u + gain * backward(forward(e)) at the current state.
// Direct evaluation when either path is strictly proper, damped fixed-point
// iteration otherwise. Returns e; throws LoopDivergenceError(step).
double SolveLoop(const BlockStepper& forward, const BlockStepper& backward,
                 double gain, double u, const SimulationOptions& options,
                 std::size_t step);

}  // namespace ssgraph::internal
