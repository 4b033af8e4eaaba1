#pragma once

#include <complex>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "ssgraph/signals.h"

namespace ssgraph {

class OperatorModel;
using ModelPtr = std::shared_ptr<const OperatorModel>;

/// Coefficients in descending powers of s.
struct TransferFunction {
  std::vector<double> numerator;
  std::vector<double> denominator;
};

struct StateSpace {
  Eigen::MatrixXd a, b, c, d;
};

enum class NonlinearityKind { kSaturation, kDeadzone, kRelu, kCubic, kGain };

std::string ToString(NonlinearityKind kind);
NonlinearityKind ParseNonlinearityKind(const std::string& name);

/// Memoryless map. `parameter` is the limit (saturation), half-width
/// (deadzone), coefficient (cubic) or gain; relu ignores it.
struct StaticNonlinearity {
  NonlinearityKind kind = NonlinearityKind::kGain;
  double parameter = 1.0;

  double operator()(double u) const;
};

/// y = left(right(u)), i.e. the product left(s) * right(s) for LTI blocks.
struct Series {
  ModelPtr left, right;
};

/// y = left(u) + right(u).
struct Parallel {
  ModelPtr left, right;
};

/// y = forward(e), e = u + sign * backward(y); sign is -1 or +1.
struct Feedback {
  ModelPtr forward, backward;
  int sign = -1;
};

/// y = factor * inner(u).
struct Scale {
  ModelPtr inner;
  double factor = 1.0;
};

/// Immutable description of a single-valued SISO operator H with H(0) = 0.
/// Construction enforces that LTI blocks are proper and Hurwitz; composite
/// models share their children.
class OperatorModel {
 public:
  using Variant = std::variant<TransferFunction, StateSpace, StaticNonlinearity,
                               Series, Parallel, Feedback, Scale>;

  static OperatorModel Tf(std::vector<double> numerator, std::vector<double> denominator);
  static OperatorModel Ss(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c,
                          Eigen::MatrixXd d);
  static OperatorModel Static(NonlinearityKind kind, double parameter = 1.0);
  static OperatorModel Gain(double k) { return Static(NonlinearityKind::kGain, k); }
  static OperatorModel Saturation(double limit) {
    return Static(NonlinearityKind::kSaturation, limit);
  }
  static OperatorModel MakeSeries(const OperatorModel& left, const OperatorModel& right);
  static OperatorModel MakeParallel(const OperatorModel& left, const OperatorModel& right);
  static OperatorModel MakeFeedback(const OperatorModel& forward,
                                    const OperatorModel& backward, int sign);
  static OperatorModel MakeScale(const OperatorModel& inner, double factor);

  const Variant& variant() const { return variant_; }

  /// True when every block is a transfer function, state space or static gain.
  bool IsLti() const;
  /// True when the output at time t depends on the input at time t.
  bool HasFeedthrough() const;
  /// Short human-readable form, e.g. "tf([1],[1,1])".
  std::string Describe() const;

 private:
  explicit OperatorModel(Variant v) : variant_(std::move(v)) {}

  Variant variant_;
};

/// Lead/lag filters and the second-order plant used throughout the examples.
OperatorModel LagFilter();                 // 1/(s+1)
OperatorModel LeadFilter();                // s/(s+1)
OperatorModel SecondOrderPlant(double k);  // k/(s+1)^2

/// Controllable canonical realisation of a proper transfer function.
StateSpace Realize(const TransferFunction& tf);

/// Exact zero-order-hold discretisation x+ = ad x + bd u.
struct DiscreteStateSpace {
  Eigen::MatrixXd ad, bd, c, d;
};
DiscreteStateSpace DiscretizeZoh(const StateSpace& ss, double dt);

struct SimulationOptions {
  double relaxation = 0.5;   // damped fixed-point weight for algebraic loops
  double tolerance = 1e-10;
  int max_iterations = 100;
};

/// y = H(u) on the grid of u. LTI blocks are stepped with their ZOH
/// discretisation; static blocks act pointwise. Throws LoopDivergenceError
/// when an algebraic loop fails to converge.
SampledSignal Simulate(const OperatorModel& model, const SampledSignal& u,
                       const SimulationOptions& options = {});

/// H(j omega) with the standard exp(-j w t) convention. Throws
/// UnsupportedModelError when the model contains a nonlinear block.
std::complex<double> FrequencyResponse(const OperatorModel& model, double omega);

}  // namespace ssgraph
