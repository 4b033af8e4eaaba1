#include "ssgraph/stepper.h"

#include <cmath>

#include "ssgraph/errors.h"

namespace ssgraph {
namespace internal {
namespace {

class LtiStepper final : public BlockStepper {
 public:
  LtiStepper(const StateSpace& ss, double dt)
      : sys_(DiscretizeZoh(ss, dt)),
        x_(Eigen::VectorXd::Zero(ss.a.rows())),
        next_(Eigen::VectorXd::Zero(ss.a.rows())) {}

  double Output(double u) const override {
    return (sys_.c * x_)(0) + sys_.d(0, 0) * u;
  }
  void Advance(double u) override {
    next_.noalias() = sys_.ad * x_;
    next_ += sys_.bd.col(0) * u;
    x_.swap(next_);
  }
  bool HasFeedthrough() const override { return sys_.d(0, 0) != 0.0; }

 private:
  DiscreteStateSpace sys_;
  Eigen::VectorXd x_;
  Eigen::VectorXd next_;
};

class StaticStepper final : public BlockStepper {
 public:
  explicit StaticStepper(StaticNonlinearity f) : f_(f) {}
  double Output(double u) const override { return f_(u); }
  void Advance(double) override {}
  bool HasFeedthrough() const override { return true; }

 private:
  StaticNonlinearity f_;
};

class SeriesStepper final : public BlockStepper {
 public:
  SeriesStepper(std::unique_ptr<BlockStepper> left, std::unique_ptr<BlockStepper> right)
      : left_(std::move(left)), right_(std::move(right)) {}
  double Output(double u) const override { return left_->Output(right_->Output(u)); }
  void Advance(double u) override {
    const double v = right_->Output(u);
    right_->Advance(u);
    left_->Advance(v);
  }
  bool HasFeedthrough() const override {
    return left_->HasFeedthrough() && right_->HasFeedthrough();
  }

 private:
  std::unique_ptr<BlockStepper> left_, right_;
};

class ParallelStepper final : public BlockStepper {
 public:
  ParallelStepper(std::unique_ptr<BlockStepper> left, std::unique_ptr<BlockStepper> right)
      : left_(std::move(left)), right_(std::move(right)) {}
  double Output(double u) const override { return left_->Output(u) + right_->Output(u); }
  void Advance(double u) override {
    left_->Advance(u);
    right_->Advance(u);
  }
  bool HasFeedthrough() const override {
    return left_->HasFeedthrough() || right_->HasFeedthrough();
  }

 private:
  std::unique_ptr<BlockStepper> left_, right_;
};

class ScaleStepper final : public BlockStepper {
 public:
  ScaleStepper(std::unique_ptr<BlockStepper> inner, double factor)
      : inner_(std::move(inner)), factor_(factor) {}
  double Output(double u) const override { return factor_ * inner_->Output(u); }
  void Advance(double u) override { inner_->Advance(u); }
  bool HasFeedthrough() const override { return factor_ != 0.0 && inner_->HasFeedthrough(); }

 private:
  std::unique_ptr<BlockStepper> inner_;
  double factor_;
};

class FeedbackStepper final : public BlockStepper {
 public:
  FeedbackStepper(std::unique_ptr<BlockStepper> forward, std::unique_ptr<BlockStepper> backward,
                  int sign, const SimulationOptions& options)
      : forward_(std::move(forward)),
        backward_(std::move(backward)),
        sign_(sign),
        options_(options) {}

  double Output(double u) const override {
    return forward_->Output(SolveLoop(*forward_, *backward_, sign_, u, options_, step_));
  }
  void Advance(double u) override {
    const double e = SolveLoop(*forward_, *backward_, sign_, u, options_, step_);
    const double y = forward_->Output(e);
    forward_->Advance(e);
    backward_->Advance(y);
    ++step_;
  }
  bool HasFeedthrough() const override { return forward_->HasFeedthrough(); }

 private:
  std::unique_ptr<BlockStepper> forward_, backward_;
  double sign_;
  SimulationOptions options_;
  std::size_t step_ = 0;
};

}  // namespace

std::unique_ptr<BlockStepper> MakeStepper(const OperatorModel& model, double dt,
                                          const SimulationOptions& options) {
  struct Visitor {
    double dt;
    const SimulationOptions& options;
    std::unique_ptr<BlockStepper> operator()(const TransferFunction& tf) const {
      return std::make_unique<LtiStepper>(Realize(tf), dt);
    }
    std::unique_ptr<BlockStepper> operator()(const StateSpace& ss) const {
      return std::make_unique<LtiStepper>(ss, dt);
    }
    std::unique_ptr<BlockStepper> operator()(const StaticNonlinearity& s) const {
      return std::make_unique<StaticStepper>(s);
    }
    std::unique_ptr<BlockStepper> operator()(const Series& s) const {
      return std::make_unique<SeriesStepper>(MakeStepper(*s.left, dt, options),
                                             MakeStepper(*s.right, dt, options));
    }
    std::unique_ptr<BlockStepper> operator()(const Parallel& s) const {
      return std::make_unique<ParallelStepper>(MakeStepper(*s.left, dt, options),
                                               MakeStepper(*s.right, dt, options));
    }
    std::unique_ptr<BlockStepper> operator()(const Feedback& s) const {
      return std::make_unique<FeedbackStepper>(MakeStepper(*s.forward, dt, options),
                                               MakeStepper(*s.backward, dt, options), s.sign,
                                               options);
    }
    std::unique_ptr<BlockStepper> operator()(const Scale& s) const {
      return std::make_unique<ScaleStepper>(MakeStepper(*s.inner, dt, options), s.factor);
    }
  };
  return std::visit(Visitor{dt, options}, model.variant());
}

double SolveLoop(const BlockStepper& forward, const BlockStepper& backward, double gain,
                 double u, const SimulationOptions& options, std::size_t step) {
  // Strictly proper paths break the algebraic loop.
  if (!forward.HasFeedthrough()) {
    return u + gain * backward.Output(forward.Output(0.0));
  }
  if (!backward.HasFeedthrough()) {
    return u + gain * backward.Output(0.0);
  }
  const double lambda = options.relaxation;
  double e = u;
  for (int it = 0; it < options.max_iterations; ++it) {
    const double target = u + gain * backward.Output(forward.Output(e));
    if (!std::isfinite(target)) break;
    if (std::abs(target - e) <= options.tolerance * (1.0 + std::abs(target))) return target;
    e = (1.0 - lambda) * e + lambda * target;
  }
  throw LoopDivergenceError("algebraic loop did not converge within " +
                                std::to_string(options.max_iterations) + " iterations",
                            step);
}

}  // namespace internal

SampledSignal Simulate(const OperatorModel& model, const SampledSignal& u,
                       const SimulationOptions& options) {
  auto stepper = internal::MakeStepper(model, u.dt(), options);
  std::vector<double> y(u.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    y[k] = stepper->Output(u[k]);
    stepper->Advance(u[k]);
  }
  return SampledSignal(std::move(y), u.dt(), u.start());
}

}  // namespace ssgraph
