#include "ssgraph/systems.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

#include "ssgraph/errors.h"

namespace ssgraph {
namespace {

std::vector<double> StripLeadingZeros(std::vector<double> p) {
  std::size_t i = 0;
  while (i + 1 < p.size() && p[i] == 0.0) ++i;
  p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
  return p;
}

void RequireFinite(const std::vector<double>& p, const char* what) {
  for (double c : p) {
    if (!std::isfinite(c)) throw ModelError(std::string(what) + " has a non-finite coefficient");
  }
}

// Largest real part among the eigenvalues, -inf for an empty matrix.
double SpectralAbscissa(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return -std::numeric_limits<double>::infinity();
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a, false);
  return solver.eigenvalues().real().maxCoeff();
}

std::complex<double> PolyVal(const std::vector<double>& p, std::complex<double> s) {
  std::complex<double> acc = 0.0;
  for (double c : p) acc = acc * s + c;
  return acc;
}

std::string Join(const std::vector<double>& v) {
  std::ostringstream s;
  for (std::size_t i = 0; i < v.size(); ++i) s << (i ? "," : "") << v[i];
  return s.str();
}

}  // namespace

std::string ToString(NonlinearityKind kind) {
  switch (kind) {
    case NonlinearityKind::kSaturation: return "saturation";
    case NonlinearityKind::kDeadzone: return "deadzone";
    case NonlinearityKind::kRelu: return "relu";
    case NonlinearityKind::kCubic: return "cubic";
    case NonlinearityKind::kGain: return "gain";
  }
  return "unknown";
}

NonlinearityKind ParseNonlinearityKind(const std::string& name) {
  if (name == "saturation") return NonlinearityKind::kSaturation;
  if (name == "deadzone") return NonlinearityKind::kDeadzone;
  if (name == "relu") return NonlinearityKind::kRelu;
  if (name == "cubic") return NonlinearityKind::kCubic;
  if (name == "gain") return NonlinearityKind::kGain;
  throw ModelError("unknown static nonlinearity '" + name + "'");
}

double StaticNonlinearity::operator()(double u) const {
  switch (kind) {
    case NonlinearityKind::kSaturation: return std::clamp(u, -parameter, parameter);
    case NonlinearityKind::kDeadzone:
      if (u > parameter) return u - parameter;
      if (u < -parameter) return u + parameter;
      return 0.0;
    case NonlinearityKind::kRelu: return u > 0.0 ? u : 0.0;
    case NonlinearityKind::kCubic: return parameter * u * u * u;
    case NonlinearityKind::kGain: return parameter * u;
  }
  return 0.0;
}

OperatorModel OperatorModel::Tf(std::vector<double> numerator, std::vector<double> denominator) {
  RequireFinite(numerator, "numerator");
  RequireFinite(denominator, "denominator");
  if (numerator.empty()) numerator = {0.0};
  numerator = StripLeadingZeros(std::move(numerator));
  denominator = StripLeadingZeros(std::move(denominator));
  if (denominator.empty() || denominator.front() == 0.0) {
    throw ModelError("transfer function denominator is zero");
  }
  if (numerator.size() > denominator.size()) {
    throw ModelError("transfer function is improper: deg num > deg den");
  }
  TransferFunction tf{std::move(numerator), std::move(denominator)};
  const StateSpace ss = Realize(tf);
  if (SpectralAbscissa(ss.a) >= 0.0) {
    throw ModelError("transfer function denominator [" + Join(tf.denominator) +
                     "] is not Hurwitz");
  }
  return OperatorModel(std::move(tf));
}

OperatorModel OperatorModel::Ss(Eigen::MatrixXd a, Eigen::MatrixXd b, Eigen::MatrixXd c,
                                Eigen::MatrixXd d) {
  const auto n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != 1 || c.rows() != 1 || c.cols() != n ||
      d.rows() != 1 || d.cols() != 1) {
    throw ModelError("state-space dimensions must be A: n x n, B: n x 1, C: 1 x n, D: 1 x 1");
  }
  if (!a.allFinite() || !b.allFinite() || !c.allFinite() || !d.allFinite()) {
    throw ModelError("state-space matrices must be finite");
  }
  if (SpectralAbscissa(a) >= 0.0) throw ModelError("state matrix A is not Hurwitz");
  return OperatorModel(StateSpace{std::move(a), std::move(b), std::move(c), std::move(d)});
}

OperatorModel OperatorModel::Static(NonlinearityKind kind, double parameter) {
  if (!std::isfinite(parameter)) throw ModelError("static nonlinearity parameter must be finite");
  if (kind == NonlinearityKind::kSaturation && !(parameter > 0.0)) {
    throw ModelError("saturation limit must be positive");
  }
  if (kind == NonlinearityKind::kDeadzone && parameter < 0.0) {
    throw ModelError("deadzone width must be non-negative");
  }
  return OperatorModel(StaticNonlinearity{kind, parameter});
}

OperatorModel OperatorModel::MakeSeries(const OperatorModel& left, const OperatorModel& right) {
  return OperatorModel(Series{std::make_shared<const OperatorModel>(left),
                              std::make_shared<const OperatorModel>(right)});
}

OperatorModel OperatorModel::MakeParallel(const OperatorModel& left, const OperatorModel& right) {
  return OperatorModel(Parallel{std::make_shared<const OperatorModel>(left),
                                std::make_shared<const OperatorModel>(right)});
}

OperatorModel OperatorModel::MakeFeedback(const OperatorModel& forward,
                                          const OperatorModel& backward, int sign) {
  if (sign != -1 && sign != 1) throw ModelError("feedback sign must be -1 or +1");
  return OperatorModel(Feedback{std::make_shared<const OperatorModel>(forward),
                                std::make_shared<const OperatorModel>(backward), sign});
}

OperatorModel OperatorModel::MakeScale(const OperatorModel& inner, double factor) {
  if (!std::isfinite(factor)) throw ModelError("scale factor must be finite");
  return OperatorModel(Scale{std::make_shared<const OperatorModel>(inner), factor});
}

bool OperatorModel::IsLti() const {
  struct Visitor {
    bool operator()(const TransferFunction&) const { return true; }
    bool operator()(const StateSpace&) const { return true; }
    bool operator()(const StaticNonlinearity& s) const { return s.kind == NonlinearityKind::kGain; }
    bool operator()(const Series& s) const { return s.left->IsLti() && s.right->IsLti(); }
    bool operator()(const Parallel& s) const { return s.left->IsLti() && s.right->IsLti(); }
    bool operator()(const Feedback& s) const { return s.forward->IsLti() && s.backward->IsLti(); }
    bool operator()(const Scale& s) const { return s.inner->IsLti(); }
  };
  return std::visit(Visitor{}, variant_);
}

bool OperatorModel::HasFeedthrough() const {
  struct Visitor {
    bool operator()(const TransferFunction& tf) const {
      return tf.numerator.size() == tf.denominator.size() && tf.numerator.front() != 0.0;
    }
    bool operator()(const StateSpace& ss) const { return ss.d(0, 0) != 0.0; }
    bool operator()(const StaticNonlinearity&) const { return true; }
    bool operator()(const Series& s) const {
      return s.left->HasFeedthrough() && s.right->HasFeedthrough();
    }
    bool operator()(const Parallel& s) const {
      return s.left->HasFeedthrough() || s.right->HasFeedthrough();
    }
    bool operator()(const Feedback& s) const { return s.forward->HasFeedthrough(); }
    bool operator()(const Scale& s) const { return s.factor != 0.0 && s.inner->HasFeedthrough(); }
  };
  return std::visit(Visitor{}, variant_);
}

std::string OperatorModel::Describe() const {
  struct Visitor {
    std::string operator()(const TransferFunction& tf) const {
      return "tf([" + Join(tf.numerator) + "],[" + Join(tf.denominator) + "])";
    }
    std::string operator()(const StateSpace& ss) const {
      return "ss(n=" + std::to_string(ss.a.rows()) + ")";
    }
    std::string operator()(const StaticNonlinearity& s) const {
      std::ostringstream o;
      o << ToString(s.kind) << "(" << s.parameter << ")";
      return o.str();
    }
    std::string operator()(const Series& s) const {
      return "series(" + s.left->Describe() + "," + s.right->Describe() + ")";
    }
    std::string operator()(const Parallel& s) const {
      return "parallel(" + s.left->Describe() + "," + s.right->Describe() + ")";
    }
    std::string operator()(const Feedback& s) const {
      return "feedback(" + s.forward->Describe() + "," + s.backward->Describe() + "," +
             std::to_string(s.sign) + ")";
    }
    std::string operator()(const Scale& s) const {
      std::ostringstream o;
      o << "scale(" << s.factor << "," << s.inner->Describe() << ")";
      return o.str();
    }
  };
  return std::visit(Visitor{}, variant_);
}

OperatorModel LagFilter() { return OperatorModel::Tf({1.0}, {1.0, 1.0}); }
OperatorModel LeadFilter() { return OperatorModel::Tf({1.0, 0.0}, {1.0, 1.0}); }
OperatorModel SecondOrderPlant(double k) { return OperatorModel::Tf({k}, {1.0, 2.0, 1.0}); }

StateSpace Realize(const TransferFunction& tf) {
  const std::vector<double> den = StripLeadingZeros(tf.denominator);
  const auto n = static_cast<Eigen::Index>(den.size()) - 1;
  const double lead = den.front();
  std::vector<double> num(den.size(), 0.0);
  const std::vector<double> raw = StripLeadingZeros(tf.numerator);
  std::copy(raw.begin(), raw.end(),
            num.begin() + static_cast<std::ptrdiff_t>(den.size() - raw.size()));

  StateSpace ss;
  ss.a = Eigen::MatrixXd::Zero(n, n);
  ss.b = Eigen::MatrixXd::Zero(n, 1);
  ss.c = Eigen::MatrixXd::Zero(1, n);
  ss.d = Eigen::MatrixXd::Constant(1, 1, num[0] / lead);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double a_i = den[static_cast<std::size_t>(i + 1)] / lead;
    ss.a(0, i) = -a_i;
    ss.c(0, i) = num[static_cast<std::size_t>(i + 1)] / lead - ss.d(0, 0) * a_i;
    if (i + 1 < n) ss.a(i + 1, i) = 1.0;
  }
  if (n > 0) ss.b(0, 0) = 1.0;
  return ss;
}

DiscreteStateSpace DiscretizeZoh(const StateSpace& ss, double dt) {
  const auto n = ss.a.rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  m.topLeftCorner(n, n) = ss.a * dt;
  m.topRightCorner(n, 1) = ss.b * dt;
  const Eigen::MatrixXd e = m.exp();
  return DiscreteStateSpace{e.topLeftCorner(n, n), e.topRightCorner(n, 1), ss.c, ss.d};
}

std::complex<double> FrequencyResponse(const OperatorModel& model, double omega) {
  using C = std::complex<double>;
  const C s(0.0, omega);
  struct Visitor {
    C s;
    C operator()(const TransferFunction& tf) const {
      return PolyVal(tf.numerator, s) / PolyVal(tf.denominator, s);
    }
    C operator()(const StateSpace& ss) const {
      const auto n = ss.a.rows();
      if (n == 0) return ss.d(0, 0);
      Eigen::MatrixXcd m = s * Eigen::MatrixXcd::Identity(n, n) - ss.a.cast<C>();
      Eigen::VectorXcd x = m.partialPivLu().solve(ss.b.cast<C>().col(0));
      return (ss.c.cast<C>() * x)(0) + ss.d(0, 0);
    }
    C operator()(const StaticNonlinearity& st) const {
      if (st.kind != NonlinearityKind::kGain) {
        throw UnsupportedModelError("frequency response of nonlinear block " + ToString(st.kind));
      }
      return st.parameter;
    }
    C operator()(const Series& x) const {
      return std::visit(*this, x.left->variant()) * std::visit(*this, x.right->variant());
    }
    C operator()(const Parallel& x) const {
      return std::visit(*this, x.left->variant()) + std::visit(*this, x.right->variant());
    }
    C operator()(const Feedback& x) const {
      const C f = std::visit(*this, x.forward->variant());
      const C b = std::visit(*this, x.backward->variant());
      return f / (1.0 - static_cast<double>(x.sign) * f * b);
    }
    C operator()(const Scale& x) const { return x.factor * std::visit(*this, x.inner->variant()); }
  };
  return std::visit(Visitor{s}, model.variant());
}

}  // namespace ssgraph
