#pragma once

#include <string>

#include "ssgraph/loop.h"
#include "ssgraph/ssg.h"

namespace ssgraph {

enum class Property { kPassive, kInputStrictlyPassive, kSsgNegativeImaginary };

std::string ToString(Property property);

/// Which sign of the Hilbert pairing the NI inequality uses. kCalibrated
/// asks for -Pi(u, y) >= eps (...), so certified systems have phase in
/// [-pi, 0]; kLiteral uses +Pi(u, y) for side-by-side comparison.
enum class SignReading { kCalibrated, kLiteral };

struct CertifyOptions {
  double slack = 1e-6;  // relative to the scale of both sides
  double zero_pairing_tol = kDefaultZeroPairingTolerance;
  SignReading reading = SignReading::kCalibrated;
  int pad_factor = kDefaultPadFactor;
  int jobs = 1;
  SimulationOptions simulation;
};

/// Sample-based certificate: pass means no violation among the sampled
/// inputs, never a proof over all of L2.
struct CertificateReport {
  Property property = Property::kPassive;
  double epsilon = 0.0;
  bool pass = false;
  int worst_input = -1;
  double worst_margin = kInfinity;  // min of lhs - rhs
  int sample_count = 0;
  std::string family;
};

/// <u, y> >= eps ||u||^2 on every sampled input (eps = 0: passive).
CertificateReport CheckPassive(const OperatorModel& model, const InputFamily& family,
                               double epsilon, const CertifyOptions& options = {});

/// -Pi(u, y) >= eps (||u|| ||y|| - |<u, y>|) on every sampled input; an
/// indeterminate pairing passes only if ||u|| ||y|| - |<u, y>| is also
/// within the zero-pairing tolerance.
CertificateReport CheckSsgNi(const OperatorModel& model, const InputFamily& family,
                             double epsilon, const CertifyOptions& options = {});

struct PassivityVerdict {
  bool pass = false;
  CertificateReport first;   // input strictly passive with epsilon
  CertificateReport second;  // passive
  /// Gap between {Re z >= eps} and {Re z <= 0} when both pass, else 0.
  double separation_margin = 0.0;
};

/// Negative feedback of an input strictly passive H1 and a passive H2.
/// Throws ParameterError unless epsilon > 0.
PassivityVerdict PassivityTheoremVerdict(const OperatorModel& h1, const OperatorModel& h2,
                                         const InputFamily& family, double epsilon,
                                         const CertifyOptions& options = {});

struct NiOptions {
  double real_axis_band = 0.02;  // |Im z| <= band |z|
  double product_slack = 0.02;   // pass iff max z1 z2 < 1 - product_slack
};

struct NiVerdict {
  bool pass = false;
  double worst_product = -kInfinity;
  Complex worst_first;
  Complex worst_second;
  int real_axis_points_first = 0;
  int real_axis_points_second = 0;
  CertificateReport first;
  CertificateReport second;
};

/// Positive feedback of two SSG-negative-imaginary systems: checks
/// z1 z2 < 1 over the real-axis points of both estimated graphs. Throws
/// NotNegativeImaginaryError naming the first system that fails CheckSsgNi.
NiVerdict NiTheoremVerdict(const OperatorModel& h1, const OperatorModel& h2,
                           const InputFamily& family, double epsilon,
                           const CertifyOptions& options = {}, const NiOptions& ni = {});

/// Residuals of the three membership conditions of the excluded input set:
///   energy balance  (<u1,u2> + <u2,tau y2>) / (||u1|| ||u2|| + ||u2|| ||tau y2||)
///   norm balance    (||u1|| - ||tau y2||) / (||u1|| + ||tau y2||)
///   pairing product Pi(u1,u2) Pi(u2,tau y2) / (||u1|| ||u2||^2 ||tau y2||)
/// near_member iff both balances are within tol and the product is < -tol.
struct WSetDiagnostic {
  bool near_member = false;
  bool degenerate = false;  // all trajectories identically zero
  double energy_balance = 0.0;
  double norm_balance = 0.0;
  double pairing_product = 0.0;
};

WSetDiagnostic DiagnoseWSet(const LoopTrajectory& trajectory, double tol = 1e-3,
                            int pad_factor = kDefaultPadFactor);

}  // namespace ssgraph
