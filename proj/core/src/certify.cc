#include "ssgraph/certify.h"

#include <cmath>
#include <optional>

#include "ssgraph/errors.h"
#include "ssgraph/parallel.h"

namespace ssgraph {
namespace {

struct Sample {
  double margin = 0.0;
  bool ok = true;
};

// Runs `judge(u, y)` on every input of the family and reduces to a report
// (minimum margin, lowest input id on ties).
template <typename Judge>
CertificateReport Certify(const OperatorModel& model, const InputFamily& family,
                          const CertifyOptions& options, Property property, double epsilon,
                          Judge judge) {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw ParameterError("epsilon must be finite and non-negative");
  }
  const std::vector<SampledSignal> inputs = GenerateInputs(family, options.jobs);
  std::vector<std::optional<Sample>> results(inputs.size());
  ParallelFor(inputs.size(), options.jobs, [&](std::size_t i) {
    if (inputs[i].IsZero()) return;
    const SampledSignal y = Simulate(model, inputs[i], options.simulation);
    results[i] = judge(inputs[i], y);
  });

  CertificateReport report;
  report.property = property;
  report.epsilon = epsilon;
  report.family = family.Describe();
  report.pass = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (!results[i]) continue;
    ++report.sample_count;
    report.pass = report.pass && results[i]->ok;
    if (results[i]->margin < report.worst_margin) {
      report.worst_margin = results[i]->margin;
      report.worst_input = static_cast<int>(i);
    }
  }
  return report;
}

}  // namespace

std::string ToString(Property property) {
  switch (property) {
    case Property::kPassive: return "passive";
    case Property::kInputStrictlyPassive: return "input-strictly-passive";
    case Property::kSsgNegativeImaginary: return "ssg-negative-imaginary";
  }
  return "unknown";
}

CertificateReport CheckPassive(const OperatorModel& model, const InputFamily& family,
                               double epsilon, const CertifyOptions& options) {
  const Property property = epsilon > 0.0 ? Property::kInputStrictlyPassive : Property::kPassive;
  return Certify(model, family, options, property, epsilon,
                 [&](const SampledSignal& u, const SampledSignal& y) {
                   const double nu = Norm(u), ny = Norm(y);
                   const double margin = InnerProduct(u, y) - epsilon * nu * nu;
                   const double slack = options.slack * (nu * ny + epsilon * nu * nu);
                   return Sample{margin, margin >= -slack};
                 });
}

CertificateReport CheckSsgNi(const OperatorModel& model, const InputFamily& family,
                             double epsilon, const CertifyOptions& options) {
  return Certify(
      model, family, options, Property::kSsgNegativeImaginary, epsilon,
      [&](const SampledSignal& u, const SampledSignal& y) {
        const double nu = Norm(u), ny = Norm(y);
        const double scale = nu * ny;
        if (scale == 0.0) return Sample{0.0, true};
        const double pairing = HilbertPairing(u, y, options.pad_factor);
        const double gap = scale - std::abs(InnerProduct(u, y));
        if (std::abs(pairing) <= options.zero_pairing_tol * scale) {
          // Real-axis collapse: the pair must also be aligned.
          const double margin = options.zero_pairing_tol * scale - gap;
          return Sample{margin, margin >= 0.0};
        }
        const double lhs = options.reading == SignReading::kCalibrated ? -pairing : pairing;
        const double margin = lhs - epsilon * gap;
        return Sample{margin, margin >= -options.slack * scale};
      });
}

PassivityVerdict PassivityTheoremVerdict(const OperatorModel& h1, const OperatorModel& h2,
                                         const InputFamily& family, double epsilon,
                                         const CertifyOptions& options) {
  if (!(epsilon > 0.0)) {
    throw ParameterError("the first system must be input strictly passive: epsilon > 0");
  }
  PassivityVerdict v;
  v.first = CheckPassive(h1, family, epsilon, options);
  v.second = CheckPassive(h2, family, 0.0, options);
  v.pass = v.first.pass && v.second.pass;
  v.separation_margin = v.pass ? epsilon : 0.0;
  return v;
}

NiVerdict NiTheoremVerdict(const OperatorModel& h1, const OperatorModel& h2,
                           const InputFamily& family, double epsilon,
                           const CertifyOptions& options, const NiOptions& ni) {
  NiVerdict v;
  v.first = CheckSsgNi(h1, family, epsilon, options);
  if (!v.first.pass) {
    throw NotNegativeImaginaryError("H1 = " + h1.Describe() +
                                    " is not SSG-negative-imaginary on the sampled inputs");
  }
  v.second = CheckSsgNi(h2, family, epsilon, options);
  if (!v.second.pass) {
    throw NotNegativeImaginaryError("H2 = " + h2.Describe() +
                                    " is not SSG-negative-imaginary on the sampled inputs");
  }
  EstimateOptions est;
  est.zero_pairing_tol = options.zero_pairing_tol;
  est.pad_factor = options.pad_factor;
  est.jobs = options.jobs;
  est.simulation = options.simulation;
  const std::vector<SampledSignal> inputs = GenerateInputs(family, options.jobs);
  auto real_axis = [&](const OperatorModel& m) {
    std::vector<Complex> out;
    const PointCloud cloud = EstimateSsg(m, std::span<const SampledSignal>(inputs), est);
    for (Complex z : ExpandedPoints(cloud)) {
      if (std::abs(z.imag()) <= ni.real_axis_band * std::abs(z)) out.push_back(z);
    }
    return out;
  };
  const std::vector<Complex> a = real_axis(h1);
  const std::vector<Complex> b = real_axis(h2);
  v.real_axis_points_first = static_cast<int>(a.size());
  v.real_axis_points_second = static_cast<int>(b.size());
  for (Complex z1 : a) {
    for (Complex z2 : b) {
      const double product = z1.real() * z2.real();
      if (product > v.worst_product) {
        v.worst_product = product;
        v.worst_first = z1;
        v.worst_second = z2;
      }
    }
  }
  v.pass = v.worst_product < 1.0 - ni.product_slack;
  return v;
}

WSetDiagnostic DiagnoseWSet(const LoopTrajectory& t, double tol, int pad_factor) {
  WSetDiagnostic d;
  if (t.w.IsZero() && t.u1.IsZero() && t.y1.IsZero() && t.u2.IsZero() && t.y2.IsZero()) {
    d.degenerate = true;
    return d;
  }
  const SampledSignal ty2 = t.y2.Scaled(t.tau);
  const double n1 = Norm(t.u1), n2 = Norm(t.u2), ny = Norm(ty2);
  const double energy_den = n1 * n2 + n2 * ny;
  if (energy_den > 0.0) {
    d.energy_balance = (InnerProduct(t.u1, t.u2) + InnerProduct(t.u2, ty2)) / energy_den;
  }
  if (n1 + ny > 0.0) d.norm_balance = (n1 - ny) / (n1 + ny);
  const double product_den = n1 * n2 * n2 * ny;
  if (product_den > 0.0) {
    d.pairing_product = HilbertPairing(t.u1, t.u2, pad_factor) *
                        HilbertPairing(t.u2, ty2, pad_factor) / product_den;
  }
  d.near_member = std::abs(d.energy_balance) <= tol && std::abs(d.norm_balance) <= tol &&
                  d.pairing_product < -tol;
  return d;
}

}  // namespace ssgraph
