#include "ssgraph/catalog.h"

#include <cmath>
#include <numbers>

#include "ssgraph/errors.h"

namespace ssgraph {
namespace {

constexpr double kPi = std::numbers::pi;

Region HalfDisk(bool upper, const std::string& label) {
  ParametricPerimeter p;
  const double s = upper ? 1.0 : -1.0;
  p.curve = [s](double phi) { return Complex(0.5, 0.0) + 0.5 * std::polar(1.0, s * phi); };
  p.phi_min = 0.0;
  p.phi_max = kPi;
  p.filled = true;
  p.curvature_bound = 0.5;
  p.label = label;
  return Region(std::move(p), label);
}

}  // namespace

std::string ToString(CatalogEntry entry) {
  switch (entry) {
    case CatalogEntry::kLeadCircle: return "lead-circle";
    case CatalogEntry::kLagCircle: return "lag-circle";
    case CatalogEntry::kLeadInverseHalfline: return "lead-inverse-halfline";
    case CatalogEntry::kLagInverseHalfline: return "lag-inverse-halfline";
    case CatalogEntry::kSecondOrderPerimeter: return "second-order-perimeter";
  }
  return "unknown";
}

CatalogEntry ParseCatalogEntry(const std::string& name) {
  for (CatalogEntry e : {CatalogEntry::kLeadCircle, CatalogEntry::kLagCircle,
                         CatalogEntry::kLeadInverseHalfline, CatalogEntry::kLagInverseHalfline,
                         CatalogEntry::kSecondOrderPerimeter}) {
    if (ToString(e) == name) return e;
  }
  throw CatalogError("unknown catalog entry '" + name + "'");
}

Complex SecondOrderPerimeterPoint(double k, double phi) {
  const double c = std::cos(phi / 2.0);
  return k * c * c * std::polar(1.0, -phi);
}

Region AnalyticRegion(CatalogEntry entry, double k, GraphKind kind) {
  const bool is_signed = kind == GraphKind::kSigned;
  const std::string suffix = is_signed ? " (signed)" : "";
  switch (entry) {
    case CatalogEntry::kLeadCircle:
      if (is_signed) return HalfDisk(true, "lead-circle" + suffix);
      return Region(Disk{{0.5, 0.0}, 0.5, true}, "lead-circle");
    case CatalogEntry::kLagCircle:
      if (is_signed) return HalfDisk(false, "lag-circle" + suffix);
      return Region(Disk{{0.5, 0.0}, 0.5, true}, "lag-circle");
    case CatalogEntry::kLeadInverseHalfline:
      return Region(VerticalLine{1.0, -kInfinity, is_signed ? 0.0 : kInfinity},
                    "lead-inverse-halfline" + suffix);
    case CatalogEntry::kLagInverseHalfline:
      return Region(VerticalLine{1.0, is_signed ? 0.0 : -kInfinity, kInfinity},
                    "lag-inverse-halfline" + suffix);
    case CatalogEntry::kSecondOrderPerimeter: {
      if (!(k > 0.0) || !std::isfinite(k)) {
        throw ParameterError("second-order perimeter needs a finite k > 0");
      }
      ParametricPerimeter p;
      p.curve = [k](double phi) { return SecondOrderPerimeterPoint(k, phi); };
      p.phi_min = is_signed ? 0.0 : -kPi;
      p.phi_max = kPi;
      p.filled = true;
      p.curvature_bound = 1.5 * k;
      p.label = "second-order-perimeter(k=" + std::to_string(k) + ")" + suffix;
      return Region(std::move(p), p.label);
    }
  }
  throw CatalogError("unknown catalog entry");
}

}  // namespace ssgraph
