#pragma once

#include <string>

#include "ssgraph/geometry.h"

namespace ssgraph {

/// Closed-form scaled graphs of the lead/lag filters and of the plant
/// k/(s+1)^2.
enum class CatalogEntry {
  kLeadCircle,
  kLagCircle,
  kLeadInverseHalfline,
  kLagInverseHalfline,
  kSecondOrderPerimeter,
};

/// Signed graphs carry the half-plane restriction implied by the sign of
/// Im H(jw); unsigned graphs are the conjugate-symmetric originals.
enum class GraphKind { kSigned, kUnsigned };

std::string ToString(CatalogEntry entry);
/// Accepts the kebab-case names ("lead-circle", "second-order-perimeter", ...).
/// Throws CatalogError.
CatalogEntry ParseCatalogEntry(const std::string& name);

/// Signed (default):
///   lead-circle            {|z - 0.5| <= 0.5, Im z >= 0}
///   lag-circle             {|z - 0.5| <= 0.5, Im z <= 0}
///   lead-inverse-halfline  {Re z = 1, Im z <= 0}
///   lag-inverse-halfline   {Re z = 1, Im z >= 0}
///   second-order-perimeter region bounded by p(phi) = k cos^2(phi/2) e^{-j phi},
///                          phi in [0, pi] (lower half) closed by [0, k]
/// Unsigned drops the half restrictions (full disk, full line, phi in [-pi, pi]).
Region AnalyticRegion(CatalogEntry entry, double k = 1.0,
                      GraphKind kind = GraphKind::kSigned);

/// p(phi) = k cos^2(phi/2) e^{-j phi}.
Complex SecondOrderPerimeterPoint(double k, double phi);

}  // namespace ssgraph
