#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <variant>
#include <vector>

namespace ssgraph {

using Complex = std::complex<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Disk {|z - center| <= radius} when filled, the circle otherwise.
struct Disk {
  Complex center;
  double radius = 0.0;
  bool filled = true;
};

/// {z : Re(conj(normal) z) >= offset}; `normal` has unit modulus and points
/// into the set.
struct HalfPlane {
  Complex normal{1.0, 0.0};
  double offset = 0.0;
};

/// {re + j t : im_min <= t <= im_max}; either bound may be infinite, so this
/// covers full lines, half-lines and vertical segments.
struct VerticalLine {
  double re = 0.0;
  double im_min = -kInfinity;
  double im_max = kInfinity;
};

/// The closed curve p(phi), phi in [phi_min, phi_max], closed by the straight
/// chord from p(phi_max) back to p(phi_min); optionally the enclosed region.
/// `curvature_bound` must bound |p''(phi)|: a polyline through `samples`
/// equally spaced parameters then stays within curvature_bound * h^2 / 8 of
/// the curve (h the parameter step), and distances are deflated by that
/// amount so that they are certified lower bounds.
struct ParametricPerimeter {
  std::function<Complex(double)> curve;
  double phi_min = -3.141592653589793;
  double phi_max = 3.141592653589793;
  bool filled = true;
  int samples = 2048;
  double curvature_bound = 0.0;
  std::string label;
};

/// A finite point set, e.g. the expanded points of an estimated cloud.
struct PointSet {
  std::vector<Complex> points;
};

/// A closed subset of the complex plane with distance support.
class Region {
 public:
  using Variant = std::variant<Disk, HalfPlane, VerticalLine, ParametricPerimeter, PointSet>;

  Region(Variant shape, std::string label = {});

  const Variant& shape() const { return shape_; }
  const std::string& label() const { return label_; }
  bool IsEmpty() const;

  /// Image under z -> factor * z for a real nonzero factor.
  Region Scaled(double factor) const;

  /// Polyline vertices of a perimeter (curve samples, chord implied).
  std::vector<Complex> Vertices() const;
  /// Deflation applied to perimeter distances (zero for other shapes).
  double ApproximationBound() const;

 private:
  Variant shape_;
  std::string label_;
};

struct DistanceResult {
  double distance = kInfinity;
  Complex from;  // witness in the first region
  Complex to;    // witness in the second region
  /// Approximation slack already subtracted (0 for closed forms).
  double bound = 0.0;
};

/// dist(A, B) = inf |a - b|. Closed forms for pairs of disks, lines and
/// half-planes; exact minima for point sets; polyline sampling with a
/// certified deflation for perimeters. Throws EmptyRegionError.
DistanceResult Distance(const Region& a, const Region& b);

/// Distance from a single point to a region.
DistanceResult PointDistance(const Region& region, Complex z);

/// Whether z belongs to the region (perimeters: polyline approximation).
bool Contains(const Region& region, Complex z);

// ---------------------------------------------------------------------------
// Separation test over the tau homotopy.

struct TauGrid {
  std::vector<double> values;
  std::string description;

  /// `count` logarithmically spaced points on [lo, hi], plus 1 if absent.
  static TauGrid Logarithmic(int count, double lo, double hi);
  static TauGrid Default() { return Logarithmic(64, 1e-3, 1.0); }
  static TauGrid Single(double tau);
};

enum class SeparationMode { kSigned, kUnsigned };

std::string ToString(SeparationMode mode);

struct StabilityVerdict {
  bool separated = false;
  double margin = kInfinity;  // min over the grid of dist
  double worst_tau = 1.0;
  Complex worst_from;
  Complex worst_to;
  double r = 0.0;
  std::string tau_grid;
  SeparationMode mode = SeparationMode::kSigned;
};

/// Evaluates dist(A, B(tau)) on every grid point. separated iff the minimum
/// is >= r. Ties in the minimum resolve toward the smaller tau. Throws
/// ParameterError unless r > 0 and the grid lies in (0, 1].
StabilityVerdict SeparationCheck(const Region& a,
                                 const std::function<Region(double)>& b_of_tau,
                                 double r, const TauGrid& grid, SeparationMode mode,
                                 int jobs = 1);

}  // namespace ssgraph
