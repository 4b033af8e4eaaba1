#include "ssgraph/geometry.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "ssgraph/errors.h"
#include "ssgraph/parallel.h"

namespace ssgraph {
namespace {

constexpr double kTouch = 1e-12;

double Dot(Complex a, Complex b) { return a.real() * b.real() + a.imag() * b.imag(); }
double Cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

DistanceResult Make(double d, Complex from, Complex to, double bound = 0.0) {
  return DistanceResult{std::max(d, 0.0), from, to, bound};
}

DistanceResult Swapped(DistanceResult r) {
  std::swap(r.from, r.to);
  return r;
}

void Keep(DistanceResult& best, const DistanceResult& candidate) {
  if (candidate.distance < best.distance) best = candidate;
}

Complex ClosestOnSegment(Complex p, Complex q, Complex z) {
  const Complex d = q - p;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return p;
  const double s = std::clamp(Dot(z - p, d) / len2, 0.0, 1.0);
  return p + s * d;
}

// Segments [p1, q1] and [p2, q2]; an intersection gives distance 0.
DistanceResult SegmentSegment(Complex p1, Complex q1, Complex p2, Complex q2) {
  const Complex r = q1 - p1, s = q2 - p2;
  const double denom = Cross(r, s);
  if (denom != 0.0) {
    const double t = Cross(p2 - p1, s) / denom;
    const double u = Cross(p2 - p1, r) / denom;
    if (t >= 0.0 && t <= 1.0 && u >= 0.0 && u <= 1.0) {
      const Complex x = p1 + t * r;
      return Make(0.0, x, x);
    }
  }
  DistanceResult best;
  for (Complex z : {p2, q2}) {
    const Complex a = ClosestOnSegment(p1, q1, z);
    Keep(best, Make(std::abs(a - z), a, z));
  }
  for (Complex z : {p1, q1}) {
    const Complex b = ClosestOnSegment(p2, q2, z);
    Keep(best, Make(std::abs(z - b), z, b));
  }
  return best;
}

// ---- point to primitive -------------------------------------------------

DistanceResult PointToDisk(const Disk& disk, Complex z) {
  const Complex v = z - disk.center;
  const double d0 = std::abs(v);
  const Complex dir = d0 > 0.0 ? v / d0 : Complex(1.0, 0.0);
  const Complex rim = disk.center + disk.radius * dir;
  if (d0 <= disk.radius) {
    if (disk.filled) return Make(0.0, z, z);
    return Make(disk.radius - d0, z, rim);
  }
  return Make(d0 - disk.radius, z, rim);
}

double Support(const HalfPlane& h, Complex z) { return Dot(h.normal, z); }

DistanceResult PointToHalfPlane(const HalfPlane& h, Complex z) {
  const double gap = h.offset - Support(h, z);
  if (gap <= 0.0) return Make(0.0, z, z);
  return Make(gap, z, z + gap * h.normal);
}

Complex ClosestOnLine(const VerticalLine& l, Complex z) {
  return {l.re, std::clamp(z.imag(), l.im_min, l.im_max)};
}

DistanceResult PointToLine(const VerticalLine& l, Complex z) {
  const Complex w = ClosestOnLine(l, z);
  return Make(std::abs(z - w), z, w);
}

// ---- perimeter helpers --------------------------------------------------

std::vector<Complex> SampleCurve(const ParametricPerimeter& p) {
  const int n = std::max(p.samples, 2);
  const double h = (p.phi_max - p.phi_min) / (n - 1);
  std::vector<Complex> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double phi = i == n - 1 ? p.phi_max : p.phi_min + i * h;
    v[static_cast<std::size_t>(i)] = p.curve(phi);
  }
  return v;
}

double PerimeterBound(const ParametricPerimeter& p) {
  const int n = std::max(p.samples, 2);
  const double h = (p.phi_max - p.phi_min) / (n - 1);
  return p.curvature_bound * h * h / 8.0;
}

// Closed polygon: curve samples plus the closing chord.
struct Polyline {
  std::vector<Complex> v;
  bool filled;
  double bound;

  std::size_t segments() const { return v.size(); }
  Complex a(std::size_t i) const { return v[i]; }
  Complex b(std::size_t i) const { return v[(i + 1) % v.size()]; }
};

Polyline MakePolyline(const ParametricPerimeter& p) {
  return Polyline{SampleCurve(p), p.filled, PerimeterBound(p)};
}

bool InsidePolygon(const std::vector<Complex>& v, Complex z) {
  bool inside = false;
  const std::size_t n = v.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = v[i], b = v[j];
    if (std::abs(z - ClosestOnSegment(a, b, z)) <= kTouch) return true;
    if ((a.imag() > z.imag()) != (b.imag() > z.imag())) {
      const double x = a.real() + (z.imag() - a.imag()) * (b.real() - a.real()) /
                                      (b.imag() - a.imag());
      if (z.real() < x) inside = !inside;
    }
  }
  return inside;
}

DistanceResult PointToPolyline(const Polyline& poly, Complex z) {
  if (poly.filled && InsidePolygon(poly.v, z)) return Make(0.0, z, z, poly.bound);
  DistanceResult best;
  for (std::size_t i = 0; i < poly.segments(); ++i) {
    const Complex w = ClosestOnSegment(poly.a(i), poly.b(i), z);
    Keep(best, Make(std::abs(z - w), z, w));
  }
  best.distance = std::max(best.distance - poly.bound, 0.0);
  best.bound = poly.bound;
  return best;
}

// ---- segment to primitive ----------------------------------------------

DistanceResult SegmentToDisk(Complex p, Complex q, const Disk& disk) {
  const Complex a = ClosestOnSegment(p, q, disk.center);
  const double d0 = std::abs(a - disk.center);
  if (d0 > disk.radius || disk.filled) {
    const DistanceResult r = PointToDisk(disk, a);
    return r;
  }
  const double dp = std::abs(p - disk.center), dq = std::abs(q - disk.center);
  const Complex far = dp >= dq ? p : q;
  const double dfar = std::max(dp, dq);
  if (dfar >= disk.radius) {
    // The segment crosses the circle between a and far.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (std::abs(a + mid * (far - a) - disk.center) < disk.radius) lo = mid; else hi = mid;
    }
    const Complex x = a + hi * (far - a);
    return Make(0.0, x, x);
  }
  return PointToDisk(disk, far);
}

DistanceResult SegmentToHalfPlane(Complex p, Complex q, const HalfPlane& h) {
  const Complex e = Support(h, p) >= Support(h, q) ? p : q;
  return PointToHalfPlane(h, e);
}

DistanceResult SegmentToLine(Complex p, Complex q, const VerticalLine& l) {
  const double sp = p.real() - l.re, sq = q.real() - l.re;
  if (sp * sq <= 0.0) {
    if (sp == sq) {
      const double lo = std::max(std::min(p.imag(), q.imag()), l.im_min);
      const double hi = std::min(std::max(p.imag(), q.imag()), l.im_max);
      if (lo <= hi) {
        const Complex x(l.re, lo);
        return Make(0.0, x, x);
      }
    } else {
      const Complex x = p + (sp / (sp - sq)) * (q - p);
      if (x.imag() >= l.im_min && x.imag() <= l.im_max) {
        const Complex on(l.re, x.imag());
        return Make(0.0, on, on);
      }
    }
  }
  DistanceResult best = PointToLine(l, p);
  Keep(best, PointToLine(l, q));
  for (double t : {l.im_min, l.im_max}) {
    if (!std::isfinite(t)) continue;
    const Complex e(l.re, t);
    const Complex w = ClosestOnSegment(p, q, e);
    Keep(best, Make(std::abs(w - e), w, e));
  }
  return best;
}

// A point of the region, used to settle containment once boundaries are
// known to be apart. Returns false for unbounded shapes without one.
bool RepresentativePoint(const Region::Variant& s, Complex* z) {
  if (const auto* d = std::get_if<Disk>(&s)) {
    *z = d->filled ? d->center : d->center + d->radius;
    return true;
  }
  if (const auto* l = std::get_if<VerticalLine>(&s)) {
    *z = ClosestOnLine(*l, Complex(l->re, 0.0));
    return true;
  }
  return false;
}

// ---- pairwise closed forms ---------------------------------------------

DistanceResult DiskDisk(const Disk& a, const Disk& b) {
  const Complex v = b.center - a.center;
  const double d = std::abs(v);
  const Complex dir = d > 0.0 ? v / d : Complex(1.0, 0.0);
  if (d >= a.radius + b.radius) {
    return Make(d - a.radius - b.radius, a.center + a.radius * dir, b.center - b.radius * dir);
  }
  // Nested configurations: the smaller set sits inside the larger circle.
  auto nested = [&](const Disk& outer, const Disk& inner, Complex out_dir, bool swap) {
    const double gap = outer.radius - d - inner.radius;
    if (outer.filled || gap <= 0.0) return std::optional<DistanceResult>();
    DistanceResult r = Make(gap, outer.center + outer.radius * out_dir,
                            inner.center + inner.radius * out_dir);
    return std::optional<DistanceResult>(swap ? Swapped(r) : r);
  };
  if (d + b.radius <= a.radius) {
    if (auto r = nested(a, b, dir, false)) return *r;
    return Make(0.0, b.center, b.center);
  }
  if (d + a.radius <= b.radius) {
    if (auto r = nested(b, a, -dir, true)) return *r;
    return Make(0.0, a.center, a.center);
  }
  // Circles cross: pick an intersection point.
  const double x = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
  const double y = std::sqrt(std::max(a.radius * a.radius - x * x, 0.0));
  const Complex p = a.center + dir * Complex(x, y);
  return Make(0.0, p, p);
}

DistanceResult DiskHalfPlane(const Disk& a, const HalfPlane& h) {
  const double gap = h.offset - Support(h, a.center);
  if (gap > a.radius) {
    const Complex from = a.center + a.radius * h.normal;
    return Make(gap - a.radius, from, from + (gap - a.radius) * h.normal);
  }
  const Complex w = a.center + a.radius * h.normal;
  return Make(0.0, w, w);
}

DistanceResult DiskLine(const Disk& a, const VerticalLine& l) {
  const Complex w = ClosestOnLine(l, a.center);
  const double d0 = std::abs(w - a.center);
  if (d0 > a.radius) {
    const Complex from = a.center + a.radius * (w - a.center) / d0;
    return Make(d0 - a.radius, from, w);
  }
  if (a.filled) return Make(0.0, w, w);
  double far_dist = kInfinity;
  Complex far = w;
  if (std::isfinite(l.im_min) && std::isfinite(l.im_max)) {
    const Complex lo(l.re, l.im_min), hi(l.re, l.im_max);
    far = std::abs(lo - a.center) >= std::abs(hi - a.center) ? lo : hi;
    far_dist = std::abs(far - a.center);
  }
  if (far_dist >= a.radius) {
    const double dx = l.re - a.center.real();
    const double dy = std::sqrt(std::max(a.radius * a.radius - dx * dx, 0.0));
    for (double t : {a.center.imag() + dy, a.center.imag() - dy}) {
      if (t >= l.im_min && t <= l.im_max) return Make(0.0, Complex(l.re, t), Complex(l.re, t));
    }
    return Make(0.0, w, w);
  }
  const Complex rim = a.center + a.radius * (far - a.center) / far_dist;
  return Make(a.radius - far_dist, rim, far);
}

DistanceResult HalfPlaneHalfPlane(const HalfPlane& a, const HalfPlane& b) {
  const double c = Cross(a.normal, b.normal);
  if (std::abs(c) > 1e-12) {
    // Boundary lines intersect.
    const double det = c;
    const double x = (a.offset * b.normal.imag() - b.offset * a.normal.imag()) / det;
    const double y = (a.normal.real() * b.offset - b.normal.real() * a.offset) / det;
    const Complex p(x, y);
    return Make(0.0, p, p);
  }
  if (Dot(a.normal, b.normal) > 0.0) {
    const Complex p = a.normal * std::max(a.offset, b.offset * Dot(a.normal, b.normal));
    return Make(0.0, p, p);
  }
  const double gap = a.offset + b.offset;
  const Complex from = a.normal * a.offset;
  if (gap <= 0.0) return Make(0.0, from, from);
  return Make(gap, from, b.normal * b.offset);
}

DistanceResult HalfPlaneLine(const HalfPlane& h, const VerticalLine& l) {
  const double nx = h.normal.real(), ny = h.normal.imag();
  double t;
  if (ny > 0.0) {
    t = l.im_max;
  } else if (ny < 0.0) {
    t = l.im_min;
  } else {
    t = std::clamp(0.0, l.im_min, l.im_max);
  }
  if (!std::isfinite(t) || nx * l.re + ny * t >= h.offset) {
    double ts = ny != 0.0 ? (h.offset - nx * l.re) / ny : 0.0;
    ts = std::clamp(ts, l.im_min, l.im_max);
    const Complex p(l.re, ts);
    return Make(0.0, p, p);
  }
  const Complex e(l.re, t);
  const double gap = h.offset - Support(h, e);
  return Make(gap, e + gap * h.normal, e);
}

DistanceResult LineLine(const VerticalLine& a, const VerticalLine& b) {
  const double lo = std::max(a.im_min, b.im_min), hi = std::min(a.im_max, b.im_max);
  double ta, tb;
  if (lo <= hi) {
    ta = tb = std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
  } else if (a.im_max < b.im_min) {
    ta = a.im_max;
    tb = b.im_min;
  } else {
    ta = a.im_min;
    tb = b.im_max;
  }
  const Complex p(a.re, ta), q(b.re, tb);
  return Make(std::abs(p - q), p, q);
}

DistanceResult PointToShape(const Region::Variant& s, Complex z);

DistanceResult SegmentToShape(const Region::Variant& s, Complex p, Complex q) {
  if (const auto* d = std::get_if<Disk>(&s)) return SegmentToDisk(p, q, *d);
  if (const auto* h = std::get_if<HalfPlane>(&s)) return SegmentToHalfPlane(p, q, *h);
  if (const auto* l = std::get_if<VerticalLine>(&s)) return SegmentToLine(p, q, *l);
  throw Error("segment distance to unsupported shape");
}

// Polyline against a disk, half-plane, line or another polyline.
DistanceResult PolylineTo(const Polyline& poly, const Region::Variant& other) {
  DistanceResult best;
  double bound = poly.bound;
  if (const auto* q = std::get_if<ParametricPerimeter>(&other)) {
    const Polyline o = MakePolyline(*q);
    bound += o.bound;
    for (std::size_t i = 0; i < poly.segments() && best.distance > 0.0; ++i) {
      for (std::size_t j = 0; j < o.segments(); ++j) {
        Keep(best, SegmentSegment(poly.a(i), poly.b(i), o.a(j), o.b(j)));
        if (best.distance == 0.0) break;
      }
    }
    if (best.distance > 0.0) {
      if (poly.filled && InsidePolygon(poly.v, o.v.front())) {
        best = Make(0.0, o.v.front(), o.v.front());
      } else if (o.filled && InsidePolygon(o.v, poly.v.front())) {
        best = Make(0.0, poly.v.front(), poly.v.front());
      }
    }
  } else {
    for (std::size_t i = 0; i < poly.segments() && best.distance > 0.0; ++i) {
      Keep(best, SegmentToShape(other, poly.a(i), poly.b(i)));
    }
    if (best.distance > 0.0) {
      Complex z;
      if (poly.filled && RepresentativePoint(other, &z) && InsidePolygon(poly.v, z)) {
        best = Make(0.0, z, z);
      } else if (PointToShape(other, poly.v.front()).distance == 0.0) {
        best = Make(0.0, poly.v.front(), poly.v.front());
      }
    }
  }
  best.distance = std::max(best.distance - bound, 0.0);
  best.bound = bound;
  return best;
}

DistanceResult PointToShape(const Region::Variant& s, Complex z) {
  return std::visit(
      [&](const auto& shape) -> DistanceResult {
        using T = std::decay_t<decltype(shape)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return Swapped(PointToDisk(shape, z));
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return Swapped(PointToHalfPlane(shape, z));
        } else if constexpr (std::is_same_v<T, VerticalLine>) {
          return Swapped(PointToLine(shape, z));
        } else if constexpr (std::is_same_v<T, ParametricPerimeter>) {
          return Swapped(PointToPolyline(MakePolyline(shape), z));
        } else {
          DistanceResult best;
          for (Complex p : shape.points) Keep(best, Make(std::abs(p - z), p, z));
          return best;
        }
      },
      s);
}

// Ordered dispatch: a.index() <= b.index().
DistanceResult OrderedDistance(const Region::Variant& a, const Region::Variant& b) {
  if (const auto* pa = std::get_if<PointSet>(&a)) {
    const auto& pb = std::get<PointSet>(b);
    DistanceResult best;
    for (Complex x : pa->points) {
      for (Complex y : pb.points) Keep(best, Make(std::abs(x - y), x, y));
    }
    return best;
  }
  if (const auto* pb = std::get_if<PointSet>(&b)) {
    DistanceResult best;
    for (Complex y : pb->points) {
      DistanceResult r = PointToShape(a, y);
      Keep(best, r);
    }
    return best;
  }
  if (const auto* pa = std::get_if<ParametricPerimeter>(&a)) {
    return PolylineTo(MakePolyline(*pa), b);
  }
  if (const auto* pb = std::get_if<ParametricPerimeter>(&b)) {
    return Swapped(PolylineTo(MakePolyline(*pb), a));
  }
  if (const auto* da = std::get_if<Disk>(&a)) {
    if (const auto* db = std::get_if<Disk>(&b)) return DiskDisk(*da, *db);
    if (const auto* hb = std::get_if<HalfPlane>(&b)) return DiskHalfPlane(*da, *hb);
    return DiskLine(*da, std::get<VerticalLine>(b));
  }
  if (const auto* ha = std::get_if<HalfPlane>(&a)) {
    if (const auto* hb = std::get_if<HalfPlane>(&b)) return HalfPlaneHalfPlane(*ha, *hb);
    return HalfPlaneLine(*ha, std::get<VerticalLine>(b));
  }
  return LineLine(std::get<VerticalLine>(a), std::get<VerticalLine>(b));
}

}  // namespace

Region::Region(Variant shape, std::string label)
    : shape_(std::move(shape)), label_(std::move(label)) {
  if (auto* h = std::get_if<HalfPlane>(&shape_)) {
    const double n = std::abs(h->normal);
    if (!(n > 0.0)) throw ParameterError("half-plane normal must be nonzero");
    h->normal /= n;
    h->offset /= n;
  }
  if (const auto* p = std::get_if<ParametricPerimeter>(&shape_)) {
    if (p->curve && !(p->phi_max > p->phi_min)) {
      throw ParameterError("perimeter parameter range must be increasing");
    }
    if (p->samples < 2) throw ParameterError("perimeter needs at least two samples");
  }
}

bool Region::IsEmpty() const {
  return std::visit(
      [](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return !(s.radius >= 0.0);
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return false;
        } else if constexpr (std::is_same_v<T, VerticalLine>) {
          return !(s.im_min <= s.im_max);
        } else if constexpr (std::is_same_v<T, ParametricPerimeter>) {
          return !s.curve;
        } else {
          return s.points.empty();
        }
      },
      shape_);
}

Region Region::Scaled(double factor) const {
  if (!(factor != 0.0) || !std::isfinite(factor)) {
    throw ParameterError("region scale factor must be finite and nonzero");
  }
  const double mag = std::abs(factor);
  Variant out = std::visit(
      [&](const auto& s) -> Variant {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Disk>) {
          return Disk{factor * s.center, mag * s.radius, s.filled};
        } else if constexpr (std::is_same_v<T, HalfPlane>) {
          return HalfPlane{factor > 0.0 ? s.normal : -s.normal, mag * s.offset};
        } else if constexpr (std::is_same_v<T, VerticalLine>) {
          if (factor > 0.0) return VerticalLine{factor * s.re, factor * s.im_min, factor * s.im_max};
          return VerticalLine{factor * s.re, factor * s.im_max, factor * s.im_min};
        } else if constexpr (std::is_same_v<T, ParametricPerimeter>) {
          ParametricPerimeter p = s;
          auto curve = s.curve;
          p.curve = [curve, factor](double phi) { return factor * curve(phi); };
          p.curvature_bound = mag * s.curvature_bound;
          return p;
        } else {
          PointSet p = s;
          for (auto& z : p.points) z *= factor;
          return p;
        }
      },
      shape_);
  std::ostringstream label;
  label << factor << "*(" << label_ << ")";
  return Region(std::move(out), label.str());
}

std::vector<Complex> Region::Vertices() const {
  if (const auto* p = std::get_if<ParametricPerimeter>(&shape_)) return SampleCurve(*p);
  if (const auto* p = std::get_if<PointSet>(&shape_)) return p->points;
  return {};
}

double Region::ApproximationBound() const {
  if (const auto* p = std::get_if<ParametricPerimeter>(&shape_)) return PerimeterBound(*p);
  return 0.0;
}

DistanceResult Distance(const Region& a, const Region& b) {
  if (a.IsEmpty() || b.IsEmpty()) throw EmptyRegionError("distance to an empty region");
  if (a.shape().index() <= b.shape().index()) return OrderedDistance(a.shape(), b.shape());
  return Swapped(OrderedDistance(b.shape(), a.shape()));
}

DistanceResult PointDistance(const Region& region, Complex z) {
  if (region.IsEmpty()) throw EmptyRegionError("distance to an empty region");
  return Swapped(PointToShape(region.shape(), z));
}

bool Contains(const Region& region, Complex z) {
  if (region.IsEmpty()) return false;
  if (const auto* p = std::get_if<ParametricPerimeter>(&region.shape())) {
    const Polyline poly = MakePolyline(*p);
    if (poly.filled) return InsidePolygon(poly.v, z);
    for (std::size_t i = 0; i < poly.segments(); ++i) {
      if (std::abs(z - ClosestOnSegment(poly.a(i), poly.b(i), z)) <= kTouch) return true;
    }
    return false;
  }
  return PointToShape(region.shape(), z).distance <= kTouch;
}

TauGrid TauGrid::Logarithmic(int count, double lo, double hi) {
  if (count < 1) throw ParameterError("tau grid needs at least one point");
  if (!(lo > 0.0) || !(lo <= hi) || !(hi <= 1.0)) {
    throw ParameterError("tau grid bounds must satisfy 0 < lo <= hi <= 1");
  }
  TauGrid grid;
  if (count == 1) {
    grid.values.push_back(hi);
  } else {
    const double a = std::log(lo), b = std::log(hi);
    for (int i = 0; i < count; ++i) {
      grid.values.push_back(i == count - 1 ? hi : std::exp(a + (b - a) * i / (count - 1)));
    }
  }
  if (grid.values.back() != 1.0) grid.values.push_back(1.0);
  std::ostringstream s;
  s << "log(" << count << "," << lo << "," << hi << ")+{1}";
  grid.description = s.str();
  return grid;
}

TauGrid TauGrid::Single(double tau) {
  if (!(tau > 0.0) || !(tau <= 1.0)) throw ParameterError("tau must lie in (0, 1]");
  std::ostringstream s;
  s << "{" << tau << "}";
  return TauGrid{{tau}, s.str()};
}

std::string ToString(SeparationMode mode) {
  return mode == SeparationMode::kSigned ? "signed" : "unsigned";
}

StabilityVerdict SeparationCheck(const Region& a, const std::function<Region(double)>& b_of_tau,
                                 double r, const TauGrid& grid, SeparationMode mode, int jobs) {
  if (!(r > 0.0)) throw ParameterError("separation radius r must be positive");
  if (grid.values.empty()) throw ParameterError("tau grid is empty");
  for (double tau : grid.values) {
    if (!(tau > 0.0) || !(tau <= 1.0)) throw ParameterError("tau grid must lie in (0, 1]");
  }
  std::vector<DistanceResult> results(grid.values.size());
  ParallelFor(grid.values.size(), jobs,
              [&](std::size_t i) { results[i] = Distance(a, b_of_tau(grid.values[i])); });

  StabilityVerdict v;
  v.r = r;
  v.tau_grid = grid.description;
  v.mode = mode;
  bool first = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double tau = grid.values[i];
    const double d = results[i].distance;
    if (first || d < v.margin || (d == v.margin && tau < v.worst_tau)) {
      first = false;
      v.margin = d;
      v.worst_tau = tau;
      v.worst_from = results[i].from;
      v.worst_to = results[i].to;
    }
  }
  v.separated = v.margin >= r;
  return v;
}

}  // namespace ssgraph
