#include "ssgraph/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ssgraph::cli {
namespace {

struct View {
  double re_min, re_max, im_min, im_max;

  double X(double re) const { return (re - re_min) / (re_max - re_min) * SvgPlot::kSize; }
  double Y(double im) const { return (im_max - im) / (im_max - im_min) * SvgPlot::kSize; }
  bool Inside(Complex z) const {
    return z.real() >= re_min && z.real() <= re_max && z.imag() >= im_min && z.imag() <= im_max;
  }
};

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string Data(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void Extend(std::vector<Complex>& hull, const Region& region) {
  struct Visitor {
    std::vector<Complex>& hull;
    const Region& region;
    void operator()(const Disk& d) const {
      hull.push_back(d.center + Complex(d.radius, d.radius));
      hull.push_back(d.center - Complex(d.radius, d.radius));
    }
    void operator()(const HalfPlane&) const {}
    void operator()(const VerticalLine& l) const {
      if (std::isfinite(l.im_min)) hull.push_back({l.re, l.im_min});
      if (std::isfinite(l.im_max)) hull.push_back({l.re, l.im_max});
      if (!std::isfinite(l.im_min) || !std::isfinite(l.im_max)) hull.push_back({l.re, 0.0});
    }
    void operator()(const ParametricPerimeter&) const {
      const auto v = region.Vertices();
      hull.insert(hull.end(), v.begin(), v.end());
    }
    void operator()(const PointSet& p) const {
      hull.insert(hull.end(), p.points.begin(), p.points.end());
    }
  };
  std::visit(Visitor{hull, region}, region.shape());
}

View MakeView(const std::vector<Complex>& hull) {
  double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
  if (!hull.empty()) {
    re_min = re_max = hull.front().real();
    im_min = im_max = hull.front().imag();
    for (Complex z : hull) {
      re_min = std::min(re_min, z.real());
      re_max = std::max(re_max, z.real());
      im_min = std::min(im_min, z.imag());
      im_max = std::max(im_max, z.imag());
    }
  }
  re_min = std::min(re_min, 0.0);
  re_max = std::max(re_max, 0.0);
  im_min = std::min(im_min, 0.0);
  im_max = std::max(im_max, 0.0);
  const double half = 0.55 * std::max({re_max - re_min, im_max - im_min, 1e-6});
  const double cr = 0.5 * (re_min + re_max), ci = 0.5 * (im_min + im_max);
  return {cr - half, cr + half, ci - half, ci + half};
}

// Sutherland-Hodgman clip of the view square against {Re(conj(n) z) >= c}.
std::vector<Complex> ClipView(const View& v, const HalfPlane& h) {
  const std::vector<Complex> square = {
      {v.re_min, v.im_min}, {v.re_max, v.im_min}, {v.re_max, v.im_max}, {v.re_min, v.im_max}};
  auto side = [&](Complex z) { return (std::conj(h.normal) * z).real() - h.offset; };
  std::vector<Complex> out;
  for (std::size_t i = 0; i < square.size(); ++i) {
    const Complex a = square[i], b = square[(i + 1) % square.size()];
    const double sa = side(a), sb = side(b);
    if (sa >= 0) out.push_back(a);
    if ((sa >= 0) != (sb >= 0)) out.push_back(a + (b - a) * (sa / (sa - sb)));
  }
  return out;
}

std::string PathData(const View& v, const std::vector<Complex>& pts, bool closed) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    d += (i == 0 ? "M" : " L") + Fmt(v.X(pts[i].real())) + " " + Fmt(v.Y(pts[i].imag()));
  }
  if (closed && !pts.empty()) d += " Z";
  return d;
}

void WriteRegion(std::ostream& out, const View& v, const Region& region, const std::string& color) {
  const std::string label = region.label().empty() ? "" : " data-label=\"" + Escape(region.label()) + "\"";
  const std::string stroke = " stroke=\"" + color + "\" stroke-width=\"1.5\"";
  const std::string fill = " fill=\"" + color + "\" fill-opacity=\"0.15\"";
  struct Visitor {
    std::ostream& out;
    const View& v;
    const Region& region;
    const std::string& label;
    const std::string& stroke;
    const std::string& fill;
    void operator()(const Disk& d) const {
      const double scale = SvgPlot::kSize / (v.re_max - v.re_min);
      out << "<circle class=\"region\"" << label << " cx=\"" << Fmt(v.X(d.center.real()))
          << "\" cy=\"" << Fmt(v.Y(d.center.imag())) << "\" r=\"" << Fmt(d.radius * scale) << "\""
          << stroke << (d.filled ? fill : " fill=\"none\"") << "/>\n";
    }
    void operator()(const HalfPlane& h) const {
      const auto poly = ClipView(v, h);
      if (poly.empty()) return;
      out << "<path class=\"region\"" << label << " d=\"" << PathData(v, poly, true) << "\""
          << stroke << fill << "/>\n";
    }
    void operator()(const VerticalLine& l) const {
      const double lo = std::max(l.im_min, v.im_min), hi = std::min(l.im_max, v.im_max);
      if (lo > hi || l.re < v.re_min || l.re > v.re_max) return;
      out << "<path class=\"region\"" << label << " d=\""
          << PathData(v, {{l.re, lo}, {l.re, hi}}, false) << "\"" << stroke
          << " fill=\"none\"/>\n";
    }
    void operator()(const ParametricPerimeter& p) const {
      out << "<path class=\"region\"" << label << " d=\""
          << PathData(v, region.Vertices(), true) << "\"" << stroke
          << (p.filled ? fill : " fill=\"none\"") << "/>\n";
    }
    void operator()(const PointSet& p) const {
      for (Complex z : p.points) {
        if (!v.Inside(z)) continue;
        out << "<circle class=\"region\"" << label << " cx=\"" << Fmt(v.X(z.real()))
            << "\" cy=\"" << Fmt(v.Y(z.imag())) << "\" r=\"1.5\"" << fill << "/>\n";
      }
    }
  };
  std::visit(Visitor{out, v, region, label, stroke, fill}, region.shape());
}

}  // namespace

void SvgPlot::AddPoints(std::vector<Complex> points, std::string color, std::string label) {
  points_.push_back({std::move(points), std::move(color), std::move(label)});
}

void SvgPlot::AddRegion(Region region, std::string color) {
  regions_.push_back({std::move(region), std::move(color)});
}

void SvgPlot::Write(std::ostream& out) const {
  std::vector<Complex> hull;
  for (const auto& layer : points_) hull.insert(hull.end(), layer.points.begin(), layer.points.end());
  for (const auto& layer : regions_) Extend(hull, layer.region);
  const View v = MakeView(hull);

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize << "\" height=\"" << kSize
      << "\" viewBox=\"0 0 " << kSize << " " << kSize << "\" data-re-min=\"" << Data(v.re_min)
      << "\" data-re-max=\"" << Data(v.re_max) << "\" data-im-min=\"" << Data(v.im_min)
      << "\" data-im-max=\"" << Data(v.im_max) << "\">\n";
  out << "<rect width=\"" << kSize << "\" height=\"" << kSize << "\" fill=\"white\"/>\n";
  if (!title_.empty()) {
    out << "<title>" << Escape(title_) << "</title>\n";
    out << "<text x=\"10\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" << Escape(title_)
        << "</text>\n";
  }
  out << "<g class=\"axes\" stroke=\"#888\" stroke-width=\"1\">\n";
  out << "<line x1=\"0\" y1=\"" << Fmt(v.Y(0)) << "\" x2=\"" << kSize << "\" y2=\"" << Fmt(v.Y(0))
      << "\"/>\n";
  out << "<line x1=\"" << Fmt(v.X(0)) << "\" y1=\"0\" x2=\"" << Fmt(v.X(0)) << "\" y2=\"" << kSize
      << "\"/>\n";
  out << "</g>\n";
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#444\">\n";
  out << "<text x=\"" << kSize - 60 << "\" y=\"" << Fmt(v.Y(0) - 4) << "\">Re</text>\n";
  out << "<text x=\"" << Fmt(v.X(0) + 4) << "\" y=\"14\">Im</text>\n";
  out << "<text x=\"4\" y=\"" << kSize - 4 << "\">[" << Data(v.re_min) << ", " << Data(v.re_max)
      << "] x [" << Data(v.im_min) << ", " << Data(v.im_max) << "]</text>\n";
  out << "</g>\n";
  for (const auto& layer : regions_) WriteRegion(out, v, layer.region, layer.color);
  for (const auto& layer : points_) {
    out << "<g class=\"points\"";
    if (!layer.label.empty()) out << " data-label=\"" << Escape(layer.label) << "\"";
    out << " fill=\"" << layer.color << "\">\n";
    for (Complex z : layer.points) {
      out << "<circle cx=\"" << Fmt(v.X(z.real())) << "\" cy=\"" << Fmt(v.Y(z.imag()))
          << "\" r=\"2.5\" data-re=\"" << Data(z.real()) << "\" data-im=\"" << Data(z.imag())
          << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
}

}  // namespace ssgraph::cli
