#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ssgraph/geometry.h"

namespace ssgraph::cli {

/// Scatter of complex points over region overlays on a fixed 800x800 canvas.
/// The view is the square hull of the points and bounded overlays; unbounded
/// overlays are clipped to it. Every point carries data-re/data-im attributes.
class SvgPlot {
 public:
  explicit SvgPlot(std::string title = {}) : title_(std::move(title)) {}

  void AddPoints(std::vector<Complex> points, std::string color, std::string label = {});
  void AddRegion(Region region, std::string color);
  void Write(std::ostream& out) const;

  static constexpr int kSize = 800;

 private:
  struct PointLayer {
    std::vector<Complex> points;
    std::string color;
    std::string label;
  };
  struct RegionLayer {
    Region region;
    std::string color;
  };

  std::string title_;
  std::vector<PointLayer> points_;
  std::vector<RegionLayer> regions_;
};

}  // namespace ssgraph::cli
