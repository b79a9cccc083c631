#ifndef UNIONHOI_BOX_HPP
#define UNIONHOI_BOX_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace unionhoi {

// Axis-aligned box in corner format (x_min, y_min, x_max, y_max), continuous
// pixel coordinates. Construction rejects non-finite coordinates and boxes
// without strictly positive extent, so every area used as a denominator
// downstream is nonzero.
struct Box {
  double x_min;
  double y_min;
  double x_max;
  double y_max;

  Box(double x0, double y0, double x1, double y1)
      : x_min(x0), y_min(y0), x_max(x1), y_max(y1) {
    if (!(std::isfinite(x0) && std::isfinite(y0) && std::isfinite(x1) &&
          std::isfinite(y1))) {
      throw std::invalid_argument("Box: coordinates must be finite");
    }
    if (!(x1 > x0 && y1 > y0)) {
      throw std::invalid_argument("Box: extent must be strictly positive");
    }
  }

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double center_x() const { return 0.5 * (x_min + x_max); }
  double center_y() const { return 0.5 * (y_min + y_max); }

  bool operator==(const Box& o) const {
    return x_min == o.x_min && y_min == o.y_min && x_max == o.x_max &&
           y_max == o.y_max;
  }
  bool operator!=(const Box& o) const { return !(*this == o); }
};

inline double area(const Box& b) { return b.width() * b.height(); }

inline double intersection_area(const Box& a, const Box& b) {
  const double w =
      std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double h =
      std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (w <= 0.0 || h <= 0.0) return 0.0;
  return w * h;
}

inline double iou(const Box& a, const Box& b) {
  const double inter = intersection_area(a, b);
  return inter / (area(a) + area(b) - inter);
}

// Fraction of `target` covered by `region`: |region ∩ target| / |target|.
// Equals 1 exactly when region contains target.
inline double inclusion_ratio(const Box& region, const Box& target) {
  return intersection_area(region, target) / area(target);
}

// Tightest box covering both inputs.
inline Box enclose(const Box& a, const Box& b) {
  return Box(std::min(a.x_min, b.x_min), std::min(a.y_min, b.y_min),
             std::max(a.x_max, b.x_max), std::max(a.y_max, b.y_max));
}

// Dimensionless regression offsets from an anchor to a target box:
// center shift normalized by anchor size, log-space size ratios.
struct BoxDelta {
  double dx = 0.0;
  double dy = 0.0;
  double dw = 0.0;
  double dh = 0.0;

  bool operator==(const BoxDelta&) const = default;
};

// Decode clamps the log-size offsets to this magnitude.
inline constexpr double kDeltaClamp = 4.0;

inline BoxDelta encode_box(const Box& anchor, const Box& gt) {
  BoxDelta d;
  d.dx = (gt.center_x() - anchor.center_x()) / anchor.width();
  d.dy = (gt.center_y() - anchor.center_y()) / anchor.height();
  d.dw = std::log(gt.width() / anchor.width());
  d.dh = std::log(gt.height() / anchor.height());
  return d;
}

inline Box decode_box(const Box& anchor, const BoxDelta& d) {
  if (!(std::isfinite(d.dx) && std::isfinite(d.dy) && std::isfinite(d.dw) &&
        std::isfinite(d.dh))) {
    throw std::invalid_argument("decode_box: delta must be finite");
  }
  const double cx = anchor.center_x() + d.dx * anchor.width();
  const double cy = anchor.center_y() + d.dy * anchor.height();
  const double w =
      anchor.width() * std::exp(std::clamp(d.dw, -kDeltaClamp, kDeltaClamp));
  const double h =
      anchor.height() * std::exp(std::clamp(d.dh, -kDeltaClamp, kDeltaClamp));
  return Box(cx - 0.5 * w, cy - 0.5 * h, cx + 0.5 * w, cy + 0.5 * h);
}

}  // namespace unionhoi

#endif  // UNIONHOI_BOX_HPP
