#include "unionhoi/anchors.hpp"

#include <cmath>
#include <stdexcept>

namespace unionhoi {

PyramidConfig PyramidConfig::retina(double image_width, double image_height) {
  PyramidConfig cfg;
  cfg.image_width = image_width;
  cfg.image_height = image_height;
  cfg.levels = {{8.0, 32.0}, {16.0, 64.0}, {32.0, 128.0},
                {64.0, 256.0}, {128.0, 512.0}};
  cfg.scales = {1.0, std::pow(2.0, 1.0 / 3.0), std::pow(2.0, 2.0 / 3.0)};
  cfg.aspect_ratios = {0.5, 1.0, 2.0};
  return cfg;
}

void PyramidConfig::validate() const {
  if (image_width <= 0.0 || image_height <= 0.0) {
    throw std::invalid_argument("PyramidConfig: image size must be positive");
  }
  if (levels.empty() || scales.empty() || aspect_ratios.empty()) {
    throw std::invalid_argument(
        "PyramidConfig: levels, scales and aspect ratios must be non-empty");
  }
  double prev_stride = 0.0;
  for (const auto& lvl : levels) {
    if (lvl.stride <= prev_stride) {
      throw std::invalid_argument(
          "PyramidConfig: strides must be strictly increasing");
    }
    if (lvl.base_size <= 0.0) {
      throw std::invalid_argument("PyramidConfig: base size must be positive");
    }
    prev_stride = lvl.stride;
  }
  for (double s : scales) {
    if (s <= 0.0) throw std::invalid_argument("PyramidConfig: scale <= 0");
  }
  for (double r : aspect_ratios) {
    if (r <= 0.0) throw std::invalid_argument("PyramidConfig: ratio <= 0");
  }
}

std::vector<Anchor> generate_anchors(const PyramidConfig& cfg) {
  cfg.validate();
  std::vector<Anchor> anchors;
  for (int li = 0; li < static_cast<int>(cfg.levels.size()); ++li) {
    const auto& lvl = cfg.levels[static_cast<size_t>(li)];
    const int nx = static_cast<int>(std::ceil(cfg.image_width / lvl.stride));
    const int ny = static_cast<int>(std::ceil(cfg.image_height / lvl.stride));
    for (int iy = 0; iy < ny; ++iy) {
      for (int ix = 0; ix < nx; ++ix) {
        const double cx = (ix + 0.5) * lvl.stride;
        const double cy = (iy + 0.5) * lvl.stride;
        for (double scale : cfg.scales) {
          const double size = lvl.base_size * scale;
          for (double ratio : cfg.aspect_ratios) {
            // Equal-area shapes: h/w = ratio, h*w = size^2.
            const double w = size / std::sqrt(ratio);
            const double h = size * std::sqrt(ratio);
            const double x0 = std::max(0.0, cx - 0.5 * w);
            const double y0 = std::max(0.0, cy - 0.5 * h);
            const double x1 = std::min(cfg.image_width, cx + 0.5 * w);
            const double y1 = std::min(cfg.image_height, cy + 0.5 * h);
            if (x1 <= x0 || y1 <= y0) continue;  // clipped away entirely
            anchors.push_back(Anchor{Box(x0, y0, x1, y1), li,
                                     static_cast<int>(anchors.size())});
          }
        }
      }
    }
  }
  if (anchors.empty()) {
    throw std::invalid_argument("generate_anchors: config yields no anchors");
  }
  return anchors;
}

namespace {

void check_threshold(double t, const char* name) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::invalid_argument(std::string("labeling threshold ") + name +
                                " must lie in (0,1)");
  }
}

}  // namespace

AnchorAssignment label_union_anchors(std::span<const Anchor> anchors,
                                     std::span<const UnionGroundTruth> gts,
                                     double t_u, double t_h, double t_o) {
  check_threshold(t_u, "t_u");
  check_threshold(t_h, "t_h");
  check_threshold(t_o, "t_o");
  AnchorAssignment out;
  out.matches.resize(anchors.size());
  for (size_t j = 0; j < anchors.size(); ++j) {
    const Box& a = anchors[j].box;
    AnchorMatch best;
    for (size_t i = 0; i < gts.size(); ++i) {
      const UnionGroundTruth& gt = gts[i];
      const double u = iou(a, gt.union_box);
      if (!(u > t_u)) continue;
      if (!(inclusion_ratio(a, gt.human_box) > t_h)) continue;
      if (!(inclusion_ratio(a, gt.object_box) > t_o)) continue;
      if (u > best.iou || !best.assigned()) {
        best.gt = static_cast<int>(i);
        best.iou = u;
      }
    }
    out.matches[j] = best;
  }
  return out;
}

AnchorAssignment label_instance_anchors(
    std::span<const Anchor> anchors, std::span<const InstanceGroundTruth> gts,
    double t) {
  check_threshold(t, "t");
  AnchorAssignment out;
  out.matches.resize(anchors.size());
  for (size_t j = 0; j < anchors.size(); ++j) {
    const Box& a = anchors[j].box;
    AnchorMatch best;
    for (size_t i = 0; i < gts.size(); ++i) {
      const double u = iou(a, gts[i].box);
      if (!(u > t)) continue;
      if (u > best.iou || !best.assigned()) {
        best.gt = static_cast<int>(i);
        best.iou = u;
      }
    }
    out.matches[j] = best;
  }
  return out;
}

}  // namespace unionhoi
