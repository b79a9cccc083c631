#ifndef UNIONHOI_ANCHORS_HPP
#define UNIONHOI_ANCHORS_HPP

#include <span>
#include <vector>

#include "unionhoi/box.hpp"
#include "unionhoi/ground_truth.hpp"

namespace unionhoi {

struct PyramidLevel {
  double stride;
  double base_size;
};

// Pyramid anchor grid over an image. Anchors are centered on the stride grid
// of each level; the full shape set is base_size x scale area at each h/w
// aspect ratio.
struct PyramidConfig {
  double image_width = 512.0;
  double image_height = 512.0;
  std::vector<PyramidLevel> levels;
  std::vector<double> scales;
  std::vector<double> aspect_ratios;  // h / w

  // 5 levels with strides {8,16,32,64,128}, base sizes {32,...,512},
  // 3 octave scales and 3 aspect ratios.
  static PyramidConfig retina(double image_width, double image_height);

  void validate() const;  // throws std::invalid_argument
};

struct Anchor {
  Box box;
  int level_index;
  int flat_index;  // stable enumeration order within the generated set
};

// Deterministic enumeration: per level, row-major over grid cells (x fastest),
// then scales, then aspect ratios. Anchors are clipped to the image; anchors
// whose clipped area vanishes are dropped.
std::vector<Anchor> generate_anchors(const PyramidConfig& cfg);

struct AnchorMatch {
  int gt = -1;  // ground-truth index, -1 when unassigned
  double iou = 0.0;

  bool assigned() const { return gt >= 0; }
};

// Resolved ground-truth match per anchor; at most one ground truth per anchor.
struct AnchorAssignment {
  std::vector<AnchorMatch> matches;  // parallel to the anchor list

  int positive_count() const {
    int n = 0;
    for (const auto& m : matches) n += m.assigned();
    return n;
  }
};

// Union-level labeling: anchor j is assigned to ground truth i iff
//   iou(a_j, union_i) > t_u  and
//   inclusion_ratio(a_j, human_i) > t_h  and
//   inclusion_ratio(a_j, object_i) > t_o .
// Among multiple qualifying ground truths the one with the largest union IoU
// wins; remaining ties go to the lowest ground-truth index.
AnchorAssignment label_union_anchors(std::span<const Anchor> anchors,
                                     std::span<const UnionGroundTruth> gts,
                                     double t_u = 0.5, double t_h = 0.5,
                                     double t_o = 0.5);

// Instance-level labeling: assigned to the largest-IoU ground truth among
// those with iou(a_j, gt_i) > t; ties to the lowest index.
AnchorAssignment label_instance_anchors(
    std::span<const Anchor> anchors, std::span<const InstanceGroundTruth> gts,
    double t = 0.5);

}  // namespace unionhoi

#endif  // UNIONHOI_ANCHORS_HPP
