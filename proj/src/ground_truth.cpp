#include "unionhoi/ground_truth.hpp"

#include <algorithm>
#include <stdexcept>

namespace unionhoi {

void validate_union_gt(const UnionGroundTruth& gt, int union_action_dim,
                       int class_count) {
  if (gt.union_box != enclose(gt.human_box, gt.object_box)) {
    throw std::invalid_argument(
        "UnionGroundTruth: union_box must be the exact enclosure of the "
        "human and object boxes");
  }
  if (union_action_dim > 0 &&
      static_cast<int>(gt.action_labels.size()) != union_action_dim) {
    throw std::invalid_argument("UnionGroundTruth: action vector length");
  }
  if (std::count(gt.action_labels.begin(), gt.action_labels.end(), 1) == 0) {
    throw std::invalid_argument(
        "UnionGroundTruth: at least one action label must be set");
  }
  if (gt.target_class < 0 ||
      (class_count > 0 && gt.target_class >= class_count)) {
    throw std::invalid_argument("UnionGroundTruth: target class out of range");
  }
}

void validate_instance_gt(const InstanceGroundTruth& gt,
                          int instance_action_dim, int class_count) {
  if (instance_action_dim > 0 &&
      static_cast<int>(gt.action_labels.size()) != instance_action_dim) {
    throw std::invalid_argument("InstanceGroundTruth: action vector length");
  }
  if (gt.class_label < 0 ||
      (class_count > 0 && gt.class_label >= class_count)) {
    throw std::invalid_argument("InstanceGroundTruth: class out of range");
  }
}

}  // namespace unionhoi
