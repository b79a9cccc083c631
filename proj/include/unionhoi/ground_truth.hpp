#ifndef UNIONHOI_GROUND_TRUTH_HPP
#define UNIONHOI_GROUND_TRUTH_HPP

#include <cstdint>
#include <vector>

#include "unionhoi/box.hpp"

namespace unionhoi {

// One annotated interaction: the human and object boxes, their derived union
// box, a multi-label action vector (length T) and the target-object class.
struct UnionGroundTruth {
  Box human_box;
  Box object_box;
  Box union_box;  // must equal enclose(human_box, object_box) exactly
  std::vector<std::uint8_t> action_labels;  // length T, at least one set
  int target_class = 0;
  int human_id = -1;
  int object_id = -1;
};

inline UnionGroundTruth make_union_gt(const Box& human, const Box& object,
                                      std::vector<std::uint8_t> action_labels,
                                      int target_class, int human_id,
                                      int object_id) {
  return UnionGroundTruth{human,        object,   enclose(human, object),
                          std::move(action_labels), target_class,
                          human_id,     object_id};
}

// One annotated instance: box, class and its instance-level action labels
// (length T_s + T_o; all-zero for a non-interacting instance).
struct InstanceGroundTruth {
  Box box;
  int class_label = 0;
  std::vector<std::uint8_t> action_labels;
  int instance_id = -1;
};

// Throws std::invalid_argument when an invariant is broken. `union_action_dim`
// / `instance_action_dim` of 0 skip the respective length checks.
void validate_union_gt(const UnionGroundTruth& gt, int union_action_dim,
                       int class_count);
void validate_instance_gt(const InstanceGroundTruth& gt,
                          int instance_action_dim, int class_count);

}  // namespace unionhoi

#endif  // UNIONHOI_GROUND_TRUTH_HPP
