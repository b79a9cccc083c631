#include "unionhoi/train.hpp"

#include <algorithm>

namespace unionhoi {

SmokeTrainResult smoke_train(const Scene& scene, const ActionSpace& space,
                             const SmokeTrainConfig& cfg) {
  PyramidConfig pyramid = cfg.pyramid;
  if (pyramid.levels.empty()) {
    pyramid = PyramidConfig::retina(scene.image_width, scene.image_height);
  }
  const std::vector<Anchor> anchors = generate_anchors(pyramid);
  const AnchorAssignment union_assign =
      label_union_anchors(anchors, scene.unions);
  const AnchorAssignment instance_assign =
      label_instance_anchors(anchors, scene.instances);

  const int n = static_cast<int>(anchors.size());
  PredictionTensor union_preds(n, space.union_action_count(),
                               scene.num_classes);
  PredictionTensor instance_preds(n, space.instance_action_count(), 0);

  SmokeTrainResult result;
  result.union_positives = union_assign.positive_count();
  result.instance_positives = instance_assign.positive_count();

  auto evaluate = [&]() {
    const LossResult u = union_branch_loss(anchors, union_assign, scene.unions,
                                           union_preds, cfg.loss);
    const LossResult g = instance_action_loss(
        instance_assign, scene.instances, instance_preds, space, cfg.loss);
    return std::pair<LossResult, LossResult>(u, g);
  };

  auto current = evaluate();
  result.loss_trajectory.push_back(current.first.value + current.second.value);
  for (int step = 0; step < cfg.steps; ++step) {
    auto& up = union_preds.params();
    for (size_t i = 0; i < up.size(); ++i) {
      up[i] -= cfg.learning_rate * current.first.grad[i];
    }
    auto& ip = instance_preds.params();
    for (size_t i = 0; i < ip.size(); ++i) {
      ip[i] -= cfg.learning_rate * current.second.grad[i];
    }
    current = evaluate();
    result.loss_trajectory.push_back(current.first.value +
                                     current.second.value);
  }

  // Best positive anchor per union ground truth, by matched IoU.
  std::vector<int> best_anchor(scene.unions.size(), -1);
  for (int j = 0; j < n; ++j) {
    const AnchorMatch& m = union_assign.matches[static_cast<size_t>(j)];
    if (!m.assigned()) continue;
    int& best = best_anchor[static_cast<size_t>(m.gt)];
    if (best < 0 ||
        m.iou > union_assign.matches[static_cast<size_t>(best)].iou) {
      best = j;
    }
  }
  for (size_t i = 0; i < scene.unions.size(); ++i) {
    if (best_anchor[i] < 0) {
      result.decoded_union_iou.push_back(0.0);
      continue;
    }
    const int j = best_anchor[i];
    const Box decoded =
        decode_box(anchors[static_cast<size_t>(j)].box, union_preds.delta(j));
    result.decoded_union_iou.push_back(iou(decoded, scene.unions[i].union_box));
  }
  return result;
}

}  // namespace unionhoi
