#ifndef UNIONHOI_TRAIN_HPP
#define UNIONHOI_TRAIN_HPP

#include <vector>

#include "unionhoi/anchors.hpp"
#include "unionhoi/losses.hpp"
#include "unionhoi/synth.hpp"

namespace unionhoi {

// Plain gradient descent on the raw per-anchor prediction parameters of both
// branches for one scene. No network is involved; the point is to verify that
// the joint loss and its analytic gradients actually drive the predictions to
// the ground truth.
struct SmokeTrainConfig {
  int steps = 2000;
  double learning_rate = 5.0;
  LossConfig loss;
  // Empty levels -> the default pyramid sized to the scene image.
  PyramidConfig pyramid;
};

struct SmokeTrainResult {
  std::vector<double> loss_trajectory;  // initial value plus one per step
  // Per union ground truth: IoU between the decoded box of its best positive
  // anchor and the ground-truth union box (0 when no anchor was assigned).
  std::vector<double> decoded_union_iou;
  int union_positives = 0;
  int instance_positives = 0;
};

SmokeTrainResult smoke_train(const Scene& scene, const ActionSpace& space,
                             const SmokeTrainConfig& cfg);

}  // namespace unionhoi

#endif  // UNIONHOI_TRAIN_HPP
