#ifndef UNIONHOI_EVAL_HPP
#define UNIONHOI_EVAL_HPP

#include <optional>
#include <span>
#include <vector>

#include "unionhoi/action_space.hpp"
#include "unionhoi/fusion.hpp"
#include "unionhoi/synth.hpp"

namespace unionhoi {

// One ground-truth triplet with resolved boxes (object absent for actions
// without a target object).
struct GtTriplet {
  int action = -1;
  Box human_box;
  std::optional<Box> object_box;
};

// Expands a scene into its ground-truth triplets: one per union annotation
// and one per (human, no-object action) label.
std::vector<GtTriplet> scene_gt_triplets(const Scene& scene,
                                         const ActionSpace& space);

// A prediction with its boxes resolved from detection (or instance) ids.
struct ResolvedTriplet {
  int action = -1;
  double score = 0.0;
  Box human_box;
  std::optional<Box> object_box;
  int human_id = -1;  // tie-break only
  int object_id = -1;
};

// Resolve triplet ids against the detection set they were scored from, or
// directly against scene instances when no detections are available.
std::vector<ResolvedTriplet> resolve_triplets(std::span<const HOITriplet> preds,
                                              const DetectionSet& detections);
std::vector<ResolvedTriplet> resolve_triplets(std::span<const HOITriplet> preds,
                                              const Scene& scene);

struct EvalResult {
  std::vector<double> ap;     // per union action; 0 when the action has gts
                              // but no correct prediction
  std::vector<int> gt_count;  // per union action
  double mean_ap = 0.0;       // over actions with at least one ground truth
};

// Miniature role-AP: a prediction is correct when its action matches and both
// boxes overlap an unmatched ground truth of the same scene with IoU strictly
// above the threshold (human box only for no-object actions). Predictions are
// consumed in descending score order; each ground truth matches at most once.
// AP is the average of the precision at each true-positive rank.
EvalResult evaluate_triplets(
    const std::vector<std::vector<GtTriplet>>& gts_per_scene,
    const std::vector<std::vector<ResolvedTriplet>>& preds_per_scene,
    int action_count, double iou_threshold = 0.5);

}  // namespace unionhoi

#endif  // UNIONHOI_EVAL_HPP
