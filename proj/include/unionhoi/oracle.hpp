#ifndef UNIONHOI_ORACLE_HPP
#define UNIONHOI_ORACLE_HPP

#include <span>
#include <vector>

#include "unionhoi/anchors.hpp"
#include "unionhoi/fusion.hpp"
#include "unionhoi/losses.hpp"
#include "unionhoi/suppress.hpp"

// Brute-force re-evaluations of the labeling, suppression, scoring and loss
// rules. Everything here is written straight from the defining formulas with
// its own arithmetic (only the Box value type is shared), so agreement with
// the fast paths is evidence rather than tautology. Performance is
// intentionally ignored.
namespace unionhoi::oracle {

AnchorAssignment label_union(std::span<const Anchor> anchors,
                             std::span<const UnionGroundTruth> gts,
                             double t_u = 0.5, double t_h = 0.5,
                             double t_o = 0.5);

AnchorAssignment label_instance(std::span<const Anchor> anchors,
                                std::span<const InstanceGroundTruth> gts,
                                double t = 0.5);

std::vector<InstanceDetection> nms_instance(
    const std::vector<InstanceDetection>& detections, double iou_threshold);

std::vector<UnionDetection> nms_union(const std::vector<UnionDetection>& unions,
                                      double iou_threshold);

std::vector<HOITriplet> triplets(std::span<const InstanceDetection> humans,
                                 std::span<const InstanceDetection> objects,
                                 std::span<const UnionDetection> unions,
                                 const ActionSpace& space,
                                 const FusionConfig& cfg = {});

// Literal evaluation of the vanilla union loss (unnormalized double sum over
// positives plus the background sum), value only.
double union_loss_vanilla(std::span<const Anchor> anchors,
                          std::span<const UnionGroundTruth> gts,
                          const PredictionTensor& preds, double alpha,
                          double gamma, double beta, double t_u = 0.5,
                          double t_h = 0.5, double t_o = 0.5);

}  // namespace unionhoi::oracle

#endif  // UNIONHOI_ORACLE_HPP
