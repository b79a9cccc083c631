#ifndef UNIONHOI_SUPPRESS_HPP
#define UNIONHOI_SUPPRESS_HPP

#include <vector>

#include "unionhoi/fusion.hpp"

namespace unionhoi {

// Class-wise greedy NMS: detections compete only within their argmax class,
// ordered by that class score (ties by detection id). Survivors keep their
// input order.
std::vector<InstanceDetection> nms_instance(
    const std::vector<InstanceDetection>& detections, double iou_threshold);

// Class-agnostic greedy NMS for union detections, ordered by each union's
// maximum action score (ties by input position). Action classes are ignored
// during suppression. Survivors keep their input order.
std::vector<UnionDetection> nms_union(const std::vector<UnionDetection>& unions,
                                      double iou_threshold);

}  // namespace unionhoi

#endif  // UNIONHOI_SUPPRESS_HPP
