#include "unionhoi/suppress.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace unionhoi {

namespace {

void check_threshold(double t) {
  if (!(t > 0.0 && t < 1.0)) {
    throw std::invalid_argument("nms: iou threshold must lie in (0,1)");
  }
}

}  // namespace

std::vector<InstanceDetection> nms_instance(
    const std::vector<InstanceDetection>& detections, double iou_threshold) {
  check_threshold(iou_threshold);

  std::map<int, std::vector<int>> by_class;
  for (int i = 0; i < static_cast<int>(detections.size()); ++i) {
    by_class[detections[static_cast<size_t>(i)].argmax_class()].push_back(i);
  }

  std::vector<bool> keep(detections.size(), false);
  for (auto& [cls, idx] : by_class) {
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      const auto& da = detections[static_cast<size_t>(a)];
      const auto& db = detections[static_cast<size_t>(b)];
      const double sa = da.class_scores[static_cast<size_t>(cls)];
      const double sb = db.class_scores[static_cast<size_t>(cls)];
      if (sa != sb) return sa > sb;
      return da.id < db.id;
    });
    std::vector<int> kept;
    for (int i : idx) {
      bool suppressed = false;
      for (int k : kept) {
        if (iou(detections[static_cast<size_t>(i)].box,
                detections[static_cast<size_t>(k)].box) > iou_threshold) {
          suppressed = true;
          break;
        }
      }
      if (!suppressed) {
        kept.push_back(i);
        keep[static_cast<size_t>(i)] = true;
      }
    }
  }

  std::vector<InstanceDetection> out;
  for (size_t i = 0; i < detections.size(); ++i) {
    if (keep[i]) out.push_back(detections[i]);
  }
  return out;
}

std::vector<UnionDetection> nms_union(const std::vector<UnionDetection>& unions,
                                      double iou_threshold) {
  check_threshold(iou_threshold);

  std::vector<int> order(unions.size());
  std::vector<double> key(unions.size(), 0.0);
  for (size_t i = 0; i < unions.size(); ++i) {
    order[i] = static_cast<int>(i);
    const auto& scores = unions[i].action_scores;
    key[i] = scores.empty()
                 ? 0.0
                 : *std::max_element(scores.begin(), scores.end());
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (key[static_cast<size_t>(a)] != key[static_cast<size_t>(b)]) {
      return key[static_cast<size_t>(a)] > key[static_cast<size_t>(b)];
    }
    return a < b;
  });

  std::vector<bool> keep(unions.size(), false);
  std::vector<int> kept;
  for (int i : order) {
    bool suppressed = false;
    for (int k : kept) {
      if (iou(unions[static_cast<size_t>(i)].box,
              unions[static_cast<size_t>(k)].box) > iou_threshold) {
        suppressed = true;
        break;
      }
    }
    if (!suppressed) {
      kept.push_back(i);
      keep[static_cast<size_t>(i)] = true;
    }
  }

  std::vector<UnionDetection> out;
  for (size_t i = 0; i < unions.size(); ++i) {
    if (keep[i]) out.push_back(unions[i]);
  }
  return out;
}

}  // namespace unionhoi
