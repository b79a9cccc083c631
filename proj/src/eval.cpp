#include "unionhoi/eval.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace unionhoi {

std::vector<GtTriplet> scene_gt_triplets(const Scene& scene,
                                         const ActionSpace& space) {
  std::vector<GtTriplet> out;
  for (const auto& u : scene.unions) {
    for (int a = 0; a < space.union_action_count(); ++a) {
      if (u.action_labels[static_cast<size_t>(a)]) {
        out.push_back(GtTriplet{a, u.human_box, u.object_box});
      }
    }
  }
  for (const auto& inst : scene.instances) {
    if (inst.class_label != scene.person_class) continue;
    for (int a = 0; a < space.union_action_count(); ++a) {
      if (space.has_object(a)) continue;
      if (inst.action_labels[static_cast<size_t>(space.subject_slot(a))]) {
        out.push_back(GtTriplet{a, inst.box, std::nullopt});
      }
    }
  }
  return out;
}

namespace {

template <typename BoxLookup>
std::vector<ResolvedTriplet> resolve(std::span<const HOITriplet> preds,
                                     const BoxLookup& lookup) {
  std::vector<ResolvedTriplet> out;
  out.reserve(preds.size());
  for (const auto& p : preds) {
    const Box* human = lookup(p.human_id);
    if (human == nullptr) {
      throw std::invalid_argument("resolve_triplets: unknown human id");
    }
    ResolvedTriplet r{p.action, p.score,    *human,
                      std::nullopt, p.human_id, p.object_id};
    if (p.object_id >= 0) {
      const Box* object = lookup(p.object_id);
      if (object == nullptr) {
        throw std::invalid_argument("resolve_triplets: unknown object id");
      }
      r.object_box = *object;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

std::vector<ResolvedTriplet> resolve_triplets(std::span<const HOITriplet> preds,
                                              const DetectionSet& detections) {
  std::unordered_map<int, const Box*> boxes;
  for (const auto& d : detections.instances) boxes[d.id] = &d.box;
  return resolve(preds, [&](int id) -> const Box* {
    auto it = boxes.find(id);
    return it == boxes.end() ? nullptr : it->second;
  });
}

std::vector<ResolvedTriplet> resolve_triplets(std::span<const HOITriplet> preds,
                                              const Scene& scene) {
  std::unordered_map<int, const Box*> boxes;
  for (const auto& inst : scene.instances) boxes[inst.instance_id] = &inst.box;
  return resolve(preds, [&](int id) -> const Box* {
    auto it = boxes.find(id);
    return it == boxes.end() ? nullptr : it->second;
  });
}

EvalResult evaluate_triplets(
    const std::vector<std::vector<GtTriplet>>& gts_per_scene,
    const std::vector<std::vector<ResolvedTriplet>>& preds_per_scene,
    int action_count, double iou_threshold) {
  if (gts_per_scene.size() != preds_per_scene.size()) {
    throw std::invalid_argument(
        "evaluate_triplets: scene counts disagree between gts and predictions");
  }
  EvalResult result;
  result.ap.assign(static_cast<size_t>(action_count), 0.0);
  result.gt_count.assign(static_cast<size_t>(action_count), 0);

  struct Entry {
    int scene;
    const ResolvedTriplet* pred;
  };
  std::vector<std::vector<Entry>> per_action(
      static_cast<size_t>(action_count));
  for (size_t s = 0; s < preds_per_scene.size(); ++s) {
    for (const auto& p : preds_per_scene[s]) {
      if (p.action < 0 || p.action >= action_count) {
        throw std::invalid_argument("evaluate_triplets: action out of range");
      }
      per_action[static_cast<size_t>(p.action)].push_back(
          Entry{static_cast<int>(s), &p});
    }
    for (const auto& g : gts_per_scene[s]) {
      if (g.action < 0 || g.action >= action_count) {
        throw std::invalid_argument("evaluate_triplets: gt action out of range");
      }
      ++result.gt_count[static_cast<size_t>(g.action)];
    }
  }

  int actions_with_gt = 0;
  double ap_sum = 0.0;
  for (int a = 0; a < action_count; ++a) {
    const int n_gt = result.gt_count[static_cast<size_t>(a)];
    if (n_gt == 0) continue;
    ++actions_with_gt;

    auto& entries = per_action[static_cast<size_t>(a)];
    std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
      if (x.pred->score != y.pred->score) return x.pred->score > y.pred->score;
      return std::tie(x.scene, x.pred->human_id, x.pred->object_id) <
             std::tie(y.scene, y.pred->human_id, y.pred->object_id);
    });

    // matched[s][i] marks scene s's i-th gt of this action as consumed.
    std::vector<std::vector<bool>> matched(gts_per_scene.size());
    for (size_t s = 0; s < gts_per_scene.size(); ++s) {
      matched[s].assign(gts_per_scene[s].size(), false);
    }

    int tp = 0;
    int seen = 0;
    double precision_sum = 0.0;
    for (const Entry& e : entries) {
      ++seen;
      const auto& gts = gts_per_scene[static_cast<size_t>(e.scene)];
      int best_gt = -1;
      double best_quality = 0.0;
      for (size_t gi = 0; gi < gts.size(); ++gi) {
        if (gts[gi].action != a || matched[static_cast<size_t>(e.scene)][gi]) {
          continue;
        }
        const bool gt_has_object = gts[gi].object_box.has_value();
        const bool pred_has_object = e.pred->object_box.has_value();
        if (gt_has_object != pred_has_object) continue;
        const double h_iou = iou(e.pred->human_box, gts[gi].human_box);
        if (!(h_iou > iou_threshold)) continue;
        double quality = h_iou;
        if (gt_has_object) {
          const double o_iou = iou(*e.pred->object_box, *gts[gi].object_box);
          if (!(o_iou > iou_threshold)) continue;
          quality = std::min(h_iou, o_iou);
        }
        if (quality > best_quality) {
          best_quality = quality;
          best_gt = static_cast<int>(gi);
        }
      }
      if (best_gt >= 0) {
        matched[static_cast<size_t>(e.scene)][static_cast<size_t>(best_gt)] =
            true;
        ++tp;
        precision_sum += static_cast<double>(tp) / seen;
      }
    }
    result.ap[static_cast<size_t>(a)] = precision_sum / n_gt;
    ap_sum += result.ap[static_cast<size_t>(a)];
  }
  result.mean_ap = actions_with_gt > 0 ? ap_sum / actions_with_gt : 0.0;
  return result;
}

}  // namespace unionhoi
