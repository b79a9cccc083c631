#include "unionhoi/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

namespace unionhoi {

int InstanceDetection::argmax_class() const {
  if (class_scores.empty()) {
    throw std::invalid_argument("InstanceDetection: no class scores");
  }
  return static_cast<int>(std::distance(
      class_scores.begin(),
      std::max_element(class_scores.begin(), class_scores.end())));
}

double matching_score(const Box& human, const Box& object,
                      const Box& union_box) {
  const Box enc = enclose(human, object);
  const double iou_term = 0.5 * iou(enc, union_box);
  const double cover_term =
      0.5 * std::sqrt(inclusion_ratio(union_box, human) *
                      inclusion_ratio(union_box, object));
  return iou_term + cover_term;
}

std::optional<BestUnion> best_union(const Box& human, const Box& object,
                                    std::span<const UnionDetection> unions,
                                    MatchMode mode) {
  if (unions.empty()) return std::nullopt;
  BestUnion best{0, -1.0};
  for (int i = 0; i < static_cast<int>(unions.size()); ++i) {
    const Box& u = unions[static_cast<size_t>(i)].box;
    const double mu = mode == MatchMode::kMatchingScore
                          ? matching_score(human, object, u)
                          : iou(enclose(human, object), u);
    if (mu > best.mu) best = BestUnion{i, mu};
  }
  return best;
}

double hoi_score(const InstanceDetection& human, const InstanceDetection* object,
                 const UnionDetection* matched, double mu, int action,
                 const ActionSpace& space, int person_class) {
  if (person_class < 0 ||
      person_class >= static_cast<int>(human.class_scores.size())) {
    throw std::out_of_range("hoi_score: person class out of range");
  }
  const double s_h = human.class_scores[static_cast<size_t>(person_class)];
  const double s_h_a =
      human.action_scores[static_cast<size_t>(space.subject_slot(action))];

  if (!space.has_object(action)) {
    return s_h * s_h_a;
  }
  if (object == nullptr) {
    throw std::invalid_argument(
        "hoi_score: action requires a target object but none was given");
  }
  const double s_o = object->top_class_score();
  const double s_o_a =
      object->action_scores[static_cast<size_t>(space.object_slot(action))];
  const double base = s_h * s_h_a + s_o * s_o_a;
  if (matched == nullptr) {
    return base;
  }
  const double s_u_a =
      matched->action_scores[static_cast<size_t>(action)];
  return base * (1.0 + mu * s_u_a);
}

std::vector<HOITriplet> enumerate_triplets(
    std::span<const InstanceDetection> humans,
    std::span<const InstanceDetection> objects,
    std::span<const UnionDetection> unions, const ActionSpace& space,
    const FusionConfig& cfg) {
  std::vector<HOITriplet> out;
  const int T = space.union_action_count();

  for (const InstanceDetection& h : humans) {
    for (int a = 0; a < T; ++a) {
      if (space.has_object(a) || space.is_excluded(a)) continue;
      const double s =
          hoi_score(h, nullptr, nullptr, 0.0, a, space, cfg.person_class);
      if (s > cfg.score_threshold) {
        out.push_back(HOITriplet{h.id, -1, a, s, std::nullopt, 0.0});
      }
    }
    for (const InstanceDetection& o : objects) {
      if (o.id == h.id) continue;
      std::optional<BestUnion> match;
      if (cfg.use_unions) {
        match = best_union(h.box, o.box, unions, cfg.match_mode);
        // A best score of zero means no candidate relates to the pair at
        // all; score through the no-union fallback.
        if (match && match->mu <= 0.0) match.reset();
      }
      const UnionDetection* u =
          match ? &unions[static_cast<size_t>(match->index)] : nullptr;
      const double mu = match ? match->mu : 0.0;
      for (int a = 0; a < T; ++a) {
        if (!space.has_object(a) || space.is_excluded(a)) continue;
        const double s = hoi_score(h, &o, u, mu, a, space, cfg.person_class);
        if (s > cfg.score_threshold) {
          out.push_back(HOITriplet{
              h.id, o.id, a, s,
              u ? std::optional<Box>(u->box) : std::nullopt, mu});
        }
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const HOITriplet& a, const HOITriplet& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.human_id, a.object_id, a.action) <
           std::tie(b.human_id, b.object_id, b.action);
  });
  return out;
}

}  // namespace unionhoi
