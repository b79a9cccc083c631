#include "unionhoi/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace unionhoi::oracle {

namespace {

double box_area(const Box& b) {
  return (b.x_max - b.x_min) * (b.y_max - b.y_min);
}

double inter(const Box& a, const Box& b) {
  const double x0 = a.x_min > b.x_min ? a.x_min : b.x_min;
  const double y0 = a.y_min > b.y_min ? a.y_min : b.y_min;
  const double x1 = a.x_max < b.x_max ? a.x_max : b.x_max;
  const double y1 = a.y_max < b.y_max ? a.y_max : b.y_max;
  if (x1 <= x0 || y1 <= y0) return 0.0;
  return (x1 - x0) * (y1 - y0);
}

double overlap(const Box& a, const Box& b) {
  const double i = inter(a, b);
  return i / (box_area(a) + box_area(b) - i);
}

Box hull(const Box& a, const Box& b) {
  return Box(a.x_min < b.x_min ? a.x_min : b.x_min,
             a.y_min < b.y_min ? a.y_min : b.y_min,
             a.x_max > b.x_max ? a.x_max : b.x_max,
             a.y_max > b.y_max ? a.y_max : b.y_max);
}

}  // namespace

AnchorAssignment label_union(std::span<const Anchor> anchors,
                             std::span<const UnionGroundTruth> gts,
                             double t_u, double t_h, double t_o) {
  AnchorAssignment out;
  out.matches.resize(anchors.size());
  for (size_t j = 0; j < anchors.size(); ++j) {
    const Box& a = anchors[j].box;
    int best_gt = -1;
    double best_iou = -1.0;
    for (size_t i = 0; i < gts.size(); ++i) {
      const double u = overlap(a, gts[i].union_box);
      const double h_ratio = inter(a, gts[i].human_box) / box_area(gts[i].human_box);
      const double o_ratio = inter(a, gts[i].object_box) / box_area(gts[i].object_box);
      const bool matched = (u > t_u) && (h_ratio > t_h) && (o_ratio > t_o);
      if (matched && u > best_iou) {
        best_iou = u;
        best_gt = static_cast<int>(i);
      }
    }
    if (best_gt >= 0) {
      out.matches[j] = AnchorMatch{best_gt, best_iou};
    }
  }
  return out;
}

AnchorAssignment label_instance(std::span<const Anchor> anchors,
                                std::span<const InstanceGroundTruth> gts,
                                double t) {
  AnchorAssignment out;
  out.matches.resize(anchors.size());
  for (size_t j = 0; j < anchors.size(); ++j) {
    int best_gt = -1;
    double best_iou = -1.0;
    for (size_t i = 0; i < gts.size(); ++i) {
      const double u = overlap(anchors[j].box, gts[i].box);
      if (u > t && u > best_iou) {
        best_iou = u;
        best_gt = static_cast<int>(i);
      }
    }
    if (best_gt >= 0) {
      out.matches[j] = AnchorMatch{best_gt, best_iou};
    }
  }
  return out;
}

std::vector<InstanceDetection> nms_instance(
    const std::vector<InstanceDetection>& detections, double iou_threshold) {
  // Repeatedly scan for the strongest unprocessed detection of each class
  // (no sorting), then discard everything of that class it overlaps.
  const int n = static_cast<int>(detections.size());
  std::vector<int> state(static_cast<size_t>(n), 0);  // 0 open, 1 kept, -1 gone
  auto cls_of = [&](int i) {
    const auto& s = detections[static_cast<size_t>(i)].class_scores;
    int best = 0;
    for (int k = 1; k < static_cast<int>(s.size()); ++k) {
      if (s[static_cast<size_t>(k)] > s[static_cast<size_t>(best)]) best = k;
    }
    return best;
  };
  while (true) {
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (state[static_cast<size_t>(i)] != 0) continue;
      if (pick < 0) {
        pick = i;
        continue;
      }
      const int ci = cls_of(i);
      const int cp = cls_of(pick);
      const double si =
          detections[static_cast<size_t>(i)].class_scores[static_cast<size_t>(ci)];
      const double sp =
          detections[static_cast<size_t>(pick)].class_scores[static_cast<size_t>(cp)];
      if (si > sp ||
          (si == sp && detections[static_cast<size_t>(i)].id <
                           detections[static_cast<size_t>(pick)].id)) {
        pick = i;
      }
    }
    if (pick < 0) break;
    state[static_cast<size_t>(pick)] = 1;
    const int cp = cls_of(pick);
    for (int i = 0; i < n; ++i) {
      if (state[static_cast<size_t>(i)] != 0 || cls_of(i) != cp) continue;
      if (overlap(detections[static_cast<size_t>(i)].box,
                  detections[static_cast<size_t>(pick)].box) > iou_threshold) {
        state[static_cast<size_t>(i)] = -1;
      }
    }
  }
  std::vector<InstanceDetection> out;
  for (int i = 0; i < n; ++i) {
    if (state[static_cast<size_t>(i)] == 1) out.push_back(detections[static_cast<size_t>(i)]);
  }
  return out;
}

std::vector<UnionDetection> nms_union(const std::vector<UnionDetection>& unions,
                                      double iou_threshold) {
  const int n = static_cast<int>(unions.size());
  std::vector<int> state(static_cast<size_t>(n), 0);
  auto key_of = [&](int i) {
    double best = 0.0;
    for (double s : unions[static_cast<size_t>(i)].action_scores) {
      if (s > best) best = s;
    }
    return best;
  };
  while (true) {
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (state[static_cast<size_t>(i)] != 0) continue;
      if (pick < 0 || key_of(i) > key_of(pick)) pick = i;
    }
    if (pick < 0) break;
    state[static_cast<size_t>(pick)] = 1;
    for (int i = 0; i < n; ++i) {
      if (state[static_cast<size_t>(i)] != 0) continue;
      if (overlap(unions[static_cast<size_t>(i)].box,
                  unions[static_cast<size_t>(pick)].box) > iou_threshold) {
        state[static_cast<size_t>(i)] = -1;
      }
    }
  }
  std::vector<UnionDetection> out;
  for (int i = 0; i < n; ++i) {
    if (state[static_cast<size_t>(i)] == 1) out.push_back(unions[static_cast<size_t>(i)]);
  }
  return out;
}

std::vector<HOITriplet> triplets(std::span<const InstanceDetection> humans,
                                 std::span<const InstanceDetection> objects,
                                 std::span<const UnionDetection> unions,
                                 const ActionSpace& space,
                                 const FusionConfig& cfg) {
  std::vector<HOITriplet> out;
  for (const InstanceDetection& h : humans) {
    const double s_h = h.class_scores[static_cast<size_t>(cfg.person_class)];
    for (int a = 0; a < space.union_action_count(); ++a) {
      if (space.is_excluded(a) || space.has_object(a)) continue;
      const double s =
          s_h * h.action_scores[static_cast<size_t>(space.subject_slot(a))];
      if (s > cfg.score_threshold) {
        out.push_back(HOITriplet{h.id, -1, a, s, std::nullopt, 0.0});
      }
    }
    for (const InstanceDetection& o : objects) {
      if (o.id == h.id) continue;
      // Exhaustive scan over every union candidate for the pair.
      int best_u = -1;
      double best_mu = 0.0;
      if (cfg.use_unions) {
        for (int ui = 0; ui < static_cast<int>(unions.size()); ++ui) {
          const Box& ub = unions[static_cast<size_t>(ui)].box;
          double mu;
          if (cfg.match_mode == MatchMode::kMatchingScore) {
            const Box enc = hull(h.box, o.box);
            mu = 0.5 * overlap(enc, ub) +
                 0.5 * std::sqrt((inter(h.box, ub) / box_area(h.box)) *
                                 (inter(o.box, ub) / box_area(o.box)));
          } else {
            mu = overlap(hull(h.box, o.box), ub);
          }
          if (mu > best_mu) {
            best_mu = mu;
            best_u = ui;
          }
        }
      }
      double s_o_best = 0.0;
      for (double s : o.class_scores) s_o_best = std::max(s_o_best, s);
      for (int a = 0; a < space.union_action_count(); ++a) {
        if (space.is_excluded(a) || !space.has_object(a)) continue;
        const double s_h_a =
            h.action_scores[static_cast<size_t>(space.subject_slot(a))];
        const double s_o_a =
            o.action_scores[static_cast<size_t>(space.object_slot(a))];
        double s = s_h * s_h_a + s_o_best * s_o_a;
        std::optional<Box> ubox;
        if (best_u >= 0 && best_mu > 0.0) {
          s *= 1.0 + best_mu *
                         unions[static_cast<size_t>(best_u)]
                             .action_scores[static_cast<size_t>(a)];
          ubox = unions[static_cast<size_t>(best_u)].box;
        }
        if (s > cfg.score_threshold) {
          out.push_back(HOITriplet{h.id, o.id, a, s, ubox,
                                   best_u >= 0 ? best_mu : 0.0});
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const HOITriplet& x, const HOITriplet& y) {
                     if (x.score != y.score) return x.score > y.score;
                     if (x.human_id != y.human_id) return x.human_id < y.human_id;
                     if (x.object_id != y.object_id) return x.object_id < y.object_id;
                     return x.action < y.action;
                   });
  return out;
}

double union_loss_vanilla(std::span<const Anchor> anchors,
                          std::span<const UnionGroundTruth> gts,
                          const PredictionTensor& preds, double alpha,
                          double gamma, double beta, double t_u, double t_h,
                          double t_o) {
  auto fl = [&](double x, int y) {
    const double p = 1.0 / (1.0 + std::exp(-x));
    if (y == 1) {
      return -alpha * std::pow(1.0 - p, gamma) * std::log(std::max(p, 1e-300));
    }
    return -(1.0 - alpha) * std::pow(p, gamma) *
           std::log(std::max(1.0 - p, 1e-300));
  };
  auto sl1 = [&](double d) {
    const double ad = std::abs(d);
    return ad < beta ? d * d / (2.0 * beta) : ad - 0.5 * beta;
  };

  const AnchorAssignment assign = label_union(anchors, gts, t_u, t_h, t_o);
  double loss = 0.0;
  for (size_t j = 0; j < anchors.size(); ++j) {
    const AnchorMatch& m = assign.matches[j];
    if (m.assigned()) {
      const UnionGroundTruth& gt = gts[static_cast<size_t>(m.gt)];
      for (int t = 0; t < preds.action_dim(); ++t) {
        loss += fl(preds.action_logit(static_cast<int>(j), t),
                   gt.action_labels[static_cast<size_t>(t)]);
      }
      const Box& a = anchors[j].box;
      const Box& g = gt.union_box;
      const double acx = 0.5 * (a.x_min + a.x_max);
      const double acy = 0.5 * (a.y_min + a.y_max);
      const double aw = a.x_max - a.x_min;
      const double ah = a.y_max - a.y_min;
      const double target[4] = {
          (0.5 * (g.x_min + g.x_max) - acx) / aw,
          (0.5 * (g.y_min + g.y_max) - acy) / ah,
          std::log((g.x_max - g.x_min) / aw),
          std::log((g.y_max - g.y_min) / ah),
      };
      const BoxDelta d = preds.delta(static_cast<int>(j));
      const double pred[4] = {d.dx, d.dy, d.dw, d.dh};
      for (int c = 0; c < 4; ++c) loss += sl1(pred[c] - target[c]);
    } else {
      for (int t = 0; t < preds.action_dim(); ++t) {
        loss += fl(preds.action_logit(static_cast<int>(j), t), 0);
      }
    }
  }
  return loss;
}

}  // namespace unionhoi::oracle
