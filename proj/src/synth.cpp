#include "unionhoi/synth.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "unionhoi/rng.hpp"

namespace unionhoi {

namespace {

constexpr int kPlacementAttempts = 300;
// Same-class boxes are kept below this IoU so class-wise NMS never merges
// distinct ground-truth instances.
constexpr double kSameClassIouCap = 0.45;

double diag(const Box& b) { return std::hypot(b.width(), b.height()); }

double center_distance(const Box& a, const Box& b) {
  return std::hypot(a.center_x() - b.center_x(), a.center_y() - b.center_y());
}

bool contains(const Box& outer, const Box& inner) {
  return outer.x_min <= inner.x_min && outer.y_min <= inner.y_min &&
         outer.x_max >= inner.x_max && outer.y_max >= inner.y_max;
}

struct Placer {
  Rng& rng;
  double W;
  double H;

  Box random_box(double min_frac, double max_frac) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const double w = rng.uniform(min_frac, max_frac) * W;
      const double h = rng.uniform(min_frac, max_frac) * H;
      if (w < 2.0 || h < 2.0) continue;
      if (w > W || h > H) continue;
      const double x0 = rng.uniform(0.0, W - w);
      const double y0 = rng.uniform(0.0, H - h);
      return Box(x0, y0, x0 + w, y0 + h);
    }
    throw std::runtime_error("generate_scene: image too small for requested boxes");
  }

  // Box of roughly `frac` of the reference size, strictly inside `outer`.
  std::optional<Box> inside(const Box& outer, double lo, double hi) {
    const double margin = 0.02;
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const double w = rng.uniform(lo, hi) * outer.width();
      const double h = rng.uniform(lo, hi) * outer.height();
      if (w < 2.0 || h < 2.0) return std::nullopt;
      const double slack_x = outer.width() * (1.0 - 2.0 * margin) - w;
      const double slack_y = outer.height() * (1.0 - 2.0 * margin) - h;
      if (slack_x <= 0.0 || slack_y <= 0.0) continue;
      const double x0 =
          outer.x_min + outer.width() * margin + rng.uniform() * slack_x;
      const double y0 =
          outer.y_min + outer.height() * margin + rng.uniform() * slack_y;
      Box b(x0, y0, x0 + w, y0 + h);
      if (contains(outer, b)) return b;
    }
    return std::nullopt;
  }

  // Box containing `inner`, sized `lo..hi` of the image.
  std::optional<Box> containing(const Box& inner, double lo, double hi) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const double w = rng.uniform(lo, hi) * W;
      const double h = rng.uniform(lo, hi) * H;
      if (w <= inner.width() * 1.1 || h <= inner.height() * 1.1) continue;
      const double x0_lo = std::max(0.0, inner.x_max - w + 1e-9);
      const double x0_hi = std::min(inner.x_min, W - w);
      const double y0_lo = std::max(0.0, inner.y_max - h + 1e-9);
      const double y0_hi = std::min(inner.y_min, H - h);
      if (x0_hi < x0_lo || y0_hi < y0_lo) continue;
      const double x0 = rng.uniform(x0_lo, x0_hi);
      const double y0 = rng.uniform(y0_lo, y0_hi);
      Box b(x0, y0, x0 + w, y0 + h);
      if (contains(b, inner) && b.x_max <= W && b.y_max <= H) return b;
    }
    return std::nullopt;
  }

  // Partner box straddling one edge of `ref`: partial overlap, no containment.
  std::optional<Box> adjacent(const Box& ref, double lo, double hi) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const double w = rng.uniform(lo, hi) * ref.width();
      const double h = rng.uniform(lo, hi) * ref.height();
      if (w < 2.0 || h < 2.0) return std::nullopt;
      const int side = rng.uniform_int(0, 3);
      const double depth = rng.uniform(0.2, 0.6);  // fraction overlapping
      double cx, cy;
      if (side == 0) {  // straddle right edge
        cx = ref.x_max - depth * w + 0.5 * w;
        cy = rng.uniform(ref.y_min + 0.2 * ref.height(),
                         ref.y_max - 0.2 * ref.height());
      } else if (side == 1) {  // left
        cx = ref.x_min + depth * w - 0.5 * w;
        cy = rng.uniform(ref.y_min + 0.2 * ref.height(),
                         ref.y_max - 0.2 * ref.height());
      } else if (side == 2) {  // bottom
        cy = ref.y_max - depth * h + 0.5 * h;
        cx = rng.uniform(ref.x_min + 0.2 * ref.width(),
                         ref.x_max - 0.2 * ref.width());
      } else {  // top
        cy = ref.y_min + depth * h - 0.5 * h;
        cx = rng.uniform(ref.x_min + 0.2 * ref.width(),
                         ref.x_max - 0.2 * ref.width());
      }
      const double x0 = cx - 0.5 * w;
      const double y0 = cy - 0.5 * h;
      if (x0 < 0.0 || y0 < 0.0 || x0 + w > W || y0 + h > H) continue;
      Box b(x0, y0, x0 + w, y0 + h);
      if (intersection_area(ref, b) <= 0.0) continue;
      if (contains(ref, b) || contains(b, ref)) continue;
      return b;
    }
    return std::nullopt;
  }

  // Disjoint partner; `remote` additionally pushes the centers apart beyond
  // the larger diagonal, `!remote` keeps them within it.
  std::optional<Box> apart(const Box& ref, double lo, double hi, bool remote) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const double w = rng.uniform(lo, hi) * W;
      const double h = rng.uniform(lo, hi) * H;
      if (w < 2.0 || h < 2.0) return std::nullopt;
      if (w > W || h > H) continue;
      const double x0 = rng.uniform(0.0, W - w);
      const double y0 = rng.uniform(0.0, H - h);
      Box b(x0, y0, x0 + w, y0 + h);
      if (intersection_area(ref, b) > 0.0) continue;
      const double dist = center_distance(ref, b);
      const double limit = std::max(diag(ref), diag(b));
      if (remote ? dist > limit * 1.05 : dist <= limit * 0.95) return b;
    }
    return std::nullopt;
  }
};

struct Builder {
  const SceneConfig& cfg;
  const ActionSpace& space;
  Rng rng;
  Placer placer;
  Scene scene;
  int next_object_action = 0;
  int next_noobj_action = 0;
  std::vector<int> object_actions;  // union actions with a target object
  std::vector<int> noobj_actions;

  Builder(const SceneConfig& c, const ActionSpace& s)
      : cfg(c),
        space(s),
        rng(c.seed),
        placer{rng, c.image_width, c.image_height} {
    scene.image_width = c.image_width;
    scene.image_height = c.image_height;
    scene.num_classes = c.num_classes;
    scene.person_class = c.person_class;
    scene.seed = c.seed;
    scene.rng_algorithm = Rng::kAlgorithm;
    for (int a = 0; a < space.union_action_count(); ++a) {
      (space.has_object(a) ? object_actions : noobj_actions).push_back(a);
    }
  }

  bool conflicts(const Box& b, int cls) const {
    for (const auto& inst : scene.instances) {
      if (inst.class_label == cls && iou(inst.box, b) > kSameClassIouCap) {
        return true;
      }
    }
    return false;
  }

  int add_human(const Box& b) {
    if (conflicts(b, cfg.person_class)) return -1;
    InstanceGroundTruth gt{b, cfg.person_class,
                           std::vector<std::uint8_t>(
                               static_cast<size_t>(space.instance_action_count()), 0),
                           static_cast<int>(scene.instances.size())};
    scene.instances.push_back(std::move(gt));
    return scene.instances.back().instance_id;
  }

  // Picks a non-person class that does not collide with an overlapping
  // same-class box; -1 when impossible.
  int pick_object_class(const Box& b) {
    if (cfg.num_classes < 2) return -1;
    const int start = rng.uniform_int(1, cfg.num_classes - 1);
    for (int k = 0; k < cfg.num_classes - 1; ++k) {
      const int cls = 1 + (start - 1 + k) % (cfg.num_classes - 1);
      if (!conflicts(b, cls)) return cls;
    }
    return -1;
  }

  int add_object(const Box& b, int forced_class = -1) {
    const int cls = forced_class >= 0 ? forced_class : pick_object_class(b);
    if (cls < 0 || conflicts(b, cls)) return -1;
    InstanceGroundTruth gt{b, cls,
                           std::vector<std::uint8_t>(
                               static_cast<size_t>(space.instance_action_count()), 0),
                           static_cast<int>(scene.instances.size())};
    scene.instances.push_back(std::move(gt));
    return scene.instances.back().instance_id;
  }

  void add_pair(int human_id, int object_id) {
    const int action = object_actions[static_cast<size_t>(
        next_object_action % static_cast<int>(object_actions.size()))];
    ++next_object_action;
    auto& human = scene.instances[static_cast<size_t>(human_id)];
    auto& object = scene.instances[static_cast<size_t>(object_id)];
    human.action_labels[static_cast<size_t>(space.subject_slot(action))] = 1;
    object.action_labels[static_cast<size_t>(space.object_slot(action))] = 1;
    std::vector<std::uint8_t> labels(
        static_cast<size_t>(space.union_action_count()), 0);
    labels[static_cast<size_t>(action)] = 1;
    scene.unions.push_back(make_union_gt(human.box, object.box,
                                         std::move(labels), object.class_label,
                                         human_id, object_id));
  }

  void maybe_add_noobj_action(int human_id) {
    if (noobj_actions.empty() || !rng.bernoulli(0.5)) return;
    const int action = noobj_actions[static_cast<size_t>(
        next_noobj_action % static_cast<int>(noobj_actions.size()))];
    ++next_noobj_action;
    scene.instances[static_cast<size_t>(human_id)]
        .action_labels[static_cast<size_t>(space.subject_slot(action))] = 1;
  }

  Regime draw_regime() {
    return static_cast<Regime>(rng.pick(cfg.regime_mix));
  }

  // Object placed relative to an existing human box.
  std::optional<Box> place_object_for(const Box& human, Regime regime) {
    switch (regime) {
      case Regime::kIncluded:
        return placer.inside(human, 0.25, 0.5);
      case Regime::kAdjacent:
        return placer.adjacent(human, 0.4, 0.9);
      case Regime::kDistant:
        return placer.apart(human, 0.05, 0.15, false);
      case Regime::kRemote:
        return placer.apart(human, 0.04, 0.1, true);
    }
    return std::nullopt;
  }

  // Human placed relative to an existing object box.
  std::optional<Box> place_human_for(const Box& object, Regime regime) {
    switch (regime) {
      case Regime::kIncluded:
        return placer.containing(object, 0.2, 0.4);
      case Regime::kAdjacent:
        return placer.adjacent(object, 1.2, 2.2);
      case Regime::kDistant:
        return placer.apart(object, 0.1, 0.25, false);
      case Regime::kRemote:
        return placer.apart(object, 0.1, 0.2, true);
    }
    return std::nullopt;
  }

  bool build_one_to_one(int& humans_left, int& objects_left) {
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const Box human = placer.random_box(0.12, 0.3);
      const Regime regime = draw_regime();
      const auto object = place_object_for(human, regime);
      if (!object) continue;
      const int hid = add_human(human);
      if (hid < 0) continue;
      const int oid = add_object(*object);
      if (oid < 0) {
        scene.instances.pop_back();
        continue;
      }
      add_pair(hid, oid);
      maybe_add_noobj_action(hid);
      --humans_left;
      --objects_left;
      return true;
    }
    return false;
  }

  bool build_one_to_many(int& humans_left, int& objects_left) {
    const int want = std::min(objects_left, 2 + rng.uniform_int(0, 1));
    if (want < 2) return build_one_to_one(humans_left, objects_left);
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const Box human = placer.random_box(0.18, 0.35);
      const int hid = add_human(human);
      if (hid < 0) continue;
      std::vector<int> oids;
      for (int k = 0; k < want; ++k) {
        const auto object = place_object_for(human, draw_regime());
        if (!object) break;
        const int oid = add_object(*object);
        if (oid < 0) break;
        oids.push_back(oid);
      }
      if (static_cast<int>(oids.size()) != want) {
        scene.instances.resize(static_cast<size_t>(hid));  // roll the group back
        continue;
      }
      for (int oid : oids) add_pair(hid, oid);
      maybe_add_noobj_action(hid);
      --humans_left;
      objects_left -= want;
      return true;
    }
    return false;
  }

  bool build_many_to_one(int& humans_left, int& objects_left) {
    const int want = std::min(humans_left, 2 + rng.uniform_int(0, 1));
    if (want < 2) return build_one_to_one(humans_left, objects_left);
    const size_t base = scene.instances.size();
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const Box object_box = placer.random_box(0.06, 0.16);
      std::vector<Box> humans;
      for (int k = 0; k < want; ++k) {
        const auto human = place_human_for(object_box, draw_regime());
        if (!human) break;
        bool clash = conflicts(*human, cfg.person_class);
        for (const Box& other : humans) {
          if (iou(other, *human) > kSameClassIouCap) clash = true;
        }
        if (clash) break;
        humans.push_back(*human);
      }
      if (static_cast<int>(humans.size()) != want) continue;
      std::vector<int> hids;
      for (const Box& hb : humans) hids.push_back(add_human(hb));
      const int oid = add_object(object_box);
      if (oid < 0 || std::any_of(hids.begin(), hids.end(),
                                 [](int id) { return id < 0; })) {
        scene.instances.resize(base);
        continue;
      }
      for (int hid : hids) {
        add_pair(hid, oid);
        maybe_add_noobj_action(hid);
      }
      humans_left -= want;
      --objects_left;
      return true;
    }
    return false;
  }

  // Two humans sharing two objects; all four pairs realize the same drawn
  // regime by construction.
  bool build_many_to_many(int& humans_left, int& objects_left) {
    if (humans_left < 2 || objects_left < 2) {
      return build_one_to_one(humans_left, objects_left);
    }
    const Regime regime = draw_regime();
    const size_t base = scene.instances.size();
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      std::optional<Box> h1, h2, o1, o2;
      if (regime == Regime::kIncluded) {
        // Overlapping humans; both objects inside the shared region.
        const double w = rng.uniform(0.25, 0.35) * placer.W;
        const double h = rng.uniform(0.3, 0.45) * placer.H;
        const double shift = rng.uniform(0.55, 0.7) * w;
        if (2.0 * w > placer.W || h > placer.H) continue;
        const double x0 = rng.uniform(0.0, placer.W - w - shift);
        const double y0 = rng.uniform(0.0, placer.H - h);
        h1 = Box(x0, y0, x0 + w, y0 + h);
        h2 = Box(x0 + shift, y0, x0 + shift + w, y0 + h);
        const Box shared(x0 + shift, y0, x0 + w, y0 + h);
        o1 = placer.inside(shared, 0.2, 0.35);
        if (!o1) continue;
        for (int k = 0; k < 50 && !o2; ++k) {
          auto cand = placer.inside(shared, 0.2, 0.35);
          if (cand && intersection_area(*cand, *o1) <= 0.0) o2 = cand;
        }
      } else if (regime == Regime::kAdjacent) {
        // Humans side by side with a gap; objects straddle both.
        const double w = rng.uniform(0.18, 0.26) * placer.W;
        const double h = rng.uniform(0.3, 0.5) * placer.H;
        const double gap = rng.uniform(0.03, 0.08) * placer.W;
        if (2.0 * w + gap > placer.W || h > placer.H) continue;
        const double x0 = rng.uniform(0.0, placer.W - 2.0 * w - gap);
        const double y0 = rng.uniform(0.0, placer.H - h);
        h1 = Box(x0, y0, x0 + w, y0 + h);
        h2 = Box(x0 + w + gap, y0, x0 + 2.0 * w + gap, y0 + h);
        auto straddler = [&](double frac_lo, double frac_hi) -> std::optional<Box> {
          const double ow = gap + rng.uniform(0.15, 0.5) * w;
          const double oh = rng.uniform(frac_lo, frac_hi) * h;
          const double cx = x0 + w + 0.5 * gap;
          const double oy = y0 + rng.uniform(0.05, 0.9 - frac_hi) * h;
          const double ox = cx - 0.5 * ow;
          if (ox < 0.0 || oy < 0.0 || ox + ow > placer.W || oy + oh > placer.H) {
            return std::nullopt;
          }
          return Box(ox, oy, ox + ow, oy + oh);
        };
        o1 = straddler(0.15, 0.3);
        if (!o1) continue;
        for (int k = 0; k < 50 && !o2; ++k) {
          auto cand = straddler(0.15, 0.3);
          if (cand && intersection_area(*cand, *o1) <= 0.0) o2 = cand;
        }
        if (o2) {
          bool ok = true;
          for (const Box& ob : {*o1, *o2}) {
            for (const Box& hb : {*h1, *h2}) {
              if (intersection_area(ob, hb) <= 0.0 || contains(hb, ob) ||
                  contains(ob, hb)) {
                ok = false;
              }
            }
          }
          if (!ok) continue;
        }
      } else {
        // Distant / remote: a human cluster and an object cluster.
        const bool remote = regime == Regime::kRemote;
        h1 = placer.random_box(0.1, 0.18);
        for (int k = 0; k < 50 && !h2; ++k) {
          auto cand = placer.apart(*h1, 0.1, 0.18, false);
          if (cand && center_distance(*h1, *cand) <
                          0.8 * std::max(diag(*h1), diag(*cand))) {
            h2 = cand;
          }
        }
        if (!h2) continue;
        auto far_from_both = [&](double lo, double hi) -> std::optional<Box> {
          for (int k = 0; k < 50; ++k) {
            auto cand = placer.apart(*h1, lo, hi, remote);
            if (!cand) return std::nullopt;
            const double lim2 = std::max(diag(*h2), diag(*cand));
            const double d2 = center_distance(*h2, *cand);
            const bool fits2 = intersection_area(*h2, *cand) <= 0.0 &&
                               (remote ? d2 > lim2 * 1.05 : d2 <= lim2 * 0.95);
            if (fits2) return cand;
          }
          return std::nullopt;
        };
        o1 = far_from_both(0.04, 0.1);
        if (!o1) continue;
        for (int k = 0; k < 50 && !o2; ++k) {
          auto cand = far_from_both(0.04, 0.1);
          if (cand && intersection_area(*cand, *o1) <= 0.0) o2 = cand;
        }
      }
      if (!h1 || !h2 || !o1 || !o2) continue;
      if (iou(*h1, *h2) > kSameClassIouCap) continue;
      const int hid1 = add_human(*h1);
      if (hid1 < 0) continue;
      const int hid2 = add_human(*h2);
      const int oid1 = hid2 < 0 ? -1 : add_object(*o1);
      const int oid2 = oid1 < 0 ? -1 : add_object(*o2);
      if (oid2 < 0) {
        scene.instances.resize(base);
        continue;
      }
      for (int hid : {hid1, hid2}) {
        for (int oid : {oid1, oid2}) add_pair(hid, oid);
        maybe_add_noobj_action(hid);
      }
      humans_left -= 2;
      objects_left -= 2;
      return true;
    }
    return false;
  }

  void build_overlap_stress(int& humans_left, int& objects_left) {
    const int want = std::min(3, objects_left);
    if (humans_left < 1 || want < 1) return;
    for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
      const Box human = placer.random_box(0.35, 0.55);
      std::vector<Box> objects;
      for (int k = 0; k < want; ++k) {
        std::optional<Box> cand;
        for (int r = 0; r < 50 && !cand; ++r) {
          auto c = placer.inside(human, 0.15, 0.3);
          if (!c) break;
          bool clear = true;
          for (const Box& other : objects) {
            if (intersection_area(*c, other) > 0.0) clear = false;
          }
          if (clear) cand = c;
        }
        if (!cand) break;
        objects.push_back(*cand);
      }
      if (static_cast<int>(objects.size()) != want) continue;
      const int hid = add_human(human);
      if (hid < 0) continue;
      bool ok = true;
      std::vector<int> oids;
      for (int k = 0; k < want; ++k) {
        // Distinct classes, mirroring one person amid several unrelated items.
        const int cls = cfg.num_classes >= 2 ? 1 + k % (cfg.num_classes - 1) : -1;
        const int oid = add_object(objects[static_cast<size_t>(k)], cls);
        if (oid < 0) ok = false;
        oids.push_back(oid);
      }
      if (!ok) {
        scene.instances.resize(static_cast<size_t>(hid));
        continue;
      }
      for (int oid : oids) add_pair(hid, oid);
      --humans_left;
      objects_left -= want;
      return;
    }
    throw std::runtime_error(
        "generate_scene: could not place the overlap-stress group");
  }

  Scene run() {
    int humans_left = cfg.num_humans;
    int objects_left = cfg.num_objects;
    if (cfg.overlap_stress) build_overlap_stress(humans_left, objects_left);

    int stalls = 0;
    while (humans_left > 0 && objects_left > 0 && stalls < 20) {
      const auto topo = static_cast<Topology>(rng.pick(cfg.topology_mix));
      bool ok = false;
      switch (topo) {
        case Topology::kOneToOne:
          ok = build_one_to_one(humans_left, objects_left);
          break;
        case Topology::kOneToMany:
          ok = build_one_to_many(humans_left, objects_left);
          break;
        case Topology::kManyToOne:
          ok = build_many_to_one(humans_left, objects_left);
          break;
        case Topology::kManyToMany:
          ok = build_many_to_many(humans_left, objects_left);
          break;
      }
      stalls = ok ? 0 : stalls + 1;
    }
    if (humans_left > 0 && objects_left > 0) {
      throw std::runtime_error(
          "generate_scene: could not realize the requested interaction mix");
    }

    // Leftover budget becomes non-interacting instances.
    for (int k = 0; k < humans_left; ++k) {
      for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
        if (add_human(placer.random_box(0.1, 0.25)) >= 0) break;
      }
    }
    for (int k = 0; k < objects_left; ++k) {
      for (int attempt = 0; attempt < kPlacementAttempts; ++attempt) {
        if (add_object(placer.random_box(0.05, 0.15)) >= 0) break;
      }
    }
    return std::move(scene);
  }
};

}  // namespace

void SceneConfig::validate() const {
  if (image_width <= 0.0 || image_height <= 0.0) {
    throw std::invalid_argument("SceneConfig: image size must be positive");
  }
  if (num_humans < 0 || num_objects < 0) {
    throw std::invalid_argument("SceneConfig: counts must be >= 0");
  }
  if (num_classes < 2) {
    throw std::invalid_argument(
        "SceneConfig: need at least two classes (person + one object)");
  }
  if (person_class < 0 || person_class >= num_classes) {
    throw std::invalid_argument("SceneConfig: person class out of range");
  }
  auto check_mix = [](const std::array<double, 4>& mix, const char* name) {
    double sum = 0.0;
    for (double v : mix) {
      if (v < 0.0) {
        throw std::invalid_argument(std::string("SceneConfig: negative ") +
                                    name + " fraction");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument(std::string("SceneConfig: ") + name +
                                  " mix must sum to 1");
    }
  };
  check_mix(regime_mix, "regime");
  check_mix(topology_mix, "topology");
}

Scene generate_scene(const SceneConfig& cfg) {
  cfg.validate();
  const ActionSpace space = ActionSpace::preset(cfg.action_preset);
  Builder builder(cfg, space);
  return builder.run();
}

Regime classify_regime(const Box& human, const Box& object) {
  if (contains(human, object)) return Regime::kIncluded;
  if (intersection_area(human, object) > 0.0) return Regime::kAdjacent;
  const double dist = center_distance(human, object);
  const double limit = std::max(diag(human), diag(object));
  return dist > limit ? Regime::kRemote : Regime::kDistant;
}

namespace {

double logit(double p) { return std::log(p / (1.0 - p)); }

double noisy_score(Rng& rng, int label, const NoiseConfig& cfg) {
  if (cfg.score_sigma <= 0.0) return label ? 1.0 : 0.0;
  const double base = label ? cfg.positive_base : cfg.negative_base;
  const double z = logit(base) + cfg.score_sigma * rng.normal();
  return 1.0 / (1.0 + std::exp(-z));
}

Box noisy_box(Rng& rng, const Box& b, const NoiseConfig& cfg) {
  if (cfg.box_sigma <= 0.0) return b;
  BoxDelta d;
  d.dx = cfg.box_sigma * rng.normal();
  d.dy = cfg.box_sigma * rng.normal();
  d.dw = cfg.box_sigma * rng.normal();
  d.dh = cfg.box_sigma * rng.normal();
  return decode_box(b, d);
}

}  // namespace

DetectionSet perturb_to_detections(const Scene& scene, const NoiseConfig& cfg,
                                   const ActionSpace& space) {
  if (cfg.box_sigma < 0.0 || cfg.score_sigma < 0.0 || cfg.distractors < 0 ||
      cfg.union_distractors < 0) {
    throw std::invalid_argument("NoiseConfig: magnitudes must be >= 0");
  }
  Rng rng(cfg.seed);
  DetectionSet out;

  for (const auto& inst : scene.instances) {
    InstanceDetection det;
    det.box = noisy_box(rng, inst.box, cfg);
    det.class_scores.resize(static_cast<size_t>(scene.num_classes));
    for (int k = 0; k < scene.num_classes; ++k) {
      det.class_scores[static_cast<size_t>(k)] =
          noisy_score(rng, k == inst.class_label ? 1 : 0, cfg);
    }
    det.action_scores.resize(inst.action_labels.size());
    for (size_t t = 0; t < inst.action_labels.size(); ++t) {
      det.action_scores[t] = noisy_score(rng, inst.action_labels[t], cfg);
    }
    det.id = inst.instance_id;
    out.instances.push_back(std::move(det));
  }

  for (const auto& ugt : scene.unions) {
    UnionDetection det;
    det.box = noisy_box(rng, ugt.union_box, cfg);
    det.action_scores.resize(ugt.action_labels.size());
    for (size_t t = 0; t < ugt.action_labels.size(); ++t) {
      det.action_scores[t] = noisy_score(rng, ugt.action_labels[t], cfg);
    }
    det.target_class_scores.resize(static_cast<size_t>(scene.num_classes));
    for (int k = 0; k < scene.num_classes; ++k) {
      det.target_class_scores[static_cast<size_t>(k)] =
          noisy_score(rng, k == ugt.target_class ? 1 : 0, cfg);
    }
    out.unions.push_back(std::move(det));
  }

  int next_id = static_cast<int>(scene.instances.size());
  Placer placer{rng, scene.image_width, scene.image_height};
  const double cap = cfg.distractor_score_max;
  for (int d = 0; d < cfg.distractors; ++d) {
    InstanceDetection det;
    det.box = placer.random_box(0.04, 0.25);
    det.class_scores.resize(static_cast<size_t>(scene.num_classes));
    const int cls = rng.uniform_int(0, scene.num_classes - 1);
    for (int k = 0; k < scene.num_classes; ++k) {
      det.class_scores[static_cast<size_t>(k)] =
          k == cls ? rng.uniform(0.5 * cap, cap) : rng.uniform(0.0, 0.2 * cap);
    }
    det.action_scores.resize(
        static_cast<size_t>(space.instance_action_count()));
    for (auto& s : det.action_scores) s = rng.uniform(0.0, 0.6 * cap);
    det.id = next_id++;
    out.instances.push_back(std::move(det));
  }
  for (int d = 0; d < cfg.union_distractors; ++d) {
    UnionDetection det;
    det.box = placer.random_box(0.1, 0.45);
    det.action_scores.resize(static_cast<size_t>(space.union_action_count()));
    for (auto& s : det.action_scores) s = rng.uniform(0.0, 0.6 * cap);
    det.action_scores[static_cast<size_t>(
        rng.uniform_int(0, space.union_action_count() - 1))] =
        rng.uniform(0.5 * cap, cap);
    det.target_class_scores.assign(static_cast<size_t>(scene.num_classes), 0.0);
    out.unions.push_back(std::move(det));
  }
  return out;
}

DetectionSet random_detections(const RandomDetectionsConfig& cfg,
                               const ActionSpace& space) {
  Rng rng(cfg.seed);
  Placer placer{rng, cfg.image_width, cfg.image_height};
  DetectionSet out;
  int next_id = 0;
  auto fill = [&](std::vector<double>& v, size_t n) {
    v.resize(n);
    for (auto& s : v) s = rng.uniform();
  };
  for (int i = 0; i < cfg.humans + cfg.objects; ++i) {
    InstanceDetection det;
    det.box = placer.random_box(0.05, 0.4);
    fill(det.class_scores, static_cast<size_t>(cfg.num_classes));
    fill(det.action_scores, static_cast<size_t>(space.instance_action_count()));
    // First cfg.humans detections argmax at the person class.
    if (i < cfg.humans) {
      det.class_scores[static_cast<size_t>(cfg.person_class)] =
          0.5 + 0.5 * rng.uniform();
      for (int k = 0; k < cfg.num_classes; ++k) {
        if (k != cfg.person_class) {
          det.class_scores[static_cast<size_t>(k)] *= 0.45;
        }
      }
    } else {
      // Push the argmax away from the person class.
      det.class_scores[static_cast<size_t>(cfg.person_class)] *= 0.45;
      const int cls = 1 + static_cast<int>(
          rng.uniform() * (cfg.num_classes - 1));
      det.class_scores[static_cast<size_t>(
          std::min(cls, cfg.num_classes - 1))] = 0.5 + 0.5 * rng.uniform();
    }
    det.id = next_id++;
    out.instances.push_back(std::move(det));
  }
  for (int i = 0; i < cfg.unions; ++i) {
    UnionDetection det;
    det.box = placer.random_box(0.1, 0.6);
    fill(det.action_scores, static_cast<size_t>(space.union_action_count()));
    fill(det.target_class_scores, static_cast<size_t>(cfg.num_classes));
    out.unions.push_back(std::move(det));
  }
  return out;
}

}  // namespace unionhoi
