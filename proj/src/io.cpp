#include "unionhoi/io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace unionhoi::io {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                bool strict, const char* what) {
  if (!strict) return;
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&](const char* k) { return key == k; })) {
      throw std::invalid_argument(std::string(what) + ": unknown field '" +
                                  key + "'");
    }
  }
}

json box_to_json(const Box& b) {
  return json::array({b.x_min, b.y_min, b.x_max, b.y_max});
}

Box box_from_json(const json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw std::invalid_argument("box must be [x0,y0,x1,y1]");
  }
  return Box(j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
             j[3].get<double>());
}

json dense_to_indices(const std::vector<std::uint8_t>& labels) {
  json out = json::array();
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i]) out.push_back(static_cast<int>(i));
  }
  return out;
}

std::vector<std::uint8_t> indices_to_dense(const json& j, int dim,
                                           const char* what) {
  std::vector<std::uint8_t> out(static_cast<size_t>(dim), 0);
  for (const auto& v : j) {
    const int idx = v.get<int>();
    if (idx < 0 || idx >= dim) {
      throw std::invalid_argument(std::string(what) + ": action out of range");
    }
    out[static_cast<size_t>(idx)] = 1;
  }
  return out;
}

std::vector<double> scores_from_json(const json& j) {
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) {
    const double s = v.get<double>();
    if (!(s >= 0.0 && s <= 1.0)) {
      throw std::invalid_argument("detection score outside [0,1]");
    }
    out.push_back(s);
  }
  return out;
}

// Streams records one JSON object per line; empty lines are skipped.
template <typename Fn>
void for_each_record(std::istream& is, Fn&& fn) {
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " +
                                  e.what());
    }
    fn(record);
  }
}

}  // namespace

void write_scenes(std::ostream& os, const std::vector<Scene>& scenes,
                  const ActionSpace& space) {
  (void)space;
  for (const Scene& scene : scenes) {
    json record;
    record["image"] = {{"w", scene.image_width}, {"h", scene.image_height}};
    record["seed"] = scene.seed;
    record["rng"] = scene.rng_algorithm;
    json instances = json::array();
    for (const auto& inst : scene.instances) {
      instances.push_back({{"id", inst.instance_id},
                           {"box", box_to_json(inst.box)},
                           {"class", inst.class_label},
                           {"actions", dense_to_indices(inst.action_labels)}});
    }
    record["instances"] = std::move(instances);
    json unions = json::array();
    for (const auto& u : scene.unions) {
      unions.push_back({{"human_id", u.human_id},
                        {"object_id", u.object_id},
                        {"box", box_to_json(u.union_box)},
                        {"actions", dense_to_indices(u.action_labels)},
                        {"target_class", u.target_class}});
    }
    record["unions"] = std::move(unions);
    os << record.dump() << "\n";
  }
}

std::vector<Scene> read_scenes(std::istream& is, const ActionSpace& space,
                               bool strict) {
  std::vector<Scene> scenes;
  for_each_record(is, [&](const json& record) {
    check_keys(record, {"image", "seed", "rng", "instances", "unions"}, strict,
               "scene");
    Scene scene;
    const json& image = record.at("image");
    check_keys(image, {"w", "h"}, strict, "scene.image");
    scene.image_width = image.at("w").get<double>();
    scene.image_height = image.at("h").get<double>();
    scene.seed = record.value("seed", std::uint64_t{0});
    scene.rng_algorithm = record.value("rng", std::string{});

    int max_class = 1;
    for (const json& j : record.at("instances")) {
      check_keys(j, {"id", "box", "class", "actions"}, strict,
                 "scene.instance");
      InstanceGroundTruth gt{
          box_from_json(j.at("box")), j.at("class").get<int>(),
          indices_to_dense(j.at("actions"), space.instance_action_count(),
                           "scene.instance"),
          j.at("id").get<int>()};
      max_class = std::max(max_class, gt.class_label);
      validate_instance_gt(gt, space.instance_action_count(), 0);
      scene.instances.push_back(std::move(gt));
    }
    for (const json& j : record.at("unions")) {
      check_keys(j, {"human_id", "object_id", "box", "actions", "target_class"},
                 strict, "scene.union");
      const int human_id = j.at("human_id").get<int>();
      const int object_id = j.at("object_id").get<int>();
      auto find_box = [&](int id) -> const Box& {
        for (const auto& inst : scene.instances) {
          if (inst.instance_id == id) return inst.box;
        }
        throw std::invalid_argument("scene.union: unresolved instance id");
      };
      UnionGroundTruth gt{
          find_box(human_id),
          find_box(object_id),
          box_from_json(j.at("box")),
          indices_to_dense(j.at("actions"), space.union_action_count(),
                           "scene.union"),
          j.at("target_class").get<int>(),
          human_id,
          object_id};
      max_class = std::max(max_class, gt.target_class);
      validate_union_gt(gt, space.union_action_count(), 0);
      scene.unions.push_back(std::move(gt));
    }
    scene.num_classes = max_class + 1;
    scene.person_class = 0;
    if (!scene.unions.empty()) {
      const int human_id = scene.unions.front().human_id;
      for (const auto& inst : scene.instances) {
        if (inst.instance_id == human_id) {
          scene.person_class = inst.class_label;
          break;
        }
      }
    }
    scenes.push_back(std::move(scene));
  });
  return scenes;
}

void write_detections(std::ostream& os,
                      const std::vector<DetectionSet>& per_scene) {
  for (size_t s = 0; s < per_scene.size(); ++s) {
    for (const auto& d : per_scene[s].instances) {
      json record;
      record["scene"] = s;
      record["kind"] = "instance";
      record["box"] = box_to_json(d.box);
      record["scores"] = {{"class", d.class_scores},
                          {"action", d.action_scores}};
      os << record.dump() << "\n";
    }
    for (const auto& u : per_scene[s].unions) {
      json record;
      record["scene"] = s;
      record["kind"] = "union";
      record["box"] = box_to_json(u.box);
      record["scores"] = {{"action", u.action_scores},
                          {"target_class", u.target_class_scores}};
      os << record.dump() << "\n";
    }
  }
}

std::vector<DetectionSet> read_detections(std::istream& is, bool strict) {
  std::vector<DetectionSet> out;
  for_each_record(is, [&](const json& record) {
    check_keys(record, {"scene", "kind", "box", "scores"}, strict, "detection");
    const int scene = record.value("scene", 0);
    if (scene < 0) {
      throw std::invalid_argument("detection: negative scene index");
    }
    if (static_cast<size_t>(scene) >= out.size()) {
      out.resize(static_cast<size_t>(scene) + 1);
    }
    DetectionSet& set = out[static_cast<size_t>(scene)];
    const std::string kind = record.at("kind").get<std::string>();
    const json& scores = record.at("scores");
    if (kind == "instance") {
      check_keys(scores, {"class", "action"}, strict, "detection.scores");
      InstanceDetection det;
      det.box = box_from_json(record.at("box"));
      det.class_scores = scores_from_json(scores.at("class"));
      det.action_scores = scores_from_json(scores.at("action"));
      det.id = static_cast<int>(set.instances.size());
      set.instances.push_back(std::move(det));
    } else if (kind == "union") {
      check_keys(scores, {"action", "target_class"}, strict,
                 "detection.scores");
      UnionDetection det;
      det.box = box_from_json(record.at("box"));
      det.action_scores = scores_from_json(scores.at("action"));
      det.target_class_scores = scores_from_json(scores.at("target_class"));
      set.unions.push_back(std::move(det));
    } else {
      throw std::invalid_argument("detection: kind must be instance|union");
    }
  });
  return out;
}

void write_triplets(std::ostream& os,
                    const std::vector<std::vector<HOITriplet>>& per_scene) {
  for (size_t s = 0; s < per_scene.size(); ++s) {
    for (const auto& t : per_scene[s]) {
      json record;
      record["scene"] = s;
      record["human_id"] = t.human_id;
      record["object_id"] =
          t.object_id >= 0 ? json(t.object_id) : json(nullptr);
      record["action"] = t.action;
      record["score"] = t.score;
      record["union_box"] =
          t.union_box ? box_to_json(*t.union_box) : json(nullptr);
      record["mu"] = t.mu;
      os << record.dump() << "\n";
    }
  }
}

std::vector<std::vector<HOITriplet>> read_triplets(std::istream& is,
                                                   bool strict) {
  std::vector<std::vector<HOITriplet>> out;
  for_each_record(is, [&](const json& record) {
    check_keys(record,
               {"scene", "human_id", "object_id", "action", "score",
                "union_box", "mu"},
               strict, "triplet");
    const int scene = record.value("scene", 0);
    if (scene < 0) {
      throw std::invalid_argument("triplet: negative scene index");
    }
    if (static_cast<size_t>(scene) >= out.size()) {
      out.resize(static_cast<size_t>(scene) + 1);
    }
    HOITriplet t;
    t.human_id = record.at("human_id").get<int>();
    t.object_id = record.at("object_id").is_null()
                      ? -1
                      : record.at("object_id").get<int>();
    t.action = record.at("action").get<int>();
    t.score = record.at("score").get<double>();
    if (!record.at("union_box").is_null()) {
      t.union_box = box_from_json(record.at("union_box"));
    }
    t.mu = record.at("mu").get<double>();
    if (t.mu < 0.0 || t.mu > 1.0) {
      throw std::invalid_argument("triplet: mu outside [0,1]");
    }
    if (t.score < 0.0) {
      throw std::invalid_argument("triplet: negative score");
    }
    out[static_cast<size_t>(scene)].push_back(std::move(t));
  });
  return out;
}

}  // namespace unionhoi::io
