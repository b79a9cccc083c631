#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "unionhoi/action_space.hpp"
#include "unionhoi/anchors.hpp"
#include "unionhoi/box.hpp"
#include "unionhoi/eval.hpp"
#include "unionhoi/fusion.hpp"
#include "unionhoi/io.hpp"
#include "unionhoi/losses.hpp"
#include "unionhoi/oracle.hpp"
#include "unionhoi/suppress.hpp"
#include "unionhoi/synth.hpp"
#include "unionhoi/train.hpp"

namespace py = pybind11;
using namespace unionhoi;

namespace {

std::string box_repr(const Box& b) {
  std::ostringstream os;
  os << "Box(" << b.x_min << ", " << b.y_min << ", " << b.x_max << ", "
     << b.y_max << ")";
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Union-level HOI detection math: anchor labeling, losses, "
            "matching, score fusion and suppression.";

  py::class_<Box>(m, "Box")
      .def(py::init<double, double, double, double>(), py::arg("x_min"),
           py::arg("y_min"), py::arg("x_max"), py::arg("y_max"))
      .def_readonly("x_min", &Box::x_min)
      .def_readonly("y_min", &Box::y_min)
      .def_readonly("x_max", &Box::x_max)
      .def_readonly("y_max", &Box::y_max)
      .def("width", &Box::width)
      .def("height", &Box::height)
      .def("__eq__", [](const Box& a, const Box& b) { return a == b; })
      .def("__repr__", &box_repr);

  m.def("area", &area);
  m.def("intersection_area", &intersection_area);
  m.def("iou", &iou);
  m.def("inclusion_ratio", &inclusion_ratio, py::arg("region"),
        py::arg("target"));
  m.def("enclose", &enclose);

  py::class_<BoxDelta>(m, "BoxDelta")
      .def(py::init<>())
      .def(py::init([](double dx, double dy, double dw, double dh) {
             return BoxDelta{dx, dy, dw, dh};
           }),
           py::arg("dx"), py::arg("dy"), py::arg("dw"), py::arg("dh"))
      .def_readwrite("dx", &BoxDelta::dx)
      .def_readwrite("dy", &BoxDelta::dy)
      .def_readwrite("dw", &BoxDelta::dw)
      .def_readwrite("dh", &BoxDelta::dh);

  m.def("encode_box", &encode_box, py::arg("anchor"), py::arg("gt"));
  m.def("decode_box", &decode_box, py::arg("anchor"), py::arg("delta"));

  py::class_<PyramidLevel>(m, "PyramidLevel")
      .def(py::init([](double stride, double base_size) {
             return PyramidLevel{stride, base_size};
           }),
           py::arg("stride"), py::arg("base_size"))
      .def_readwrite("stride", &PyramidLevel::stride)
      .def_readwrite("base_size", &PyramidLevel::base_size);

  py::class_<PyramidConfig>(m, "PyramidConfig")
      .def(py::init<>())
      .def_static("retina", &PyramidConfig::retina, py::arg("image_width"),
                  py::arg("image_height"))
      .def_readwrite("image_width", &PyramidConfig::image_width)
      .def_readwrite("image_height", &PyramidConfig::image_height)
      .def_readwrite("levels", &PyramidConfig::levels)
      .def_readwrite("scales", &PyramidConfig::scales)
      .def_readwrite("aspect_ratios", &PyramidConfig::aspect_ratios);

  py::class_<Anchor>(m, "Anchor")
      .def_readonly("box", &Anchor::box)
      .def_readonly("level_index", &Anchor::level_index)
      .def_readonly("flat_index", &Anchor::flat_index);

  m.def("generate_anchors", &generate_anchors);

  py::class_<UnionGroundTruth>(m, "UnionGroundTruth")
      .def_readonly("human_box", &UnionGroundTruth::human_box)
      .def_readonly("object_box", &UnionGroundTruth::object_box)
      .def_readonly("union_box", &UnionGroundTruth::union_box)
      .def_readonly("action_labels", &UnionGroundTruth::action_labels)
      .def_readonly("target_class", &UnionGroundTruth::target_class)
      .def_readonly("human_id", &UnionGroundTruth::human_id)
      .def_readonly("object_id", &UnionGroundTruth::object_id);

  m.def("make_union_gt", &make_union_gt, py::arg("human"), py::arg("object"),
        py::arg("action_labels"), py::arg("target_class"), py::arg("human_id"),
        py::arg("object_id"));

  py::class_<InstanceGroundTruth>(m, "InstanceGroundTruth")
      .def(py::init([](const Box& box, int class_label,
                       std::vector<std::uint8_t> actions, int id) {
             return InstanceGroundTruth{box, class_label, std::move(actions),
                                        id};
           }),
           py::arg("box"), py::arg("class_label"), py::arg("action_labels"),
           py::arg("instance_id"))
      .def_readonly("box", &InstanceGroundTruth::box)
      .def_readonly("class_label", &InstanceGroundTruth::class_label)
      .def_readonly("action_labels", &InstanceGroundTruth::action_labels)
      .def_readonly("instance_id", &InstanceGroundTruth::instance_id);

  py::class_<AnchorMatch>(m, "AnchorMatch")
      .def_readonly("gt", &AnchorMatch::gt)
      .def_readonly("iou", &AnchorMatch::iou)
      .def("assigned", &AnchorMatch::assigned);

  py::class_<AnchorAssignment>(m, "AnchorAssignment")
      .def_readonly("matches", &AnchorAssignment::matches)
      .def("positive_count", &AnchorAssignment::positive_count);

  m.def(
      "label_union_anchors",
      [](const std::vector<Anchor>& anchors,
         const std::vector<UnionGroundTruth>& gts, double t_u, double t_h,
         double t_o) { return label_union_anchors(anchors, gts, t_u, t_h, t_o); },
      py::arg("anchors"), py::arg("gts"), py::arg("t_u") = 0.5,
      py::arg("t_h") = 0.5, py::arg("t_o") = 0.5);
  m.def(
      "label_instance_anchors",
      [](const std::vector<Anchor>& anchors,
         const std::vector<InstanceGroundTruth>& gts, double t) {
        return label_instance_anchors(anchors, gts, t);
      },
      py::arg("anchors"), py::arg("gts"), py::arg("t") = 0.5);

  py::class_<UnionAction>(m, "UnionAction")
      .def_readonly("name", &UnionAction::name)
      .def_readonly("subject", &UnionAction::subject)
      .def_readonly("object", &UnionAction::object);

  py::class_<ActionSpace>(m, "ActionSpace")
      .def_static("vcoco", &ActionSpace::vcoco)
      .def_static("hico", &ActionSpace::hico)
      .def_static("mini", &ActionSpace::mini)
      .def_static("preset", &ActionSpace::preset)
      .def("union_action_count", &ActionSpace::union_action_count)
      .def("subject_action_count", &ActionSpace::subject_action_count)
      .def("object_action_count", &ActionSpace::object_action_count)
      .def("instance_action_count", &ActionSpace::instance_action_count)
      .def("action", &ActionSpace::action,
           py::return_value_policy::reference_internal)
      .def("has_object", &ActionSpace::has_object)
      .def("subject_slot", &ActionSpace::subject_slot)
      .def("object_slot", &ActionSpace::object_slot)
      .def("set_excluded", &ActionSpace::set_excluded)
      .def("is_excluded", &ActionSpace::is_excluded);

  py::enum_<LossNormalization>(m, "LossNormalization")
      .value("PER_POSITIVE", LossNormalization::kPerPositive)
      .value("SUM", LossNormalization::kSum);

  py::class_<LossConfig>(m, "LossConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &LossConfig::alpha)
      .def_readwrite("gamma", &LossConfig::gamma)
      .def_readwrite("use_foreground_focal", &LossConfig::use_foreground_focal)
      .def_readwrite("use_target_cls", &LossConfig::use_target_cls)
      .def_readwrite("smooth_l1_beta", &LossConfig::smooth_l1_beta)
      .def_readwrite("normalization", &LossConfig::normalization);

  m.def(
      "focal_loss",
      [](double logit, int y, double alpha, double gamma) {
        const ValueGrad vg = focal_loss(logit, y, alpha, gamma);
        return std::make_pair(vg.value, vg.grad);
      },
      py::arg("logit"), py::arg("y"), py::arg("alpha") = 0.25,
      py::arg("gamma") = 2.0);
  m.def(
      "bce_loss",
      [](double logit, int y) {
        const ValueGrad vg = bce_loss(logit, y);
        return std::make_pair(vg.value, vg.grad);
      },
      py::arg("logit"), py::arg("y"));
  m.def(
      "smooth_l1",
      [](double pred, double target, double beta) {
        const ValueGrad vg = smooth_l1(pred, target, beta);
        return std::make_pair(vg.value, vg.grad);
      },
      py::arg("pred"), py::arg("target"), py::arg("beta") = 1.0);

  py::class_<PredictionTensor>(m, "PredictionTensor")
      .def(py::init<int, int, int>(), py::arg("anchor_count"),
           py::arg("action_dim"), py::arg("class_dim"))
      .def("anchor_count", &PredictionTensor::anchor_count)
      .def("action_dim", &PredictionTensor::action_dim)
      .def("class_dim", &PredictionTensor::class_dim)
      .def("size", &PredictionTensor::size)
      .def("get_params",
           [](const PredictionTensor& p) { return p.params(); })
      .def("set_params",
           [](PredictionTensor& p, const std::vector<double>& v) {
             if (v.size() != p.size()) {
               throw std::invalid_argument("set_params: size mismatch");
             }
             p.params() = v;
           })
      .def("action_logit", &PredictionTensor::action_logit)
      .def("class_logit", &PredictionTensor::class_logit)
      .def("set_action_logit", &PredictionTensor::set_action_logit)
      .def("set_class_logit", &PredictionTensor::set_class_logit)
      .def("delta", &PredictionTensor::delta)
      .def("set_delta", &PredictionTensor::set_delta);

  py::class_<LossResult>(m, "LossResult")
      .def_readonly("value", &LossResult::value)
      .def_readonly("grad", &LossResult::grad);

  m.def(
      "union_branch_loss",
      [](const std::vector<Anchor>& anchors, const AnchorAssignment& assign,
         const std::vector<UnionGroundTruth>& gts,
         const PredictionTensor& preds, const LossConfig& cfg) {
        return union_branch_loss(anchors, assign, gts, preds, cfg);
      },
      py::arg("anchors"), py::arg("assignment"), py::arg("gts"),
      py::arg("preds"), py::arg("config") = LossConfig{});
  m.def(
      "instance_action_loss",
      [](const AnchorAssignment& assign,
         const std::vector<InstanceGroundTruth>& gts,
         const PredictionTensor& preds, const ActionSpace& space,
         const LossConfig& cfg) {
        return instance_action_loss(assign, gts, preds, space, cfg);
      },
      py::arg("assignment"), py::arg("gts"), py::arg("preds"),
      py::arg("space"), py::arg("config") = LossConfig{});
  m.def("total_loss", &total_loss, py::arg("union_part"),
        py::arg("instance_part"));

  m.def(
      "finite_difference_check",
      [](const py::function& fn, std::vector<double> params, double eps,
         int max_coords, std::uint64_t seed) {
        LossFn wrapped = [&fn](std::span<const double> p) {
          py::tuple out = fn(std::vector<double>(p.begin(), p.end()));
          LossResult r;
          r.value = out[0].cast<double>();
          r.grad = out[1].cast<std::vector<double>>();
          return r;
        };
        return finite_difference_check(wrapped, std::move(params), eps,
                                       max_coords, seed);
      },
      py::arg("fn"), py::arg("params"), py::arg("eps") = 1e-6,
      py::arg("max_coords") = 200, py::arg("seed") = 0);

  py::class_<InstanceDetection>(m, "InstanceDetection")
      .def(py::init([](const Box& box, std::vector<double> class_scores,
                       std::vector<double> action_scores, int id) {
             return InstanceDetection{box, std::move(class_scores),
                                      std::move(action_scores), id};
           }),
           py::arg("box"), py::arg("class_scores"), py::arg("action_scores"),
           py::arg("id"))
      .def_readwrite("box", &InstanceDetection::box)
      .def_readwrite("class_scores", &InstanceDetection::class_scores)
      .def_readwrite("action_scores", &InstanceDetection::action_scores)
      .def_readwrite("id", &InstanceDetection::id)
      .def("argmax_class", &InstanceDetection::argmax_class)
      .def("top_class_score", &InstanceDetection::top_class_score);

  py::class_<UnionDetection>(m, "UnionDetection")
      .def(py::init([](const Box& box, std::vector<double> action_scores,
                       std::vector<double> target_class_scores) {
             return UnionDetection{box, std::move(action_scores),
                                   std::move(target_class_scores)};
           }),
           py::arg("box"), py::arg("action_scores"),
           py::arg("target_class_scores"))
      .def_readwrite("box", &UnionDetection::box)
      .def_readwrite("action_scores", &UnionDetection::action_scores)
      .def_readwrite("target_class_scores", &UnionDetection::target_class_scores);

  py::class_<HOITriplet>(m, "HOITriplet")
      .def_readonly("human_id", &HOITriplet::human_id)
      .def_readonly("object_id", &HOITriplet::object_id)
      .def_readonly("action", &HOITriplet::action)
      .def_readonly("score", &HOITriplet::score)
      .def_readonly("union_box", &HOITriplet::union_box)
      .def_readonly("mu", &HOITriplet::mu);

  py::enum_<MatchMode>(m, "MatchMode")
      .value("MATCHING_SCORE", MatchMode::kMatchingScore)
      .value("PLAIN_IOU", MatchMode::kPlainIoU);

  m.def("matching_score", &matching_score, py::arg("human"), py::arg("object"),
        py::arg("union_box"));
  m.def(
      "best_union",
      [](const Box& human, const Box& object,
         const std::vector<UnionDetection>& unions, MatchMode mode)
          -> std::optional<std::pair<int, double>> {
        const auto best = best_union(human, object, unions, mode);
        if (!best) return std::nullopt;
        return std::make_pair(best->index, best->mu);
      },
      py::arg("human"), py::arg("object"), py::arg("unions"),
      py::arg("mode") = MatchMode::kMatchingScore);
  m.def(
      "hoi_score",
      [](const InstanceDetection& human, const InstanceDetection* object,
         const UnionDetection* matched, double mu, int action,
         const ActionSpace& space, int person_class) {
        return hoi_score(human, object, matched, mu, action, space,
                         person_class);
      },
      py::arg("human"), py::arg("object").none(true),
      py::arg("matched").none(true), py::arg("mu"), py::arg("action"),
      py::arg("space"), py::arg("person_class") = 0);

  py::class_<FusionConfig>(m, "FusionConfig")
      .def(py::init<>())
      .def_readwrite("score_threshold", &FusionConfig::score_threshold)
      .def_readwrite("person_class", &FusionConfig::person_class)
      .def_readwrite("match_mode", &FusionConfig::match_mode)
      .def_readwrite("use_unions", &FusionConfig::use_unions);

  m.def(
      "enumerate_triplets",
      [](const std::vector<InstanceDetection>& humans,
         const std::vector<InstanceDetection>& objects,
         const std::vector<UnionDetection>& unions, const ActionSpace& space,
         const FusionConfig& cfg) {
        return enumerate_triplets(humans, objects, unions, space, cfg);
      },
      py::arg("humans"), py::arg("objects"), py::arg("unions"),
      py::arg("space"), py::arg("config") = FusionConfig{});

  m.def("nms_instance", &nms_instance, py::arg("detections"),
        py::arg("iou_threshold") = 0.5);
  m.def("nms_union", &nms_union, py::arg("unions"),
        py::arg("iou_threshold") = 0.5);

  py::enum_<Regime>(m, "Regime")
      .value("INCLUDED", Regime::kIncluded)
      .value("ADJACENT", Regime::kAdjacent)
      .value("DISTANT", Regime::kDistant)
      .value("REMOTE", Regime::kRemote);

  py::enum_<Topology>(m, "Topology")
      .value("ONE_TO_ONE", Topology::kOneToOne)
      .value("ONE_TO_MANY", Topology::kOneToMany)
      .value("MANY_TO_ONE", Topology::kManyToOne)
      .value("MANY_TO_MANY", Topology::kManyToMany);

  py::class_<SceneConfig>(m, "SceneConfig")
      .def(py::init<>())
      .def_readwrite("seed", &SceneConfig::seed)
      .def_readwrite("image_width", &SceneConfig::image_width)
      .def_readwrite("image_height", &SceneConfig::image_height)
      .def_readwrite("num_humans", &SceneConfig::num_humans)
      .def_readwrite("num_objects", &SceneConfig::num_objects)
      .def_readwrite("action_preset", &SceneConfig::action_preset)
      .def_readwrite("num_classes", &SceneConfig::num_classes)
      .def_readwrite("person_class", &SceneConfig::person_class)
      .def_readwrite("regime_mix", &SceneConfig::regime_mix)
      .def_readwrite("topology_mix", &SceneConfig::topology_mix)
      .def_readwrite("overlap_stress", &SceneConfig::overlap_stress);

  py::class_<Scene>(m, "Scene")
      .def_readonly("image_width", &Scene::image_width)
      .def_readonly("image_height", &Scene::image_height)
      .def_readonly("num_classes", &Scene::num_classes)
      .def_readonly("person_class", &Scene::person_class)
      .def_readonly("instances", &Scene::instances)
      .def_readonly("unions", &Scene::unions)
      .def_readonly("seed", &Scene::seed)
      .def_readonly("rng_algorithm", &Scene::rng_algorithm);

  m.def("generate_scene", &generate_scene);
  m.def("classify_regime", &classify_regime, py::arg("human"),
        py::arg("object"));

  py::class_<NoiseConfig>(m, "NoiseConfig")
      .def(py::init<>())
      .def_readwrite("box_sigma", &NoiseConfig::box_sigma)
      .def_readwrite("score_sigma", &NoiseConfig::score_sigma)
      .def_readwrite("positive_base", &NoiseConfig::positive_base)
      .def_readwrite("negative_base", &NoiseConfig::negative_base)
      .def_readwrite("distractors", &NoiseConfig::distractors)
      .def_readwrite("union_distractors", &NoiseConfig::union_distractors)
      .def_readwrite("distractor_score_max", &NoiseConfig::distractor_score_max)
      .def_readwrite("seed", &NoiseConfig::seed);

  py::class_<DetectionSet>(m, "DetectionSet")
      .def_readwrite("instances", &DetectionSet::instances)
      .def_readwrite("unions", &DetectionSet::unions);

  m.def("perturb_to_detections", &perturb_to_detections, py::arg("scene"),
        py::arg("noise"), py::arg("space"));

  py::class_<GtTriplet>(m, "GtTriplet")
      .def_readonly("action", &GtTriplet::action)
      .def_readonly("human_box", &GtTriplet::human_box)
      .def_readonly("object_box", &GtTriplet::object_box);

  m.def("scene_gt_triplets", &scene_gt_triplets);
  m.def(
      "resolve_triplets",
      [](const std::vector<HOITriplet>& preds, const DetectionSet& dets) {
        return resolve_triplets(preds, dets);
      },
      py::arg("predictions"), py::arg("detections"));

  py::class_<ResolvedTriplet>(m, "ResolvedTriplet")
      .def_readonly("action", &ResolvedTriplet::action)
      .def_readonly("score", &ResolvedTriplet::score)
      .def_readonly("human_box", &ResolvedTriplet::human_box)
      .def_readonly("object_box", &ResolvedTriplet::object_box);

  py::class_<EvalResult>(m, "EvalResult")
      .def_readonly("ap", &EvalResult::ap)
      .def_readonly("gt_count", &EvalResult::gt_count)
      .def_readonly("mean_ap", &EvalResult::mean_ap);

  m.def("evaluate_triplets", &evaluate_triplets, py::arg("gts_per_scene"),
        py::arg("preds_per_scene"), py::arg("action_count"),
        py::arg("iou_threshold") = 0.5);

  py::class_<SmokeTrainConfig>(m, "SmokeTrainConfig")
      .def(py::init<>())
      .def_readwrite("steps", &SmokeTrainConfig::steps)
      .def_readwrite("learning_rate", &SmokeTrainConfig::learning_rate)
      .def_readwrite("loss", &SmokeTrainConfig::loss)
      .def_readwrite("pyramid", &SmokeTrainConfig::pyramid);

  py::class_<SmokeTrainResult>(m, "SmokeTrainResult")
      .def_readonly("loss_trajectory", &SmokeTrainResult::loss_trajectory)
      .def_readonly("decoded_union_iou", &SmokeTrainResult::decoded_union_iou)
      .def_readonly("union_positives", &SmokeTrainResult::union_positives)
      .def_readonly("instance_positives", &SmokeTrainResult::instance_positives);

  m.def("smoke_train", &smoke_train, py::arg("scene"), py::arg("space"),
        py::arg("config") = SmokeTrainConfig{});

  auto oracle = m.def_submodule(
      "oracle", "Brute-force reference implementations for verification.");
  oracle.def(
      "label_union",
      [](const std::vector<Anchor>& anchors,
         const std::vector<UnionGroundTruth>& gts, double t_u, double t_h,
         double t_o) {
        return unionhoi::oracle::label_union(anchors, gts, t_u, t_h, t_o);
      },
      py::arg("anchors"), py::arg("gts"), py::arg("t_u") = 0.5,
      py::arg("t_h") = 0.5, py::arg("t_o") = 0.5);
  oracle.def(
      "label_instance",
      [](const std::vector<Anchor>& anchors,
         const std::vector<InstanceGroundTruth>& gts, double t) {
        return unionhoi::oracle::label_instance(anchors, gts, t);
      },
      py::arg("anchors"), py::arg("gts"), py::arg("t") = 0.5);
  oracle.def("nms_instance", &unionhoi::oracle::nms_instance);
  oracle.def("nms_union", &unionhoi::oracle::nms_union);
  oracle.def(
      "triplets",
      [](const std::vector<InstanceDetection>& humans,
         const std::vector<InstanceDetection>& objects,
         const std::vector<UnionDetection>& unions, const ActionSpace& space,
         const FusionConfig& cfg) {
        return unionhoi::oracle::triplets(humans, objects, unions, space, cfg);
      },
      py::arg("humans"), py::arg("objects"), py::arg("unions"),
      py::arg("space"), py::arg("config") = FusionConfig{});
}
