#ifndef UNIONHOI_SYNTH_HPP
#define UNIONHOI_SYNTH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "unionhoi/action_space.hpp"
#include "unionhoi/fusion.hpp"
#include "unionhoi/ground_truth.hpp"

namespace unionhoi {

// Distance regimes between a human box and its interaction target:
//   included: b_h strictly contains b_o
//   adjacent: boxes overlap partially
//   distant:  disjoint, centers within max(diag_h, diag_o)
//   remote:   disjoint, centers farther than max(diag_h, diag_o)
enum class Regime { kIncluded = 0, kAdjacent = 1, kDistant = 2, kRemote = 3 };

// Interaction wiring inside one generated group.
enum class Topology {
  kOneToOne = 0,
  kOneToMany = 1,
  kManyToOne = 2,
  kManyToMany = 3,
};

struct SceneConfig {
  std::uint64_t seed = 0;
  double image_width = 512.0;
  double image_height = 512.0;
  int num_humans = 2;
  int num_objects = 3;
  std::string action_preset = "vcoco";
  int num_classes = 10;  // object categories, person included
  int person_class = 0;
  std::array<double, 4> regime_mix = {0.25, 0.25, 0.25, 0.25};
  std::array<double, 4> topology_mix = {0.25, 0.25, 0.25, 0.25};
  // Adds one group of three objects nested inside a single human box, so three
  // distinct pairs share one identical union box.
  bool overlap_stress = false;

  void validate() const;
};

struct Scene {
  double image_width = 0.0;
  double image_height = 0.0;
  int num_classes = 0;
  int person_class = 0;
  std::vector<InstanceGroundTruth> instances;
  std::vector<UnionGroundTruth> unions;
  std::uint64_t seed = 0;
  std::string rng_algorithm;  // stable generator name, recorded for replay
};

// Deterministic for a fixed config; throws std::runtime_error when the
// requested regimes cannot be placed inside the image.
Scene generate_scene(const SceneConfig& cfg);

// Classifies a human/object pair into its distance regime from geometry
// alone (used by tests to confirm the requested mix was realized).
Regime classify_regime(const Box& human, const Box& object);

struct NoiseConfig {
  double box_sigma = 0.0;    // delta-space jitter; 0 keeps boxes exact
  double score_sigma = 0.0;  // logit-space Gaussian sigma; 0 keeps labels exact
  double positive_base = 0.9;  // base score of a positive label under noise
  double negative_base = 0.1;
  int distractors = 0;        // injected false-positive instances
  int union_distractors = 0;  // injected false-positive unions
  double distractor_score_max = 0.5;
  std::uint64_t seed = 1;
};

struct DetectionSet {
  std::vector<InstanceDetection> instances;
  std::vector<UnionDetection> unions;
};

// Stands in for network outputs: ground truths become detections with
// configurable box jitter, logit-space score corruption and injected
// distractors. All-zero noise reproduces the ground truths as perfect
// detections (scores exactly 0/1, ids equal to instance ids).
DetectionSet perturb_to_detections(const Scene& scene, const NoiseConfig& cfg,
                                   const ActionSpace& space);

// Unstructured random detections for NMS stress tests and benchmarks.
struct RandomDetectionsConfig {
  int humans = 8;
  int objects = 8;
  int unions = 8;
  int num_classes = 10;
  int person_class = 0;
  double image_width = 512.0;
  double image_height = 512.0;
  std::uint64_t seed = 0;
};

DetectionSet random_detections(const RandomDetectionsConfig& cfg,
                               const ActionSpace& space);

}  // namespace unionhoi

#endif  // UNIONHOI_SYNTH_HPP
