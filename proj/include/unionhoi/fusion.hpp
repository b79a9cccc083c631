#ifndef UNIONHOI_FUSION_HPP
#define UNIONHOI_FUSION_HPP

#include <optional>
#include <span>
#include <vector>

#include "unionhoi/action_space.hpp"
#include "unionhoi/box.hpp"

namespace unionhoi {

// Post-sigmoid instance detection: one box with per-class scores and
// instance-level action scores (subject slots first, then object slots).
struct InstanceDetection {
  Box box;
  std::vector<double> class_scores;
  std::vector<double> action_scores;
  int id = -1;

  int argmax_class() const;
  double top_class_score() const { return class_scores[argmax_class()]; }
};

// Post-sigmoid union detection: box plus union-level action scores. The
// target-class scores are carried through but take no part in scoring.
struct UnionDetection {
  Box box;
  std::vector<double> action_scores;
  std::vector<double> target_class_scores;
};

// A scored <human, verb, object> output and the union evidence behind it.
struct HOITriplet {
  int human_id = -1;
  int object_id = -1;  // -1 for actions without a target object
  int action = -1;
  double score = 0.0;
  std::optional<Box> union_box;  // absent when no union was matched
  double mu = 0.0;               // matching score of the union used
};

// How a union candidate is matched to a (human, object) pair.
enum class MatchMode {
  kMatchingScore,  // blended enclosure IoU + inclusion-ratio geometric mean
  kPlainIoU,       // IoU(enclose(human, object), union) only
};

// Union-instance matching score:
//   IoU(enclose(b_h, b_o), b_u)/2
//   + sqrt(inclusion(b_u, b_h) * inclusion(b_u, b_o)) / 2.
// Lies in [0,1]; equals 1 exactly when b_u is the enclosure itself.
double matching_score(const Box& human, const Box& object, const Box& union_box);

struct BestUnion {
  int index;
  double mu;
};

// Highest-matching union for the pair (ties to the lowest index); nullopt on
// an empty candidate list. Selection depends on geometry only.
std::optional<BestUnion> best_union(
    const Box& human, const Box& object, std::span<const UnionDetection> unions,
    MatchMode mode = MatchMode::kMatchingScore);

// HOI score for one union action:
//   full case:        (s_h*s_h^a + s_o*s_o^a) * (1 + mu * s_u^a)
//   no union matched:  s_h*s_h^a + s_o*s_o^a
//   no-object action:  s_h*s_h^a
// where s_h is the human's person-class score, s_h^a / s_o^a read the
// subject / object action slots through the action space, and s_u^a is the
// union's score for the action. `object` may be null only for no-object
// actions; `matched` may be null to force the no-union fallback.
double hoi_score(const InstanceDetection& human, const InstanceDetection* object,
                 const UnionDetection* matched, double mu, int action,
                 const ActionSpace& space, int person_class);

struct FusionConfig {
  double score_threshold = 0.0;  // keep triplets with score strictly above
  int person_class = 0;
  MatchMode match_mode = MatchMode::kMatchingScore;
  bool use_unions = true;  // false drops union contributions entirely
};

// Scores every (human, object) pair against every object-involving action and
// every human against every no-object action. The best union is resolved once
// per pair and shared across actions; a pair whose best matching score is 0 is
// treated as having no union. Pairs where the object is the human itself are
// skipped. Output is sorted by descending score, ties by (human id, object
// id, action index).
std::vector<HOITriplet> enumerate_triplets(
    std::span<const InstanceDetection> humans,
    std::span<const InstanceDetection> objects,
    std::span<const UnionDetection> unions, const ActionSpace& space,
    const FusionConfig& cfg = {});

}  // namespace unionhoi

#endif  // UNIONHOI_FUSION_HPP
