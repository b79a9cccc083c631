#ifndef UNIONHOI_LOSSES_HPP
#define UNIONHOI_LOSSES_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "unionhoi/action_space.hpp"
#include "unionhoi/anchors.hpp"
#include "unionhoi/box.hpp"
#include "unionhoi/ground_truth.hpp"

namespace unionhoi {

enum class LossNormalization {
  kPerPositive,  // every term divided by max(1, #positive anchors)
  kSum,          // literal unnormalized sums
};

struct LossConfig {
  double alpha = 0.25;
  double gamma = 2.0;
  bool use_foreground_focal = true;  // mask action focal term to positive labels
  bool use_target_cls = true;        // add the target-class BCE term
  double smooth_l1_beta = 1.0;
  LossNormalization normalization = LossNormalization::kPerPositive;

  void validate() const;  // alpha in (0,1), gamma >= 0, beta > 0
};

// Numerically stable pieces shared by the loss terms. log_sigmoid keeps every
// value and gradient finite for any finite logit.
double sigmoid(double x);
double log_sigmoid(double x);  // = -softplus(-x)

struct ValueGrad {
  double value = 0.0;
  double grad = 0.0;  // d value / d logit (or / d pred for smooth_l1)
};

// Focal loss on a sigmoid logit against a binary label:
//   y=1:  -alpha * (1-p)^gamma * log(p)
//   y=0:  -(1-alpha) * p^gamma * log(1-p)
ValueGrad focal_loss(double logit, int y, double alpha, double gamma);

// Sigmoid binary cross entropy; gradient is p - y.
ValueGrad bce_loss(double logit, int y);

// Huber-style loss on a scalar difference: |d| < beta -> d^2/(2 beta),
// else |d| - beta/2.
ValueGrad smooth_l1(double pred, double target, double beta);

// Per-anchor raw predictions of one branch, stored as one flat parameter
// vector so the whole branch can be driven by gradient descent and checked by
// finite differences. Layout: all action logits, then all class logits, then
// all box deltas (4 per anchor).
class PredictionTensor {
 public:
  PredictionTensor(int anchor_count, int action_dim, int class_dim);

  int anchor_count() const { return anchor_count_; }
  int action_dim() const { return action_dim_; }
  int class_dim() const { return class_dim_; }
  std::size_t size() const { return params_.size(); }

  std::vector<double>& params() { return params_; }
  const std::vector<double>& params() const { return params_; }

  std::size_t action_offset(int j, int t) const {
    return static_cast<std::size_t>(j) * action_dim_ + t;
  }
  std::size_t class_offset(int j, int k) const {
    return class_base_ + static_cast<std::size_t>(j) * class_dim_ + k;
  }
  std::size_t delta_offset(int j, int c) const {
    return delta_base_ + static_cast<std::size_t>(j) * 4 + c;
  }

  double action_logit(int j, int t) const { return params_[action_offset(j, t)]; }
  double class_logit(int j, int k) const { return params_[class_offset(j, k)]; }
  void set_action_logit(int j, int t, double v) { params_[action_offset(j, t)] = v; }
  void set_class_logit(int j, int k, double v) { params_[class_offset(j, k)] = v; }

  BoxDelta delta(int j) const;
  void set_delta(int j, const BoxDelta& d);

 private:
  int anchor_count_;
  int action_dim_;
  int class_dim_;
  std::size_t class_base_;
  std::size_t delta_base_;
  std::vector<double> params_;
};

struct LossResult {
  double value = 0.0;
  std::vector<double> grad;  // same layout/size as the branch parameters
};

// Union-branch training loss. Positive anchors accumulate the action focal
// term (masked to positive labels when use_foreground_focal), smooth-L1 on
// encoded box deltas, and the target-class BCE term when use_target_cls;
// negative anchors accumulate the plain background focal term against the
// zero label vector. Gradient accumulation is sequential in anchor order, so
// results are bit-reproducible.
LossResult union_branch_loss(std::span<const Anchor> anchors,
                             const AnchorAssignment& assignment,
                             std::span<const UnionGroundTruth> gts,
                             const PredictionTensor& preds,
                             const LossConfig& cfg);

// Instance-branch action loss: BCE over all (T_s + T_o) slots of positive
// anchors only; negative anchors contribute exactly zero.
LossResult instance_action_loss(const AnchorAssignment& assignment,
                                std::span<const InstanceGroundTruth> gts,
                                const PredictionTensor& preds,
                                const ActionSpace& space,
                                const LossConfig& cfg);

// Plain sum of the two branch losses; gradients concatenate (union branch
// first).
LossResult total_loss(const LossResult& union_part,
                      const LossResult& instance_part);

// Differentiable scalar function of a flat parameter vector.
using LossFn = std::function<LossResult(std::span<const double>)>;

// Central-difference verification of an analytic gradient. Checks up to
// max_coords coordinates (a seeded random subset when the vector is larger)
// and returns the maximum relative error
//   |analytic - numeric| / max(|analytic|, |numeric|, 1e-12).
// Throws std::runtime_error if the loss evaluates to a non-finite value.
double finite_difference_check(const LossFn& fn, std::vector<double> params,
                               double eps = 1e-6, int max_coords = 200,
                               std::uint64_t seed = 0);

}  // namespace unionhoi

#endif  // UNIONHOI_LOSSES_HPP
