#include "unionhoi/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "unionhoi/rng.hpp"

namespace unionhoi {

void LossConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("LossConfig: alpha must lie in (0,1)");
  }
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("LossConfig: gamma must be >= 0");
  }
  if (!(smooth_l1_beta > 0.0)) {
    throw std::invalid_argument("LossConfig: smooth_l1_beta must be > 0");
  }
}

namespace {

double softplus(double x) {
  if (x > 30.0) return x;
  return std::log1p(std::exp(x));
}

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_sigmoid(double x) { return -softplus(-x); }

ValueGrad focal_loss(double logit, int y, double alpha, double gamma) {
  const double p = sigmoid(logit);
  ValueGrad out;
  if (y == 1) {
    const double log_p = log_sigmoid(logit);
    const double mod = std::pow(1.0 - p, gamma);
    out.value = -alpha * mod * log_p;
    out.grad = alpha * gamma * p * mod * log_p - alpha * mod * (1.0 - p);
  } else {
    const double log_1mp = log_sigmoid(-logit);
    const double mod = std::pow(p, gamma);
    out.value = -(1.0 - alpha) * mod * log_1mp;
    out.grad = (1.0 - alpha) * (mod * p - gamma * mod * (1.0 - p) * log_1mp);
  }
  return out;
}

ValueGrad bce_loss(double logit, int y) {
  ValueGrad out;
  out.value = softplus(logit) - (y == 1 ? logit : 0.0);
  out.grad = sigmoid(logit) - (y == 1 ? 1.0 : 0.0);
  return out;
}

ValueGrad smooth_l1(double pred, double target, double beta) {
  const double d = pred - target;
  ValueGrad out;
  if (std::abs(d) < beta) {
    out.value = d * d / (2.0 * beta);
    out.grad = d / beta;
  } else {
    out.value = std::abs(d) - 0.5 * beta;
    out.grad = d > 0.0 ? 1.0 : -1.0;
  }
  return out;
}

PredictionTensor::PredictionTensor(int anchor_count, int action_dim,
                                   int class_dim)
    : anchor_count_(anchor_count),
      action_dim_(action_dim),
      class_dim_(class_dim) {
  if (anchor_count < 0 || action_dim <= 0 || class_dim < 0) {
    throw std::invalid_argument("PredictionTensor: bad dimensions");
  }
  const auto n = static_cast<std::size_t>(anchor_count);
  class_base_ = n * action_dim_;
  delta_base_ = class_base_ + n * class_dim_;
  params_.assign(delta_base_ + n * 4, 0.0);
}

BoxDelta PredictionTensor::delta(int j) const {
  return BoxDelta{params_[delta_offset(j, 0)], params_[delta_offset(j, 1)],
                  params_[delta_offset(j, 2)], params_[delta_offset(j, 3)]};
}

void PredictionTensor::set_delta(int j, const BoxDelta& d) {
  params_[delta_offset(j, 0)] = d.dx;
  params_[delta_offset(j, 1)] = d.dy;
  params_[delta_offset(j, 2)] = d.dw;
  params_[delta_offset(j, 3)] = d.dh;
}

LossResult union_branch_loss(std::span<const Anchor> anchors,
                             const AnchorAssignment& assignment,
                             std::span<const UnionGroundTruth> gts,
                             const PredictionTensor& preds,
                             const LossConfig& cfg) {
  cfg.validate();
  if (assignment.matches.size() != anchors.size() ||
      preds.anchor_count() != static_cast<int>(anchors.size())) {
    throw std::invalid_argument(
        "union_branch_loss: anchors, assignment and predictions disagree");
  }
  const int action_dim = preds.action_dim();
  const int class_dim = preds.class_dim();
  for (const auto& gt : gts) {
    if (static_cast<int>(gt.action_labels.size()) != action_dim) {
      throw std::invalid_argument(
          "union_branch_loss: ground-truth action vector length");
    }
    if (cfg.use_target_cls && gt.target_class >= class_dim) {
      throw std::invalid_argument(
          "union_branch_loss: target class exceeds class logits");
    }
  }

  LossResult out;
  out.grad.assign(preds.size(), 0.0);
  const int positives = assignment.positive_count();

  for (int j = 0; j < static_cast<int>(anchors.size()); ++j) {
    const AnchorMatch& m = assignment.matches[static_cast<size_t>(j)];
    if (m.assigned()) {
      const UnionGroundTruth& gt = gts[static_cast<size_t>(m.gt)];
      for (int t = 0; t < action_dim; ++t) {
        const int y = gt.action_labels[static_cast<size_t>(t)];
        if (cfg.use_foreground_focal && y == 0) continue;
        const ValueGrad vg =
            focal_loss(preds.action_logit(j, t), y, cfg.alpha, cfg.gamma);
        out.value += vg.value;
        out.grad[preds.action_offset(j, t)] += vg.grad;
      }
      const BoxDelta target = encode_box(anchors[static_cast<size_t>(j)].box,
                                         gt.union_box);
      const BoxDelta pred = preds.delta(j);
      const double pc[4] = {pred.dx, pred.dy, pred.dw, pred.dh};
      const double tc[4] = {target.dx, target.dy, target.dw, target.dh};
      for (int c = 0; c < 4; ++c) {
        const ValueGrad vg = smooth_l1(pc[c], tc[c], cfg.smooth_l1_beta);
        out.value += vg.value;
        out.grad[preds.delta_offset(j, c)] += vg.grad;
      }
      if (cfg.use_target_cls) {
        for (int k = 0; k < class_dim; ++k) {
          const ValueGrad vg =
              bce_loss(preds.class_logit(j, k), k == gt.target_class ? 1 : 0);
          out.value += vg.value;
          out.grad[preds.class_offset(j, k)] += vg.grad;
        }
      }
    } else {
      // Background anchors take the vanilla focal term against the zero
      // vector regardless of the foreground-focal flag.
      for (int t = 0; t < action_dim; ++t) {
        const ValueGrad vg =
            focal_loss(preds.action_logit(j, t), 0, cfg.alpha, cfg.gamma);
        out.value += vg.value;
        out.grad[preds.action_offset(j, t)] += vg.grad;
      }
    }
  }

  if (cfg.normalization == LossNormalization::kPerPositive) {
    const double inv = 1.0 / std::max(1, positives);
    out.value *= inv;
    for (double& g : out.grad) g *= inv;
  }
  return out;
}

LossResult instance_action_loss(const AnchorAssignment& assignment,
                                std::span<const InstanceGroundTruth> gts,
                                const PredictionTensor& preds,
                                const ActionSpace& space,
                                const LossConfig& cfg) {
  cfg.validate();
  if (preds.anchor_count() != static_cast<int>(assignment.matches.size())) {
    throw std::invalid_argument(
        "instance_action_loss: assignment and predictions disagree");
  }
  const int action_dim = preds.action_dim();
  if (action_dim != space.instance_action_count()) {
    throw std::invalid_argument(
        "instance_action_loss: prediction action dim does not match the "
        "action space");
  }
  for (const auto& gt : gts) {
    if (static_cast<int>(gt.action_labels.size()) != action_dim) {
      throw std::invalid_argument(
          "instance_action_loss: ground-truth action vector length");
    }
  }

  LossResult out;
  out.grad.assign(preds.size(), 0.0);
  const int positives = assignment.positive_count();

  for (int j = 0; j < preds.anchor_count(); ++j) {
    const AnchorMatch& m = assignment.matches[static_cast<size_t>(j)];
    if (!m.assigned()) continue;
    const InstanceGroundTruth& gt = gts[static_cast<size_t>(m.gt)];
    for (int t = 0; t < action_dim; ++t) {
      const ValueGrad vg = bce_loss(preds.action_logit(j, t),
                                    gt.action_labels[static_cast<size_t>(t)]);
      out.value += vg.value;
      out.grad[preds.action_offset(j, t)] += vg.grad;
    }
  }

  if (cfg.normalization == LossNormalization::kPerPositive) {
    const double inv = 1.0 / std::max(1, positives);
    out.value *= inv;
    for (double& g : out.grad) g *= inv;
  }
  return out;
}

LossResult total_loss(const LossResult& union_part,
                      const LossResult& instance_part) {
  LossResult out;
  out.value = union_part.value + instance_part.value;
  out.grad.reserve(union_part.grad.size() + instance_part.grad.size());
  out.grad.insert(out.grad.end(), union_part.grad.begin(),
                  union_part.grad.end());
  out.grad.insert(out.grad.end(), instance_part.grad.begin(),
                  instance_part.grad.end());
  return out;
}

double finite_difference_check(const LossFn& fn, std::vector<double> params,
                               double eps, int max_coords,
                               std::uint64_t seed) {
  if (!(eps > 0.0)) {
    throw std::invalid_argument("finite_difference_check: eps must be > 0");
  }
  const LossResult base = fn(params);
  if (!std::isfinite(base.value)) {
    throw std::runtime_error("finite_difference_check: non-finite loss");
  }
  if (base.grad.size() != params.size()) {
    throw std::invalid_argument(
        "finite_difference_check: gradient size mismatch");
  }

  std::vector<std::size_t> coords(params.size());
  std::iota(coords.begin(), coords.end(), std::size_t{0});
  if (max_coords > 0 && coords.size() > static_cast<std::size_t>(max_coords)) {
    // Seeded Fisher-Yates prefix; keeps the checked subset reproducible.
    Rng rng(seed);
    for (int i = 0; i < max_coords; ++i) {
      const int j = rng.uniform_int(i, static_cast<int>(coords.size()) - 1);
      std::swap(coords[static_cast<size_t>(i)], coords[static_cast<size_t>(j)]);
    }
    coords.resize(static_cast<std::size_t>(max_coords));
  }

  double max_rel = 0.0;
  for (std::size_t c : coords) {
    const double saved = params[c];
    params[c] = saved + eps;
    const double f_plus = fn(params).value;
    params[c] = saved - eps;
    const double f_minus = fn(params).value;
    params[c] = saved;
    if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) {
      throw std::runtime_error("finite_difference_check: non-finite loss");
    }
    const double numeric = (f_plus - f_minus) / (2.0 * eps);
    const double analytic = base.grad[c];
    const double denom =
        std::max({std::abs(analytic), std::abs(numeric), 1e-12});
    max_rel = std::max(max_rel, std::abs(analytic - numeric) / denom);
  }
  return max_rel;
}

}  // namespace unionhoi
