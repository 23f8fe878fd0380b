#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "ovc/mask.hpp"

namespace ovc {

/// Probabilities are clamped to [kProbClamp, 1-kProbClamp] before any log.
inline constexpr double kProbClamp = 1e-7;
/// Stabilizer added to Dice numerators and denominators.
inline constexpr double kDiceDelta = 1e-6;

/// Scalar loss plus analytic gradients, keyed by input name ("pred",
/// "anchor", ...). Gradient arrays are flat and match the input's layout.
struct LossResult {
  double value = 0.0;
  std::map<std::string, std::vector<double>> grads;
};

/// Term weights of the combined training loss.
struct LossWeights {
  double cls = 2.0;
  double box = 2.0;
  double inter_mask = 4.0;
  double init_sem = 2.0;
  double init_reid = 0.5;
};

/// Mean binary cross-entropy over voxels; gradient w.r.t. pred.
LossResult bce_loss(const MaskVolume& pred, const MaskVolume& gt);

/// Soft Dice loss 1 - 2|pred*gt| / (|pred|+|gt|) with stabilizer delta.
LossResult dice_loss(const MaskVolume& pred, const MaskVolume& gt);

/// Weighted BCE: voxels on the target or on its inter-instance mask weigh
/// alpha, the rest 1; normalized by the total weight.
LossResult bce_inter_loss(const MaskVolume& pred, const MaskVolume& gt, const MaskVolume& inter,
                          double alpha);

/// Dice variant that also rewards suppressing inter-instance pixels:
/// 1 - (2|pred*gt| + |(1-pred)*inter|) / (|pred|+|gt|+|inter|).
/// gt and inter must be binary and pointwise disjoint.
LossResult dice_inter_loss(const MaskVolume& pred, const MaskVolume& gt, const MaskVolume& inter);

/// Mean over instances of bce_inter + dice_inter, with each instance's
/// neighbor set and inter-instance mask derived from the boxes.
/// Gradients are keyed "pred[i]".
LossResult inter_mask_loss(std::span<const MaskVolume> preds, std::span<const MaskVolume> gts,
                           const InstanceBoxes& boxes, double epsilon, double alpha);

/// Contrastive embedding loss with one positive and a set of negatives:
/// -log(exp(a.p) / (exp(a.p) + sum exp(a.n))), computed with the max logit
/// subtracted. Gradients keyed "anchor", "positive", "negatives" (flat k*d).
LossResult init_reid_loss(std::span<const double> anchor, std::span<const double> positive,
                          const std::vector<std::vector<double>>& negatives);

/// Focal loss, mean of -alpha_t (1-p_t)^gamma log(p_t) over elements;
/// gt entries must be 0 or 1.
LossResult focal_loss(std::span<const double> pred, std::span<const double> gt, double gamma,
                      double alpha_f);

/// Huber-style box regression loss, mean over the four coordinates.
LossResult smooth_l1_loss(const Box& pred, const Box& gt, double beta);

/// 1 - GIoU with the tight enclosing box; gradient w.r.t. pred coordinates
/// in (x1, y1, x2, y2) order.
LossResult giou_loss(const Box& pred, const Box& gt);

/// Weighted sum of the training loss terms; the box term is the plain sum
/// of its smooth-L1 and GIoU parts.
double total_loss(double cls, double box_l1, double box_giou, double inter_mask, double init_sem,
                  double init_reid, const LossWeights& w);

/// Central finite differences (f(x+h e_i) - f(x-h e_i)) / 2h per coordinate.
std::vector<double> finite_diff_gradient(const std::function<double(std::span<const double>)>& f,
                                         std::vector<double> x, double h = 1e-5);

}  // namespace ovc
