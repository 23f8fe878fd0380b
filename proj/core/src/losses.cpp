#include "ovc/losses.hpp"

#include <algorithm>
#include <cmath>

#include "ovc/errors.hpp"

namespace ovc {

namespace {

void require_same_shape(const MaskVolume& a, const MaskVolume& b, const char* who) {
  if (!a.data.same_shape(b.data)) throw DimensionError(std::string(who) + ": shape mismatch");
}

bool clamped(double p) { return p < kProbClamp || p > 1.0 - kProbClamp; }

double clamp_prob(double p) { return std::clamp(p, kProbClamp, 1.0 - kProbClamp); }

// Shared weighted-BCE core. bce_loss is the alpha=1 special case, which
// keeps the reduction identity bitwise (weights collapse to 1.0 and the
// normalizer to the voxel count).
LossResult weighted_bce(const MaskVolume& pred, const MaskVolume& gt, const MaskVolume* inter,
                        double alpha) {
  require_same_shape(pred, gt, "bce");
  if (inter) require_same_shape(pred, *inter, "bce_inter");
  const auto& pv = pred.data.values();
  const auto& gv = gt.data.values();
  const size_t n = pv.size();

  LossResult res;
  auto& grad = res.grads["pred"];
  grad.assign(n, 0.0);

  double sum_w = 0.0;
  double sum_loss = 0.0;
  for (size_t v = 0; v < n; ++v) {
    double p = clamp_prob(pv[v]);
    double g = gv[v];
    double iv = inter ? inter->data.values()[v] : 0.0;
    double w = (g > 0.5 || iv > 0.5) ? alpha : 1.0;
    double term = -(g * std::log(p) + (1.0 - g) * std::log(1.0 - p));
    sum_w += w;
    sum_loss += w * term;
    if (!clamped(pv[v])) grad[v] = w * (-(g / p) + (1.0 - g) / (1.0 - p));
  }
  if (sum_w <= 0.0) throw ValidationError("bce_inter: nonpositive total weight");
  res.value = sum_loss / sum_w;
  for (double& d : grad) d /= sum_w;
  return res;
}

// Shared Dice core; a null inter behaves as an all-zero mask and follows the
// exact same arithmetic path, so dice_inter with an empty inter-instance
// mask reproduces dice_loss bit for bit.
LossResult dice_core(const MaskVolume& pred, const MaskVolume& gt, const MaskVolume* inter) {
  require_same_shape(pred, gt, "dice");
  if (inter) require_same_shape(pred, *inter, "dice_inter");
  const auto& pv = pred.data.values();
  const auto& gv = gt.data.values();
  const size_t n = pv.size();

  double sum_p = 0.0, sum_g = 0.0, sum_pg = 0.0, sum_i = 0.0, sum_ci = 0.0;
  for (size_t v = 0; v < n; ++v) {
    double p = pv[v];
    double g = gv[v];
    double iv = inter ? inter->data.values()[v] : 0.0;
    if (g > 0.5 && iv > 0.5) throw ContractError("dice_inter: gt and inter masks overlap");
    sum_p += p;
    sum_g += g;
    sum_pg += p * g;
    sum_i += iv;
    sum_ci += (1.0 - p) * iv;
  }
  double num = 2.0 * sum_pg + sum_ci + kDiceDelta;
  double den = sum_p + sum_g + sum_i + kDiceDelta;

  LossResult res;
  res.value = 1.0 - num / den;
  auto& grad = res.grads["pred"];
  grad.assign(n, 0.0);
  for (size_t v = 0; v < n; ++v) {
    double g = gv[v];
    double iv = inter ? inter->data.values()[v] : 0.0;
    grad[v] = (num - (2.0 * g - iv) * den) / (den * den);
  }
  return res;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

LossResult bce_loss(const MaskVolume& pred, const MaskVolume& gt) {
  return weighted_bce(pred, gt, nullptr, 1.0);
}

LossResult dice_loss(const MaskVolume& pred, const MaskVolume& gt) {
  return dice_core(pred, gt, nullptr);
}

LossResult bce_inter_loss(const MaskVolume& pred, const MaskVolume& gt, const MaskVolume& inter,
                          double alpha) {
  return weighted_bce(pred, gt, &inter, alpha);
}

LossResult dice_inter_loss(const MaskVolume& pred, const MaskVolume& gt, const MaskVolume& inter) {
  return dice_core(pred, gt, &inter);
}

LossResult inter_mask_loss(std::span<const MaskVolume> preds, std::span<const MaskVolume> gts,
                           const InstanceBoxes& boxes, double epsilon, double alpha) {
  const size_t k = preds.size();
  if (k == 0 || gts.size() != k || boxes.size() != k)
    throw DimensionError("inter_mask_loss: preds, gts and boxes must share the instance count");
  LossResult res;
  double total = 0.0;
  for (size_t i = 0; i < k; ++i) {
    NeighborSet oi = neighbor_set(boxes, static_cast<int>(i), epsilon);
    MaskVolume moi = inter_instance_mask(gts, oi);
    LossResult b = bce_inter_loss(preds[i], gts[i], moi, alpha);
    LossResult d = dice_inter_loss(preds[i], gts[i], moi);
    total += b.value + d.value;
    auto& g = res.grads["pred[" + std::to_string(i) + "]"];
    g = b.grads["pred"];
    const auto& dg = d.grads["pred"];
    for (size_t v = 0; v < g.size(); ++v) g[v] = (g[v] + dg[v]) / static_cast<double>(k);
  }
  res.value = total / static_cast<double>(k);
  return res;
}

LossResult init_reid_loss(std::span<const double> anchor, std::span<const double> positive,
                          const std::vector<std::vector<double>>& negatives) {
  const size_t d = anchor.size();
  if (positive.size() != d) throw DimensionError("init_reid_loss: positive dimension mismatch");
  for (const auto& neg : negatives)
    if (neg.size() != d) throw DimensionError("init_reid_loss: negative dimension mismatch");

  LossResult res;
  res.grads["anchor"].assign(d, 0.0);
  res.grads["positive"].assign(d, 0.0);
  res.grads["negatives"].assign(negatives.size() * d, 0.0);
  if (negatives.empty()) return res;  // ratio is exactly 1

  double l_pos = dot(anchor, positive);
  std::vector<double> l_neg(negatives.size());
  double m = l_pos;
  for (size_t i = 0; i < negatives.size(); ++i) {
    l_neg[i] = dot(anchor, negatives[i]);
    m = std::max(m, l_neg[i]);
  }
  double z = std::exp(l_pos - m);
  for (double l : l_neg) z += std::exp(l - m);
  res.value = std::log(z) + m - l_pos;

  double sig_pos = std::exp(l_pos - m) / z;
  auto& ga = res.grads["anchor"];
  auto& gp = res.grads["positive"];
  auto& gn = res.grads["negatives"];
  for (size_t c = 0; c < d; ++c) {
    ga[c] = (sig_pos - 1.0) * positive[c];
    gp[c] = (sig_pos - 1.0) * anchor[c];
  }
  for (size_t i = 0; i < negatives.size(); ++i) {
    double sig = std::exp(l_neg[i] - m) / z;
    for (size_t c = 0; c < d; ++c) {
      ga[c] += sig * negatives[i][c];
      gn[i * d + c] = sig * anchor[c];
    }
  }
  return res;
}

LossResult focal_loss(std::span<const double> pred, std::span<const double> gt, double gamma,
                      double alpha_f) {
  if (pred.size() != gt.size()) throw DimensionError("focal_loss: shape mismatch");
  const size_t n = pred.size();
  if (n == 0) throw DimensionError("focal_loss: empty input");

  LossResult res;
  auto& grad = res.grads["pred"];
  grad.assign(n, 0.0);
  double sum = 0.0;
  for (size_t v = 0; v < n; ++v) {
    double p = clamp_prob(pred[v]);
    bool positive = gt[v] > 0.5;
    double p_t = positive ? p : 1.0 - p;
    double a_t = positive ? alpha_f : 1.0 - alpha_f;
    double dpt_dp = positive ? 1.0 : -1.0;
    double term, dterm_dpt;
    if (gamma == 0.0) {
      term = -(a_t * std::log(p_t));
      dterm_dpt = -(a_t / p_t);
    } else {
      double om = 1.0 - p_t;
      double om_g = std::pow(om, gamma);
      term = -a_t * om_g * std::log(p_t);
      dterm_dpt = a_t * gamma * std::pow(om, gamma - 1.0) * std::log(p_t) - a_t * om_g / p_t;
    }
    sum += term;
    if (!clamped(pred[v])) grad[v] = dterm_dpt * dpt_dp / static_cast<double>(n);
  }
  res.value = sum / static_cast<double>(n);
  return res;
}

LossResult smooth_l1_loss(const Box& pred, const Box& gt, double beta) {
  if (beta <= 0.0) throw ValidationError("smooth_l1_loss: beta must be positive");
  const double dp[4] = {pred.x1 - gt.x1, pred.y1 - gt.y1, pred.x2 - gt.x2, pred.y2 - gt.y2};
  LossResult res;
  auto& grad = res.grads["pred"];
  grad.assign(4, 0.0);
  double sum = 0.0;
  for (int c = 0; c < 4; ++c) {
    double d = dp[c];
    if (std::abs(d) < beta) {
      sum += 0.5 * d * d / beta;
      grad[c] = d / beta / 4.0;
    } else {
      sum += std::abs(d) - 0.5 * beta;
      grad[c] = (d > 0.0 ? 1.0 : -1.0) / 4.0;
    }
  }
  res.value = sum / 4.0;
  return res;
}

LossResult giou_loss(const Box& pred, const Box& gt) {
  const double pw = pred.x2 - pred.x1, ph = pred.y2 - pred.y1;
  const double area_p = pw * ph;
  const double area_g = gt.area();

  // intersection, with active-side indicators for the gradient
  double ix1 = std::max(pred.x1, gt.x1), iy1 = std::max(pred.y1, gt.y1);
  double ix2 = std::min(pred.x2, gt.x2), iy2 = std::min(pred.y2, gt.y2);
  double iw = std::max(0.0, ix2 - ix1), ih = std::max(0.0, iy2 - iy1);
  double inter = iw * ih;
  double uni = area_p + area_g - inter;

  // tight enclosing box
  double cx1 = std::min(pred.x1, gt.x1), cy1 = std::min(pred.y1, gt.y1);
  double cx2 = std::max(pred.x2, gt.x2), cy2 = std::max(pred.y2, gt.y2);
  double cw = cx2 - cx1, ch = cy2 - cy1;
  double encl = cw * ch;
  if (uni <= 0.0 || encl <= 0.0) throw ValidationError("giou_loss: degenerate boxes");

  // L = 2 - I/U - U/C
  LossResult res;
  res.value = 2.0 - inter / uni - uni / encl;

  // d(inter)/d(pred coords): only the active min/max side moves the edge
  double di[4] = {0, 0, 0, 0};
  if (inter > 0.0) {
    if (pred.x1 >= gt.x1) di[0] = -ih;
    if (pred.y1 >= gt.y1) di[1] = -iw;
    if (pred.x2 <= gt.x2) di[2] = ih;
    if (pred.y2 <= gt.y2) di[3] = iw;
  }
  double da[4] = {-ph, -pw, ph, pw};  // d(area_p)
  double dc[4] = {0, 0, 0, 0};        // d(enclosure)
  if (pred.x1 <= gt.x1) dc[0] = -ch;
  if (pred.y1 <= gt.y1) dc[1] = -cw;
  if (pred.x2 >= gt.x2) dc[2] = ch;
  if (pred.y2 >= gt.y2) dc[3] = cw;

  auto& grad = res.grads["pred"];
  grad.assign(4, 0.0);
  for (int c = 0; c < 4; ++c) {
    double du = da[c] - di[c];
    grad[c] = -(di[c] * uni - inter * du) / (uni * uni) - (du * encl - uni * dc[c]) / (encl * encl);
  }
  return res;
}

double total_loss(double cls, double box_l1, double box_giou, double inter_mask, double init_sem,
                  double init_reid, const LossWeights& w) {
  return w.cls * cls + w.box * (box_l1 + box_giou) + w.inter_mask * inter_mask +
         w.init_sem * init_sem + w.init_reid * init_reid;
}

std::vector<double> finite_diff_gradient(const std::function<double(std::span<const double>)>& f,
                                         std::vector<double> x, double h) {
  if (h <= 0.0) throw ValidationError("finite_diff_gradient: h must be positive");
  std::vector<double> grad(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    double keep = x[i];
    x[i] = keep + h;
    double hi = f(x);
    x[i] = keep - h;
    double lo = f(x);
    x[i] = keep;
    grad[i] = (hi - lo) / (2.0 * h);
  }
  return grad;
}

}  // namespace ovc
