#include "ovc/clip.hpp"

#include <cmath>

#include "ovc/errors.hpp"
#include "ovc/parallel.hpp"

namespace ovc {

Array2<double> aggregate_queries(const std::vector<Array2<double>>& per_frame,
                                 const Array2<double>& time_weights) {
  const int t_count = static_cast<int>(per_frame.size());
  if (t_count == 0) throw DimensionError("aggregate_queries: no frames");
  const int n = per_frame[0].rows();
  const int d = per_frame[0].cols();
  for (const auto& qt : per_frame)
    if (qt.rows() != n || qt.cols() != d)
      throw DimensionError("aggregate_queries: inconsistent per-frame query shapes");
  if (time_weights.rows() != t_count || time_weights.cols() != n)
    throw DimensionError("aggregate_queries: time weight shape mismatch");

  Array2<double> out(n, d, 0.0);
  for (int q = 0; q < n; ++q) {
    double sum = 0.0;
    for (int t = 0; t < t_count; ++t) {
      if (!std::isfinite(time_weights(t, q)))
        throw ValidationError("aggregate_queries: non-finite time weight");
      sum += time_weights(t, q);
    }
    if (std::abs(sum - 1.0) > 1e-3)
      throw ValidationError("aggregate_queries: time weights of query " + std::to_string(q) +
                            " sum to " + std::to_string(sum));
    for (int t = 0; t < t_count; ++t) {
      double w = time_weights(t, q) / sum;
      for (int c = 0; c < d; ++c) out(q, c) += w * per_frame[t](q, c);
    }
  }
  return out;
}

Tensor4 synthesize_mask_logits(const Array2<double>& queries, const MaskFeatures& mask_features) {
  const int n = queries.rows();
  const int d = queries.cols();
  const Tensor4& feats = mask_features.data;
  if (feats.channels() != d) throw DimensionError("synthesize_masks: feature dimension mismatch");
  if (n < 1) throw DimensionError("synthesize_masks: no queries");

  Tensor4 out(n, feats.frames(), feats.height(), feats.width(), 0.0);
  const size_t plane = static_cast<size_t>(feats.frames()) * feats.height() * feats.width();
  parallel_for(n, [&](int q) {
    double* dst = out.values().data() + static_cast<size_t>(q) * plane;
    for (int k = 0; k < d; ++k) {
      const double* src = feats.values().data() + static_cast<size_t>(k) * plane;
      const double qk = queries(q, k);
      for (size_t p = 0; p < plane; ++p) dst[p] += qk * src[p];
    }
  });
  return out;
}

Tensor4 synthesize_masks(const Array2<double>& queries, const MaskFeatures& mask_features) {
  Tensor4 out = synthesize_mask_logits(queries, mask_features);
  for (double& v : out.values()) v = 1.0 / (1.0 + std::exp(-v));
  return out;
}

ClipDetections filter_detections(const ClipDetections& dets, double tau_conf) {
  if (tau_conf < 0.0 || tau_conf > 1.0)
    throw ValidationError("filter_detections: tau_conf must be in [0,1]");
  ClipDetections out;
  out.reserve(dets.size());
  for (const auto& det : dets)
    if (det.confidence >= tau_conf) out.push_back(det);
  return out;
}

}  // namespace ovc
