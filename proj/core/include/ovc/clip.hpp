#pragma once

#include <vector>

#include "ovc/mask.hpp"
#include "ovc/tensor.hpp"

namespace ovc {

/// Frame-level queries plus their per-frame time weights and the aggregated
/// clip-level result.
struct ClipQuerySet {
  std::vector<Array2<double>> per_frame;  // [T] of [N][d]
  Array2<double> time_weights;            // [T][N]
  Array2<double> aggregated;              // [N][d]
};

/// Mask features, [dim][frame][y][x].
struct MaskFeatures {
  Tensor4 data;
  int dim() const { return data.channels(); }
};

/// One clip-level detection.
struct Detection {
  int class_id = 0;
  double confidence = 0.0;
  std::vector<double> embedding;
  MaskVolume mask;  // over the clip's frames
};

using ClipDetections = std::vector<Detection>;

/// Per-query convex combination of frame-level queries: q[n] = sum_t w[t][n]
/// * qt[n]. Weight columns must sum to 1 within 1e-3 and are renormalized
/// exactly before use.
Array2<double> aggregate_queries(const std::vector<Array2<double>>& per_frame,
                                 const Array2<double>& time_weights);

/// Linear combination of mask features: logits[n,t,y,x] = sum_k q[n,k] *
/// D[k,t,y,x]. Output is [N][T][H][W].
Tensor4 synthesize_mask_logits(const Array2<double>& queries, const MaskFeatures& mask_features);

/// synthesize_mask_logits squashed by the logistic; values strictly in (0,1).
Tensor4 synthesize_masks(const Array2<double>& queries, const MaskFeatures& mask_features);

/// Keeps detections with confidence >= tau_conf, preserving order.
ClipDetections filter_detections(const ClipDetections& dets, double tau_conf);

}  // namespace ovc
