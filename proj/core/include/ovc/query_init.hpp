#pragma once

#include <vector>

#include "ovc/tensor.hpp"

namespace ovc {

/// Class-aware activation map, [class][frame][y][x].
struct ActivationMap {
  Tensor4 data;
  int classes() const { return data.channels(); }
};

/// Content features, [dim][frame][y][x].
struct FeatureMap {
  Tensor4 data;
  int dim() const { return data.channels(); }
};

/// Embedding vectors per pixel, [dim][frame][y][x].
struct EmbeddingMap {
  Tensor4 data;
  int dim() const { return data.channels(); }
};

/// One selected query: the peak pixel of a grid cell in one frame, with the
/// feature and embedding columns gathered at that pixel.
struct FrameQuery {
  int frame = 0;
  int y = 0, x = 0;    // peak position on the map
  int gy = 0, gx = 0;  // grid cell that produced it
  std::vector<double> feature;
  std::vector<double> embedding;
  double peak_value = 0.0;
};

/// Queries aligned across frames: index n holds the same putative object in
/// every frame, anchored at the central frame.
struct AlignedQuerySet {
  std::vector<std::vector<FrameQuery>> queries;  // [T][N]
  int central_frame = 0;
  int grid_y = 0, grid_x = 0;
};

/// Pointwise maximum over the class channels.
Volume class_agnostic_response(const ActivationMap& s);

/// Splits the map into an even gy x gx grid (remainder pixels go to the last
/// cell of each row/column) and picks each cell's peak per frame. Ties keep
/// the first pixel in row-major scan order. Output is [T][gy*gx], cell-major.
std::vector<std::vector<FrameQuery>> grid_select(const Volume& response, int gy, int gx,
                                                 const FeatureMap& features,
                                                 const EmbeddingMap& embeddings);

/// Matches each central-frame query against queries of every other frame by
/// cosine similarity, searching grid cells within Chebyshev radius
/// w * |t - t_c|. Ties break on smaller cell distance, then smaller cell
/// index. Matching is per-pair greedy; several central queries may claim the
/// same non-central query.
AlignedQuerySet associate_frames(const std::vector<std::vector<FrameQuery>>& queries, int grid_y,
                                 int grid_x, int central_frame, int window);

/// Cosine similarity; zero-norm vectors compare as 0.
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace ovc
