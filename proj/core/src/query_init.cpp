#include "ovc/query_init.hpp"

#include <cmath>

#include "ovc/errors.hpp"

namespace ovc {

namespace {

// Even partition of `extent` into `cells`; the last cell absorbs the
// remainder. Returns [lo, hi) of cell index c.
std::pair<int, int> cell_bounds(int extent, int cells, int c) {
  int base = extent / cells;
  int lo = c * base;
  int hi = (c == cells - 1) ? extent : lo + base;
  return {lo, hi};
}

}  // namespace

Volume class_agnostic_response(const ActivationMap& s) {
  const Tensor4& d = s.data;
  Volume out(d.frames(), d.height(), d.width(), 0.0);
  for (int t = 0; t < d.frames(); ++t)
    for (int y = 0; y < d.height(); ++y)
      for (int x = 0; x < d.width(); ++x) {
        double best = d(0, t, y, x);
        for (int c = 1; c < d.channels(); ++c) best = std::max(best, d(c, t, y, x));
        out(t, y, x) = best;
      }
  return out;
}

std::vector<std::vector<FrameQuery>> grid_select(const Volume& response, int gy, int gx,
                                                 const FeatureMap& features,
                                                 const EmbeddingMap& embeddings) {
  if (gy < 1 || gx < 1) throw ValidationError("grid_select: grid extents must be >= 1");
  if (gy > response.height() || gx > response.width())
    throw DimensionError("grid_select: grid larger than the map");
  if (features.data.frames() != response.frames() || features.data.height() != response.height() ||
      features.data.width() != response.width())
    throw DimensionError("grid_select: feature map shape mismatch");
  if (embeddings.data.frames() != response.frames() ||
      embeddings.data.height() != response.height() || embeddings.data.width() != response.width())
    throw DimensionError("grid_select: embedding map shape mismatch");

  std::vector<std::vector<FrameQuery>> out(response.frames());
  for (int t = 0; t < response.frames(); ++t) {
    out[t].reserve(static_cast<size_t>(gy) * gx);
    for (int cy = 0; cy < gy; ++cy) {
      auto [y0, y1] = cell_bounds(response.height(), gy, cy);
      for (int cx = 0; cx < gx; ++cx) {
        auto [x0, x1] = cell_bounds(response.width(), gx, cx);
        int best_y = y0, best_x = x0;
        double best = response(t, y0, x0);
        for (int y = y0; y < y1; ++y)
          for (int x = x0; x < x1; ++x)
            if (response(t, y, x) > best) {  // strict: ties keep the scan-order first
              best = response(t, y, x);
              best_y = y;
              best_x = x;
            }
        FrameQuery q;
        q.frame = t;
        q.y = best_y;
        q.x = best_x;
        q.gy = cy;
        q.gx = cx;
        q.peak_value = best;
        q.feature.resize(features.dim());
        for (int c = 0; c < features.dim(); ++c) q.feature[c] = features.data(c, t, best_y, best_x);
        q.embedding.resize(embeddings.dim());
        for (int c = 0; c < embeddings.dim(); ++c)
          q.embedding[c] = embeddings.data(c, t, best_y, best_x);
        out[t].push_back(std::move(q));
      }
    }
  }
  return out;
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw DimensionError("cosine_similarity: dimension mismatch");
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return ab / (std::sqrt(aa) * std::sqrt(bb));
}

AlignedQuerySet associate_frames(const std::vector<std::vector<FrameQuery>>& queries, int grid_y,
                                 int grid_x, int central_frame, int window) {
  const int frames = static_cast<int>(queries.size());
  if (frames < 1) throw DimensionError("associate_frames: no frames");
  if (central_frame < 0 || central_frame >= frames)
    throw ValidationError("associate_frames: central frame out of range");
  if (window < 0) throw ValidationError("associate_frames: window must be >= 0");
  const size_t n = static_cast<size_t>(grid_y) * grid_x;
  for (const auto& row : queries)
    if (row.size() != n) throw DimensionError("associate_frames: query rows must be grid-sized");

  AlignedQuerySet out;
  out.central_frame = central_frame;
  out.grid_y = grid_y;
  out.grid_x = grid_x;
  out.queries.assign(frames, {});
  out.queries[central_frame] = queries[central_frame];

  for (int t = 0; t < frames; ++t) {
    if (t == central_frame) continue;
    out.queries[t].resize(n);
    const int radius = window * std::abs(t - central_frame);
    for (size_t q = 0; q < n; ++q) {
      const FrameQuery& center = queries[central_frame][q];
      int best_idx = -1;
      double best_sim = 0.0;
      int best_dist = 0;
      for (int cy = std::max(0, center.gy - radius); cy <= std::min(grid_y - 1, center.gy + radius);
           ++cy) {
        for (int cx = std::max(0, center.gx - radius);
             cx <= std::min(grid_x - 1, center.gx + radius); ++cx) {
          int idx = cy * grid_x + cx;
          const FrameQuery& cand = queries[t][idx];
          double sim = cosine_similarity(center.embedding, cand.embedding);
          int dist = std::max(std::abs(cy - center.gy), std::abs(cx - center.gx));
          bool better = best_idx < 0 || sim > best_sim ||
                        (sim == best_sim && (dist < best_dist || (dist == best_dist && idx < best_idx)));
          if (better) {
            best_idx = idx;
            best_sim = sim;
            best_dist = dist;
          }
        }
      }
      out.queries[t][q] = queries[t][best_idx];
    }
  }
  return out;
}

}  // namespace ovc
