#include "ovc/mask.hpp"

#include <algorithm>
#include <cmath>

#include "ovc/errors.hpp"

namespace ovc {

MaskVolume MaskVolume::from_frames(const std::vector<Mask2d>& frames) {
  if (frames.empty()) throw DimensionError("MaskVolume::from_frames: no frames");
  int h = frames[0].h, w = frames[0].w;
  Volume vol(static_cast<int>(frames.size()), h, w, 0.0);
  for (size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].h != h || frames[t].w != w)
      throw DimensionError("MaskVolume::from_frames: inconsistent frame sizes");
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) vol(static_cast<int>(t), y, x) = frames[t].at(y, x) ? 1.0 : 0.0;
  }
  return MaskVolume(std::move(vol), true);
}

Mask2d MaskVolume::frame_binarized(int t) const {
  Mask2d m(height(), width());
  for (int y = 0; y < height(); ++y)
    for (int x = 0; x < width(); ++x) m.at(y, x) = data(t, y, x) > 0.5 ? 1 : 0;
  return m;
}

void MaskVolume::validate() const {
  for (double v : data.values()) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("MaskVolume: value outside [0,1]");
    if (binary && v != 0.0 && v != 1.0) throw ValidationError("MaskVolume: binary flag set but value not in {0,1}");
  }
}

RleMask rle_encode(const Mask2d& mask) {
  RleMask rle;
  rle.h = mask.h;
  rle.w = mask.w;
  uint8_t current = 0;  // scan starts counting the 0-run
  int64_t run = 0;
  for (uint8_t p : mask.v) {
    uint8_t bit = p ? 1 : 0;
    if (bit == current) {
      ++run;
    } else {
      rle.counts.push_back(run);
      current = bit;
      run = 1;
    }
  }
  rle.counts.push_back(run);
  return rle;
}

Mask2d rle_decode(const RleMask& rle) {
  if (rle.h < 1 || rle.w < 1) throw ValidationError("rle_decode: size must be positive");
  const int64_t total = static_cast<int64_t>(rle.h) * rle.w;
  int64_t sum = 0;
  for (size_t i = 0; i < rle.counts.size(); ++i) {
    int64_t c = rle.counts[i];
    if (c < 0) throw ValidationError("rle_decode: negative run length");
    if (c == 0 && i != 0) throw ValidationError("rle_decode: interior zero-length run");
    sum += c;
  }
  if (sum != total)
    throw ValidationError("rle_decode: counts sum " + std::to_string(sum) + " != H*W " +
                          std::to_string(total));
  Mask2d mask(rle.h, rle.w);
  size_t pos = 0;
  uint8_t bit = 0;
  for (int64_t c : rle.counts) {
    for (int64_t k = 0; k < c; ++k) mask.v[pos++] = bit;
    bit ^= 1;
  }
  return mask;
}

double mask_iou(const MaskVolume& a, const MaskVolume& b) {
  if (!a.data.same_shape(b.data)) throw DimensionError("mask_iou: shape mismatch");
  int64_t inter = 0, uni = 0;
  const auto& av = a.data.values();
  const auto& bv = b.data.values();
  for (size_t i = 0; i < av.size(); ++i) {
    bool pa = av[i] > 0.5;
    bool pb = bv[i] > 0.5;
    inter += pa && pb;
    uni += pa || pb;
  }
  if (uni == 0) return 0.0;  // empty vs empty counts as no match
  return static_cast<double>(inter) / static_cast<double>(uni);
}

double box_iou(const Box& a, const Box& b) {
  double area_a = a.area();
  double area_b = b.area();
  if (area_a <= 0.0 || area_b <= 0.0) return 0.0;
  double iw = std::min(a.x2, b.x2) - std::max(a.x1, b.x1);
  double ih = std::min(a.y2, b.y2) - std::max(a.y1, b.y1);
  if (iw <= 0.0 || ih <= 0.0) return 0.0;
  double inter = iw * ih;
  return inter / (area_a + area_b - inter);
}

std::vector<std::optional<Box>> mask_to_boxes(const MaskVolume& mask) {
  std::vector<std::optional<Box>> out(mask.frames());
  for (int t = 0; t < mask.frames(); ++t) {
    int min_y = mask.height(), min_x = mask.width(), max_y = -1, max_x = -1;
    for (int y = 0; y < mask.height(); ++y)
      for (int x = 0; x < mask.width(); ++x)
        if (mask.data(t, y, x) > 0.5) {
          min_y = std::min(min_y, y);
          min_x = std::min(min_x, x);
          max_y = std::max(max_y, y);
          max_x = std::max(max_x, x);
        }
    if (max_y >= 0)
      out[t] = Box{static_cast<double>(min_x), static_cast<double>(min_y),
                   static_cast<double>(max_x + 1), static_cast<double>(max_y + 1)};
  }
  return out;
}

NeighborSet neighbor_set(const InstanceBoxes& boxes, int i, double epsilon) {
  const int k = static_cast<int>(boxes.size());
  if (i < 0 || i >= k) throw ValidationError("neighbor_set: instance index out of range");
  if (epsilon < 0.0 || epsilon >= 1.0) throw ValidationError("neighbor_set: epsilon must be in [0,1)");
  NeighborSet oi;
  oi.target_index = i;
  for (int j = 0; j < k; ++j) {
    if (j == i) continue;
    double best = 0.0;
    size_t frames = std::min(boxes[i].size(), boxes[j].size());
    for (size_t t = 0; t < frames; ++t) {
      if (!boxes[i][t] || !boxes[j][t]) continue;  // absent box contributes 0
      best = std::max(best, box_iou(*boxes[i][t], *boxes[j][t]));
    }
    if (best > epsilon) oi.neighbors.insert(j);
  }
  return oi;
}

MaskVolume inter_instance_mask(std::span<const MaskVolume> gt, const NeighborSet& oi) {
  if (gt.empty()) throw DimensionError("inter_instance_mask: no instances");
  const MaskVolume& target = gt[oi.target_index];
  MaskVolume out = MaskVolume::zeros(target.frames(), target.height(), target.width());
  for (int j : oi.neighbors) {
    if (j < 0 || j >= static_cast<int>(gt.size()))
      throw ValidationError("inter_instance_mask: neighbor index out of range");
    if (!gt[j].data.same_shape(target.data)) throw DimensionError("inter_instance_mask: shape mismatch");
    const auto& src = gt[j].data.values();
    auto& dst = out.data.values();
    for (size_t p = 0; p < src.size(); ++p)
      if (src[p] > 0.5) dst[p] = 1.0;
  }
  // remove pixels owned by the target so the result is disjoint from it
  const auto& own = target.data.values();
  auto& dst = out.data.values();
  for (size_t p = 0; p < own.size(); ++p)
    if (own[p] > 0.5) dst[p] = 0.0;
  return out;
}

}  // namespace ovc
