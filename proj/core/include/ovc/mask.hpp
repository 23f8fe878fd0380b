#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "ovc/tensor.hpp"

namespace ovc {

/// Single-frame binary mask, row-major, one byte per pixel (0 or 1).
struct Mask2d {
  int h = 0;
  int w = 0;
  std::vector<uint8_t> v;

  Mask2d() = default;
  Mask2d(int h_, int w_) : h(h_), w(w_), v(static_cast<size_t>(h_) * w_, 0) {}

  uint8_t& at(int y, int x) { return v[static_cast<size_t>(y) * w + x]; }
  uint8_t at(int y, int x) const { return v[static_cast<size_t>(y) * w + x]; }

  bool empty_mask() const {
    for (uint8_t p : v)
      if (p) return false;
    return true;
  }

  bool operator==(const Mask2d&) const = default;
};

/// Per-instance spatio-temporal mask over T frames. Ground truth masks are
/// binary; predictions hold probabilities in [0, 1].
struct MaskVolume {
  Volume data;
  bool binary = false;

  MaskVolume() = default;
  MaskVolume(Volume d, bool is_binary) : data(std::move(d)), binary(is_binary) {}

  static MaskVolume zeros(int t, int h, int w) { return MaskVolume(Volume(t, h, w, 0.0), true); }

  /// Stacks per-frame binary masks (all same size) into a binary volume.
  static MaskVolume from_frames(const std::vector<Mask2d>& frames);

  int frames() const { return data.frames(); }
  int height() const { return data.height(); }
  int width() const { return data.width(); }

  /// Binary 2-D slice of frame t, thresholding probabilities at > 0.5.
  Mask2d frame_binarized(int t) const;

  /// Throws ValidationError if values stray from [0,1] or the binary flag lies.
  void validate() const;
};

/// Axis-aligned box with half-open pixel extents [x1,x2) x [y1,y2); a single
/// pixel (y, x) has the box (x, y, x+1, y+1) and area 1.
struct Box {
  double x1 = 0, y1 = 0, x2 = 0, y2 = 0;

  double area() const { return (x2 - x1) * (y2 - y1); }
  bool operator==(const Box&) const = default;
};

/// Indices of the instances whose boxes overlap the target's beyond the
/// BIoU threshold in at least one frame.
struct NeighborSet {
  int target_index = 0;
  std::set<int> neighbors;
};

/// Run-length coding of a binary mask: row-major scan, alternating run
/// lengths starting with the 0-run (so a mask beginning with 1 starts with a
/// zero count). Serialized as {"size":[H,W],"counts":[...]}.
struct RleMask {
  int h = 0;
  int w = 0;
  std::vector<int64_t> counts;

  bool operator==(const RleMask&) const = default;
};

RleMask rle_encode(const Mask2d& mask);

/// Inverse of rle_encode; throws ValidationError when the counts are
/// malformed (sum mismatch, negative or interior zero runs).
Mask2d rle_decode(const RleMask& rle);

/// Voxel IoU over all T*H*W cells jointly, after binarizing both sides at
/// > 0.5. Empty vs empty is defined as 0.
double mask_iou(const MaskVolume& a, const MaskVolume& b);

/// Area IoU of two boxes; any zero-area side yields 0.
double box_iou(const Box& a, const Box& b);

/// Tight per-frame bounding boxes of the nonzero pixels; nullopt for empty
/// frames.
std::vector<std::optional<Box>> mask_to_boxes(const MaskVolume& mask);

/// Per-instance per-frame boxes, indexed [instance][frame]; absent when the
/// instance has no pixels in that frame.
using InstanceBoxes = std::vector<std::vector<std::optional<Box>>>;

/// Neighbors of instance i: every j != i whose box overlaps i's with
/// IoU > epsilon in some frame. Frames where either box is absent
/// contribute IoU 0.
NeighborSet neighbor_set(const InstanceBoxes& boxes, int i, double epsilon);

/// Complementary inter-instance mask: union of the neighbor ground-truth
/// masks with the target's own pixels removed. Always disjoint from gt[i].
MaskVolume inter_instance_mask(std::span<const MaskVolume> gt, const NeighborSet& oi);

}  // namespace ovc
