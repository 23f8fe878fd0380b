#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "ovc/errors.hpp"

namespace ovc {

/// Dense row-major 2-D array.
template <typename T>
class Array2 {
 public:
  Array2() = default;
  Array2(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), v_(static_cast<size_t>(rows) * cols, fill) {
    if (rows < 0 || cols < 0) throw DimensionError("Array2: negative extent");
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  size_t size() const { return v_.size(); }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return v_[static_cast<size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return v_[static_cast<size_t>(r) * cols_ + c];
  }

  std::vector<T>& values() { return v_; }
  const std::vector<T>& values() const { return v_; }

  bool operator==(const Array2&) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> v_;
};

/// Dense row-major 3-D array indexed (t, y, x).
class Volume {
 public:
  Volume() = default;
  Volume(int t, int h, int w, double fill = 0.0)
      : t_(t), h_(h), w_(w), v_(static_cast<size_t>(t) * h * w, fill) {
    if (t < 1 || h < 1 || w < 1) throw DimensionError("Volume: extents must be >= 1");
  }

  int frames() const { return t_; }
  int height() const { return h_; }
  int width() const { return w_; }
  size_t size() const { return v_.size(); }

  double& operator()(int t, int y, int x) {
    assert(t >= 0 && t < t_ && y >= 0 && y < h_ && x >= 0 && x < w_);
    return v_[(static_cast<size_t>(t) * h_ + y) * w_ + x];
  }
  double operator()(int t, int y, int x) const {
    assert(t >= 0 && t < t_ && y >= 0 && y < h_ && x >= 0 && x < w_);
    return v_[(static_cast<size_t>(t) * h_ + y) * w_ + x];
  }

  bool same_shape(const Volume& o) const { return t_ == o.t_ && h_ == o.h_ && w_ == o.w_; }

  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  bool operator==(const Volume&) const = default;

 private:
  int t_ = 0;
  int h_ = 0;
  int w_ = 0;
  std::vector<double> v_;
};

/// Dense row-major 4-D array indexed (c, t, y, x); the leading axis holds
/// channels, classes or queries depending on the caller.
class Tensor4 {
 public:
  Tensor4() = default;
  Tensor4(int c, int t, int h, int w, double fill = 0.0)
      : c_(c), t_(t), h_(h), w_(w), v_(static_cast<size_t>(c) * t * h * w, fill) {
    if (c < 1 || t < 1 || h < 1 || w < 1) throw DimensionError("Tensor4: extents must be >= 1");
  }

  int channels() const { return c_; }
  int frames() const { return t_; }
  int height() const { return h_; }
  int width() const { return w_; }
  size_t size() const { return v_.size(); }

  double& operator()(int c, int t, int y, int x) {
    assert(c >= 0 && c < c_ && t >= 0 && t < t_ && y >= 0 && y < h_ && x >= 0 && x < w_);
    return v_[((static_cast<size_t>(c) * t_ + t) * h_ + y) * w_ + x];
  }
  double operator()(int c, int t, int y, int x) const {
    assert(c >= 0 && c < c_ && t >= 0 && t < t_ && y >= 0 && y < h_ && x >= 0 && x < w_);
    return v_[((static_cast<size_t>(c) * t_ + t) * h_ + y) * w_ + x];
  }

  std::vector<double>& values() { return v_; }
  const std::vector<double>& values() const { return v_; }

  bool operator==(const Tensor4&) const = default;

 private:
  int c_ = 0;
  int t_ = 0;
  int h_ = 0;
  int w_ = 0;
  std::vector<double> v_;
};

}  // namespace ovc
