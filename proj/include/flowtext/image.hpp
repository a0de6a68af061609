#pragma once

#include <cstdint>
#include <vector>

#include "flowtext/errors.hpp"

namespace flowtext {

/// Single-channel raster with planar contiguous storage (row-major).
/// Planar layout keeps per-channel loops vectorizable.
template <typename T>
class Plane {
 public:
  Plane() = default;
  Plane(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * height, fill) {
    if (width < 0 || height < 0)
      throw ContractError("Plane dimensions must be non-negative");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(int x, int y) { return data_[idx(x, y)]; }
  const T& at(int x, int y) const { return data_[idx(x, y)]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  T* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_; }
  const T* row(int y) const {
    return data_.data() + static_cast<std::size_t>(y) * width_;
  }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  template <typename U>
  bool same_size(const Plane<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Plane&, const Plane&) = default;

 private:
  std::size_t idx(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using PlaneF = Plane<float>;
using PlaneU16 = Plane<std::uint16_t>;

/// RGB image, channels in [0,1].
struct Image {
  PlaneF r, g, b;

  Image() = default;
  Image(int width, int height)
      : r(width, height), g(width, height), b(width, height) {}

  int width() const { return r.width(); }
  int height() const { return r.height(); }
};

/// Per-pixel instance identifiers; 0 is background. Identifiers for the
/// same physical entity are stable across frames (input contract).
struct SegmentationMap {
  PlaneU16 ids;

  SegmentationMap() = default;
  SegmentationMap(int width, int height) : ids(width, height) {}

  int width() const { return ids.width(); }
  int height() const { return ids.height(); }
};

/// Per-pixel positive relative depth.
struct DepthMap {
  PlaneF depth;

  DepthMap() = default;
  DepthMap(int width, int height, float fill = 1.0f)
      : depth(width, height, fill) {}

  int width() const { return depth.width(); }
  int height() const { return depth.height(); }
};

/// RGBA text layer in frame coordinates: color channels plus coverage
/// alpha in [0,1]. All-zero alpha encodes "text absent".
struct TextMap {
  PlaneF r, g, b, a;

  TextMap() = default;
  TextMap(int width, int height)
      : r(width, height), g(width, height), b(width, height),
        a(width, height) {}

  int width() const { return r.width(); }
  int height() const { return r.height(); }

  /// Total coverage mass; uses the active sum kernel.
  double alpha_mass() const;
};

}  // namespace flowtext
