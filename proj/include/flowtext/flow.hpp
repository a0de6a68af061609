#pragma once

#include <span>
#include <vector>

#include "flowtext/image.hpp"
#include "flowtext/types.hpp"

namespace flowtext {

/// Dense per-pixel displacement between two frames, in pixels.
/// Storage is float32 (matching the interchange format); all sampling
/// arithmetic runs in double.
struct FlowField {
  PlaneF u, v;

  FlowField() = default;
  FlowField(int width, int height) : u(width, height), v(width, height) {}

  int width() const { return u.width(); }
  int height() const { return u.height(); }

  bool in_domain(const Vec2& p) const {
    return p.x() >= 0.0 && p.x() <= static_cast<double>(width() - 1) &&
           p.y() >= 0.0 && p.y() <= static_cast<double>(height() - 1);
  }
};

/// Bilinear displacement lookup at a (possibly subpixel) position.
/// Throws OutOfBoundsError outside [0, w-1] x [0, h-1].
Vec2 sample_flow(const FlowField& f, const Vec2& p);

/// p + F(p): the point's position in the field's destination frame.
Vec2 map_point(const FlowField& f, const Vec2& p);

/// Positions of one point across a frame range, one entry per frame.
/// A point dies at the first step that leaves the image and never
/// revives; its position freezes at the last in-bounds value.
struct Trajectory {
  std::vector<Vec2> points;
  std::vector<std::uint8_t> alive;

  std::size_t length() const { return points.size(); }
  bool alive_at(std::size_t i) const { return alive[i] != 0; }
  bool alive_to_end() const { return !alive.empty() && alive.back() != 0; }
  const Vec2& front() const { return points.front(); }
  const Vec2& back() const { return points.back(); }
};

/// Non-owning ordered sequence of adjacent-frame fields to chain through.
using FlowSeq = std::vector<const FlowField*>;

/// Chains a start point through the sequence:
/// p_{i+1} = p_i + F_i(p_i). Produces flows.size()+1 entries.
Trajectory chain(const FlowSeq& flows, const Vec2& start);

/// Forward fields covering seed t to target k (k > t): fwd[t..k-1].
FlowSeq forward_sequence(std::span<const FlowField> flows_fwd, int t, int k);

/// Backward fields ordered for chaining from seed t down to target k
/// (k < t): bwd[t-1], bwd[t-2], ..., bwd[k], where bwd[i] maps frame i+1
/// to frame i. Lets backward propagation reuse the forward code path.
/// Throws ContractError when a required field is missing.
FlowSeq reversed_sequence(std::span<const FlowField> flows_bwd, int t, int k);

struct MagnitudeStats {
  double mu = 0.0;
  double sigma = 0.0;  // population standard deviation
};

/// Mean / population std of ||F(p)||_2 over the given points.
/// Throws EmptyInputError on an empty set and OutOfBoundsError if any
/// point is outside the field.
MagnitudeStats magnitude_stats(const FlowField& f,
                               std::span<const PixelCoord> points);

/// Same statistics over a plain multiset of magnitudes; two-pass,
/// sequential summation in input order.
MagnitudeStats magnitude_stats(std::span<const double> magnitudes);

}  // namespace flowtext
