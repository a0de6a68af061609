#pragma once

#include <span>
#include <vector>

#include "flowtext/flow.hpp"
#include "flowtext/image.hpp"
#include "flowtext/types.hpp"

namespace flowtext {

/// Set of integer pixel coordinates in the seed frame; sorted row-major,
/// no duplicates.
class PointSet {
 public:
  PointSet() = default;

  /// Sorts and deduplicates.
  static PointSet from_points(std::vector<PixelCoord> pts);

  std::size_t size() const { return pts_.size(); }
  bool empty() const { return pts_.empty(); }
  bool contains(const PixelCoord& p) const;
  const std::vector<PixelCoord>& points() const { return pts_; }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  std::vector<PixelCoord> pts_;  // sorted, unique
};

/// Pixels with coverage alpha > 0, subsampled on a regular grid anchored
/// at (0,0). stride 1 keeps every covered pixel.
PointSet text_points(const TextMap& t_map, int stride);

/// Two-sided flow-magnitude gate: keeps points whose accumulated
/// displacement magnitude lies in [mu - sigma, mu + sigma], statistics
/// taken over exactly the surviving (alive) input points. Dead points
/// are removed before the statistics. A relative tolerance of 1e-12 on
/// the bounds absorbs roundoff when all magnitudes coincide; the same
/// rule is part of the operation's contract.
/// `magnitudes` and `alive` run parallel to `points.points()`.
PointSet flow_constrained(const PointSet& points,
                          std::span<const double> magnitudes,
                          std::span<const std::uint8_t> alive);

/// Segmentation gate: keeps points whose trajectory sits on the entity id
/// in every frame of the range (nearest pixel, round half away from
/// zero). Dead points are excluded. `segms` must hold one map per
/// trajectory entry, in chain order.
/// Throws ContractError on a frame-count mismatch.
PointSet segm_constrained(const PointSet& points,
                          std::span<const Trajectory> trajectories,
                          std::span<const SegmentationMap* const> segms,
                          std::uint16_t entity_id);

/// Exact three-way intersection.
PointSet intersect(const PointSet& a, const PointSet& b, const PointSet& c);

}  // namespace flowtext
