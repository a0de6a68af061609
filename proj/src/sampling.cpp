#include "flowtext/sampling.hpp"

#include <algorithm>
#include <cmath>

#include "flowtext/errors.hpp"

namespace flowtext {

PointSet PointSet::from_points(std::vector<PixelCoord> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  PointSet out;
  out.pts_ = std::move(pts);
  return out;
}

bool PointSet::contains(const PixelCoord& p) const {
  return std::binary_search(pts_.begin(), pts_.end(), p);
}

PointSet text_points(const TextMap& t_map, int stride) {
  if (stride < 1) throw ContractError("text_points stride must be >= 1");
  std::vector<PixelCoord> pts;
  for (int y = 0; y < t_map.height(); y += stride) {
    const float* row = t_map.a.row(y);
    for (int x = 0; x < t_map.width(); x += stride) {
      if (row[x] > 0.0f) pts.push_back({x, y});
    }
  }
  return PointSet::from_points(std::move(pts));
}

PointSet flow_constrained(const PointSet& points,
                          std::span<const double> magnitudes,
                          std::span<const std::uint8_t> alive) {
  const auto& pts = points.points();
  if (magnitudes.size() != pts.size() || alive.size() != pts.size())
    throw ContractError("flow_constrained: parallel arrays mismatch");
  if (pts.empty()) return {};

  std::vector<double> live_mags;
  live_mags.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (alive[i]) live_mags.push_back(magnitudes[i]);
  if (live_mags.empty()) return {};

  const MagnitudeStats st = magnitude_stats(live_mags);
  const double tol = 1e-12 * std::max(1.0, std::abs(st.mu));
  const double lo = st.mu - st.sigma - tol;
  const double hi = st.mu + st.sigma + tol;

  std::vector<PixelCoord> keep;
  keep.reserve(live_mags.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (alive[i] && magnitudes[i] >= lo && magnitudes[i] <= hi)
      keep.push_back(pts[i]);
  }
  return PointSet::from_points(std::move(keep));
}

namespace {

inline int round_half_away(double v) {
  return static_cast<int>(std::lround(v));
}

}  // namespace

PointSet segm_constrained(const PointSet& points,
                          std::span<const Trajectory> trajectories,
                          std::span<const SegmentationMap* const> segms,
                          std::uint16_t entity_id) {
  const auto& pts = points.points();
  if (trajectories.size() != pts.size())
    throw ContractError("segm_constrained: one trajectory per point required");

  std::vector<PixelCoord> keep;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Trajectory& tr = trajectories[i];
    if (tr.length() != segms.size())
      throw ContractError(
          "segm_constrained: segmentation frame count does not match "
          "trajectory length");
    if (!tr.alive_to_end()) continue;

    bool on_entity = true;
    for (std::size_t s = 0; s < segms.size() && on_entity; ++s) {
      const SegmentationMap& sm = *segms[s];
      const int px = round_half_away(tr.points[s].x());
      const int py = round_half_away(tr.points[s].y());
      if (!sm.ids.in_bounds(px, py) || sm.ids.at(px, py) != entity_id)
        on_entity = false;
    }
    if (on_entity) keep.push_back(pts[i]);
  }
  return PointSet::from_points(std::move(keep));
}

PointSet intersect(const PointSet& a, const PointSet& b, const PointSet& c) {
  std::vector<PixelCoord> ab;
  std::set_intersection(a.points().begin(), a.points().end(),
                        b.points().begin(), b.points().end(),
                        std::back_inserter(ab));
  std::vector<PixelCoord> abc;
  std::set_intersection(ab.begin(), ab.end(), c.points().begin(),
                        c.points().end(), std::back_inserter(abc));
  return PointSet::from_points(std::move(abc));
}

}  // namespace flowtext
