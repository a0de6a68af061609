#pragma once

#include <optional>
#include <span>
#include <vector>

#include "flowtext/flow.hpp"
#include "flowtext/geometry.hpp"
#include "flowtext/image.hpp"
#include "flowtext/types.hpp"

namespace flowtext {

struct PropagationParams {
  int min_samples = 32;     // N: fit is abandoned when |S| <= N
  double blur_alpha = 0.25; // blur kernel length per pixel of mean motion
  RansacParams ransac{};
  int stride = 2;           // text-point grid stride; 1 = every pixel

  void validate() const;    // N >= 4, blur_alpha >= 0, stride >= 1
};

/// Outcome of propagating one text map to one target frame.
/// `homography` maps seed-frame coordinates to target-frame coordinates;
/// it is absent exactly when `lost` is set, in which case `map` has
/// all-zero alpha.
struct FrameResult {
  TextMap map;
  std::optional<Homography> homography;
  int sample_count = 0;
  bool lost = true;
  double pre_mask_alpha = 0.0;   // coverage mass after warp
  double post_mask_alpha = 0.0;  // coverage mass after entity masking
  std::vector<Vec2> sample_points;  // fitted points, target-frame coords
};

struct PropagationResult {
  std::vector<TextMap> text_maps;                  // one per frame
  std::vector<std::optional<Homography>> homographies;
  std::vector<std::uint8_t> lost;
  std::vector<int> sample_counts;
  std::vector<double> pre_mask_alpha;
  std::vector<double> post_mask_alpha;
  std::vector<std::vector<Vec2>> sample_points;
};

/// Warps the seed text map into target-frame coordinates:
/// out(q) = t_map(h_seed_to_target^-1 q), bilinear, zero outside.
TextMap warp_text_map(const TextMap& t_map, const Homography& h_seed_to_target);

/// Directional average blur: a unit-weight line kernel of
/// max(1, round(alpha * |mean_flow|)) taps spaced 1 px along mean_flow,
/// sampled bilinearly. Length 1 returns the input unchanged.
TextMap motion_blur(const TextMap& t_map, const Vec2& mean_flow, double alpha);

/// Zeroes alpha wherever ids != entity_id; color channels untouched.
TextMap occlusion_mask(const TextMap& t_map, const SegmentationMap& segm,
                       std::uint16_t entity_id);

/// Maps the seed quad with the same matrix the text-map warp uses
/// (direct application, corner order preserved).
/// Throws PointAtInfinityError when a corner leaves the finite plane.
Quad propagate_quad(const Quad& seed_quad, const Homography& h);

/// One target frame of the text-flow propagation: builds the text /
/// flow / segmentation point sets and their intersection, abandons the
/// frame when |S| <= N, otherwise fits the seed-to-target homography on
/// the chained point pairs (RANSAC), warps the map, masks it by the
/// entity segmentation of the target frame and applies motion blur.
/// Flow fields are consumed forward for target > seed and backward
/// (reversed_sequence) for target < seed.
/// `segms` spans all frames of the video; rng_seed fixes the RANSAC
/// draw. Input-contract violations throw ContractError.
FrameResult propagate_one(const TextMap& t_map, int seed_index,
                          int target_index,
                          std::span<const FlowField> flows_fwd,
                          std::span<const FlowField> flows_bwd,
                          std::span<const SegmentationMap> segms,
                          std::uint16_t entity_id,
                          const PropagationParams& params,
                          std::uint64_t rng_seed);

/// Runs propagate_one for every frame of the video; the seed entry keeps
/// the input map with an identity homography.
PropagationResult propagate_all(const TextMap& t_map, int seed_index,
                                std::span<const FlowField> flows_fwd,
                                std::span<const FlowField> flows_bwd,
                                std::span<const SegmentationMap> segms,
                                std::uint16_t entity_id,
                                const PropagationParams& params,
                                std::uint64_t rng_seed);

}  // namespace flowtext
