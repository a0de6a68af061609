#pragma once

#include <optional>
#include <set>
#include <vector>

#include "flowtext/flow.hpp"
#include "flowtext/geometry.hpp"
#include "flowtext/image.hpp"
#include "flowtext/types.hpp"

namespace flowtext::scene {

struct MotionSpec {
  enum class Kind { kStatic, kTranslate, kRotate, kPerspectiveSweep };
  Kind kind = Kind::kStatic;
  double vx = 0.0, vy = 0.0;   // px per frame (translate)
  double omega_deg = 0.0;      // deg per frame about the frame center
  // additive per-frame rates for the 8 free entries (row-major, skipping
  // m22) of a perspective sweep
  std::array<double, 8> sweep_rates{};
};

struct OccluderSpec {
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // static rectangle, frame coords
  std::set<int> hidden_frames;            // frames where it covers the scene
  std::uint16_t occluder_id = 2;
};

struct SceneSpec {
  int n = 1;
  int width = 320;
  int height = 240;
  MotionSpec motion{};
  Quad entity_quad{};              // footprint in frame-0 coordinates
  std::optional<OccluderSpec> occluder;
  double noise_sigma = 0.0;        // px, per flow component
  double outlier_fraction = 0.0;   // fraction of plane area with junk flow
  int seed_index = 0;              // frame the truth homographies refer to
  std::uint64_t rng_seed = 0;

  /// Centered axis-aligned entity rectangle helper.
  static Quad centered_rect(int width, int height, double w, double h);
};

struct Scene {
  std::vector<Image> frames;
  std::vector<FlowField> flows_fwd;
  std::vector<FlowField> flows_bwd;
  std::vector<SegmentationMap> segms;
  DepthMap depth;                   // seed-frame depth
  std::vector<Homography> truth;    // seed-to-frame-i, identity at seed
  std::uint16_t entity_id = 1;
};

/// Analytic planar scene: flow fields equal the closed-form motion of a
/// full-frame plane (plus configured noise and plane-anchored junk-flow
/// patches), segmentation marks the moving entity footprint minus the
/// scheduled occluder, and truth carries the exact seed-to-frame
/// homographies.
Scene generate(const SceneSpec& spec);

}  // namespace flowtext::scene
