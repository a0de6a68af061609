#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flowtext/image.hpp"
#include "flowtext/propagation.hpp"
#include "flowtext/seed_render.hpp"
#include "flowtext/types.hpp"

namespace flowtext {

/// Everything needed to synthesize one video.
/// When `seed_index` is empty the seed frame is drawn from rng_seed via
/// draw_seed_index; callers that preload per-seed data (the depth map)
/// resolve the index first with the same function.
struct SynthesisJob {
  std::vector<Image> frames;
  std::vector<FlowField> flows_fwd;   // n-1, field i maps frame i to i+1
  std::vector<FlowField> flows_bwd;   // n-1, field i maps frame i+1 to i
  std::vector<SegmentationMap> segms; // n
  DepthMap depth_seed;                // depth of the seed frame
  std::vector<std::string> words;
  int num_texts = 3;
  PropagationParams params{};
  RenderStyle style{};
  std::uint64_t rng_seed = 0;
  std::optional<int> seed_index;

  void validate() const;  // throws ContractError on count/size mismatch
};

struct FrameEntry {
  int index = 0;  // 0-based frame index
  Quad quad{};    // zeros when lost
  double visibility = 0.0;
  bool lost = true;
};

struct TrackAnnotation {
  int track_id = 0;
  std::string transcription;
  std::vector<FrameEntry> frames;  // one entry per video frame, in order
};

struct JobReport {
  int seed_index = 0;
  int texts_requested = 0;
  int texts_placed = 0;
  int texts_skipped = 0;
  int lost_frames = 0;     // summed over tracks
  bool render_failed = false;
};

struct SynthesisOutput {
  std::vector<Image> frames;
  std::vector<TrackAnnotation> tracks;
  JobReport report;
  // per track, per frame: fitted sample points for preview overlays
  std::vector<std::vector<std::vector<Vec2>>> sample_points;
};

/// Uniform seed-frame draw under the job seed. When n >= 10 the first
/// and last ceil(n/10) frames are excluded so both propagation
/// directions get exercised. The overload taking an engine consumes
/// exactly one draw; run() uses it first on its job stream, so the
/// seed-only overload predicts run()'s choice.
int draw_seed_index(int n, std::mt19937_64& rng);
int draw_seed_index(int n, std::uint64_t rng_seed);

/// Standard alpha-over of the maps onto the frame, later maps over
/// earlier; output clamped to [0,1].
Image composite(const Image& frame, std::span<const TextMap> maps);

/// Full synthesis: seed draw, seed-frame rendering, per-text propagation
/// in both directions, per-frame compositing, annotation assembly.
/// A seed frame where no text can be placed yields report.render_failed
/// with empty outputs; hard contract violations throw.
SynthesisOutput run(const SynthesisJob& job);

}  // namespace flowtext
