#include "flowtext/propagation.hpp"

#include <cmath>

#include "flowtext/errors.hpp"
#include "flowtext/kernels/dispatch.hpp"
#include "flowtext/sampling.hpp"

namespace flowtext {

double TextMap::alpha_mass() const {
  return kernels::active().sum_f32(a.data(), a.size());
}

void PropagationParams::validate() const {
  if (min_samples < 4)
    throw ContractError("min_samples must be >= 4 (exact-solution floor)");
  if (blur_alpha < 0.0) throw ContractError("blur_alpha must be >= 0");
  if (stride < 1) throw ContractError("stride must be >= 1");
  ransac.validate();
}

TextMap warp_text_map(const TextMap& t_map,
                      const Homography& h_seed_to_target) {
  const Homography h_inv = h_seed_to_target.inverse();
  double hm[9];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) hm[r * 3 + c] = h_inv.matrix()(r, c);

  TextMap out(t_map.width(), t_map.height());
  const float* src[4] = {t_map.r.data(), t_map.g.data(), t_map.b.data(),
                         t_map.a.data()};
  const auto& k = kernels::active();
  for (int y = 0; y < out.height(); ++y) {
    float* dst[4] = {out.r.row(y), out.g.row(y), out.b.row(y), out.a.row(y)};
    k.warp_bilinear_row(src, t_map.width(), t_map.height(), dst, out.width(),
                        y, hm);
  }
  return out;
}

namespace {

// Bilinear read with zero outside the map; matches the warp kernel's
// padding so blur and warp agree at borders.
inline double sample_zero(const PlaneF& p, double x, double y) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const int x0 = static_cast<int>(fx);
  const int y0 = static_cast<int>(fy);
  const double ax = x - fx;
  const double ay = y - fy;
  auto tap = [&](int tx, int ty) -> double {
    return p.in_bounds(tx, ty) ? p.at(tx, ty) : 0.0;
  };
  return (1.0 - ax) * (1.0 - ay) * tap(x0, y0) +
         ax * (1.0 - ay) * tap(x0 + 1, y0) +
         (1.0 - ax) * ay * tap(x0, y0 + 1) + ax * ay * tap(x0 + 1, y0 + 1);
}

}  // namespace

TextMap motion_blur(const TextMap& t_map, const Vec2& mean_flow,
                    double alpha) {
  if (alpha < 0.0) throw ContractError("blur alpha must be >= 0");
  const double speed = mean_flow.norm();
  const int taps = std::max(1, static_cast<int>(std::lround(alpha * speed)));
  if (taps == 1) return t_map;

  const Vec2 dir = mean_flow / speed;
  // taps 1 px apart along the motion direction, centered with forward
  // bias for even lengths: offsets (j - floor((L-1)/2)) * dir
  const int base = (taps - 1) / 2;
  const double w = 1.0 / static_cast<double>(taps);

  TextMap out(t_map.width(), t_map.height());
  const PlaneF* src[4] = {&t_map.r, &t_map.g, &t_map.b, &t_map.a};
  PlaneF* dst[4] = {&out.r, &out.g, &out.b, &out.a};
  for (int c = 0; c < 4; ++c) {
    for (int y = 0; y < t_map.height(); ++y) {
      for (int x = 0; x < t_map.width(); ++x) {
        double acc = 0.0;
        for (int j = 0; j < taps; ++j) {
          const double off = static_cast<double>(j - base);
          acc += w * sample_zero(*src[c], x - off * dir.x(),
                                 y - off * dir.y());
        }
        dst[c]->at(x, y) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

TextMap occlusion_mask(const TextMap& t_map, const SegmentationMap& segm,
                       std::uint16_t entity_id) {
  if (segm.width() != t_map.width() || segm.height() != t_map.height())
    throw ContractError("occlusion mask size mismatch");
  TextMap out = t_map;
  kernels::active().mask_alpha(out.a.data(), segm.ids.data(), entity_id,
                               out.a.size());
  return out;
}

Quad propagate_quad(const Quad& seed_quad, const Homography& h) {
  Quad out;
  for (int i = 0; i < 4; ++i) out[i] = h.apply(seed_quad[i]);
  return out;
}

namespace {

FrameResult lost_frame(int width, int height, int sample_count) {
  FrameResult r;
  r.map = TextMap(width, height);
  r.homography.reset();
  r.sample_count = sample_count;
  r.lost = true;
  return r;
}

}  // namespace

FrameResult propagate_one(const TextMap& t_map, int seed_index,
                          int target_index,
                          std::span<const FlowField> flows_fwd,
                          std::span<const FlowField> flows_bwd,
                          std::span<const SegmentationMap> segms,
                          std::uint16_t entity_id,
                          const PropagationParams& params,
                          std::uint64_t rng_seed) {
  params.validate();
  const int w = t_map.width();
  const int h = t_map.height();
  const int n_frames = static_cast<int>(segms.size());
  if (seed_index < 0 || seed_index >= n_frames || target_index < 0 ||
      target_index >= n_frames)
    throw ContractError("frame index outside segmentation range");
  if (seed_index == target_index)
    throw ContractError("propagate_one requires target != seed");
  for (const auto& s : segms)
    if (s.width() != w || s.height() != h)
      throw ContractError("segmentation size does not match text map");
  for (const auto& f : flows_fwd)
    if (f.width() != w || f.height() != h)
      throw ContractError("flow size does not match text map");
  for (const auto& f : flows_bwd)
    if (f.width() != w || f.height() != h)
      throw ContractError("flow size does not match text map");

  const bool forward = target_index > seed_index;
  const FlowSeq seq = forward
                          ? forward_sequence(flows_fwd, seed_index, target_index)
                          : reversed_sequence(flows_bwd, seed_index, target_index);

  // line 1: S_text
  const PointSet s_text = text_points(t_map, params.stride);
  if (s_text.empty()) return lost_frame(w, h, 0);

  // chained positions realize the seed-to-target flow at every point
  const auto& pts = s_text.points();
  std::vector<Trajectory> trajs;
  trajs.reserve(pts.size());
  std::vector<double> mags(pts.size(), 0.0);
  std::vector<std::uint8_t> alive(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    trajs.push_back(chain(seq, Vec2(pts[i].x, pts[i].y)));
    alive[i] = trajs[i].alive_to_end() ? 1 : 0;
    if (alive[i]) mags[i] = (trajs[i].back() - trajs[i].front()).norm();
  }

  // line 2: S_flow (mu/sigma gate over accumulated displacement)
  const PointSet s_flow = flow_constrained(s_text, mags, alive);

  // line 3: S_segm over every frame between seed and target, chain order
  std::vector<const SegmentationMap*> segs_range;
  segs_range.reserve(seq.size() + 1);
  const int step = forward ? 1 : -1;
  for (int i = seed_index;; i += step) {
    segs_range.push_back(&segms[i]);
    if (i == target_index) break;
  }
  const PointSet s_segm = segm_constrained(s_text, trajs, segs_range, entity_id);

  // line 4: the sampling set
  const PointSet s = intersect(s_text, s_flow, s_segm);
  const int sample_count = static_cast<int>(s.size());

  // lines 5-6: abandon the frame on a thin set
  if (sample_count <= params.min_samples)
    return lost_frame(w, h, sample_count);

  // lines 8-12: point pairs via the chained flow
  std::vector<Correspondence> pairs;
  std::vector<Vec2> target_points;
  pairs.reserve(s.size());
  target_points.reserve(s.size());
  for (const auto& p : s.points()) {
    // index of p in s_text's sorted order to reuse its trajectory
    const auto it = std::lower_bound(pts.begin(), pts.end(), p);
    const std::size_t idx = static_cast<std::size_t>(it - pts.begin());
    pairs.push_back({Vec2(p.x, p.y), trajs[idx].back()});
    target_points.push_back(trajs[idx].back());
  }

  // line 13: robust fit of the seed-to-target transform
  std::mt19937_64 rng(rng_seed);
  RansacResult fit;
  try {
    fit = ransac_homography(pairs, params.ransac, rng);
  } catch (const FitFailedError&) {
    return lost_frame(w, h, sample_count);
  } catch (const InsufficientDataError&) {
    return lost_frame(w, h, sample_count);
  }

  // line 14: projective warp
  FrameResult r;
  r.map = warp_text_map(t_map, fit.h);
  r.pre_mask_alpha = r.map.alpha_mass();

  // line 15: entity masking in the target frame
  r.map = occlusion_mask(r.map, segms[target_index], entity_id);
  r.post_mask_alpha = r.map.alpha_mass();

  // line 16: motion blur along the mean per-frame displacement
  Vec2 mean_disp = Vec2::Zero();
  for (const auto& tp : target_points) mean_disp += tp;
  Vec2 mean_src = Vec2::Zero();
  for (const auto& pr : pairs) mean_src += pr.src;
  const double count = static_cast<double>(pairs.size());
  const Vec2 total_motion = (mean_disp - mean_src) / count;
  const Vec2 per_frame =
      total_motion / static_cast<double>(std::abs(target_index - seed_index));
  r.map = motion_blur(r.map, per_frame, params.blur_alpha);

  r.homography = fit.h;
  r.sample_count = sample_count;
  r.lost = false;
  r.sample_points = std::move(target_points);
  return r;
}

PropagationResult propagate_all(const TextMap& t_map, int seed_index,
                                std::span<const FlowField> flows_fwd,
                                std::span<const FlowField> flows_bwd,
                                std::span<const SegmentationMap> segms,
                                std::uint16_t entity_id,
                                const PropagationParams& params,
                                std::uint64_t rng_seed) {
  params.validate();
  const int n = static_cast<int>(segms.size());
  if (n == 0) throw ContractError("propagate_all needs at least one frame");
  if (seed_index < 0 || seed_index >= n)
    throw ContractError("seed index outside frame range");
  if (static_cast<int>(flows_fwd.size()) != n - 1 ||
      static_cast<int>(flows_bwd.size()) != n - 1)
    throw ContractError("expected n-1 flow fields per direction");

  PropagationResult out;
  out.text_maps.resize(n);
  out.homographies.resize(n);
  out.lost.assign(n, 1);
  out.sample_counts.assign(n, 0);
  out.pre_mask_alpha.assign(n, 0.0);
  out.post_mask_alpha.assign(n, 0.0);
  out.sample_points.resize(n);

  for (int k = 0; k < n; ++k) {
    if (k == seed_index) {
      out.text_maps[k] = t_map;
      out.homographies[k] = Homography();
      out.lost[k] = 0;
      out.sample_counts[k] =
          static_cast<int>(text_points(t_map, params.stride).size());
      const double mass = t_map.alpha_mass();
      out.pre_mask_alpha[k] = mass;
      out.post_mask_alpha[k] = mass;
      continue;
    }
    FrameResult r =
        propagate_one(t_map, seed_index, k, flows_fwd, flows_bwd, segms,
                      entity_id, params, mix_seed(rng_seed, k));
    out.text_maps[k] = std::move(r.map);
    out.homographies[k] = r.homography;
    out.lost[k] = r.lost ? 1 : 0;
    out.sample_counts[k] = r.sample_count;
    out.pre_mask_alpha[k] = r.pre_mask_alpha;
    out.post_mask_alpha[k] = r.post_mask_alpha;
    out.sample_points[k] = std::move(r.sample_points);
  }
  return out;
}

}  // namespace flowtext
