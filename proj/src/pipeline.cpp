#include "flowtext/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "flowtext/errors.hpp"
#include "flowtext/kernels/dispatch.hpp"
#include "flowtext/log.hpp"

namespace flowtext {

void SynthesisJob::validate() const {
  const int n = static_cast<int>(frames.size());
  if (n < 1) throw ContractError("job has no frames");
  if (static_cast<int>(segms.size()) != n)
    throw ContractError("job needs one segmentation map per frame");
  if (static_cast<int>(flows_fwd.size()) != n - 1 ||
      static_cast<int>(flows_bwd.size()) != n - 1)
    throw ContractError("job needs n-1 flow fields per direction");
  const int w = frames[0].width(), h = frames[0].height();
  for (const auto& f : frames)
    if (f.width() != w || f.height() != h)
      throw ContractError("frame dimensions disagree");
  for (const auto& s : segms)
    if (s.width() != w || s.height() != h)
      throw ContractError("segmentation dimensions disagree with frames");
  for (const auto& f : flows_fwd)
    if (f.width() != w || f.height() != h)
      throw ContractError("forward flow dimensions disagree with frames");
  for (const auto& f : flows_bwd)
    if (f.width() != w || f.height() != h)
      throw ContractError("backward flow dimensions disagree with frames");
  if (depth_seed.width() != w || depth_seed.height() != h)
    throw ContractError("depth dimensions disagree with frames");
  if (words.empty()) throw ContractError("job has no candidate words");
  if (num_texts < 1) throw ContractError("num_texts must be >= 1");
  if (seed_index && (*seed_index < 0 || *seed_index >= n))
    throw ContractError("seed_index outside frame range");
  params.validate();
}

int draw_seed_index(int n, std::mt19937_64& rng) {
  if (n < 1) throw ContractError("cannot draw a seed frame from zero frames");
  int lo = 0, hi = n - 1;
  if (n >= 10) {
    // keep both propagation directions exercised
    const int margin = (n + 9) / 10;
    lo = margin;
    hi = n - 1 - margin;
  }
  std::uniform_int_distribution<int> pick(lo, hi);
  return pick(rng);
}

int draw_seed_index(int n, std::uint64_t rng_seed) {
  std::mt19937_64 rng(rng_seed);
  return draw_seed_index(n, rng);
}

Image composite(const Image& frame, std::span<const TextMap> maps) {
  Image out = frame;
  const auto& k = kernels::active();
  for (const auto& m : maps) {
    if (m.width() != out.width() || m.height() != out.height())
      throw ContractError("composite: text map size mismatch");
    k.composite_over(out.r.data(), out.g.data(), out.b.data(), m.r.data(),
                     m.g.data(), m.b.data(), m.a.data(), m.a.size());
  }
  return out;
}

namespace {

Quad zero_quad() {
  return {Vec2::Zero(), Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
}

}  // namespace

SynthesisOutput run(const SynthesisJob& job) {
  job.validate();
  const int n = static_cast<int>(job.frames.size());

  std::mt19937_64 rng(job.rng_seed);
  // the draw is always consumed so explicit and random seeds share one
  // rng stream shape
  const int drawn = draw_seed_index(n, rng);
  const int seed_index = job.seed_index.value_or(drawn);

  SynthesisOutput out;
  out.report.seed_index = seed_index;
  out.report.texts_requested = job.num_texts;

  // candidate words, sampled without replacement
  std::vector<std::size_t> order(job.words.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::string> texts;
  for (std::size_t i = 0;
       i < order.size() && texts.size() < static_cast<std::size_t>(job.num_texts);
       ++i) {
    const std::string& w = job.words[order[i]];
    if (!w.empty()) texts.push_back(w);
  }
  if (texts.empty()) throw ContractError("no usable candidate words");

  std::vector<PlacedText> placed;
  Image seed_composited;
  try {
    auto [img, pl] = render_seed(job.frames[seed_index], texts,
                                 job.segms[seed_index], job.depth_seed, rng,
                                 job.style, builtin_font());
    seed_composited = std::move(img);
    placed = std::move(pl);
  } catch (const RenderError& e) {
    log::warn(std::string("seed render failed, skipping job: ") + e.what());
    out.report.render_failed = true;
    out.report.texts_skipped = job.num_texts;
    return out;
  }
  out.report.texts_placed = static_cast<int>(placed.size());
  out.report.texts_skipped =
      static_cast<int>(texts.size()) - static_cast<int>(placed.size());

  // per-text propagation to every frame
  std::vector<PropagationResult> results;
  results.reserve(placed.size());
  for (std::size_t i = 0; i < placed.size(); ++i) {
    results.push_back(propagate_all(
        placed[i].map, seed_index, job.flows_fwd, job.flows_bwd, job.segms,
        placed[i].placement.entity_id, job.params,
        mix_seed(job.rng_seed, 0x1000 + i)));
  }

  // composite every frame; the seed frame reuses the rendered image
  out.frames.reserve(n);
  for (int k = 0; k < n; ++k) {
    if (k == seed_index) {
      out.frames.push_back(seed_composited);
      continue;
    }
    std::vector<TextMap> maps;
    maps.reserve(results.size());
    for (const auto& r : results) maps.push_back(r.text_maps[k]);
    out.frames.push_back(composite(job.frames[k], maps));
  }

  // annotations
  for (std::size_t i = 0; i < placed.size(); ++i) {
    const auto& res = results[i];
    TrackAnnotation track;
    track.track_id = static_cast<int>(i);
    track.transcription = placed[i].text;
    for (int k = 0; k < n; ++k) {
      FrameEntry fe;
      fe.index = k;
      if (res.lost[k]) {
        fe.quad = zero_quad();
        fe.visibility = 0.0;
        fe.lost = true;
        ++out.report.lost_frames;
      } else {
        bool ok = true;
        Quad q = zero_quad();
        if (k == seed_index) {
          q = placed[i].placement.quad;
        } else {
          try {
            q = propagate_quad(placed[i].placement.quad, *res.homographies[k]);
          } catch (const PointAtInfinityError&) {
            ok = false;
          }
        }
        if (!ok) {
          fe.quad = zero_quad();
          fe.visibility = 0.0;
          fe.lost = true;
          ++out.report.lost_frames;
        } else {
          fe.quad = q;
          const double pre = res.pre_mask_alpha[k];
          const double post = res.post_mask_alpha[k];
          fe.visibility =
              pre > 1e-12 ? std::clamp(post / pre, 0.0, 1.0) : 0.0;
          fe.lost = false;
        }
      }
      track.frames.push_back(fe);
    }
    out.tracks.push_back(std::move(track));
    out.sample_points.push_back(res.sample_points);
  }

  return out;
}

}  // namespace flowtext
