#include "flowtext/seed_render.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "flowtext/errors.hpp"
#include "flowtext/geometry.hpp"
#include "flowtext/kernels/dispatch.hpp"

namespace flowtext {

namespace {

// ------------------------------------------------------------- helpers --

std::vector<char32_t> decode_utf8(const std::string& text) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const unsigned char c = text[i];
    int extra = 0;
    char32_t cp = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1f;
      extra = 1;
    } else if ((c >> 4) == 0xe) {
      cp = c & 0x0f;
      extra = 2;
    } else if ((c >> 3) == 0x1e) {
      cp = c & 0x07;
      extra = 3;
    } else {
      throw UnsupportedCharacterError("invalid UTF-8 byte in text");
    }
    if (i + extra >= text.size())
      throw UnsupportedCharacterError("truncated UTF-8 sequence in text");
    for (int k = 1; k <= extra; ++k) {
      const unsigned char cc = text[i + k];
      if ((cc >> 6) != 0x2)
        throw UnsupportedCharacterError("invalid UTF-8 continuation in text");
      cp = (cp << 6) | (cc & 0x3f);
    }
    out.push_back(cp);
    i += 1 + extra;
  }
  return out;
}

double quad_area(const Quad& q) {
  double a = 0.0;
  for (int i = 0; i < 4; ++i) {
    const Vec2& p = q[i];
    const Vec2& n = q[(i + 1) % 4];
    a += p.x() * n.y() - n.x() * p.y();
  }
  return std::abs(a) * 0.5;
}

bool quad_convex(const Quad& q) {
  int sign = 0;
  for (int i = 0; i < 4; ++i) {
    const Vec2 e1 = q[(i + 1) % 4] - q[i];
    const Vec2 e2 = q[(i + 2) % 4] - q[(i + 1) % 4];
    const double cross = e1.x() * e2.y() - e1.y() * e2.x();
    if (cross > 0) {
      if (sign < 0) return false;
      sign = 1;
    } else if (cross < 0) {
      if (sign > 0) return false;
      sign = -1;
    }
  }
  return sign != 0;
}

bool quad_inside_frame(const Quad& q, int w, int h) {
  for (const auto& c : q) {
    if (c.x() < 0.0 || c.x() > w - 1.0 || c.y() < 0.0 || c.y() > h - 1.0)
      return false;
  }
  return true;
}

bool inside_quad(const Quad& q, const Vec2& p) {
  int sign = 0;
  for (int i = 0; i < 4; ++i) {
    const Vec2& a = q[i];
    const Vec2& b = q[(i + 1) % 4];
    const double cross = (b.x() - a.x()) * (p.y() - a.y()) -
                         (b.y() - a.y()) * (p.x() - a.x());
    if (cross > 0) {
      if (sign < 0) return false;
      sign = 1;
    } else if (cross < 0) {
      if (sign > 0) return false;
      sign = -1;
    }
  }
  return true;
}

// Separating-axis overlap test for convex quads.
bool quads_overlap(const Quad& a, const Quad& b) {
  const Quad* quads[2] = {&a, &b};
  for (const Quad* q : quads) {
    for (int i = 0; i < 4; ++i) {
      const Vec2 edge = (*q)[(i + 1) % 4] - (*q)[i];
      const Vec2 axis(-edge.y(), edge.x());
      double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
      for (const auto& c : a) {
        const double d = axis.dot(c);
        amin = std::min(amin, d);
        amax = std::max(amax, d);
      }
      for (const auto& c : b) {
        const double d = axis.dot(c);
        bmin = std::min(bmin, d);
        bmax = std::max(bmax, d);
      }
      if (amax < bmin || bmax < amin) return false;
    }
  }
  return true;
}

struct RegionStats {
  long long area = 0;
  double depth_sum = 0.0;
  double depth_sq_sum = 0.0;

  double cov() const {
    if (area == 0) return 1e300;
    const double mu = depth_sum / static_cast<double>(area);
    const double var =
        std::max(0.0, depth_sq_sum / static_cast<double>(area) - mu * mu);
    return mu > 1e-12 ? std::sqrt(var) / mu : 1e300;
  }
};

struct InscribedRect {
  int x0 = 0, y0 = 0, x1 = -1, y1 = -1;  // inclusive
  long long area() const {
    return x1 < x0 || y1 < y0
               ? 0
               : static_cast<long long>(x1 - x0 + 1) * (y1 - y0 + 1);
  }
};

// Largest axis-aligned rectangle fully inside the entity mask
// (histogram-stack sweep, O(w*h)).
InscribedRect largest_inscribed_rect(const SegmentationMap& segm,
                                     std::uint16_t id) {
  const int w = segm.width(), h = segm.height();
  std::vector<int> heights(w, 0);
  InscribedRect best;
  std::vector<std::pair<int, int>> stack;  // (start x, height)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x)
      heights[x] = segm.ids.at(x, y) == id ? heights[x] + 1 : 0;
    stack.clear();
    for (int x = 0; x <= w; ++x) {
      const int cur = x < w ? heights[x] : 0;
      int start = x;
      while (!stack.empty() && stack.back().second > cur) {
        const auto [sx, sh] = stack.back();
        stack.pop_back();
        const long long area = static_cast<long long>(sh) * (x - sx);
        if (area > best.area()) {
          best = {sx, y - sh + 1, x - 1, y};
        }
        start = sx;
      }
      if (stack.empty() || stack.back().second < cur)
        stack.emplace_back(start, cur);
    }
  }
  return best;
}

Placement select_placement_impl(const SegmentationMap& segm,
                                const DepthMap& depth, int text_len,
                                std::mt19937_64& rng,
                                const RenderStyle& style,
                                const std::set<std::uint16_t>* exclude) {
  if (text_len < 1) throw ContractError("text length must be >= 1");
  if (segm.width() != depth.width() || segm.height() != depth.height())
    throw ContractError("segmentation and depth size mismatch");

  std::map<std::uint16_t, RegionStats> regions;
  for (int y = 0; y < segm.height(); ++y) {
    for (int x = 0; x < segm.width(); ++x) {
      const std::uint16_t id = segm.ids.at(x, y);
      if (id == 0) continue;
      auto& r = regions[id];
      r.area += 1;
      const double d = depth.depth.at(x, y);
      r.depth_sum += d;
      r.depth_sq_sum += d * d;
    }
  }

  std::vector<std::uint16_t> eligible;
  for (const auto& [id, r] : regions) {
    if (exclude && exclude->count(id)) continue;
    if (r.area < style.min_area) continue;
    if (r.cov() > style.depth_cov_max) continue;
    eligible.push_back(id);
  }
  if (eligible.empty())
    throw PlacementError("no eligible entity region for text placement");

  std::uniform_int_distribution<std::size_t> pick(0, eligible.size() - 1);
  const std::uint16_t id = eligible[pick(rng)];

  const InscribedRect rect = largest_inscribed_rect(segm, id);
  const double rect_w = static_cast<double>(rect.x1 - rect.x0 + 1);
  const double rect_h = static_cast<double>(rect.y1 - rect.y0 + 1);
  // cap the height so one entity can host several rows of text
  const double scale = std::min(rect_h * 0.45,
                                rect_w * style.box_fill /
                                    static_cast<double>(text_len));
  if (scale < style.min_scale)
    throw PlacementError("eligible region too small for requested text");

  const double tw = scale * static_cast<double>(text_len);
  const double th = scale;

  // quads must stay strictly on the entity (2 px margin absorbs the
  // 1 px rasterization bleed outside the quad)
  const double margin = 2.0;
  auto inside_rect = [&](const Quad& q) {
    for (const auto& c : q) {
      if (c.x() < rect.x0 + margin || c.x() > rect.x1 - margin ||
          c.y() < rect.y0 + margin || c.y() > rect.y1 - margin)
        return false;
    }
    return true;
  };

  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> uni01(0.0, 1.0);
  auto random_center = [&](double slack_x, double slack_y) {
    const double lo_x = rect.x0 + margin + slack_x;
    const double hi_x = rect.x1 - margin - slack_x;
    const double lo_y = rect.y0 + margin + slack_y;
    const double hi_y = rect.y1 - margin - slack_y;
    return Vec2(lo_x + uni01(rng) * std::max(0.0, hi_x - lo_x),
                lo_y + uni01(rng) * std::max(0.0, hi_y - lo_y));
  };

  Quad quad;
  double wiggle = 1.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double theta = uni(rng) * style.max_rotation_deg * wiggle *
                         M_PI / 180.0;
    const double c = std::cos(theta), s = std::sin(theta);
    // rotated half-extents bound the room the quad needs
    const double ext_x = 0.5 * (std::abs(c) * tw + std::abs(s) * th);
    const double ext_y = 0.5 * (std::abs(s) * tw + std::abs(c) * th);
    const double jx_max = style.perspective_jitter * wiggle * tw;
    const double jy_max = style.perspective_jitter * wiggle * th;
    const Vec2 center = random_center(ext_x + jx_max, ext_y + jy_max);
    const Quad base = {Vec2(-tw / 2, -th / 2), Vec2(tw / 2, -th / 2),
                       Vec2(tw / 2, th / 2), Vec2(-tw / 2, th / 2)};
    for (int i = 0; i < 4; ++i) {
      const double jx = uni(rng) * jx_max;
      const double jy = uni(rng) * jy_max;
      quad[i] = Vec2(center.x() + c * base[i].x() - s * base[i].y() + jx,
                     center.y() + s * base[i].x() + c * base[i].y() + jy);
    }
    if (quad_convex(quad) && inside_rect(quad) &&
        quad_inside_frame(quad, segm.width(), segm.height()) &&
        quad_area(quad) >= 0.5 * tw * th)
      return {id, quad, scale};
    wiggle *= 0.5;
  }
  // axis-aligned fallback at a random valid center
  const Vec2 center = random_center(tw / 2, th / 2);
  quad = {Vec2(center.x() - tw / 2, center.y() - th / 2),
          Vec2(center.x() + tw / 2, center.y() - th / 2),
          Vec2(center.x() + tw / 2, center.y() + th / 2),
          Vec2(center.x() - tw / 2, center.y() + th / 2)};
  return {id, quad, scale};
}

const std::array<std::array<float, 3>, 8> kPalette = {{
    {1.0f, 1.0f, 1.0f},
    {0.05f, 0.05f, 0.05f},
    {0.9f, 0.85f, 0.1f},
    {0.85f, 0.1f, 0.1f},
    {0.1f, 0.2f, 0.85f},
    {0.1f, 0.7f, 0.2f},
    {0.95f, 0.5f, 0.05f},
    {0.7f, 0.1f, 0.7f},
}};

}  // namespace

Placement select_placement(const SegmentationMap& segm, const DepthMap& depth,
                           int text_len, std::mt19937_64& rng,
                           const RenderStyle& style) {
  return select_placement_impl(segm, depth, text_len, rng, style, nullptr);
}

TextMap rasterize_text(const std::string& text, const Placement& placement,
                       const RenderStyle& style, const Image& frame,
                       const GlyphRasterizer& font, std::mt19937_64& rng) {
  if (text.empty()) throw ContractError("cannot rasterize empty text");
  const std::vector<char32_t> cps = decode_utf8(text);
  for (char32_t cp : cps) {
    if (!font.has_glyph(cp))
      throw UnsupportedCharacterError("font has no glyph for code point " +
                                      std::to_string(static_cast<int>(cp)));
  }

  const int cw = font.cell_width();
  const int ch = font.cell_height();
  const int len = static_cast<int>(cps.size());

  // glyph canvas, integer-upscaled for crisp edges under the warp
  const int up = std::clamp(
      static_cast<int>(std::lround(placement.scale / ch)), 1, 8);
  const int canvas_w = len * cw * up;
  const int canvas_h = ch * up;
  PlaneF canvas(canvas_w, canvas_h, 0.0f);
  for (int gi = 0; gi < len; ++gi) {
    const std::vector<std::uint8_t> bits = font.glyph(cps[gi]);
    for (int gy = 0; gy < ch; ++gy) {
      for (int gx = 0; gx < cw; ++gx) {
        if (!bits[gy * cw + gx]) continue;
        for (int sy = 0; sy < up; ++sy) {
          for (int sx = 0; sx < up; ++sx) {
            canvas.at((gi * cw + gx) * up + sx, gy * up + sy) = 1.0f;
          }
        }
      }
    }
  }

  // homography from the fronto-parallel text rectangle into the quad
  const double tw = placement.scale * len;
  const double th = placement.scale;
  const std::array<Correspondence, 4> corners = {{
      {Vec2(0, 0), placement.quad[0]},
      {Vec2(tw, 0), placement.quad[1]},
      {Vec2(tw, th), placement.quad[2]},
      {Vec2(0, th), placement.quad[3]},
  }};
  const Homography rect_to_quad = estimate_dlt(corners);
  const Mat3 quad_to_rect = rect_to_quad.inverse().matrix();

  // output pixel -> canvas coordinate matrix for the warp kernel
  Mat3 rect_to_canvas = Mat3::Identity();
  rect_to_canvas(0, 0) = static_cast<double>(canvas_w) / tw;
  rect_to_canvas(1, 1) = static_cast<double>(canvas_h) / th;
  const Mat3 to_canvas = rect_to_canvas * quad_to_rect;
  double hm[9];
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) hm[r * 3 + c] = to_canvas(r, c);

  TextMap out(frame.width(), frame.height());
  PlaneF scratch_r(frame.width(), 1), scratch_g(frame.width(), 1),
      scratch_b(frame.width(), 1);
  const float* src[4] = {canvas.data(), canvas.data(), canvas.data(),
                         canvas.data()};
  const auto& k = kernels::active();
  for (int y = 0; y < out.height(); ++y) {
    float* dst[4] = {scratch_r.data(), scratch_g.data(), scratch_b.data(),
                     out.a.row(y)};
    k.warp_bilinear_row(src, canvas_w, canvas_h, dst, out.width(), y, hm);
  }

  // contrast-gated color against the mean frame color under the quad
  double mr = 0, mg = 0, mb = 0;
  long long count = 0;
  int bx0 = frame.width() - 1, bx1 = 0, by0 = frame.height() - 1, by1 = 0;
  for (const auto& c : placement.quad) {
    bx0 = std::min(bx0, static_cast<int>(std::floor(c.x())));
    bx1 = std::max(bx1, static_cast<int>(std::ceil(c.x())));
    by0 = std::min(by0, static_cast<int>(std::floor(c.y())));
    by1 = std::max(by1, static_cast<int>(std::ceil(c.y())));
  }
  bx0 = std::max(bx0, 0);
  by0 = std::max(by0, 0);
  bx1 = std::min(bx1, frame.width() - 1);
  by1 = std::min(by1, frame.height() - 1);
  for (int y = by0; y <= by1; ++y) {
    for (int x = bx0; x <= bx1; ++x) {
      if (!inside_quad(placement.quad, Vec2(x, y))) continue;
      mr += frame.r.at(x, y);
      mg += frame.g.at(x, y);
      mb += frame.b.at(x, y);
      ++count;
    }
  }
  if (count > 0) {
    mr /= count;
    mg /= count;
    mb /= count;
  }

  std::array<std::size_t, kPalette.size()> order;
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const double norm = std::sqrt(3.0);
  std::array<float, 3> color = kPalette[order[0]];
  double best_dist = -1.0;
  for (std::size_t oi : order) {
    const auto& c = kPalette[oi];
    const double dist = std::sqrt((c[0] - mr) * (c[0] - mr) +
                                  (c[1] - mg) * (c[1] - mg) +
                                  (c[2] - mb) * (c[2] - mb)) /
                        norm;
    if (dist >= style.contrast_min) {
      color = c;
      best_dist = dist;
      break;
    }
    if (dist > best_dist) {
      best_dist = dist;
      color = c;
    }
  }

  std::fill(out.r.data(), out.r.data() + out.r.size(), color[0]);
  std::fill(out.g.data(), out.g.data() + out.g.size(), color[1]);
  std::fill(out.b.data(), out.b.data() + out.b.size(), color[2]);
  return out;
}

std::pair<Image, std::vector<PlacedText>> render_seed(
    const Image& frame, std::span<const std::string> texts,
    const SegmentationMap& segm, const DepthMap& depth, std::mt19937_64& rng,
    const RenderStyle& style, const GlyphRasterizer& font) {
  if (texts.empty()) throw ContractError("render_seed needs at least one text");
  if (segm.width() != frame.width() || segm.height() != frame.height())
    throw ContractError("segmentation size does not match frame");

  std::vector<PlacedText> placed;
  std::set<std::uint16_t> used_entities;

  for (const auto& text : texts) {
    bool ok = false;
    for (int attempt = 0; attempt < 12 && !ok; ++attempt) {
      // prefer entities that do not already carry a text
      const std::set<std::uint16_t>* exclude =
          attempt < 6 && !used_entities.empty() ? &used_entities : nullptr;
      Placement p;
      try {
        p = select_placement_impl(segm, depth,
                                  static_cast<int>(decode_utf8(text).size()),
                                  rng, style, exclude);
      } catch (const PlacementError&) {
        continue;
      }
      bool overlaps = false;
      for (const auto& prev : placed) {
        if (quads_overlap(prev.placement.quad, p.quad)) {
          overlaps = true;
          break;
        }
      }
      if (overlaps) continue;
      PlacedText pt;
      pt.text = text;
      pt.placement = p;
      pt.map = rasterize_text(text, p, style, frame, font, rng);
      placed.push_back(std::move(pt));
      used_entities.insert(p.entity_id);
      ok = true;
    }
  }

  if (placed.empty())
    throw RenderError("no text could be placed on the seed frame");

  Image composited = frame;
  const auto& k = kernels::active();
  for (const auto& pt : placed) {
    k.composite_over(composited.r.data(), composited.g.data(),
                     composited.b.data(), pt.map.r.data(), pt.map.g.data(),
                     pt.map.b.data(), pt.map.a.data(), pt.map.a.size());
  }
  return {std::move(composited), std::move(placed)};
}

}  // namespace flowtext
