#pragma once

#include <array>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "flowtext/image.hpp"
#include "flowtext/types.hpp"

namespace flowtext {

/// Where and how large a text lands on the seed frame.
struct Placement {
  std::uint16_t entity_id = 0;
  Quad quad{};        // clockwise from top-left, inside frame bounds
  double scale = 0;   // pixels per em (glyph cell height)
};

struct RenderStyle {
  int min_area = 900;            // smallest eligible entity, px
  double depth_cov_max = 0.15;   // coefficient of variation gate
  double contrast_min = 0.25;    // normalized RGB distance to local mean
  double max_rotation_deg = 15.0;
  double perspective_jitter = 0.04;  // corner nudge, fraction of size
  double min_scale = 8.0;        // px per em floor
  double box_fill = 0.85;        // text box fraction of the inscribed box
};

/// Fixed-cell glyph source. Implementations return coverage bitmaps;
/// the built-in font uses an 8x8 cell.
class GlyphRasterizer {
 public:
  virtual ~GlyphRasterizer() = default;
  virtual int cell_width() const = 0;
  virtual int cell_height() const = 0;
  virtual bool has_glyph(char32_t c) const = 0;
  /// Row-major cell_width x cell_height coverage in {0,1}.
  virtual std::vector<std::uint8_t> glyph(char32_t c) const = 0;
};

/// Built-in monospace 8x8 bitmap font covering printable ASCII.
const GlyphRasterizer& builtin_font();

/// Picks an entity that is large and depth-flat enough, inscribes a box
/// in its mask, sizes the font to the text length and jitters the
/// resulting rectangle by a bounded rotation and perspective nudge.
/// Throws PlacementError when no region qualifies.
Placement select_placement(const SegmentationMap& segm, const DepthMap& depth,
                           int text_len, std::mt19937_64& rng,
                           const RenderStyle& style);

/// Rasterizes the string at the placement scale and warps it into the
/// placement quad. Text color is chosen against the mean frame color
/// under the quad (normalized distance >= style.contrast_min).
/// Throws UnsupportedCharacterError for glyphs the font lacks.
TextMap rasterize_text(const std::string& text, const Placement& placement,
                       const RenderStyle& style, const Image& frame,
                       const GlyphRasterizer& font, std::mt19937_64& rng);

struct PlacedText {
  std::string text;
  Placement placement;
  TextMap map;
};

/// Places each text on the seed frame (non-overlapping quads, distinct
/// entities preferred), composites them and returns the per-text maps.
/// Individual placement failures are skipped; throws RenderError only
/// when nothing could be placed.
std::pair<Image, std::vector<PlacedText>> render_seed(
    const Image& frame, std::span<const std::string> texts,
    const SegmentationMap& segm, const DepthMap& depth, std::mt19937_64& rng,
    const RenderStyle& style, const GlyphRasterizer& font);

}  // namespace flowtext
