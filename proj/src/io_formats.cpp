#include "flowtext/io_formats.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "flowtext/errors.hpp"

namespace flowtext::io {

namespace fs = std::filesystem;

namespace {

constexpr float kFloMagic = 202021.25f;
constexpr int kMaxDim = 32768;

std::ifstream open_input(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ContractError("cannot open file: " + path.string());
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ContractError("cannot create file: " + path.string());
  return out;
}

template <typename T>
T read_le(std::istream& in, const fs::path& path) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw FormatError("truncated file: " + path.string());
  return v;  // build targets are little-endian
}

template <typename T>
void write_le(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

// ---------------------------------------------------------------- PNG --

struct PngReadCtx {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;

  ~PngReadCtx() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
    if (fp) std::fclose(fp);
  }
};

struct PngWriteCtx {
  png_structp png = nullptr;
  png_infop info = nullptr;
  FILE* fp = nullptr;

  ~PngWriteCtx() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
    if (fp) std::fclose(fp);
  }
};

void png_error_to_jmp(png_structp png, png_const_charp) {
  longjmp(png_jmpbuf(png), 1);
}
void png_warning_ignore(png_structp, png_const_charp) {}

// Decodes a PNG into 8-bit interleaved rows of `channels` components
// (1 = gray, 3 = RGB) or 16-bit big-endian gray when bit16 is set.
std::vector<std::uint8_t> decode_png(const fs::path& path, int channels,
                                     bool bit16, int& width, int& height) {
  PngReadCtx ctx;
  ctx.fp = std::fopen(path.string().c_str(), "rb");
  if (!ctx.fp) throw ContractError("cannot open file: " + path.string());

  std::uint8_t sig[8];
  if (std::fread(sig, 1, 8, ctx.fp) != 8 || png_sig_cmp(sig, 0, 8) != 0)
    throw FormatError("not a PNG file: " + path.string());

  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                   png_error_to_jmp, png_warning_ignore);
  if (!ctx.png) throw Error("libpng init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw Error("libpng info init failed");

  std::vector<std::uint8_t> data;
  std::vector<png_bytep> rows;

  if (setjmp(png_jmpbuf(ctx.png)))
    throw FormatError("corrupt PNG file: " + path.string());

  png_init_io(ctx.png, ctx.fp);
  png_set_sig_bytes(ctx.png, 8);
  png_read_info(ctx.png, ctx.info);

  width = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
  height = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
  const int bit_depth = png_get_bit_depth(ctx.png, ctx.info);
  const int color_type = png_get_color_type(ctx.png, ctx.info);

  if (bit16) {
    if (bit_depth != 16 || color_type != PNG_COLOR_TYPE_GRAY)
      throw FormatError("expected 16-bit grayscale PNG: " + path.string());
  } else {
    if (bit_depth == 16) png_set_strip_16(ctx.png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(ctx.png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8)
      png_set_expand_gray_1_2_4_to_8(ctx.png);
    if (png_get_valid(ctx.png, ctx.info, PNG_INFO_tRNS))
      png_set_tRNS_to_alpha(ctx.png);
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(ctx.png);
    if (channels == 3 &&
        (color_type == PNG_COLOR_TYPE_GRAY ||
         color_type == PNG_COLOR_TYPE_GRAY_ALPHA))
      png_set_gray_to_rgb(ctx.png);
    if (channels == 1 &&
        (color_type == PNG_COLOR_TYPE_RGB ||
         color_type == PNG_COLOR_TYPE_RGB_ALPHA ||
         color_type == PNG_COLOR_TYPE_PALETTE))
      png_set_rgb_to_gray_fixed(ctx.png, 1, -1, -1);
  }
  png_read_update_info(ctx.png, ctx.info);

  const std::size_t row_bytes = png_get_rowbytes(ctx.png, ctx.info);
  const std::size_t expect =
      static_cast<std::size_t>(width) * channels * (bit16 ? 2 : 1);
  if (row_bytes != expect)
    throw FormatError("unexpected channel layout in " + path.string());

  data.resize(row_bytes * height);
  rows.resize(height);
  for (int y = 0; y < height; ++y) rows[y] = data.data() + y * row_bytes;
  png_read_image(ctx.png, rows.data());
  png_read_end(ctx.png, nullptr);
  return data;
}

void encode_png(const fs::path& path, const std::uint8_t* data, int width,
                int height, int channels, bool bit16) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  PngWriteCtx ctx;
  ctx.fp = std::fopen(path.string().c_str(), "wb");
  if (!ctx.fp) throw ContractError("cannot create file: " + path.string());

  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                    png_error_to_jmp, png_warning_ignore);
  if (!ctx.png) throw Error("libpng init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw Error("libpng info init failed");

  std::vector<png_bytep> rows(height);
  const std::size_t row_bytes =
      static_cast<std::size_t>(width) * channels * (bit16 ? 2 : 1);
  for (int y = 0; y < height; ++y)
    rows[y] = const_cast<png_bytep>(data + y * row_bytes);

  if (setjmp(png_jmpbuf(ctx.png)))
    throw Error("PNG write failed: " + path.string());

  png_init_io(ctx.png, ctx.fp);
  png_set_IHDR(ctx.png, ctx.info, width, height, bit16 ? 16 : 8,
               channels == 3 ? PNG_COLOR_TYPE_RGB : PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  png_write_image(ctx.png, rows.data());
  png_write_end(ctx.png, nullptr);
}

inline std::uint8_t to_byte(float v) {
  const float c = std::min(1.0f, std::max(0.0f, v));
  return static_cast<std::uint8_t>(std::lround(c * 255.0f));
}

}  // namespace

// ----------------------------------------------------------------- flo --

FlowField read_flo(const fs::path& path) {
  std::ifstream in = open_input(path);
  const float magic = read_le<float>(in, path);
  if (magic != kFloMagic)
    throw FormatError("bad .flo magic in " + path.string());
  const std::int32_t w = read_le<std::int32_t>(in, path);
  const std::int32_t h = read_le<std::int32_t>(in, path);
  if (w <= 0 || h <= 0 || w > kMaxDim || h > kMaxDim)
    throw FormatError("implausible .flo dimensions in " + path.string());

  FlowField f(w, h);
  std::vector<float> row(static_cast<std::size_t>(w) * 2);
  for (int y = 0; y < h; ++y) {
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in) throw FormatError("truncated .flo data in " + path.string());
    for (int x = 0; x < w; ++x) {
      const float u = row[2 * x];
      const float v = row[2 * x + 1];
      if (!std::isfinite(u) || !std::isfinite(v))
        throw ContentError("non-finite flow at pixel (" + std::to_string(x) +
                           "," + std::to_string(y) + ") in " + path.string());
      f.u.at(x, y) = u;
      f.v.at(x, y) = v;
    }
  }
  return f;
}

void write_flo(const FlowField& field, const fs::path& path) {
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      if (!std::isfinite(field.u.at(x, y)) || !std::isfinite(field.v.at(x, y)))
        throw ContentError("refusing to write non-finite flow at pixel (" +
                           std::to_string(x) + "," + std::to_string(y) + ")");
    }
  }
  std::ofstream out = open_output(path);
  write_le(out, kFloMagic);
  write_le(out, static_cast<std::int32_t>(field.width()));
  write_le(out, static_cast<std::int32_t>(field.height()));
  for (int y = 0; y < field.height(); ++y) {
    for (int x = 0; x < field.width(); ++x) {
      write_le(out, field.u.at(x, y));
      write_le(out, field.v.at(x, y));
    }
  }
  if (!out) throw Error("write failed: " + path.string());
}

// ---------------------------------------------------------------- segm --

SegmentationMap read_segm(const fs::path& path) {
  int w = 0, h = 0;
  const auto data = decode_png(path, 1, /*bit16=*/true, w, h);
  SegmentationMap segm(w, h);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = data.data() + static_cast<std::size_t>(y) * w * 2;
    for (int x = 0; x < w; ++x) {
      segm.ids.at(x, y) = static_cast<std::uint16_t>(
          (static_cast<unsigned>(row[2 * x]) << 8) | row[2 * x + 1]);
    }
  }
  return segm;
}

void write_segm(const SegmentationMap& segm, const fs::path& path) {
  const int w = segm.width(), h = segm.height();
  std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h * 2);
  for (int y = 0; y < h; ++y) {
    std::uint8_t* row = data.data() + static_cast<std::size_t>(y) * w * 2;
    for (int x = 0; x < w; ++x) {
      const std::uint16_t id = segm.ids.at(x, y);
      row[2 * x] = static_cast<std::uint8_t>(id >> 8);
      row[2 * x + 1] = static_cast<std::uint8_t>(id & 0xff);
    }
  }
  encode_png(path, data.data(), w, h, 1, /*bit16=*/true);
}

// --------------------------------------------------------------- depth --

DepthMap read_depth(const fs::path& path) {
  std::ifstream in = open_input(path);
  std::string tag;
  in >> tag;
  if (tag != "Pf")
    throw FormatError("expected single-channel PFM in " + path.string());
  int w = 0, h = 0;
  double scale = 0.0;
  in >> w >> h >> scale;
  if (!in || w <= 0 || h <= 0 || w > kMaxDim || h > kMaxDim)
    throw FormatError("bad PFM header in " + path.string());
  if (scale >= 0.0)
    throw FormatError("big-endian PFM unsupported: " + path.string());
  in.get();  // single whitespace byte terminating the header

  DepthMap d(w, h);
  std::vector<float> row(static_cast<std::size_t>(w));
  for (int y = h - 1; y >= 0; --y) {  // PFM rows are bottom-up
    in.read(reinterpret_cast<char*>(row.data()),
            static_cast<std::streamsize>(row.size() * sizeof(float)));
    if (!in) throw FormatError("truncated PFM data in " + path.string());
    for (int x = 0; x < w; ++x) {
      if (!std::isfinite(row[x]) || row[x] <= 0.0f)
        throw ContentError("non-positive depth at pixel (" +
                           std::to_string(x) + "," + std::to_string(y) +
                           ") in " + path.string());
      d.depth.at(x, y) = row[x];
    }
  }
  return d;
}

void write_depth(const DepthMap& depth, const fs::path& path) {
  for (int y = 0; y < depth.height(); ++y)
    for (int x = 0; x < depth.width(); ++x) {
      const float v = depth.depth.at(x, y);
      if (!std::isfinite(v) || v <= 0.0f)
        throw ContentError("refusing to write non-positive depth at pixel (" +
                           std::to_string(x) + "," + std::to_string(y) + ")");
    }
  std::ofstream out = open_output(path);
  out << "Pf\n" << depth.width() << " " << depth.height() << "\n-1.0\n";
  for (int y = depth.height() - 1; y >= 0; --y) {
    out.write(reinterpret_cast<const char*>(depth.depth.row(y)),
              static_cast<std::streamsize>(depth.width() * sizeof(float)));
  }
  if (!out) throw Error("write failed: " + path.string());
}

// --------------------------------------------------------------- frame --

Image read_frame(const fs::path& path) {
  int w = 0, h = 0;
  const auto data = decode_png(path, 3, /*bit16=*/false, w, h);
  Image img(w, h);
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = data.data() + static_cast<std::size_t>(y) * w * 3;
    for (int x = 0; x < w; ++x) {
      img.r.at(x, y) = static_cast<float>(row[3 * x]) / 255.0f;
      img.g.at(x, y) = static_cast<float>(row[3 * x + 1]) / 255.0f;
      img.b.at(x, y) = static_cast<float>(row[3 * x + 2]) / 255.0f;
    }
  }
  return img;
}

void write_frame(const Image& image, const fs::path& path) {
  const int w = image.width(), h = image.height();
  std::vector<std::uint8_t> data(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    std::uint8_t* row = data.data() + static_cast<std::size_t>(y) * w * 3;
    for (int x = 0; x < w; ++x) {
      row[3 * x] = to_byte(image.r.at(x, y));
      row[3 * x + 1] = to_byte(image.g.at(x, y));
      row[3 * x + 2] = to_byte(image.b.at(x, y));
    }
  }
  encode_png(path, data.data(), w, h, 3, /*bit16=*/false);
}

// --------------------------------------------------------- annotations --

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

}  // namespace

void write_annotations(const VideoAnnotations& ann, const fs::path& path) {
  for (const auto& track : ann.tracks) {
    for (const auto& fe : track.frames) {
      if (fe.lost) {
        if (fe.visibility != 0.0)
          throw ContractError("lost frame entry must have visibility 0");
      } else {
        for (const auto& c : fe.quad)
          if (!c.allFinite())
            throw ContractError("non-finite quad in visible frame entry");
      }
    }
  }

  std::ofstream out = open_output(path);
  out << "{\n";
  out << "  \"video_id\": \"" << json_escape(ann.video_id) << "\",\n";
  out << "  \"seed_frame\": " << ann.seed_frame << ",\n";
  out << "  \"tracks\": [";
  for (std::size_t t = 0; t < ann.tracks.size(); ++t) {
    const auto& track = ann.tracks[t];
    out << (t ? "," : "") << "\n    {\n";
    out << "      \"track_id\": " << track.track_id << ",\n";
    out << "      \"transcription\": \"" << json_escape(track.transcription)
        << "\",\n";
    out << "      \"frames\": [";
    for (std::size_t i = 0; i < track.frames.size(); ++i) {
      const auto& fe = track.frames[i];
      out << (i ? "," : "") << "\n        {\"index\": " << (fe.index + 1)
          << ", \"quad\": [";
      for (int c = 0; c < 4; ++c) {
        out << (c ? ", " : "") << "[" << fixed2(fe.quad[c].x()) << ", "
            << fixed2(fe.quad[c].y()) << "]";
      }
      out << "], \"visibility\": " << fixed4(fe.visibility)
          << ", \"lost\": " << (fe.lost ? "true" : "false") << "}";
    }
    out << (track.frames.empty() ? "]" : "\n      ]") << "\n    }";
  }
  out << (ann.tracks.empty() ? "]" : "\n  ]") << "\n}\n";
  if (!out) throw Error("write failed: " + path.string());
}

VideoAnnotations read_annotations(const fs::path& path) {
  std::ifstream in = open_input(path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("invalid annotation JSON in " + path.string() + ": " +
                      e.what());
  }
  try {
    VideoAnnotations ann;
    ann.video_id = doc.at("video_id").get<std::string>();
    ann.seed_frame = doc.at("seed_frame").get<int>();
    for (const auto& jt : doc.at("tracks")) {
      TrackAnnotation track;
      track.track_id = jt.at("track_id").get<int>();
      track.transcription = jt.at("transcription").get<std::string>();
      for (const auto& jf : jt.at("frames")) {
        FrameEntry fe;
        fe.index = jf.at("index").get<int>() - 1;
        const auto& q = jf.at("quad");
        for (int c = 0; c < 4; ++c)
          fe.quad[c] = Vec2(q.at(c).at(0).get<double>(),
                            q.at(c).at(1).get<double>());
        fe.visibility = jf.at("visibility").get<double>();
        fe.lost = jf.at("lost").get<bool>();
        track.frames.push_back(fe);
      }
      ann.tracks.push_back(std::move(track));
    }
    return ann;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("annotation schema violation in " + path.string() +
                      ": " + e.what());
  }
}

// -------------------------------------------------------------- layout --

std::string frame_file_name(int index_zero_based, const char* extension) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06d%s", index_zero_based + 1, extension);
  return buf;
}

fs::path DatasetLayout::frame_path(int i) const {
  return root / "frames" / frame_file_name(i, ".png");
}
fs::path DatasetLayout::flow_fwd_path(int i) const {
  return root / "flow_fwd" / frame_file_name(i, ".flo");
}
fs::path DatasetLayout::flow_bwd_path(int i) const {
  return root / "flow_bwd" / frame_file_name(i, ".flo");
}
fs::path DatasetLayout::segm_path(int i) const {
  return root / "segm" / frame_file_name(i, ".png");
}
fs::path DatasetLayout::depth_path(int i) const {
  return root / "depth" / frame_file_name(i, ".pfm");
}

namespace {

int count_contiguous(const fs::path& dir, const char* ext) {
  int n = 0;
  while (fs::exists(dir / frame_file_name(n, ext))) ++n;
  return n;
}

}  // namespace

DatasetLayout DatasetLayout::open(const fs::path& root) {
  const auto findings = validate_layout(root);
  if (!findings.empty()) {
    const auto& f = findings.front();
    throw ContractError("dataset layout violation: " + f.file + ": " +
                        f.message +
                        (f.expected.empty()
                             ? std::string()
                             : " (expected " + f.expected + ", got " +
                                   f.actual + ")"));
  }
  DatasetLayout layout;
  layout.root = root;
  layout.n = count_contiguous(root / "frames", ".png");
  const Image first = read_frame(layout.frame_path(0));
  layout.width = first.width();
  layout.height = first.height();
  return layout;
}

std::vector<Image> DatasetLayout::read_frames() const {
  std::vector<Image> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(read_frame(frame_path(i)));
  return out;
}

std::vector<FlowField> DatasetLayout::read_flows_fwd() const {
  std::vector<FlowField> out;
  out.reserve(std::max(0, n - 1));
  for (int i = 0; i + 1 < n; ++i) out.push_back(read_flo(flow_fwd_path(i)));
  return out;
}

std::vector<FlowField> DatasetLayout::read_flows_bwd() const {
  std::vector<FlowField> out;
  out.reserve(std::max(0, n - 1));
  for (int i = 0; i + 1 < n; ++i) out.push_back(read_flo(flow_bwd_path(i)));
  return out;
}

std::vector<SegmentationMap> DatasetLayout::read_segms() const {
  std::vector<SegmentationMap> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(read_segm(segm_path(i)));
  return out;
}

DepthMap DatasetLayout::read_depth_for(int i) const {
  return read_depth(depth_path(i));
}

std::vector<ValidationFinding> validate_layout(const fs::path& root) {
  std::vector<ValidationFinding> findings;
  auto add = [&](const std::string& file, const std::string& message,
                 const std::string& expected = {},
                 const std::string& actual = {}) {
    findings.push_back({file, expected, actual, message});
  };

  if (!fs::is_directory(root)) {
    add(root.string(), "dataset root is not a directory");
    return findings;
  }
  for (const char* sub : {"frames", "flow_fwd", "flow_bwd", "segm", "depth"}) {
    if (!fs::is_directory(root / sub))
      add((root / sub).string(),
          "required stream directory is missing (layout contract: frames/, "
          "flow_fwd/, flow_bwd/, segm/, depth/)");
  }
  if (!findings.empty()) return findings;

  const int n = count_contiguous(root / "frames", ".png");
  if (n == 0) {
    add((root / "frames").string(), "no frames numbered from 000001 found");
    return findings;
  }
  // stray files beyond the contiguous range
  for (const auto& e : fs::directory_iterator(root / "frames")) {
    const std::string name = e.path().filename().string();
    bool matches = false;
    for (int i = 0; i < n; ++i)
      if (name == frame_file_name(i, ".png")) matches = true;
    if (!matches)
      add(e.path().string(), "file outside contiguous frame numbering");
  }

  int width = 0, height = 0;
  for (int i = 0; i < n; ++i) {
    try {
      const Image img = read_frame(DatasetLayout{root}.frame_path(i));
      if (i == 0) {
        width = img.width();
        height = img.height();
      } else if (img.width() != width || img.height() != height) {
        add(DatasetLayout{root}.frame_path(i).string(), "frame size mismatch",
            std::to_string(width) + "x" + std::to_string(height),
            std::to_string(img.width()) + "x" + std::to_string(img.height()));
      }
    } catch (const Error& e) {
      add(DatasetLayout{root}.frame_path(i).string(), e.what());
    }
  }

  const DatasetLayout probe{root, n, width, height};
  for (int i = 0; i < n; ++i) {
    try {
      const SegmentationMap s = read_segm(probe.segm_path(i));
      if (s.width() != width || s.height() != height)
        add(probe.segm_path(i).string(), "segmentation size mismatch",
            std::to_string(width) + "x" + std::to_string(height),
            std::to_string(s.width()) + "x" + std::to_string(s.height()));
    } catch (const Error& e) {
      add(probe.segm_path(i).string(), e.what());
    }
    try {
      const DepthMap d = read_depth(probe.depth_path(i));
      if (d.width() != width || d.height() != height)
        add(probe.depth_path(i).string(), "depth size mismatch",
            std::to_string(width) + "x" + std::to_string(height),
            std::to_string(d.width()) + "x" + std::to_string(d.height()));
    } catch (const Error& e) {
      add(probe.depth_path(i).string(), e.what());
    }
  }
  for (int i = 0; i + 1 < n; ++i) {
    for (const bool fwd : {true, false}) {
      const fs::path p = fwd ? probe.flow_fwd_path(i) : probe.flow_bwd_path(i);
      try {
        const FlowField f = read_flo(p);
        if (f.width() != width || f.height() != height)
          add(p.string(), "flow size mismatch",
              std::to_string(width) + "x" + std::to_string(height),
              std::to_string(f.width()) + "x" + std::to_string(f.height()));
      } catch (const Error& e) {
        add(p.string(), e.what());
      }
    }
  }
  // flow files beyond n-1 break the adjacent-pair contract
  for (const char* sub : {"flow_fwd", "flow_bwd"}) {
    const int count = count_contiguous(root / sub, ".flo");
    if (count != n - 1 && n >= 1)
      add((root / sub).string(), "adjacent-pair flow count mismatch",
          std::to_string(n - 1) + " files", std::to_string(count) + " files");
  }
  return findings;
}

}  // namespace flowtext::io
