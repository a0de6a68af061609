// flowtext CLI: synthesis, preview, test-data generation, validation.

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <thread>

#include "flowtext/errors.hpp"
#include "flowtext/io_formats.hpp"
#include "flowtext/kernels/dispatch.hpp"
#include "flowtext/log.hpp"
#include "flowtext/pipeline.hpp"
#include "flowtext/scene_gen.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct CliConfig {
  std::string root;
  std::string out;
  std::string words;
  int num_texts = 3;
  int seed_frame = -1;  // 1-based; -1 = random draw
  int min_samples = 32;
  double alpha = 0.25;
  int stride = 2;
  std::uint64_t rng_seed = 0;
  int jobs = 1;
  flowtext::RansacParams ransac{};
};

void apply_config_file(const fs::path& path, CliConfig& cfg) {
  std::ifstream in(path);
  if (!in)
    throw flowtext::ContractError("cannot open config file: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw flowtext::FormatError("invalid config JSON: " + std::string(e.what()));
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "root") cfg.root = value.get<std::string>();
    else if (key == "out") cfg.out = value.get<std::string>();
    else if (key == "words") cfg.words = value.get<std::string>();
    else if (key == "num_texts") cfg.num_texts = value.get<int>();
    else if (key == "seed_frame") {
      if (!value.is_null()) cfg.seed_frame = value.get<int>();
    } else if (key == "min_samples") cfg.min_samples = value.get<int>();
    else if (key == "alpha") cfg.alpha = value.get<double>();
    else if (key == "stride") cfg.stride = value.get<int>();
    else if (key == "rng_seed") cfg.rng_seed = value.get<std::uint64_t>();
    else if (key == "jobs") cfg.jobs = value.get<int>();
    else if (key == "ransac") {
      for (const auto& [rk, rv] : value.items()) {
        if (rk == "inlier_threshold")
          cfg.ransac.inlier_threshold = rv.get<double>();
        else if (rk == "max_iterations")
          cfg.ransac.max_iterations = rv.get<int>();
        else if (rk == "confidence") cfg.ransac.confidence = rv.get<double>();
        else if (rk == "min_inliers") cfg.ransac.min_inliers = rv.get<int>();
        else
          throw flowtext::ContractError("unknown config key: ransac." + rk);
      }
    } else {
      throw flowtext::ContractError("unknown config key: " + key);
    }
  }
}

std::vector<std::string> load_words(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw flowtext::ContractError("cannot open words file: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    if (line.empty()) continue;
    bool supported = true;
    for (unsigned char c : line) {
      if (c < 0x20 || c > 0x7e) {
        supported = false;
        break;
      }
    }
    if (!supported) {
      flowtext::log::warn("skipping word with unsupported characters: " + line);
      continue;
    }
    words.push_back(line);
  }
  if (words.empty())
    throw flowtext::ContractError("words file has no usable entries: " +
                                  path.string());
  return words;
}

// videos under root: either root itself (has frames/) or child directories
std::vector<fs::path> discover_videos(const fs::path& root) {
  if (fs::is_directory(root / "frames")) return {root};
  std::vector<fs::path> videos;
  if (fs::is_directory(root)) {
    for (const auto& e : fs::directory_iterator(root)) {
      if (e.is_directory() && fs::is_directory(e.path() / "frames"))
        videos.push_back(e.path());
    }
  }
  std::sort(videos.begin(), videos.end());
  if (videos.empty())
    throw flowtext::ContractError(
        "no dataset found under " + root.string() +
        " (expected frames/ at the root or in child directories)");
  return videos;
}

flowtext::SynthesisJob load_job(const flowtext::io::DatasetLayout& layout,
                                const CliConfig& cfg,
                                std::uint64_t video_seed) {
  flowtext::SynthesisJob job;
  job.frames = layout.read_frames();
  job.flows_fwd = layout.read_flows_fwd();
  job.flows_bwd = layout.read_flows_bwd();
  job.segms = layout.read_segms();
  job.words = load_words(cfg.words);
  job.num_texts = cfg.num_texts;
  job.params.min_samples = cfg.min_samples;
  job.params.blur_alpha = cfg.alpha;
  job.params.stride = cfg.stride;
  job.params.ransac = cfg.ransac;
  job.rng_seed = video_seed;
  if (cfg.seed_frame > 0) {
    if (cfg.seed_frame > layout.n)
      throw flowtext::ContractError("--seed-frame beyond last frame");
    job.seed_index = cfg.seed_frame - 1;
  } else {
    job.seed_index = flowtext::draw_seed_index(layout.n, video_seed);
  }
  job.depth_seed = layout.read_depth_for(*job.seed_index);
  return job;
}

void write_report(const flowtext::JobReport& report, const fs::path& path) {
  ordered_json doc;
  doc["seed_frame"] = report.seed_index + 1;
  doc["texts_requested"] = report.texts_requested;
  doc["texts_placed"] = report.texts_placed;
  doc["texts_skipped"] = report.texts_skipped;
  doc["lost_frames"] = report.lost_frames;
  doc["render_failed"] = report.render_failed;
  std::ofstream out(path);
  out << doc.dump(2) << "\n";
}

void write_outputs(const flowtext::SynthesisOutput& result,
                   const std::string& video_id, const fs::path& out_dir) {
  fs::create_directories(out_dir / "frames_out");
  for (std::size_t k = 0; k < result.frames.size(); ++k) {
    flowtext::io::write_frame(
        result.frames[k],
        out_dir / "frames_out" /
            flowtext::io::frame_file_name(static_cast<int>(k), ".png"));
  }
  flowtext::io::VideoAnnotations ann;
  ann.video_id = video_id;
  ann.seed_frame = result.report.seed_index + 1;
  ann.tracks = result.tracks;
  flowtext::io::write_annotations(ann, out_dir / "annotations.json");
  write_report(result.report, out_dir / "report.json");
}

// ---------------------------------------------------------------- synth --

int run_one_video(const fs::path& video_root, const fs::path& out_dir,
                  const CliConfig& cfg, std::uint64_t video_seed) {
  const auto layout = flowtext::io::DatasetLayout::open(video_root);
  const auto job = load_job(layout, cfg, video_seed);
  const auto result = flowtext::run(job);
  write_outputs(result, video_root.filename().string(), out_dir);
  if (result.report.render_failed)
    flowtext::log::warn("job skipped (seed render failed): " +
                        video_root.string());
  return 0;
}

int cmd_synth(const CliConfig& cfg) {
  const auto videos = discover_videos(cfg.root);
  const bool single = videos.size() == 1 && videos[0] == fs::path(cfg.root);

  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};
  std::mutex log_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= videos.size()) return;
      const fs::path out_dir =
          single ? fs::path(cfg.out) : fs::path(cfg.out) / videos[i].filename();
      try {
        run_one_video(videos[i], out_dir, cfg,
                      flowtext::mix_seed(cfg.rng_seed, i));
      } catch (const std::exception& e) {
        const std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "error: " << videos[i].string() << ": " << e.what()
                  << "\n";
        failures.fetch_add(1);
      }
    }
  };

  const int jobs = std::max(1, std::min<int>(cfg.jobs, videos.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  return failures.load() == 0 ? 0 : 1;
}

// -------------------------------------------------------------- preview --

void draw_line(flowtext::Image& img, flowtext::Vec2 a, flowtext::Vec2 b,
               float r, float g, float bl) {
  const double len = (b - a).norm();
  const int steps = std::max(1, static_cast<int>(std::ceil(len)));
  for (int i = 0; i <= steps; ++i) {
    const flowtext::Vec2 p = a + (b - a) * (static_cast<double>(i) / steps);
    const int x = static_cast<int>(std::lround(p.x()));
    const int y = static_cast<int>(std::lround(p.y()));
    if (!img.r.in_bounds(x, y)) continue;
    img.r.at(x, y) = r;
    img.g.at(x, y) = g;
    img.b.at(x, y) = bl;
  }
}

void draw_dot(flowtext::Image& img, const flowtext::Vec2& p, float r, float g,
              float bl) {
  const int x = static_cast<int>(std::lround(p.x()));
  const int y = static_cast<int>(std::lround(p.y()));
  static constexpr int kOffsets[5][2] = {
      {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (const auto& o : kOffsets) {
    if (!img.r.in_bounds(x + o[0], y + o[1])) continue;
    img.r.at(x + o[0], y + o[1]) = r;
    img.g.at(x + o[0], y + o[1]) = g;
    img.b.at(x + o[0], y + o[1]) = bl;
  }
}

void stamp_text(flowtext::Image& img, const std::string& text, int ox, int oy,
                int scale, float r, float g, float b) {
  const auto& font = flowtext::builtin_font();
  int pen_x = ox;
  for (char ch : text) {
    const char32_t cp = static_cast<unsigned char>(ch);
    if (!font.has_glyph(cp)) continue;
    const auto bits = font.glyph(cp);
    for (int gy = 0; gy < font.cell_height(); ++gy) {
      for (int gx = 0; gx < font.cell_width(); ++gx) {
        if (!bits[gy * font.cell_width() + gx]) continue;
        for (int sy = 0; sy < scale; ++sy) {
          for (int sx = 0; sx < scale; ++sx) {
            const int x = pen_x + gx * scale + sx;
            const int y = oy + gy * scale + sy;
            if (!img.r.in_bounds(x, y)) continue;
            img.r.at(x, y) = r;
            img.g.at(x, y) = g;
            img.b.at(x, y) = b;
          }
        }
      }
    }
    pen_x += font.cell_width() * scale;
  }
}

int cmd_preview(const CliConfig& cfg, const std::string& frame_range) {
  const auto videos = discover_videos(cfg.root);
  const bool single = videos.size() == 1 && videos[0] == fs::path(cfg.root);

  for (std::size_t vi = 0; vi < videos.size(); ++vi) {
    const auto layout = flowtext::io::DatasetLayout::open(videos[vi]);
    int lo = 1, hi = layout.n;
    if (!frame_range.empty()) {
      const auto colon = frame_range.find(':');
      try {
        if (colon == std::string::npos) {
          lo = hi = std::stoi(frame_range);
        } else {
          lo = std::stoi(frame_range.substr(0, colon));
          hi = std::stoi(frame_range.substr(colon + 1));
        }
      } catch (const std::exception&) {
        throw flowtext::ContractError("cannot parse --frames range: " +
                                      frame_range);
      }
    }
    if (lo < 1 || hi > layout.n || lo > hi)
      throw flowtext::ContractError(
          "--frames range outside video: " + std::to_string(lo) + ":" +
          std::to_string(hi) + " (video has " + std::to_string(layout.n) +
          " frames)");

    const auto job = load_job(layout, cfg, flowtext::mix_seed(cfg.rng_seed, vi));
    auto result = flowtext::run(job);
    if (result.report.render_failed)
      throw flowtext::RenderError("seed render failed, nothing to preview");

    const fs::path out_dir = (single ? fs::path(cfg.out)
                                     : fs::path(cfg.out) / videos[vi].filename()) /
                             "preview_out";
    fs::create_directories(out_dir);

    const auto flows_fwd = layout.read_flows_fwd();
    for (int k = lo - 1; k <= hi - 1; ++k) {
      flowtext::Image img = result.frames[k];
      // flow glyphs on a sparse grid
      if (k + 1 < layout.n) {
        const auto& f = flows_fwd[k];
        for (int y = 8; y < img.height(); y += 16) {
          for (int x = 8; x < img.width(); x += 16) {
            const flowtext::Vec2 p(x, y);
            const flowtext::Vec2 d(f.u.at(x, y), f.v.at(x, y));
            draw_line(img, p, p + d, 0.2f, 0.8f, 0.9f);
          }
        }
      }
      bool any_lost = false;
      for (std::size_t ti = 0; ti < result.tracks.size(); ++ti) {
        const auto& fe = result.tracks[ti].frames[k];
        if (fe.lost) {
          any_lost = true;
          continue;
        }
        for (int e = 0; e < 4; ++e)
          draw_line(img, fe.quad[e], fe.quad[(e + 1) % 4], 0.1f, 0.95f, 0.2f);
        for (const auto& sp : result.sample_points[ti][k])
          draw_dot(img, sp, 0.95f, 0.15f, 0.1f);
      }
      if (any_lost) stamp_text(img, "LOST", 8, 8, 2, 0.95f, 0.1f, 0.1f);
      flowtext::io::write_frame(img,
                                out_dir / flowtext::io::frame_file_name(k, ".png"));
    }
  }
  return 0;
}

// --------------------------------------------------------- gen-testdata --

flowtext::scene::SceneSpec parse_scene_spec(const fs::path& path) {
  std::ifstream in(path);
  if (!in)
    throw flowtext::ContractError("cannot open scene spec: " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw flowtext::FormatError("invalid scene spec JSON: " +
                                std::string(e.what()));
  }

  flowtext::scene::SceneSpec spec;
  spec.n = doc.value("n", 10);
  spec.width = doc.value("width", 320);
  spec.height = doc.value("height", 240);
  spec.noise_sigma = doc.value("noise_sigma", 0.0);
  spec.outlier_fraction = doc.value("outlier_fraction", 0.0);
  spec.seed_index = doc.value("seed_index", 0);
  spec.rng_seed = doc.value("rng_seed", 0);

  if (doc.contains("motion")) {
    const auto& m = doc["motion"];
    const std::string type = m.value("type", "static");
    using Kind = flowtext::scene::MotionSpec::Kind;
    if (type == "static") {
      spec.motion.kind = Kind::kStatic;
    } else if (type == "translate") {
      spec.motion.kind = Kind::kTranslate;
      spec.motion.vx = m.value("vx", 0.0);
      spec.motion.vy = m.value("vy", 0.0);
    } else if (type == "rotate") {
      spec.motion.kind = Kind::kRotate;
      spec.motion.omega_deg = m.value("omega_deg", 0.0);
    } else if (type == "perspective_sweep") {
      spec.motion.kind = Kind::kPerspectiveSweep;
      if (m.contains("rates")) {
        const auto rates = m["rates"].get<std::vector<double>>();
        if (rates.size() != 8)
          throw flowtext::ContractError(
              "perspective_sweep rates must have 8 entries");
        std::copy(rates.begin(), rates.end(), spec.motion.sweep_rates.begin());
      }
    } else {
      throw flowtext::ContractError("unknown motion type: " + type);
    }
  }

  if (doc.contains("entity")) {
    const auto q = doc["entity"].get<std::vector<std::vector<double>>>();
    if (q.size() != 4)
      throw flowtext::ContractError("entity quad must have 4 corners");
    for (int i = 0; i < 4; ++i)
      spec.entity_quad[i] = flowtext::Vec2(q[i].at(0), q[i].at(1));
  } else {
    spec.entity_quad = flowtext::scene::SceneSpec::centered_rect(
        spec.width, spec.height, 0.6 * spec.width, 0.6 * spec.height);
  }

  if (doc.contains("occluder")) {
    const auto& o = doc["occluder"];
    flowtext::scene::OccluderSpec occ;
    const auto rect = o.at("rect").get<std::vector<double>>();
    if (rect.size() != 4)
      throw flowtext::ContractError("occluder rect must be [x0,y0,x1,y1]");
    occ.x0 = rect[0];
    occ.y0 = rect[1];
    occ.x1 = rect[2];
    occ.y1 = rect[3];
    for (int f : o.at("hidden_frames").get<std::vector<int>>())
      occ.hidden_frames.insert(f);
    occ.occluder_id = o.value("id", 2);
    spec.occluder = occ;
  }
  return spec;
}

int cmd_gen_testdata(const fs::path& spec_path, const fs::path& out_dir) {
  const auto spec = parse_scene_spec(spec_path);
  const auto scene = flowtext::scene::generate(spec);

  const flowtext::io::DatasetLayout layout{out_dir, spec.n, spec.width,
                                           spec.height};
  for (int i = 0; i < spec.n; ++i) {
    flowtext::io::write_frame(scene.frames[i], layout.frame_path(i));
    flowtext::io::write_segm(scene.segms[i], layout.segm_path(i));
    flowtext::io::write_depth(scene.depth, layout.depth_path(i));
  }
  for (int i = 0; i + 1 < spec.n; ++i) {
    flowtext::io::write_flo(scene.flows_fwd[i], layout.flow_fwd_path(i));
    flowtext::io::write_flo(scene.flows_bwd[i], layout.flow_bwd_path(i));
  }

  ordered_json truth;
  truth["n"] = spec.n;
  truth["width"] = spec.width;
  truth["height"] = spec.height;
  truth["seed_frame"] = spec.seed_index + 1;
  truth["entity_id"] = scene.entity_id;
  truth["homographies"] = ordered_json::array();
  for (const auto& h : scene.truth) {
    ordered_json row = ordered_json::array();
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) row.push_back(h.matrix()(r, c));
    truth["homographies"].push_back(row);
  }
  std::ofstream tout(out_dir / "truth.json");
  tout << truth.dump(2) << "\n";

  std::ofstream words(out_dir / "words.txt");
  for (const char* w : {"ember", "FLOW", "signal", "42nd", "Vista"})
    words << w << "\n";

  std::cout << "wrote " << spec.n << " frames to " << out_dir.string() << "\n";
  return 0;
}

// ------------------------------------------------------------- validate --

int cmd_validate(const fs::path& root) {
  const auto findings = flowtext::io::validate_layout(root);
  if (findings.empty()) {
    const auto layout = flowtext::io::DatasetLayout::open(root);
    std::cout << "OK: " << layout.n << " frames, " << layout.width << "x"
              << layout.height << ", flow pairs complete\n";
    return 0;
  }
  std::cerr << findings.size() << " finding(s):\n";
  std::cerr << "  file | expected | actual | message\n";
  for (const auto& f : findings) {
    std::cerr << "  " << f.file << " | " << (f.expected.empty() ? "-" : f.expected)
              << " | " << (f.actual.empty() ? "-" : f.actual) << " | "
              << f.message << "\n";
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "flowtext: paints text onto one video frame and propagates it to all "
      "others along optical flow, emitting frames plus tracking annotations"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path;
  std::string frame_range;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    sub->add_option("--root", cfg.root, "dataset root directory");
    sub->add_option("--out", cfg.out, "output directory");
    sub->add_option("--words", cfg.words, "words file, one candidate per line");
    sub->add_option("--num-texts", cfg.num_texts,
                    "texts per video (default 3, range 1..64)")
        ->check(CLI::Range(1, 64));
    sub->add_option("--seed-frame", cfg.seed_frame,
                    "1-based seed frame (default: random draw)");
    sub->add_option("--min-samples", cfg.min_samples,
                    "N, minimum sampling points (default 32, >= 4)")
        ->check(CLI::Range(4, 1 << 20));
    sub->add_option("--alpha", cfg.alpha,
                    "motion blur strength (default 0.25, >= 0)")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--stride", cfg.stride,
                    "text point grid stride (default 2, >= 1)")
        ->check(CLI::Range(1, 64));
    sub->add_option("--rng-seed", cfg.rng_seed, "RNG seed (default 0)");
    sub->add_option("--jobs", cfg.jobs,
                    "parallel videos (default 1, range 1..256)")
        ->check(CLI::Range(1, 256));
  };

  CLI::App* synth = app.add_subcommand(
      "synth", "synthesize composited frames and annotations");
  add_common(synth);

  CLI::App* preview = app.add_subcommand(
      "preview", "render frames with quads, sample points and flow overlays");
  add_common(preview);
  preview->add_option("--frames", frame_range,
                      "1-based inclusive frame range a:b (default: all)");

  std::string spec_path, gen_out;
  CLI::App* gen = app.add_subcommand(
      "gen-testdata", "generate a synthetic dataset with known motion");
  gen->add_option("spec", spec_path, "scene spec JSON file")->required();
  gen->add_option("out", gen_out, "output dataset directory")->required();

  std::string validate_root;
  CLI::App* validate = app.add_subcommand(
      "validate", "check a dataset layout against the directory contract");
  validate->add_option("root", validate_root, "dataset root directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed() || preview->parsed()) {
      CLI::App* sub = synth->parsed() ? synth : preview;
      if (!config_path.empty()) {
        // flags override config: reapply any explicitly passed options
        CliConfig file_cfg;
        apply_config_file(config_path, file_cfg);
        CliConfig merged = file_cfg;
        if (sub->count("--root")) merged.root = cfg.root;
        if (sub->count("--out")) merged.out = cfg.out;
        if (sub->count("--words")) merged.words = cfg.words;
        if (sub->count("--num-texts")) merged.num_texts = cfg.num_texts;
        if (sub->count("--seed-frame")) merged.seed_frame = cfg.seed_frame;
        if (sub->count("--min-samples")) merged.min_samples = cfg.min_samples;
        if (sub->count("--alpha")) merged.alpha = cfg.alpha;
        if (sub->count("--stride")) merged.stride = cfg.stride;
        if (sub->count("--rng-seed")) merged.rng_seed = cfg.rng_seed;
        if (sub->count("--jobs")) merged.jobs = cfg.jobs;
        cfg = merged;
      }
      if (cfg.root.empty() || cfg.out.empty() || cfg.words.empty())
        throw flowtext::ContractError(
            "--root, --out and --words are required (flag or config)");
      if (!fs::exists(cfg.root))
        throw flowtext::ContractError("root does not exist: " + cfg.root);
      if (!fs::exists(cfg.words))
        throw flowtext::ContractError("words file does not exist: " + cfg.words);
      flowtext::log::info(
          "kernel backend: " +
          flowtext::kernels::backend_name(flowtext::kernels::active_backend()));
      return synth->parsed() ? cmd_synth(cfg) : cmd_preview(cfg, frame_range);
    }
    if (gen->parsed()) return cmd_gen_testdata(spec_path, gen_out);
    if (validate->parsed()) return cmd_validate(validate_root);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
