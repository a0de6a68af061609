#include "flowtext/scene_gen.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "flowtext/errors.hpp"

namespace flowtext::scene {

namespace {

Mat3 motion_matrix(const MotionSpec& m, int frame, int width, int height) {
  const double i = static_cast<double>(frame);
  switch (m.kind) {
    case MotionSpec::Kind::kStatic:
      return Mat3::Identity();
    case MotionSpec::Kind::kTranslate: {
      Mat3 t = Mat3::Identity();
      t(0, 2) = i * m.vx;
      t(1, 2) = i * m.vy;
      return t;
    }
    case MotionSpec::Kind::kRotate: {
      const double cx = 0.5 * (width - 1);
      const double cy = 0.5 * (height - 1);
      const double a = i * m.omega_deg * M_PI / 180.0;
      const double c = std::cos(a), s = std::sin(a);
      Mat3 r;
      r << c, -s, cx - c * cx + s * cy,
           s,  c, cy - s * cx - c * cy,
           0,  0, 1;
      return r;
    }
    case MotionSpec::Kind::kPerspectiveSweep: {
      // Perspective entries are expressed around the frame center so a
      // small m20/m21 rate bends the image without shooting the border
      // off to infinity.
      const double cx = 0.5 * (width - 1);
      const double cy = 0.5 * (height - 1);
      Mat3 center = Mat3::Identity();
      center(0, 2) = -cx;
      center(1, 2) = -cy;
      Mat3 uncenter = Mat3::Identity();
      uncenter(0, 2) = cx;
      uncenter(1, 2) = cy;
      Mat3 core = Mat3::Identity();
      const auto& r = m.sweep_rates;
      core(0, 0) += i * r[0];
      core(0, 1) += i * r[1];
      core(0, 2) += i * r[2];
      core(1, 0) += i * r[3];
      core(1, 1) += i * r[4];
      core(1, 2) += i * r[5];
      core(2, 0) += i * r[6];
      core(2, 1) += i * r[7];
      return uncenter * core * center;
    }
  }
  throw ContractError("unknown motion kind");
}

Vec2 apply_mat(const Mat3& m, const Vec2& p) {
  const double w = m(2, 0) * p.x() + m(2, 1) * p.y() + m(2, 2);
  return {(m(0, 0) * p.x() + m(0, 1) * p.y() + m(0, 2)) / w,
          (m(1, 0) * p.x() + m(1, 1) * p.y() + m(1, 2)) / w};
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

float background_value(double x, double y, int channel) {
  switch (channel) {
    case 0: return static_cast<float>(0.45 + 0.25 * std::sin(x * 0.05));
    case 1: return static_cast<float>(0.45 + 0.25 * std::sin(y * 0.045 + 1.3));
    default:
      return static_cast<float>(0.45 + 0.25 * std::sin((x + y) * 0.03 + 2.1));
  }
}

}  // namespace

Quad SceneSpec::centered_rect(int width, int height, double w, double h) {
  const double cx = 0.5 * (width - 1);
  const double cy = 0.5 * (height - 1);
  return {Vec2(cx - w / 2, cy - h / 2), Vec2(cx + w / 2, cy - h / 2),
          Vec2(cx + w / 2, cy + h / 2), Vec2(cx - w / 2, cy + h / 2)};
}

Scene generate(const SceneSpec& spec) {
  if (spec.n < 1) throw ContractError("scene needs at least one frame");
  if (spec.width < 2 || spec.height < 2)
    throw ContractError("scene needs at least 2x2 pixels");
  if (spec.seed_index < 0 || spec.seed_index >= spec.n)
    throw ContractError("scene seed index out of range");

  const int w = spec.width, h = spec.height, n = spec.n;
  std::mt19937_64 rng(spec.rng_seed);

  std::vector<Mat3> pose(n);
  std::vector<Mat3> pose_inv(n);
  for (int i = 0; i < n; ++i) {
    pose[i] = motion_matrix(spec.motion, i, w, h);
    pose_inv[i] = pose[i].inverse();
  }

  Scene out;
  out.entity_id = 1;

  // plane-anchored junk-flow patches (4x4 blocks in reference coords)
  Plane<std::uint8_t> bad(w, h, 0);
  if (spec.outlier_fraction > 0.0) {
    const std::size_t want = static_cast<std::size_t>(
        spec.outlier_fraction * static_cast<double>(w) * h);
    std::uniform_int_distribution<int> px(0, w - 1), py(0, h - 1);
    std::size_t covered = 0;
    while (covered < want) {
      const int bx = px(rng) & ~3;
      const int by = py(rng) & ~3;
      for (int y = by; y < std::min(by + 4, h); ++y)
        for (int x = bx; x < std::min(bx + 4, w); ++x) {
          if (!bad.at(x, y)) {
            bad.at(x, y) = 1;
            ++covered;
          }
        }
    }
  }

  auto ref_is_bad = [&](const Vec2& ref) {
    const int rx = static_cast<int>(std::lround(ref.x()));
    const int ry = static_cast<int>(std::lround(ref.y()));
    return bad.in_bounds(rx, ry) && bad.at(rx, ry) != 0;
  };

  std::uniform_real_distribution<double> junk(-20.0, 20.0);
  std::normal_distribution<double> noise(0.0, spec.noise_sigma);

  auto make_flow = [&](const Mat3& step_fwd, const Mat3& from_inv) {
    FlowField f(w, h);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const Vec2 p(static_cast<double>(x), static_cast<double>(y));
        double du, dv;
        if (spec.outlier_fraction > 0.0 && ref_is_bad(apply_mat(from_inv, p))) {
          du = junk(rng);
          dv = junk(rng);
        } else {
          const Vec2 q = apply_mat(step_fwd, p);
          du = q.x() - p.x();
          dv = q.y() - p.y();
        }
        if (spec.noise_sigma > 0.0) {
          du += noise(rng);
          dv += noise(rng);
        }
        f.u.at(x, y) = static_cast<float>(du);
        f.v.at(x, y) = static_cast<float>(dv);
      }
    }
    return f;
  };

  out.flows_fwd.reserve(n - 1);
  out.flows_bwd.reserve(n - 1);
  for (int i = 0; i + 1 < n; ++i) {
    const Mat3 step_fwd = pose[i + 1] * pose_inv[i];   // frame i -> i+1
    const Mat3 step_bwd = pose[i] * pose_inv[i + 1];   // frame i+1 -> i
    out.flows_fwd.push_back(make_flow(step_fwd, pose_inv[i]));
    out.flows_bwd.push_back(make_flow(step_bwd, pose_inv[i + 1]));
  }

  out.segms.reserve(n);
  out.frames.reserve(n);
  for (int i = 0; i < n; ++i) {
    SegmentationMap segm(w, h);
    Image frame(w, h);
    const bool occluded =
        spec.occluder && spec.occluder->hidden_frames.count(i) > 0;
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const Vec2 p(static_cast<double>(x), static_cast<double>(y));
        const Vec2 ref = apply_mat(pose_inv[i], p);
        const bool on_entity = inside_quad(spec.entity_quad, ref);
        std::uint16_t id = on_entity ? out.entity_id : 0;
        if (occluded && p.x() >= spec.occluder->x0 &&
            p.x() <= spec.occluder->x1 && p.y() >= spec.occluder->y0 &&
            p.y() <= spec.occluder->y1)
          id = spec.occluder->occluder_id;
        segm.ids.at(x, y) = id;

        if (occluded && id == spec.occluder->occluder_id) {
          frame.r.at(x, y) = 0.15f;
          frame.g.at(x, y) = 0.15f;
          frame.b.at(x, y) = 0.18f;
        } else if (on_entity) {
          frame.r.at(x, y) = 0.72f;
          frame.g.at(x, y) = 0.70f;
          frame.b.at(x, y) = 0.66f;
        } else {
          frame.r.at(x, y) = background_value(ref.x(), ref.y(), 0);
          frame.g.at(x, y) = background_value(ref.x(), ref.y(), 1);
          frame.b.at(x, y) = background_value(ref.x(), ref.y(), 2);
        }
      }
    }
    out.segms.push_back(std::move(segm));
    out.frames.push_back(std::move(frame));
  }

  out.depth = DepthMap(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      out.depth.depth.at(x, y) =
          1.0f + 0.04f * static_cast<float>(x) / static_cast<float>(w);

  out.truth.reserve(n);
  for (int i = 0; i < n; ++i) {
    out.truth.push_back(
        Homography::from_matrix(pose[i] * pose_inv[spec.seed_index]));
  }
  return out;
}

}  // namespace flowtext::scene
