#include "flowtext/geometry.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <array>
#include <cmath>

namespace flowtext {

namespace {

constexpr double kWEpsilon = 1e-12;

Mat3 normalized_form(const Mat3& m) {
  const double m22 = m(2, 2);
  if (std::abs(m22) > 1e-12) return m / m22;
  return m / m.norm();
}

// Distance of c from the line through a and b, in pixels.
double point_line_distance(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 ab = b - a;
  const double len = ab.norm();
  if (len < 1e-12) return 0.0;  // coincident endpoints count as degenerate
  const double cross = ab.x() * (c.y() - a.y()) - ab.y() * (c.x() - a.x());
  return std::abs(cross) / len;
}

// Any 3 of the 4 sample points collinear within 1 px makes the minimal
// DLT system rank-deficient in practice; such samples are rejected.
bool sample_degenerate(const std::array<const Correspondence*, 4>& s) {
  static constexpr int kTriples[4][3] = {
      {0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (const auto& t : kTriples) {
    if (point_line_distance(s[t[0]]->src, s[t[1]]->src, s[t[2]]->src) < 1.0)
      return true;
    if (point_line_distance(s[t[0]]->dst, s[t[1]]->dst, s[t[2]]->dst) < 1.0)
      return true;
  }
  return false;
}

struct NormalizingTransform {
  Mat3 t;
  Mat3 t_inv;
};

// Hartley normalization: centroid to origin, mean distance sqrt(2).
NormalizingTransform hartley_transform(std::span<const Correspondence> corrs,
                                       bool use_dst) {
  Vec2 centroid = Vec2::Zero();
  for (const auto& c : corrs) centroid += use_dst ? c.dst : c.src;
  centroid /= static_cast<double>(corrs.size());

  double mean_dist = 0.0;
  for (const auto& c : corrs)
    mean_dist += ((use_dst ? c.dst : c.src) - centroid).norm();
  mean_dist /= static_cast<double>(corrs.size());

  const double scale =
      mean_dist > 1e-12 ? std::sqrt(2.0) / mean_dist : 1.0;

  NormalizingTransform out;
  out.t << scale, 0, -scale * centroid.x(),
           0, scale, -scale * centroid.y(),
           0, 0, 1;
  out.t_inv << 1.0 / scale, 0, centroid.x(),
               0, 1.0 / scale, centroid.y(),
               0, 0, 1;
  return out;
}

}  // namespace

Homography::Homography() : m_(Mat3::Identity()) {}

Homography Homography::from_matrix(const Mat3& m) {
  if (!m.allFinite()) throw DegenerateError("homography has non-finite entries");
  const double det = m.determinant();
  if (std::abs(det) < 1e-15 * std::max(1.0, std::pow(m.norm(), 3)))
    throw DegenerateError("homography matrix is singular");
  return Homography(normalized_form(m));
}

Homography Homography::translation(double tx, double ty) {
  Mat3 m = Mat3::Identity();
  m(0, 2) = tx;
  m(1, 2) = ty;
  return Homography(m);
}

Vec2 Homography::apply(const Vec2& p) const {
  const double w = m_(2, 0) * p.x() + m_(2, 1) * p.y() + m_(2, 2);
  if (std::abs(w) < kWEpsilon)
    throw PointAtInfinityError("point maps to infinity under homography");
  const double x = m_(0, 0) * p.x() + m_(0, 1) * p.y() + m_(0, 2);
  const double y = m_(1, 0) * p.x() + m_(1, 1) * p.y() + m_(1, 2);
  return {x / w, y / w};
}

Homography Homography::inverse() const {
  Mat3 inv;
  bool invertible = false;
  double det = 0.0;
  m_.computeInverseAndDetWithCheck(inv, det, invertible);
  if (!invertible) throw DegenerateError("homography not invertible");
  return Homography(normalized_form(inv));
}

Homography Homography::compose(const Homography& inner) const {
  return from_matrix(m_ * inner.m_);
}

Vec2 apply_homography(const Homography& h, const Vec2& p) {
  return h.apply(p);
}

Homography invert(const Homography& h) { return h.inverse(); }

void RansacParams::validate() const {
  if (inlier_threshold <= 0.0)
    throw ContractError("ransac inlier_threshold must be > 0");
  if (max_iterations < 1)
    throw ContractError("ransac max_iterations must be >= 1");
  if (confidence <= 0.0 || confidence >= 1.0)
    throw ContractError("ransac confidence must be in (0,1)");
}

Homography estimate_dlt(std::span<const Correspondence> corrs) {
  const std::size_t n = corrs.size();
  if (n < 4)
    throw InsufficientDataError("homography estimation needs >= 4 pairs");
  for (const auto& c : corrs) {
    if (!c.src.allFinite() || !c.dst.allFinite())
      throw ContractError("correspondence contains non-finite point");
  }

  const NormalizingTransform ts = hartley_transform(corrs, false);
  const NormalizingTransform td = hartley_transform(corrs, true);

  Eigen::MatrixXd a(2 * n, 9);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 s = ts.t * corrs[i].src.homogeneous();
    const Vec3 d = td.t * corrs[i].dst.homogeneous();
    const double sx = s.x(), sy = s.y();
    const double dx = d.x(), dy = d.y();
    a.row(2 * i) << -sx, -sy, -1, 0, 0, 0, dx * sx, dx * sy, dx;
    a.row(2 * i + 1) << 0, 0, 0, -sx, -sy, -1, dy * sx, dy * sy, dy;
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // sv(7) vanishing means rank < 8: the solution is not unique.
  if (sv(7) < 1e-9 * std::max(sv(0), 1e-300))
    throw DegenerateError("degenerate correspondence configuration");

  const Eigen::VectorXd hvec = svd.matrixV().col(8);
  Mat3 hn;
  hn << hvec(0), hvec(1), hvec(2),
        hvec(3), hvec(4), hvec(5),
        hvec(6), hvec(7), hvec(8);

  const Mat3 h = td.t_inv * hn * ts.t;
  return Homography::from_matrix(h);
}

namespace {

// Symmetric reprojection distance: max of forward and backward transfer.
// Points at infinity in either direction score as outliers.
bool is_inlier(const Homography& h, const Homography& h_inv,
               const Correspondence& c, double threshold) {
  try {
    const double fwd = (h.apply(c.src) - c.dst).norm();
    if (fwd >= threshold) return false;
    const double bwd = (h_inv.apply(c.dst) - c.src).norm();
    return bwd < threshold;
  } catch (const PointAtInfinityError&) {
    return false;
  }
}

int adaptive_iteration_bound(int inlier_count, std::size_t n,
                             double confidence, int max_iterations) {
  const double w = static_cast<double>(inlier_count) / static_cast<double>(n);
  const double p_good = std::pow(w, 4);
  if (p_good >= 1.0 - 1e-12) return 1;
  if (p_good <= 1e-12) return max_iterations;
  const double bound = std::log(1.0 - confidence) / std::log(1.0 - p_good);
  if (bound >= static_cast<double>(max_iterations)) return max_iterations;
  return static_cast<int>(std::ceil(bound));
}

}  // namespace

RansacResult ransac_homography(std::span<const Correspondence> corrs,
                               const RansacParams& params,
                               std::mt19937_64& rng) {
  params.validate();
  const std::size_t n = corrs.size();
  const int min_inliers =
      params.min_inliers > 0
          ? params.min_inliers
          : std::max<int>(8, static_cast<int>(n / 4));
  if (static_cast<int>(n) < std::max(4, min_inliers))
    throw FitFailedError("not enough correspondences for consensus");

  std::uniform_int_distribution<std::size_t> pick(0, n - 1);

  std::vector<std::uint8_t> best_mask;
  int best_count = 0;
  int iter_bound = params.max_iterations;

  for (int iter = 0; iter < iter_bound; ++iter) {
    // sample 4 distinct indices; retry degenerate configurations
    std::array<std::size_t, 4> idx{};
    std::array<const Correspondence*, 4> sample{};
    bool ok = false;
    for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
      for (int j = 0; j < 4; ++j) {
        bool unique = false;
        while (!unique) {
          idx[j] = pick(rng);
          unique = true;
          for (int k = 0; k < j; ++k)
            if (idx[k] == idx[j]) unique = false;
        }
      }
      for (int j = 0; j < 4; ++j) sample[j] = &corrs[idx[j]];
      ok = !sample_degenerate(sample);
    }
    if (!ok) continue;

    Homography h;
    try {
      const std::array<Correspondence, 4> minimal{
          *sample[0], *sample[1], *sample[2], *sample[3]};
      h = estimate_dlt(minimal);
    } catch (const Error&) {
      continue;
    }

    Homography h_inv;
    try {
      h_inv = h.inverse();
    } catch (const DegenerateError&) {
      continue;
    }

    std::vector<std::uint8_t> mask(n, 0);
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (is_inlier(h, h_inv, corrs[i], params.inlier_threshold)) {
        mask[i] = 1;
        ++count;
      }
    }

    if (count > best_count) {
      best_count = count;
      best_mask = std::move(mask);
      iter_bound =
          std::min(iter_bound,
                   adaptive_iteration_bound(count, n, params.confidence,
                                            params.max_iterations));
    }
  }

  if (best_count < std::max(4, min_inliers))
    throw FitFailedError("consensus below min_inliers");

  std::vector<Correspondence> inlier_set;
  inlier_set.reserve(best_count);
  for (std::size_t i = 0; i < n; ++i)
    if (best_mask[i]) inlier_set.push_back(corrs[i]);

  RansacResult out;
  out.h = estimate_dlt(inlier_set);
  out.inliers = std::move(best_mask);
  out.inlier_count = best_count;
  return out;
}

}  // namespace flowtext
