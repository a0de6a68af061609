#pragma once

#include <random>
#include <span>
#include <vector>

#include "flowtext/errors.hpp"
#include "flowtext/types.hpp"

namespace flowtext {

/// Nonsingular 3x3 projective transform over pixel coordinates.
/// Canonical form: divided by m22 when |m22| > 1e-12, otherwise by the
/// Frobenius norm, so equal transforms compare equal elementwise.
class Homography {
 public:
  /// Identity transform.
  Homography();

  /// Wraps and normalizes a matrix. Throws DegenerateError when singular.
  static Homography from_matrix(const Mat3& m);

  static Homography translation(double tx, double ty);

  const Mat3& matrix() const { return m_; }

  /// Maps a point through the transform.
  /// Throws PointAtInfinityError when the homogeneous w collapses.
  Vec2 apply(const Vec2& p) const;

  /// Group inverse. Throws DegenerateError (cannot happen for a value
  /// that passed construction, but kept for safety on ill-conditioned
  /// matrices).
  Homography inverse() const;

  /// this ∘ inner: apply(inner) first, then this.
  Homography compose(const Homography& inner) const;

 private:
  explicit Homography(const Mat3& normalized) : m_(normalized) {}
  Mat3 m_;
};

Vec2 apply_homography(const Homography& h, const Vec2& p);
Homography invert(const Homography& h);

/// Point pair: src in the source frame, dst in the destination frame of
/// the transform being estimated.
struct Correspondence {
  Vec2 src;
  Vec2 dst;
};

struct RansacParams {
  double inlier_threshold = 2.0;  // px, symmetric reprojection distance
  int max_iterations = 2000;
  double confidence = 0.995;
  // Consensus floor. <= 0 resolves to max(8, n/4) at call time.
  int min_inliers = 0;

  void validate() const;
};

/// Least-squares homography from >= 4 correspondences via the direct
/// linear transform with Hartley normalization (translate to centroid,
/// scale mean distance to sqrt(2)). Exact inputs are recovered to
/// < 1e-6 px reprojection error.
/// Throws InsufficientDataError (< 4 pairs) or DegenerateError
/// (rank-deficient configuration).
Homography estimate_dlt(std::span<const Correspondence> corrs);

struct RansacResult {
  Homography h;
  std::vector<std::uint8_t> inliers;  // parallel to the input span
  int inlier_count = 0;
};

/// Robust fit: repeated 4-point DLT hypotheses scored by symmetric
/// reprojection distance (max of forward and backward), best consensus
/// refit on all its inliers. Adaptive early exit at the standard
/// (1 - confidence) bound. Deterministic for a given rng state.
/// Throws FitFailedError when no consensus reaches min_inliers.
RansacResult ransac_homography(std::span<const Correspondence> corrs,
                               const RansacParams& params,
                               std::mt19937_64& rng);

}  // namespace flowtext
