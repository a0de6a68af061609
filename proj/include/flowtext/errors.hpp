#pragma once

#include <stdexcept>
#include <string>

namespace flowtext {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed bytes: bad magic, truncated file, wrong channel layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Well-formed file carrying invalid values (NaN flow, non-positive depth).
class ContentError : public Error {
 public:
  using Error::Error;
};

/// Violation of an input contract: mismatched dimensions, missing files,
/// inconsistent sequence lengths.
class ContractError : public Error {
 public:
  using Error::Error;
};

/// Query outside the valid coordinate domain.
class OutOfBoundsError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

/// Fewer correspondences than the estimator needs.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// Singular matrix or rank-deficient estimation problem.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

/// Homogeneous coordinate collapsed to zero under a projective map.
class PointAtInfinityError : public Error {
 public:
  using Error::Error;
};

/// RANSAC could not assemble a consensus of the required size.
class FitFailedError : public Error {
 public:
  using Error::Error;
};

/// No eligible region for text placement.
class PlacementError : public Error {
 public:
  using Error::Error;
};

/// Seed-frame rendering produced no placed text at all.
class RenderError : public Error {
 public:
  using Error::Error;
};

class UnsupportedCharacterError : public Error {
 public:
  using Error::Error;
};

}  // namespace flowtext
