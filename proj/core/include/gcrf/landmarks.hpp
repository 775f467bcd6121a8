#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "gcrf/types.hpp"

namespace gcrf {

inline constexpr Index kDefaultLandmarkCount = 68;

/// K×2 point coordinates, one landmark per row.
using Shape = Eigen::Matrix<double, Eigen::Dynamic, 2>;

struct LandmarkFrame {
  std::int64_t frame_id = 0;
  Shape points;

  Index size() const noexcept { return points.rows(); }
};

/// p ↦ scale·R·p + translation
struct SimilarityTransform {
  double scale = 1.0;
  Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();

  Shape apply(const Shape& points) const;
  SimilarityTransform inverse() const;
  static SimilarityTransform from_angle(double scale, double radians,
                                        const Eigen::Vector2d& translation);
};

struct Alignment {
  LandmarkFrame aligned;
  SimilarityTransform transform;
  double residual = 0.0;  // Σ‖aligned_i - reference_i‖²
};

/// Sum of squared point distances.
double alignment_residual(const Shape& a, const Shape& b);

/// Least-squares similarity registration of `frame` onto `reference`,
/// restricted to proper rotations (no mirroring). Throws DimensionMismatch
/// on differing point counts and InvalidArgument when the frame has zero
/// spread.
Alignment similarity_align(const LandmarkFrame& frame, const LandmarkFrame& reference);

/// Mean shape after aligning every frame to the first one.
LandmarkFrame mean_reference(std::span<const LandmarkFrame> sequence);

/// Aligns each frame to `reference` and flattens it into a row
/// (x₁, y₁, x₂, y₂, …); rows keep the sequence order.
Matrix build_feature_matrix(std::span<const LandmarkFrame> sequence,
                            const LandmarkFrame& reference);

/// Rows `frame_id, x1, y1, …, xK, yK`; an optional first line starting with
/// `frame_id` is a header. Errors carry the offending line number.
std::vector<LandmarkFrame> parse_landmark_csv(std::istream& in);
std::vector<LandmarkFrame> load_landmark_csv(const std::filesystem::path& path);

}  // namespace gcrf
