#include "gcrf/landmarks.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

#include "gcrf/errors.hpp"

namespace gcrf {

namespace {

// Spread below this (relative to the coordinate magnitude) has no defined scale.
constexpr double kDegenerateSpread = 1e-24;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

template <class T>
bool parse_number(std::string_view cell, T& out) {
  if (cell.empty()) return false;
  if (cell.front() == '+') cell.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out);
  return ec == std::errc() && ptr == cell.data() + cell.size();
}

}  // namespace

Shape SimilarityTransform::apply(const Shape& points) const {
  Shape out = scale * points * rotation.transpose();
  out.rowwise() += translation.transpose();
  return out;
}

SimilarityTransform SimilarityTransform::inverse() const {
  SimilarityTransform inv;
  inv.scale = 1.0 / scale;
  inv.rotation = rotation.transpose();
  inv.translation = -inv.scale * (inv.rotation * translation);
  return inv;
}

SimilarityTransform SimilarityTransform::from_angle(double scale, double radians,
                                                    const Eigen::Vector2d& translation) {
  SimilarityTransform t;
  t.scale = scale;
  t.rotation << std::cos(radians), -std::sin(radians), std::sin(radians), std::cos(radians);
  t.translation = translation;
  return t;
}

double alignment_residual(const Shape& a, const Shape& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("shapes have different point counts");
  return (a - b).squaredNorm();
}

Alignment similarity_align(const LandmarkFrame& frame, const LandmarkFrame& reference) {
  if (frame.size() != reference.size()) {
    throw DimensionMismatch("frame has " + std::to_string(frame.size()) +
                            " points, reference has " + std::to_string(reference.size()));
  }
  if (frame.size() < 2) throw InvalidArgument("alignment needs at least two points");

  const Eigen::RowVector2d frame_mean = frame.points.colwise().mean();
  const Eigen::RowVector2d ref_mean = reference.points.colwise().mean();
  const Shape a = frame.points.rowwise() - frame_mean;
  const Shape b = reference.points.rowwise() - ref_mean;

  const double spread = a.squaredNorm();
  const double magnitude = std::max(1.0, frame.points.cwiseAbs().maxCoeff());
  if (!(spread > kDegenerateSpread * magnitude * magnitude)) {
    throw InvalidArgument("degenerate frame: all points coincide, scale is undefined");
  }

  // With the 2×2 cross-covariance M = bᵀa, the best proper rotation maximizes
  // tr(R Mᵀ) = cos φ·(M₀₀ + M₁₁) + sin φ·(M₁₀ - M₀₁); the optimal scale is
  // the resulting trace over the frame's spread.
  const Eigen::Matrix2d m = b.transpose() * a;
  const double c = m(0, 0) + m(1, 1);
  const double s = m(1, 0) - m(0, 1);
  const double angle = std::atan2(s, c);
  const double scale = std::hypot(c, s) / spread;

  Alignment out;
  out.transform = SimilarityTransform::from_angle(scale, angle, Eigen::Vector2d::Zero());
  out.transform.translation =
      ref_mean.transpose() - scale * out.transform.rotation * frame_mean.transpose();
  out.aligned.frame_id = frame.frame_id;
  out.aligned.points = out.transform.apply(frame.points);
  out.residual = alignment_residual(out.aligned.points, reference.points);
  return out;
}

LandmarkFrame mean_reference(std::span<const LandmarkFrame> sequence) {
  if (sequence.empty()) throw InvalidArgument("mean_reference: empty sequence");
  const LandmarkFrame& anchor = sequence.front();
  LandmarkFrame mean{0, Shape::Zero(anchor.size(), 2)};
  for (const auto& frame : sequence) mean.points += similarity_align(frame, anchor).aligned.points;
  mean.points /= static_cast<double>(sequence.size());
  return mean;
}

Matrix build_feature_matrix(std::span<const LandmarkFrame> sequence,
                            const LandmarkFrame& reference) {
  if (sequence.empty()) throw InvalidArgument("build_feature_matrix: empty sequence");
  const Index k = reference.size();
  Matrix features(static_cast<Index>(sequence.size()), 2 * k);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    if (sequence[i].size() != k) {
      throw DimensionMismatch("frame " + std::to_string(i) + " has " +
                              std::to_string(sequence[i].size()) + " points, expected " +
                              std::to_string(k));
    }
    const Shape aligned = similarity_align(sequence[i], reference).aligned.points;
    for (Index j = 0; j < k; ++j) {
      features(static_cast<Index>(i), 2 * j) = aligned(j, 0);
      features(static_cast<Index>(i), 2 * j + 1) = aligned(j, 1);
    }
  }
  return features;
}

std::vector<LandmarkFrame> parse_landmark_csv(std::istream& in) {
  std::vector<LandmarkFrame> frames;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (frames.empty() && columns == 0 && cells.front() == "frame_id") {
      columns = cells.size();
      if (columns < 5 || columns % 2 == 0) {
        throw ParseError(line_no, "header must be frame_id followed by x,y pairs");
      }
      continue;
    }
    if (columns == 0) {
      columns = cells.size();
      if (columns < 5 || columns % 2 == 0) {
        throw ParseError(line_no, "expected frame_id plus at least two x,y pairs, got " +
                                      std::to_string(cells.size()) + " columns");
      }
    }
    if (cells.size() != columns) {
      throw ParseError(line_no, "expected " + std::to_string(columns) + " columns, got " +
                                    std::to_string(cells.size()));
    }

    LandmarkFrame frame;
    if (!parse_number(cells[0], frame.frame_id)) {
      throw ParseError(line_no, "frame_id '" + std::string(cells[0]) + "' is not an integer");
    }
    const Index points = static_cast<Index>((columns - 1) / 2);
    frame.points.resize(points, 2);
    for (Index j = 0; j < points; ++j) {
      for (int axis = 0; axis < 2; ++axis) {
        const auto& cell = cells[1 + 2 * j + axis];
        double value = 0.0;
        if (!parse_number(cell, value)) {
          throw ParseError(line_no, "non-numeric cell '" + std::string(cell) + "'");
        }
        if (!std::isfinite(value)) throw ParseError(line_no, "non-finite coordinate");
        frame.points(j, axis) = value;
      }
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

std::vector<LandmarkFrame> load_landmark_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open landmark file " + path.string());
  return parse_landmark_csv(in);
}

}  // namespace gcrf
