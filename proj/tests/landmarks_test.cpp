#include "gcrf/landmarks.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "gcrf/errors.hpp"

namespace gcrf {
namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

LandmarkFrame random_shape(std::mt19937_64& rng, Index k = kDefaultLandmarkCount) {
  std::uniform_real_distribution<double> coord(50.0, 250.0);
  LandmarkFrame f{0, Shape(k, 2)};
  for (Index i = 0; i < k; ++i) f.points.row(i) << coord(rng), coord(rng);
  return f;
}

LandmarkFrame transformed(const LandmarkFrame& f, const SimilarityTransform& t) {
  return {f.frame_id, t.apply(f.points)};
}

TEST(SimilarityAlign, SelfAlignmentIsIdentity) {
  std::mt19937_64 rng(1);
  const LandmarkFrame ref = random_shape(rng);
  const Alignment a = similarity_align(ref, ref);
  EXPECT_NEAR(a.transform.scale, 1.0, 1e-12);
  EXPECT_LT((a.transform.rotation - Eigen::Matrix2d::Identity()).norm(), 1e-12);
  EXPECT_LT(a.transform.translation.norm(), 1e-9);
  EXPECT_LT(a.residual, 1e-16 * ref.points.squaredNorm());
}

TEST(SimilarityAlign, InvertsRotationAndScale) {
  std::mt19937_64 rng(2);
  const LandmarkFrame ref = random_shape(rng);
  const auto forward = SimilarityTransform::from_angle(2.0, 90.0 * kDeg, {15.0, -40.0});
  const Alignment a = similarity_align(transformed(ref, forward), ref);
  EXPECT_NEAR(a.transform.scale, 0.5, 1e-12);
  EXPECT_LT((a.aligned.points - ref.points).cwiseAbs().maxCoeff(), 1e-8);
  const SimilarityTransform inv = forward.inverse();
  EXPECT_LT((a.transform.rotation - inv.rotation).norm(), 1e-12);
  EXPECT_LT((a.transform.translation - inv.translation).norm(), 1e-8);
}

TEST(SimilarityAlign, RotationIsProper) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Alignment a = similarity_align(random_shape(rng, 10), random_shape(rng, 10));
    const Eigen::Matrix2d& r = a.transform.rotation;
    EXPECT_LT((r.transpose() * r - Eigen::Matrix2d::Identity()).norm(), 1e-10);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
    EXPECT_GT(a.transform.scale, 0.0);
  }
}

TEST(SimilarityAlign, ReflectionCannotBeUndone) {
  std::mt19937_64 rng(4);
  const LandmarkFrame ref = random_shape(rng, 12);
  LandmarkFrame mirrored = ref;
  mirrored.points.col(0) *= -1.0;
  // Allowing the reflection recovers the reference exactly...
  LandmarkFrame unmirrored = mirrored;
  unmirrored.points.col(0) *= -1.0;
  EXPECT_LT(similarity_align(unmirrored, ref).residual, 1e-16 * ref.points.squaredNorm());
  // ...proper rotations alone cannot.
  EXPECT_GT(similarity_align(mirrored, ref).residual, 1.0);
}

TEST(SimilarityAlign, OptimalAgainstPerturbations) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const LandmarkFrame frame = random_shape(rng, 15);
    const LandmarkFrame ref = random_shape(rng, 15);
    const Alignment best = similarity_align(frame, ref);
    const double angle = std::atan2(best.transform.rotation(1, 0), best.transform.rotation(0, 0));
    for (double ds : {-0.01, 0.0, 0.01}) {
      for (double da : {-1.0 * kDeg, 0.0, 1.0 * kDeg}) {
        if (ds == 0.0 && da == 0.0) continue;
        const auto t = SimilarityTransform::from_angle(best.transform.scale * (1.0 + ds),
                                                       angle + da, Eigen::Vector2d::Zero());
        // Best translation for the perturbed scale/rotation: match centroids.
        Shape moved = t.apply(frame.points);
        const Eigen::RowVector2d shift = ref.points.colwise().mean() - moved.colwise().mean();
        moved.rowwise() += shift;
        EXPECT_GE(alignment_residual(moved, ref.points), best.residual);
      }
    }
  }
}

TEST(SimilarityAlign, Idempotent) {
  std::mt19937_64 rng(6);
  const LandmarkFrame ref = random_shape(rng);
  const Alignment once = similarity_align(random_shape(rng), ref);
  const Alignment twice = similarity_align(once.aligned, ref);
  EXPECT_NEAR(twice.transform.scale, 1.0, 1e-8);
  EXPECT_LT((twice.transform.rotation - Eigen::Matrix2d::Identity()).norm(), 1e-8);
  EXPECT_LT(twice.transform.translation.norm(), 1e-8);
}

TEST(SimilarityAlign, Errors) {
  std::mt19937_64 rng(7);
  const LandmarkFrame ref = random_shape(rng, 5);
  LandmarkFrame collapsed{0, Shape::Constant(5, 2, 3.0)};
  EXPECT_THROW(similarity_align(collapsed, ref), InvalidArgument);
  EXPECT_THROW(similarity_align(random_shape(rng, 4), ref), DimensionMismatch);
}

TEST(FeatureMatrix, RowLengthIsTwiceThePointCount) {
  std::mt19937_64 rng(8);
  const LandmarkFrame ref = random_shape(rng);
  std::vector<LandmarkFrame> seq{random_shape(rng), random_shape(rng), random_shape(rng)};
  const Matrix f = build_feature_matrix(seq, ref);
  EXPECT_EQ(f.rows(), 3);
  EXPECT_EQ(f.cols(), 136);
}

TEST(FeatureMatrix, ReferenceFrameFlattensToItself) {
  std::mt19937_64 rng(9);
  const LandmarkFrame ref = random_shape(rng, 4);
  const std::vector<LandmarkFrame> seq{ref};
  const Matrix f = build_feature_matrix(seq, ref);
  for (Index j = 0; j < 4; ++j) {
    EXPECT_NEAR(f(0, 2 * j), ref.points(j, 0), 1e-9);
    EXPECT_NEAR(f(0, 2 * j + 1), ref.points(j, 1), 1e-9);
  }
}

TEST(FeatureMatrix, InvariantToGlobalSimilarity) {
  std::mt19937_64 rng(10);
  const LandmarkFrame ref = random_shape(rng);
  std::vector<LandmarkFrame> seq, moved;
  const auto t = SimilarityTransform::from_angle(1.7, 30.0 * kDeg, {-12.0, 80.0});
  for (int i = 0; i < 6; ++i) {
    seq.push_back(random_shape(rng));
    moved.push_back(transformed(seq.back(), t));
  }
  const Matrix a = build_feature_matrix(seq, ref);
  const Matrix b = build_feature_matrix(moved, ref);
  EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(FeatureMatrix, InconsistentPointCounts) {
  std::mt19937_64 rng(11);
  const LandmarkFrame ref = random_shape(rng, 6);
  const std::vector<LandmarkFrame> seq{random_shape(rng, 6), random_shape(rng, 5)};
  EXPECT_THROW(build_feature_matrix(seq, ref), DimensionMismatch);
}

TEST(MeanReference, AveragesAlignedFrames) {
  std::mt19937_64 rng(12);
  const LandmarkFrame base = random_shape(rng, 8);
  std::vector<LandmarkFrame> seq;
  for (int i = 0; i < 4; ++i) {
    seq.push_back(transformed(base, SimilarityTransform::from_angle(1.0 + 0.1 * i, 0.2 * i,
                                                                    {3.0 * i, -2.0 * i})));
  }
  const LandmarkFrame mean = mean_reference(seq);
  EXPECT_LT((mean.points - seq.front().points).cwiseAbs().maxCoeff(), 1e-8);
}

std::string landmark_row(std::int64_t id, int points, double offset) {
  std::ostringstream row;
  row << id;
  for (int k = 0; k < points; ++k) row << ',' << (k + offset) << ',' << (2 * k - offset);
  return row.str();
}

TEST(LandmarkCsv, ParsesFrames) {
  std::stringstream in;
  for (int i = 0; i < 3; ++i) in << landmark_row(i + 10, 68, 0.5 * i) << "\n";
  const auto frames = parse_landmark_csv(in);
  ASSERT_EQ(frames.size(), 3u);
  EXPECT_EQ(frames[1].frame_id, 11);
  EXPECT_EQ(frames[2].size(), 68);
  EXPECT_DOUBLE_EQ(frames[2].points(3, 0), 4.0);
  EXPECT_DOUBLE_EQ(frames[2].points(3, 1), 5.0);
}

TEST(LandmarkCsv, HeaderAndBlankLines) {
  std::stringstream in;
  in << "frame_id,x1,y1,x2,y2\n\n1, 0.5, 1.5, 2, 3\r\n2,1e1,-2,+3,4\n";
  const auto frames = parse_landmark_csv(in);
  ASSERT_EQ(frames.size(), 2u);
  EXPECT_DOUBLE_EQ(frames[0].points(0, 1), 1.5);
  EXPECT_DOUBLE_EQ(frames[1].points(0, 0), 10.0);
}

TEST(LandmarkCsv, ShortRowNamesLine) {
  std::stringstream in;
  in << landmark_row(0, 68, 0) << "\n"
     << landmark_row(1, 68, 0) << "\n"
     << landmark_row(2, 68, 0) << ",7\n";  // 138 columns
  try {
    parse_landmark_csv(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  std::stringstream shorter;
  std::string row = landmark_row(1, 68, 0);
  shorter << landmark_row(0, 68, 0) << "\n" << row.substr(0, row.rfind(',')) << "\n";
  EXPECT_THROW(parse_landmark_csv(shorter), ParseError);
}

TEST(LandmarkCsv, NonNumericCell) {
  std::stringstream in;
  in << "0,1,2,3,4\n1,1,abc,3,4\n";
  try {
    parse_landmark_csv(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::stringstream id;
  id << "x,1,2,3,4\n";
  EXPECT_THROW(parse_landmark_csv(id), ParseError);
}

TEST(LandmarkCsv, EmptyInputIsEmptySequence) {
  std::stringstream in;
  EXPECT_TRUE(parse_landmark_csv(in).empty());
  EXPECT_THROW(load_landmark_csv("/nonexistent/landmarks.csv"), Error);
}

}  // namespace
}  // namespace gcrf
