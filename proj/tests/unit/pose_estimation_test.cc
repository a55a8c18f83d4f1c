/*
 * Copyright 2026 The HullSLAM Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "hullslam/common/errors.h"
#include "hullslam/geometry/polygon.h"
#include "hullslam/pose_estimation/odometry.h"
#include "hullslam/pose_estimation/pso.h"
#include "hullslam/pose_estimation/registration.h"
#include "hullslam/pose_estimation/vertical.h"
#include "scene_util.h"

namespace hullslam {
namespace pose_estimation {
namespace {

using testing::BoxLandmark;
using testing::RandomStaticScene;
using testing::ToCurrent;

constexpr double kDeg = std::numbers::pi / 180.0;

Landmark PointLandmark(const Eigen::Vector3d& centre, ClassId class_id) {
  Landmark l;
  l.class_id = class_id;
  l.points = {centre};
  l.centre = centre;
  return l;
}

TEST(PairLandmarksTest, SingleCandidatePasses) {
  const std::vector<Landmark> prev{PointLandmark({5, 0, 0}, semantic::kCar)};
  const std::vector<Landmark> curr{PointLandmark({5.3, 0, 0}, semantic::kCar)};
  const auto pairs = PairLandmarks(prev, curr);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_NEAR(pairs[0].centre_distance, 0.3, 1e-12);
}

TEST(PairLandmarksTest, SemanticCriterionRejects) {
  const std::vector<Landmark> prev{PointLandmark({5, 0, 0}, semantic::kCar)};
  const std::vector<Landmark> curr{PointLandmark({5.1, 0, 0}, semantic::kPerson)};
  EXPECT_TRUE(PairLandmarks(prev, curr).empty());
}

TEST(PairLandmarksTest, EmptyFrames) {
  const std::vector<Landmark> one{PointLandmark({5, 0, 0}, semantic::kCar)};
  EXPECT_TRUE(PairLandmarks({}, one).empty());
  EXPECT_TRUE(PairLandmarks(one, {}).empty());
}

TEST(PairLandmarksTest, DistanceCriterionRejectsOutlier) {
  std::vector<Landmark> prev, curr;
  for (int i = 0; i < 10; ++i) {
    const Eigen::Vector3d c(10.0 * i, 5.0 * (i % 3), 0.0);
    prev.push_back(PointLandmark(c, semantic::kPole));
    curr.push_back(PointLandmark(c + Eigen::Vector3d(0.2, -0.1, 0), semantic::kPole));
  }
  prev.push_back(PointLandmark({200, 200, 0}, semantic::kPole));
  curr.push_back(PointLandmark({210, 200, 0}, semantic::kPole));
  // Mean candidate distance ~ (10 * 0.22 + 10) / 11 = 1.1 < 10.
  const auto pairs = PairLandmarks(prev, curr);
  ASSERT_EQ(pairs.size(), 10u);
  for (const auto& p : pairs) {
    EXPECT_EQ(p.prev, p.curr);
    EXPECT_LT(p.prev, 10u);
  }
}

TEST(PairLandmarksTest, PriorMapsCurrentCentres) {
  const std::vector<Landmark> prev{PointLandmark({5, 0, 0}, semantic::kPole),
                                   PointLandmark({0, 5, 0}, semantic::kPole)};
  const std::vector<Landmark> curr{PointLandmark({4, 0, 0}, semantic::kPole),
                                   PointLandmark({-1, 5, 0}, semantic::kPole)};
  const auto pairs = PairLandmarks(prev, curr, {1.0, 0.0, 0.0});
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_NEAR(pairs[0].centre_distance, 0.0, 1e-12);
}

TEST(SelectFeatureLayerTest, IdenticalBoxesTieToUpper) {
  std::mt19937_64 rng(1);
  const Landmark box = BoxLandmark({0, 0}, 0.0, 2.0, 1.0, 2.0, semantic::kBuilding, rng, 400);
  // Identical columns in both layers: give every point a twin at the other height.
  std::vector<Eigen::Vector3d> points;
  for (const auto& p : box.points) {
    points.emplace_back(p.x(), p.y(), 0.5);
    points.emplace_back(p.x(), p.y(), 1.5);
  }
  const auto feature = SelectFeatureLayer(points, points, semantic::kBuilding);
  ASSERT_TRUE(feature.has_value());
  EXPECT_EQ(feature->layer, geometry::Layer::kUpper);
  EXPECT_NEAR(feature->similarity, 1.0, 1e-12);
  EXPECT_EQ(feature->class_id, semantic::kBuilding);
}

TEST(SelectFeatureLayerTest, OccludedUpperHalfSelectsLower) {
  std::mt19937_64 rng(2);
  const Landmark box = BoxLandmark({0, 0}, 0.3, 3.0, 2.0, 2.0, semantic::kBuilding, rng, 800);
  std::vector<Eigen::Vector3d> curr;
  for (const auto& p : box.points) {
    // Frame k sees only the half with y < 0 above the middle.
    const Eigen::Vector2d local = PoseDelta2D{0, 0, -0.3} * Eigen::Vector2d(p.x(), p.y());
    if (p.z() >= 1.0 && local.y() > 0.0) continue;
    curr.push_back(p);
  }
  const auto feature = SelectFeatureLayer(box.points, curr, semantic::kBuilding);
  ASSERT_TRUE(feature.has_value());
  EXPECT_EQ(feature->layer, geometry::Layer::kLower);
}

TEST(SelectFeatureLayerTest, DegenerateUpperFallsBackToLower) {
  std::vector<Eigen::Vector3d> points;
  for (int i = 0; i < 20; ++i) {
    points.emplace_back(0.1 * i, 0.0, 3.0);               // upper: a line in xy
    points.emplace_back(0.1 * i, (i % 2) ? 1.0 : 0.0, 0.0);  // lower: a strip
  }
  const auto feature = SelectFeatureLayer(points, points, semantic::kFence);
  ASSERT_TRUE(feature.has_value());
  EXPECT_EQ(feature->layer, geometry::Layer::kLower);
}

TEST(SelectFeatureLayerTest, AllDegenerateIsNullopt) {
  const std::vector<Eigen::Vector3d> line{{0, 0, 0}, {1, 0, 1}, {2, 0, 2}, {3, 0, 3}};
  EXPECT_FALSE(SelectFeatureLayer(line, line, semantic::kPole).has_value());
}

class OverlapObjectiveTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::mt19937_64 rng(4);
    scene_ = RandomStaticScene(rng, 12);
    for (const Landmark& l : scene_) moved_.push_back(ToCurrent(l, truth_, rng));
    features_ = BuildFeatures(scene_, moved_, PairLandmarks(scene_, moved_, truth_));
    ASSERT_GE(features_.size(), 6u);
  }
  const PoseDelta2D truth_{0.8, -0.3, 2.0 * kDeg};
  std::vector<Landmark> scene_, moved_;
  std::vector<geometry::ConvexHullFeature> features_;
};

TEST_F(OverlapObjectiveTest, PerfectOverlapAtTruth) {
  // Hulls are simplified independently in each frame, so the match is exact
  // only up to the simplification tolerance.
  EXPECT_NEAR(OverlapObjective(truth_, features_), TotalPrevArea(features_),
              1e-3 * TotalPrevArea(features_));
}

TEST_F(OverlapObjectiveTest, FarShiftIsZero) {
  EXPECT_EQ(OverlapObjective({100, 0, 0}, features_), 0.0);
}

TEST_F(OverlapObjectiveTest, TruthIsLocalMaximum) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> d(-0.2, 0.2);
  const double best = OverlapObjective(truth_, features_);
  for (int i = 0; i < 100; ++i) {
    const PoseDelta2D perturbed{truth_.dx + d(rng), truth_.dy + d(rng),
                                truth_.dtheta + d(rng) * kDeg * 10};
    EXPECT_GE(best + 1e-12, OverlapObjective(perturbed, features_));
  }
}

TEST_F(OverlapObjectiveTest, EqualsSumOfIntersectionAreas) {
  const PoseDelta2D t{0.7, -0.2, 1.5 * kDeg};
  double sum = 0.0;
  for (const auto& f : features_) {
    sum += geometry::IntersectionArea(geometry::TransformPolygon(f.curr_hull, t), f.prev_hull);
  }
  EXPECT_NEAR(OverlapObjective(t, features_), sum, 1e-9);
}

TEST_F(OverlapObjectiveTest, PsoRecoversTruth) {
  PsoConfig cfg;
  cfg.seed = 3;
  const PsoResult r = SolvePso(features_, PoseDelta2D::Identity(), cfg);
  EXPECT_NEAR(r.pose.dx, truth_.dx, 0.05);
  EXPECT_NEAR(r.pose.dy, truth_.dy, 0.05);
  EXPECT_NEAR(r.pose.dtheta, truth_.dtheta, 0.2 * kDeg);
  EXPECT_FALSE(r.low_confidence);
}

TEST_F(OverlapObjectiveTest, PsoBestIsMonotoneAndDeterministic) {
  PsoConfig cfg;
  cfg.seed = 99;
  cfg.max_iterations = 40;
  const PsoResult a = SolvePso(features_, PoseDelta2D::Identity(), cfg);
  const PsoResult b = SolvePso(features_, PoseDelta2D::Identity(), cfg);
  ASSERT_EQ(a.best_history.size(), 40u);
  for (std::size_t i = 1; i < a.best_history.size(); ++i) {
    EXPECT_GE(a.best_history[i], a.best_history[i - 1]);
  }
  EXPECT_EQ(a.pose.dx, b.pose.dx);
  EXPECT_EQ(a.pose.dy, b.pose.dy);
  EXPECT_EQ(a.pose.dtheta, b.pose.dtheta);
  EXPECT_EQ(a.best_history, b.best_history);
}

TEST(SolvePsoTest, IdenticalFramesStayAtIdentity) {
  std::mt19937_64 rng(12);
  const auto scene = RandomStaticScene(rng, 8);
  const auto features = BuildFeatures(scene, scene, PairLandmarks(scene, scene));
  const PsoResult r = SolvePso(features, PoseDelta2D::Identity(), PsoConfig{});
  EXPECT_NEAR(r.objective, TotalPrevArea(features), 1e-6 * TotalPrevArea(features));
  EXPECT_NEAR(r.pose.dx, 0.0, 0.02);
  EXPECT_NEAR(r.pose.dy, 0.0, 0.02);
  EXPECT_NEAR(r.pose.dtheta, 0.0, 0.1 * kDeg);
}

TEST(SolvePsoTest, TooFewFeaturesReturnsPriorFlagged) {
  const PoseDelta2D prior{1.0, 2.0, 0.1};
  const PsoResult r = SolvePso({}, prior, PsoConfig{});
  EXPECT_TRUE(r.low_confidence);
  EXPECT_EQ(r.pose.dx, prior.dx);
  EXPECT_EQ(r.pose.dtheta, prior.dtheta);
}

TEST(MaximizeWithPsoTest, RespectsBoundsAndFindsSmoothOptimum) {
  PsoConfig cfg;
  cfg.search_bounds = {1.0, 1.0, 0.5};
  const auto objective = [](const PoseDelta2D& t) {
    return -((t.dx - 0.3) * (t.dx - 0.3) + (t.dy + 0.6) * (t.dy + 0.6) +
             (t.dtheta - 0.1) * (t.dtheta - 0.1));
  };
  const PsoResult r = MaximizeWithPso(objective, PoseDelta2D::Identity(), cfg);
  EXPECT_NEAR(r.pose.dx, 0.3, 1e-4);
  EXPECT_NEAR(r.pose.dy, -0.6, 1e-4);
  EXPECT_NEAR(r.pose.dtheta, 0.1, 1e-4);
  // Optimum outside the box: the best stays on the boundary.
  const auto outside = [](const PoseDelta2D& t) { return t.dx; };
  const PsoResult edge = MaximizeWithPso(outside, PoseDelta2D::Identity(), cfg);
  EXPECT_LE(edge.pose.dx, 1.0);
  EXPECT_NEAR(edge.pose.dx, 1.0, 1e-9);
}

TEST(MaximizeWithPsoTest, RejectsInvalidConfig) {
  PsoConfig cfg;
  cfg.swarm_size = 1;
  const auto zero = [](const PoseDelta2D&) { return 0.0; };
  EXPECT_THROW(MaximizeWithPso(zero, {}, cfg), ContractViolation);
  cfg = PsoConfig{};
  cfg.search_bounds[2] = 0.0;
  EXPECT_THROW(MaximizeWithPso(zero, {}, cfg), ContractViolation);
}

TEST(SelectInputModeTest, RuleEvaluation) {
  EXPECT_EQ(SelectInputMode(15, 5, 10), InputMode::kPureStatic);
  EXPECT_EQ(SelectInputMode(4, 12, 10), InputMode::kAllLandmarks);
  EXPECT_EQ(SelectInputMode(10, 10, 10), InputMode::kPureStatic);
  EXPECT_EQ(SelectInputMode(12, 13, 10), InputMode::kAllLandmarks);
  EXPECT_EQ(SelectInputMode(9, 0, 10), InputMode::kAllLandmarks);
}

TEST(EstimatePreliminaryTest, NoLandmarksKeepsPrior) {
  const PoseDelta2D prior{1.0, 0.0, 0.0};
  const PoseEstimate e = EstimatePreliminary({}, {}, prior, PreliminaryConfig{});
  EXPECT_TRUE(e.degraded);
  EXPECT_EQ(e.delta.dx, 1.0);
  EXPECT_EQ(e.pair_count, 0);
}

TEST(EstimatePreliminaryTest, ModeAUsesOnlyStaticLandmarks) {
  std::mt19937_64 rng(31);
  const PoseDelta2D truth{1.0, 0.1, 1.0 * kDeg};
  const auto prev_static = RandomStaticScene(rng, 12);
  std::vector<Landmark> curr_static;
  for (const auto& l : prev_static) curr_static.push_back(ToCurrent(l, truth, rng, 0.01));
  const FrameLandmarks prev{prev_static, {}};
  const FrameLandmarks curr{curr_static, {}};
  const PoseEstimate e = EstimatePreliminary(prev, curr, {1.0, 0.0, 0.0}, PreliminaryConfig{});
  EXPECT_EQ(e.mode, InputMode::kPureStatic);
  EXPECT_FALSE(e.degraded);
  EXPECT_NEAR(e.delta.dx, truth.dx, 0.05);
  EXPECT_NEAR(e.delta.dy, truth.dy, 0.05);
  EXPECT_NEAR(e.delta.dtheta, truth.dtheta, 0.2 * kDeg);
  EXPECT_GT(e.overlap_ratio, 0.8);
}

TEST(LocalSubmapTest, MergesPrunesAndRemovesTracks) {
  std::mt19937_64 rng(1);
  SubmapConfig cfg;
  cfg.window = 3;
  LocalSubmap submap(cfg);
  const Landmark pole = BoxLandmark({5, 0}, 0, 0.3, 0.3, 4, semantic::kPole, rng, 40);
  submap.Insert(pole, PoseSE3::Identity(), 0);
  // Same pole seen from 1 m further along: merges by proximity.
  submap.Insert(ToCurrent(pole, {1, 0, 0}, rng),
                PoseSE3::FromPlanar({1, 0, 0}), 1);
  ASSERT_EQ(submap.landmarks().size(), 1u);
  EXPECT_EQ(submap.landmarks()[0].points.size(), 80u);
  EXPECT_EQ(submap.landmarks()[0].last_seen_frame, 1);
  const Landmark car = BoxLandmark({5, 5}, 0, 4, 2, 1.5, semantic::kCar, rng, 40);
  submap.Insert(car, PoseSE3::Identity(), 2, /*track_id=*/7);
  EXPECT_EQ(submap.landmarks().size(), 2u);
  submap.Prune(4);  // pole last seen at 1: 4 - 1 >= 3
  ASSERT_EQ(submap.landmarks().size(), 1u);
  EXPECT_EQ(submap.landmarks()[0].track_id, 7);
  submap.RemoveTrack(7);
  EXPECT_TRUE(submap.empty());
}

TEST(LocalSubmapTest, ReservoirCapsPoints) {
  std::mt19937_64 rng(2);
  SubmapConfig cfg;
  cfg.max_points = 50;
  LocalSubmap submap(cfg);
  const Landmark wall = BoxLandmark({10, 0}, 0, 8, 1, 4, semantic::kBuilding, rng, 40);
  for (int f = 0; f < 5; ++f) submap.Insert(wall, PoseSE3::Identity(), f);
  ASSERT_EQ(submap.landmarks().size(), 1u);
  EXPECT_EQ(submap.landmarks()[0].points.size(), 50u);
  EXPECT_EQ(submap.landmarks()[0].points_seen, 200u);
}

TEST(LocalSubmapTest, InFrameAndCorrection) {
  std::mt19937_64 rng(3);
  LocalSubmap submap;
  const Landmark pole = BoxLandmark({5, 0}, 0, 0.3, 0.3, 4, semantic::kPole, rng, 40);
  const PoseSE3 world_from_sensor = PoseSE3::FromPlanar({2, 1, 0.5});
  submap.Insert(pole, world_from_sensor, 0);
  const auto local = submap.InFrame(world_from_sensor);
  ASSERT_EQ(local.size(), 1u);
  EXPECT_NEAR((local[0].centre - pole.centre).norm(), 0.0, 1e-9);
  const PoseSE3 correction = PoseSE3::FromPlanar({1, 0, 0});
  submap.ApplyCorrection(correction);
  const auto moved = submap.InFrame(correction * world_from_sensor);
  EXPECT_NEAR((moved[0].centre - pole.centre).norm(), 0.0, 1e-9);
}

TEST(EstimatePreciseHorizontalTest, EmptySubmapKeepsPrelim) {
  std::mt19937_64 rng(4);
  const std::vector<Landmark> curr = RandomStaticScene(rng, 3);
  const PoseDelta2D prelim{1, 0, 0};
  const PoseEstimate e = EstimatePreciseHorizontal(curr, LocalSubmap{}, PoseSE3::Identity(),
                                                   prelim, PsoConfig{});
  EXPECT_TRUE(e.degraded);
  EXPECT_EQ(e.delta.dx, 1.0);
}

TEST(EstimatePreciseHorizontalTest, PreviousFrameSubmapReducesToScanToScan) {
  std::mt19937_64 rng(5);
  const PoseDelta2D truth{1.0, 0.05, 0.5 * kDeg};
  const auto prev = RandomStaticScene(rng, 12);
  std::vector<Landmark> curr;
  for (const auto& l : prev) curr.push_back(ToCurrent(l, truth, rng, 0.01));
  LocalSubmap submap;
  for (const auto& l : prev) submap.Insert(l, PoseSE3::Identity(), 0);
  const FrameLandmarks pf{prev, {}}, cf{curr, {}};
  const PoseEstimate prelim = EstimatePreliminary(pf, cf, {1, 0, 0}, PreliminaryConfig{});
  const PoseEstimate precise = EstimatePreciseHorizontal(
      curr, submap, PoseSE3::Identity(), prelim.delta, PsoConfig{});
  EXPECT_FALSE(precise.degraded);
  EXPECT_NEAR(precise.delta.dx, prelim.delta.dx, 0.03);
  EXPECT_NEAR(precise.delta.dy, prelim.delta.dy, 0.03);
  EXPECT_NEAR(precise.delta.dtheta, prelim.delta.dtheta, 0.15 * kDeg);
}

// 15 small static and 5 large dynamic landmarks. The dynamic ones travel
// with the ego vehicle and dominate the overlap area, dragging an
// all-landmark registration towards zero motion. Mode B registers everything; the precise stage only
// sees static landmarks against a submap of the previous frame.
TEST(EstimatePreciseHorizontalTest, BeatsModeBWithDynamics) {
  int wins = 0;
  const int trials = 5;
  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 rng(100 + trial);
    const PoseDelta2D truth{0.8, 0.0, 0.3 * kDeg};
    const auto statics = RandomStaticScene(rng, 15, 1.5);
    std::vector<Landmark> dynamics;
    std::uniform_real_distribution<double> pos(-20.0, 20.0);
    for (int i = 0; i < 5; ++i) {
      dynamics.push_back(BoxLandmark({pos(rng), pos(rng)}, 0.0, 12.0, 2.5, 1.5,
                                     semantic::kCar, rng));
    }
    std::vector<Landmark> curr_static, curr_dynamic;
    for (const auto& l : statics) curr_static.push_back(ToCurrent(l, truth, rng, 0.01));
    for (const auto& l : dynamics) {
      // Traffic moving with the ego vehicle: nearly fixed in the sensor frame.
      curr_dynamic.push_back(ToCurrent(l, PoseDelta2D{-0.8, 0.0, 0.0} * truth, rng, 0.01));
    }
    PreliminaryConfig prelim_cfg;
    prelim_cfg.force_all_landmarks = true;
    prelim_cfg.pso.seed = trial;
    const PoseEstimate mode_b = EstimatePreliminary({statics, dynamics},
                                                    {curr_static, curr_dynamic},
                                                    PoseDelta2D::Identity(), prelim_cfg);
    LocalSubmap submap;
    for (const auto& l : statics) submap.Insert(l, PoseSE3::Identity(), 0);
    const PoseEstimate precise = EstimatePreciseHorizontal(
        curr_static, submap, PoseSE3::Identity(), mode_b.delta, prelim_cfg.pso);
    const auto error = [&](const PoseDelta2D& d) {
      return std::hypot(d.dx - truth.dx, d.dy - truth.dy) +
             std::abs(WrapAngle(d.dtheta - truth.dtheta));
    };
    if (error(precise.delta) < error(mode_b.delta)) ++wins;
    EXPECT_LT(error(precise.delta), 0.02);
  }
  EXPECT_EQ(wins, trials);
}

std::vector<Eigen::Vector3d> Ground(double pitch_rad, double height, int count,
                                    std::mt19937_64& rng, double noise = 0.0) {
  std::uniform_real_distribution<double> x(-12.0, 12.0), y(-3.0, 3.0);
  std::normal_distribution<double> n(0.0, noise > 0 ? noise : 1.0);
  std::vector<Eigen::Vector3d> points;
  for (int i = 0; i < count; ++i) {
    const double px = x(rng), py = y(rng);
    double z = -height + std::tan(pitch_rad) * px;
    if (noise > 0) z += n(rng);
    points.emplace_back(px, py, z);
  }
  return points;
}

TEST(VerticalTest, FlatGround) {
  std::mt19937_64 rng(1);
  const auto ground = Ground(0.0, 1.7, 2000, rng);
  VerticalEstimate previous;
  previous.sensor_height = 1.7;
  const VerticalEstimate e =
      EstimateVertical(ground, Eigen::Vector3d::UnitZ(), previous);
  EXPECT_FALSE(e.carried_forward);
  EXPECT_NEAR(e.pitch, 0.0, 1e-9);
  EXPECT_NEAR(e.dz, 0.0, 1e-9);
  EXPECT_NEAR(e.sensor_height, 1.7, 1e-9);
}

TEST(VerticalTest, TiltedGroundIsExact) {
  std::mt19937_64 rng(2);
  for (double deg = -10.0; deg <= 10.0; deg += 0.5) {
    const auto ground = Ground(deg * kDeg, 1.7, 1500, rng);
    const VerticalEstimate e = EstimateVertical(ground, Eigen::Vector3d::UnitZ(), {});
    EXPECT_NEAR(e.pitch / kDeg, deg, 0.05);
  }
}

TEST(VerticalTest, OutliersAreTrimmed) {
  std::mt19937_64 rng(3);
  auto ground = Ground(2.0 * kDeg, 1.7, 1800, rng, 0.02);
  std::uniform_real_distribution<double> x(-12.0, 12.0), y(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) ground.emplace_back(x(rng), y(rng), 5.0);
  const VerticalEstimate e = EstimateVertical(ground, Eigen::Vector3d::UnitZ(), {});
  EXPECT_NEAR(e.pitch / kDeg, 2.0, 0.1);
}

TEST(VerticalTest, SparseGroundCarriesForward) {
  std::mt19937_64 rng(4);
  const auto ground = Ground(0.0, 1.7, 10, rng);
  VerticalEstimate previous;
  previous.pitch = 0.03;
  previous.sensor_height = 1.7;
  const VerticalEstimate e = EstimateVertical(ground, Eigen::Vector3d::UnitZ(), previous);
  EXPECT_TRUE(e.carried_forward);
  EXPECT_EQ(e.pitch, 0.03);
  EXPECT_EQ(e.dz, 0.0);
}

TEST(VerticalEstimatorTest, FirstFitIsTheReference) {
  std::mt19937_64 rng(5);
  VerticalEstimator estimator;
  const VerticalEstimate first = estimator.Estimate(Ground(1.0 * kDeg, 1.7, 1500, rng));
  EXPECT_EQ(first.pitch, 0.0);
  const VerticalEstimate second = estimator.Estimate(Ground(3.0 * kDeg, 1.6, 1500, rng));
  EXPECT_NEAR(second.pitch / kDeg, 2.0, 0.05);
  EXPECT_LT(second.dz, 0.0);
}

TEST(FitGroundPlaneTest, NormalPointsUp) {
  std::mt19937_64 rng(6);
  const auto plane = FitGroundPlane(Ground(-4.0 * kDeg, 2.0, 500, rng), 3.0, 2);
  ASSERT_TRUE(plane.has_value());
  EXPECT_GT(plane->normal.z(), 0.0);
  EXPECT_NEAR(plane->normal.norm(), 1.0, 1e-12);
  EXPECT_NEAR(PitchOfNormal(plane->normal) / kDeg, -4.0, 1e-6);
  EXPECT_FALSE(FitGroundPlane(std::vector<Eigen::Vector3d>{{0, 0, 0}, {1, 0, 0}}, 3, 2));
}

}  // namespace
}  // namespace pose_estimation
}  // namespace hullslam
