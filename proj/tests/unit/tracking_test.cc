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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "Eigen/Eigenvalues"
#include "gtest/gtest.h"
#include "hullslam/common/errors.h"
#include "hullslam/tracking/kalman.h"
#include "hullslam/tracking/tracker.h"
#include "oracles.h"

namespace hullslam {
namespace tracking {
namespace {

oracle::ReferenceState ToReference(const TrackState& s) {
  oracle::ReferenceState r{};
  for (int i = 0; i < 4; ++i) {
    r.x[i] = s.mean[i];
    for (int j = 0; j < 4; ++j) r.p[i][j] = s.covariance(i, j);
  }
  return r;
}

double MaxRelativeGap(const TrackState& s, const oracle::ReferenceState& r) {
  double gap = 0.0;
  for (int i = 0; i < 4; ++i) {
    gap = std::max(gap, std::abs(s.mean[i] - r.x[i]) / std::max(1.0, std::abs(r.x[i])));
    for (int j = 0; j < 4; ++j) {
      gap = std::max(gap, std::abs(s.covariance(i, j) - r.p[i][j]) /
                              std::max(1.0, std::abs(r.p[i][j])));
    }
  }
  return gap;
}

void ExpectSymmetricPsd(const Eigen::Matrix4d& p) {
  EXPECT_LE((p - p.transpose()).cwiseAbs().maxCoeff(), 1e-9);
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> eig(0.5 * (p + p.transpose()));
  EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-9);
}

TrackState RandomState(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  TrackState s;
  for (int i = 0; i < 4; ++i) s.mean[i] = u(rng);
  Eigen::Matrix4d a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) a(i, j) = u(rng) * 0.3;
  s.covariance = a * a.transpose() + 1e-3 * Eigen::Matrix4d::Identity();
  return s;
}

TEST(TransitionTest, ZeroTurnRateIsConstantVelocity) {
  TrackState s;
  s.mean << 0.0, 1.0, 0.0, 0.0;
  const TrackState p = Predict(s, 0.0, 0.1, 0.5);
  EXPECT_DOUBLE_EQ(p.mean[0], 0.1);
  EXPECT_DOUBLE_EQ(p.mean[1], 1.0);
  EXPECT_DOUBLE_EQ(p.mean[2], 0.0);
  EXPECT_DOUBLE_EQ(p.mean[3], 0.0);
  Eigen::Matrix4d cv = Eigen::Matrix4d::Identity();
  cv(0, 1) = cv(2, 3) = 0.1;
  EXPECT_EQ(TransitionMatrix(0.0, 0.1), cv);
}

TEST(TransitionTest, QuarterTurnMatchesDirectEvaluation) {
  const double tau = 0.1;
  const double omega = std::numbers::pi / (2.0 * tau);
  TrackState s;
  s.mean << 0.0, 1.0, 0.0, 0.0;
  const TrackState p = Predict(s, omega, tau, 0.5);
  const oracle::Mat4 f = oracle::ReferenceTransition(omega, tau);
  // Velocity rotated by 90 degrees; position on the chord of the quarter arc.
  EXPECT_NEAR(p.mean[1], 0.0, 1e-12);
  EXPECT_NEAR(p.mean[3], 1.0, 1e-12);
  EXPECT_NEAR(p.mean[0], f[0][1], 1e-12);
  EXPECT_NEAR(p.mean[2], f[2][1], 1e-12);
  EXPECT_NEAR(p.mean[0], 0.2 / std::numbers::pi, 1e-12);
  EXPECT_NEAR(p.mean[2], 0.2 / std::numbers::pi, 1e-12);
}

TEST(TransitionTest, AgreesWithClosedFormAwayFromZero) {
  for (const double omega : {-3.0, -0.5, -1e-3, 1e-3, 0.2, 1.0, 7.0}) {
    const Eigen::Matrix4d f = TransitionMatrix(omega, 0.1);
    const oracle::Mat4 r = oracle::ReferenceTransition(omega, 0.1);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_NEAR(f(i, j), r[i][j], 1e-12) << omega;
  }
}

// Near zero the matrix follows its series expansion; the constant-velocity
// matrix itself is only reached where sin(w t) is below the tolerance.
TEST(TransitionTest, LimitConsistencyNearZero) {
  const double tau = 0.1;
  Eigen::Matrix4d cv = Eigen::Matrix4d::Identity();
  cv(0, 1) = cv(2, 3) = tau;
  for (const double omega : {-1e-4, -5e-5, -1e-6, 1e-8, 1e-6, 5e-5, 1e-4}) {
    const Eigen::Matrix4d f = TransitionMatrix(omega, tau);
    const oracle::Mat4 series = oracle::SeriesTransition(omega, tau);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        EXPECT_NEAR(f(i, j), series[i][j], 1e-12) << omega;
        if (std::abs(omega) <= 1e-6) EXPECT_NEAR(f(i, j), cv(i, j), 1e-7) << omega;
      }
    }
  }
}

TEST(TransitionTest, ContinuousAcrossThreshold) {
  const double below = std::nextafter(kSmallTurnRate, 0.0);
  const Eigen::Matrix4d a = TransitionMatrix(below, 0.1);
  const Eigen::Matrix4d b = TransitionMatrix(kSmallTurnRate, 0.1);
  EXPECT_LE((a - b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PredictTest, TinyTurnRateMatchesConstantVelocity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> pos(-50.0, 50.0), vel(-0.5, 0.5);
  for (int trial = 0; trial < 100; ++trial) {
    TrackState s;
    s.mean << pos(rng), vel(rng), pos(rng), vel(rng);
    const TrackState a = Predict(s, 1e-6, 0.1, 0.5);
    const TrackState b = Predict(s, 0.0, 0.1, 0.5);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(a.mean[i], b.mean[i], 1e-7);
  }
}

TEST(PredictTest, PreservesSpeed) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> omega(-3.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const TrackState s = RandomState(rng);
    const TrackState p = Predict(s, omega(rng), 0.1, 0.5);
    EXPECT_NEAR(p.Velocity().norm(), s.Velocity().norm(), 1e-9);
  }
}

TEST(PredictTest, NonPositivePeriodThrows) {
  EXPECT_THROW(Predict(TrackState{}, 0.0, 0.0, 0.5), ContractViolation);
  EXPECT_THROW(Predict(TrackState{}, 0.0, -0.1, 0.5), ContractViolation);
}

TEST(UpdateTest, HugePriorFollowsMeasurement) {
  TrackState s;
  s.covariance = 1e12 * Eigen::Matrix4d::Identity();
  const auto u = Update(s, {5.0, 7.0}, 0.15);
  ASSERT_TRUE(u.has_value());
  EXPECT_NEAR(u->mean[0], 5.0, 0.15);
  EXPECT_NEAR(u->mean[2], 7.0, 0.15);
}

TEST(UpdateTest, ZeroPriorIgnoresMeasurement) {
  TrackState s;
  s.mean << 1.0, 2.0, 3.0, 4.0;
  s.covariance.setZero();
  const auto u = Update(s, {50.0, -70.0}, 0.15);
  ASSERT_TRUE(u.has_value());
  EXPECT_EQ(u->mean, s.mean);
  EXPECT_LE(u->covariance.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(UpdateTest, NonFiniteMeasurementSkipped) {
  EXPECT_FALSE(Update(TrackState{}, {std::nan(""), 0.0}, 0.15).has_value());
  EXPECT_FALSE(Update(TrackState{}, {0.0, INFINITY}, 0.15).has_value());
}

TEST(UpdateTest, MatchesTextbookReference) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> z(-10.0, 10.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const TrackState s = RandomState(rng);
    const double zx = z(rng), zy = z(rng);
    const auto u = Update(s, {zx, zy}, 0.15);
    ASSERT_TRUE(u.has_value());
    EXPECT_LE(MaxRelativeGap(*u, oracle::ReferenceUpdate(ToReference(s), zx, zy, 0.15)),
              1e-9);
  }
}

// Random predict/update chains: each step is compared with the reference from
// the same input state, and the covariance stays symmetric PSD throughout.
TEST(KalmanChainTest, TenThousandStepsAgainstReference) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> omega(-2.0, 2.0), noise(-0.3, 0.3);
  std::bernoulli_distribution zero_turn(0.1);
  TrackState s;
  s.covariance = Eigen::Vector4d(1, 25, 1, 25).asDiagonal();
  Eigen::Vector2d truth(0.0, 0.0);
  double worst = 0.0;
  for (int step = 0; step < 10000; ++step) {
    double w = zero_turn(rng) ? 0.0 : omega(rng);
    if (w != 0.0 && std::abs(w) < 1e-3) w = 1e-3;  // closed form only
    const TrackState predicted = Predict(s, w, 0.1, 0.5);
    worst = std::max(worst, MaxRelativeGap(predicted,
                                           oracle::ReferencePredict(ToReference(s), w, 0.1, 0.5)));
    ExpectSymmetricPsd(predicted.covariance);
    truth += Eigen::Vector2d(0.1, 0.05);
    const Eigen::Vector2d z = truth + Eigen::Vector2d(noise(rng), noise(rng));
    const auto updated = Update(predicted, z, 0.15);
    ASSERT_TRUE(updated.has_value());
    worst = std::max(worst, MaxRelativeGap(*updated, oracle::ReferenceUpdate(
                                                         ToReference(predicted), z.x(),
                                                         z.y(), 0.15)));
    ExpectSymmetricPsd(updated->covariance);
    s = *updated;
  }
  EXPECT_LE(worst, 1e-9);
}

Observation Obs(double x, double y, ClassId c = semantic::kCar) { return {{x, y}, c}; }

TEST(AssociateTest, SimpleMatch) {
  const std::vector<Observation> tracks{Obs(0, 0)};
  const std::vector<Observation> obs{Obs(0.2, 0)};
  const auto r = Associate(tracks, obs, 3.0);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_TRUE(r.unmatched_tracks.empty());
  EXPECT_TRUE(r.unmatched_observations.empty());
}

TEST(AssociateTest, SemanticGate) {
  const std::vector<Observation> tracks{Obs(0, 0, semantic::kCar)};
  const std::vector<Observation> obs{Obs(0.1, 0, semantic::kPerson)};
  const auto r = Associate(tracks, obs, 3.0);
  EXPECT_TRUE(r.matches.empty());
  EXPECT_EQ(r.unmatched_tracks, std::vector<int>{0});
  EXPECT_EQ(r.unmatched_observations, std::vector<int>{0});
}

TEST(AssociateTest, DistanceGateIsInclusive) {
  const std::vector<Observation> tracks{Obs(0, 0)};
  EXPECT_EQ(Associate(tracks, std::vector<Observation>{Obs(3.0, 0)}, 3.0).matches.size(), 1u);
  EXPECT_TRUE(Associate(tracks, std::vector<Observation>{Obs(3.01, 0)}, 3.0).matches.empty());
}

TEST(AssociateTest, NonMutualNearestIsRejected) {
  // A at 0 and B at 1.0 both point at the observation at 0.6, which points
  // back at B only. The observation at 1.5 points at B, which is taken.
  const std::vector<Observation> tracks{Obs(0, 0), Obs(1.0, 0)};
  const std::vector<Observation> obs{Obs(0.6, 0), Obs(1.5, 0)};
  const auto r = Associate(tracks, obs, 3.0);
  ASSERT_EQ(r.matches.size(), 1u);
  EXPECT_EQ(r.matches[0], std::make_pair(1, 0));
  EXPECT_EQ(r.unmatched_tracks, std::vector<int>{0});
  EXPECT_EQ(r.unmatched_observations, std::vector<int>{1});
}

std::vector<oracle::Point2WithClass> ToOracle(const std::vector<Observation>& in) {
  std::vector<oracle::Point2WithClass> out;
  for (const auto& o : in) out.push_back({o.centre_world, o.class_id});
  return out;
}

TEST(AssociateTest, MatchesBruteForceAndIsSymmetric) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.0, 15.0);
  std::uniform_int_distribution<int> count(0, 12);
  const ClassId classes[] = {semantic::kCar, semantic::kPerson, semantic::kTruck};
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<Observation> tracks, obs;
    for (int n = count(rng); n > 0; --n) tracks.push_back(Obs(pos(rng), pos(rng), classes[n % 3]));
    for (int n = count(rng); n > 0; --n) obs.push_back(Obs(pos(rng), pos(rng), classes[n % 3]));
    const auto r = Associate(tracks, obs, 3.0);
    EXPECT_EQ(r.matches, oracle::BruteForceMutualNearest(ToOracle(tracks), ToOracle(obs), 3.0));
    auto swapped = Associate(obs, tracks, 3.0).matches;
    for (auto& m : swapped) std::swap(m.first, m.second);
    std::sort(swapped.begin(), swapped.end());
    EXPECT_EQ(r.matches, swapped);
    EXPECT_EQ(r.matches.size() + r.unmatched_tracks.size(), tracks.size());
    EXPECT_EQ(r.matches.size() + r.unmatched_observations.size(), obs.size());
  }
}

Track MovingTrack(double vx, double vy, const Eigen::Vector2d& last) {
  Track t;
  t.class_id = semantic::kCar;
  t.state.mean << last.x(), vx, last.y(), vy;
  t.last_centre_world = last;
  return t;
}

TEST(ClassifyMotionTest, ParkedCar) {
  const TrackingConfig cfg;
  const Track t = MovingTrack(0.05, 0.0, {10, 10});
  EXPECT_EQ(ClassifyMotion(t, {10.02, 10}, cfg), MotionVerdict::kSemiStatic);
}

TEST(ClassifyMotionTest, FastCar) {
  const TrackingConfig cfg;
  const Track t = MovingTrack(10.0, 0.0, {10, 10});
  EXPECT_EQ(ClassifyMotion(t, {11, 10}, cfg), MotionVerdict::kDynamic);
}

TEST(ClassifyMotionTest, EitherBoundMakesDynamic) {
  const TrackingConfig cfg;
  // Slow filtered velocity but a large jump.
  EXPECT_EQ(ClassifyMotion(MovingTrack(0.1, 0.0, {0, 0}), {0.5, 0}, cfg),
            MotionVerdict::kDynamic);
  // Small jump but fast filtered velocity.
  EXPECT_EQ(ClassifyMotion(MovingTrack(1.0, 0.0, {0, 0}), {0.01, 0}, cfg),
            MotionVerdict::kDynamic);
  // Exactly on a bound counts as dynamic.
  EXPECT_EQ(ClassifyMotion(MovingTrack(0.8, 0.0, {0, 0}), {0.0, 0}, cfg),
            MotionVerdict::kDynamic);
  EXPECT_EQ(ClassifyMotion(MovingTrack(0.0, 0.0, {0, 0}), {0.3, 0}, cfg),
            MotionVerdict::kDynamic);
}

TEST(ClassifyMotionTest, PerClassThresholds) {
  TrackingConfig cfg;
  Track person = MovingTrack(0.5, 0.0, {0, 0});
  person.class_id = semantic::kPerson;
  EXPECT_EQ(ClassifyMotion(person, {0.05, 0}, cfg), MotionVerdict::kDynamic);
  cfg.v_max[semantic::kPerson] = 1.0;
  EXPECT_EQ(ClassifyMotion(person, {0.05, 0}, cfg), MotionVerdict::kSemiStatic);
}

TEST(MultiObjectTrackerTest, Lifecycle) {
  TrackingConfig cfg;
  MultiObjectTracker tracker(cfg);
  const std::vector<Observation> first{Obs(0, 0), Obs(20, 0, semantic::kPerson)};
  const auto a = tracker.Step(first, 0.0, 0.1);
  ASSERT_EQ(a.size(), 2u);
  EXPECT_EQ(a[0].verdict, MotionVerdict::kUnknown);
  EXPECT_NE(a[0].track_id, a[1].track_id);
  const auto b = tracker.Step(first, 0.0, 0.1);
  EXPECT_EQ(b[0].track_id, a[0].track_id);
  EXPECT_EQ(b[0].verdict, MotionVerdict::kSemiStatic);
  EXPECT_FALSE(b[0].stable);
  const auto c = tracker.Step(first, 0.0, 0.1);
  EXPECT_TRUE(c[0].stable);
  // Person vanishes: three misses retire it.
  const std::vector<Observation> only_car{Obs(0, 0)};
  tracker.Step(only_car, 0.0, 0.1);
  tracker.Step(only_car, 0.0, 0.1);
  EXPECT_EQ(tracker.tracks().size(), 2u);
  tracker.Step(only_car, 0.0, 0.1);
  ASSERT_EQ(tracker.retired().size(), 1u);
  EXPECT_EQ(tracker.retired()[0], a[1].track_id);
  EXPECT_EQ(tracker.tracks().size(), 1u);
}

TEST(MultiObjectTrackerTest, VerdictsOnCleanTraces) {
  MultiObjectTracker tracker;
  const double tau = 0.1;
  // Parked car at (5, 5); moving cars at 2 and 10 m/s; a walking person at 2 m/s.
  for (int k = 0; k < 10; ++k) {
    const double t = k * tau;
    const std::vector<Observation> obs{Obs(5, 5), Obs(-10 + 2.0 * t, -5),
                                       Obs(30 + 10.0 * t, 10),
                                       Obs(-5, 20 + 2.0 * t, semantic::kPerson)};
    const auto out = tracker.Step(obs, 0.0, tau);
    if (k >= 2) {
      ASSERT_TRUE(out[0].stable);
      EXPECT_EQ(out[0].verdict, MotionVerdict::kSemiStatic) << k;
      for (int j = 1; j < 4; ++j) EXPECT_EQ(out[j].verdict, MotionVerdict::kDynamic) << k << j;
    }
  }
}

TEST(MultiObjectTrackerTest, SpawnedTracksStartAtRest) {
  MultiObjectTracker tracker;
  const std::vector<Observation> obs{Obs(3, 4)};
  tracker.Step(obs, 0.0, 0.1);
  ASSERT_EQ(tracker.tracks().size(), 1u);
  const Track& t = tracker.tracks()[0];
  EXPECT_EQ(t.state.Velocity(), Eigen::Vector2d::Zero());
  EXPECT_EQ(t.state.Position(), Eigen::Vector2d(3, 4));
  EXPECT_EQ(t.verdict, MotionVerdict::kUnknown);
  EXPECT_EQ(t.state.covariance.diagonal(), Eigen::Vector4d(1, 25, 1, 25));
}

TEST(MultiObjectTrackerTest, ApplyCorrectionMovesTracks) {
  MultiObjectTracker tracker;
  const std::vector<Observation> obs{Obs(10, 0)};
  tracker.Step(obs, 0.0, 0.1);
  const std::vector<Observation> moved{Obs(10.5, 0)};
  tracker.Step(moved, 0.0, 0.1);
  const Track before = tracker.tracks()[0];
  const PoseDelta2D correction{1.0, 2.0, std::numbers::pi / 2.0};
  tracker.ApplyCorrection(correction);
  const Track& after = tracker.tracks()[0];
  EXPECT_NEAR((after.state.Position() - correction * before.state.Position()).norm(), 0, 1e-12);
  EXPECT_NEAR(after.state.Velocity().x(), -before.state.Velocity().y(), 1e-12);
  EXPECT_NEAR(after.state.Velocity().y(), before.state.Velocity().x(), 1e-12);
  EXPECT_NEAR((after.last_centre_world - correction * before.last_centre_world).norm(), 0,
              1e-12);
  ExpectSymmetricPsd(after.state.covariance);
  EXPECT_NEAR(after.state.covariance.trace(), before.state.covariance.trace(), 1e-9);
}

}  // namespace
}  // namespace tracking
}  // namespace hullslam
