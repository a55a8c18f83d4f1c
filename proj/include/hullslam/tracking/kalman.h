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

#ifndef HULLSLAM_TRACKING_KALMAN_H_
#define HULLSLAM_TRACKING_KALMAN_H_

#include <optional>

#include "Eigen/Core"

namespace hullslam {
namespace tracking {

using StateVector = Eigen::Vector4d;      // [x, vx, y, vy]
using StateCovariance = Eigen::Matrix4d;

struct TrackState {
  StateVector mean = StateVector::Zero();
  StateCovariance covariance = StateCovariance::Identity();

  Eigen::Vector2d Position() const { return {mean[0], mean[2]}; }
  Eigen::Vector2d Velocity() const { return {mean[1], mean[3]}; }
};

// Below this turn rate (rad/s) the transition uses truncated series for
// sin(w t)/w and (1 - cos(w t))/w; at omega = 0 it is exactly constant velocity.
inline constexpr double kSmallTurnRate = 1e-4;

// Constant-turn-rate transition over one period `tau`.
Eigen::Matrix4d TransitionMatrix(double omega, double tau);

// Maps the acceleration noise [w_x, w_y] into the state.
Eigen::Matrix<double, 4, 2> NoiseGain(double tau);

// Measurement matrix picking (x, y).
Eigen::Matrix<double, 2, 4> MeasurementMatrix();

// x <- F x, P <- F P F' + G Q G' with Q = process_sigma^2 I.
// Throws ContractViolation when tau <= 0.
TrackState Predict(const TrackState& state, double omega, double tau,
                   double process_sigma);

// Standard Kalman update with R = measurement_sigma^2 I. The covariance is
// symmetrized afterwards. nullopt for a non-finite measurement.
std::optional<TrackState> Update(const TrackState& state,
                                 const Eigen::Vector2d& measurement,
                                 double measurement_sigma);

}  // namespace tracking
}  // namespace hullslam

#endif  // HULLSLAM_TRACKING_KALMAN_H_
