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

#include "hullslam/tracking/kalman.h"

#include <cmath>

#include "Eigen/Cholesky"
#include "Eigen/LU"
#include "hullslam/common/errors.h"

namespace hullslam {
namespace tracking {

Eigen::Matrix4d TransitionMatrix(double omega, double tau) {
  Require(tau > 0.0, "TransitionMatrix: tau must be positive");
  const double wt = omega * tau;
  const double c = std::cos(wt);
  const double s = std::sin(wt);
  double sin_term;  // sin(w t) / w
  double cos_term;  // (1 - cos(w t)) / w
  if (std::abs(omega) < kSmallTurnRate) {
    // Series forms avoid the 0/0 and the cancellation in 1 - cos.
    sin_term = tau * (1.0 - wt * wt / 6.0);
    cos_term = 0.5 * wt * tau * (1.0 - wt * wt / 12.0);
  } else {
    sin_term = s / omega;
    cos_term = (1.0 - c) / omega;
  }
  Eigen::Matrix4d f;
  // clang-format off
  f << 1.0, sin_term, 0.0, -cos_term,
       0.0, c,        0.0, -s,
       0.0, cos_term, 1.0, sin_term,
       0.0, s,        0.0, c;
  // clang-format on
  return f;
}

Eigen::Matrix<double, 4, 2> NoiseGain(double tau) {
  Eigen::Matrix<double, 4, 2> g;
  // clang-format off
  g << 0.5 * tau * tau, 0.0,
       tau,             0.0,
       0.0,             0.5 * tau * tau,
       0.0,             tau;
  // clang-format on
  return g;
}

Eigen::Matrix<double, 2, 4> MeasurementMatrix() {
  Eigen::Matrix<double, 2, 4> h;
  h << 1.0, 0.0, 0.0, 0.0,
       0.0, 0.0, 1.0, 0.0;
  return h;
}

TrackState Predict(const TrackState& state, double omega, double tau,
                   double process_sigma) {
  Require(tau > 0.0, "Predict: tau must be positive");
  const Eigen::Matrix4d f = TransitionMatrix(omega, tau);
  const Eigen::Matrix<double, 4, 2> g = NoiseGain(tau);
  TrackState predicted;
  predicted.mean = f * state.mean;
  predicted.covariance = f * state.covariance * f.transpose() +
                         process_sigma * process_sigma * g * g.transpose();
  predicted.covariance =
      0.5 * (predicted.covariance + predicted.covariance.transpose());
  return predicted;
}

std::optional<TrackState> Update(const TrackState& state,
                                 const Eigen::Vector2d& measurement,
                                 double measurement_sigma) {
  if (!measurement.allFinite()) return std::nullopt;
  const Eigen::Matrix<double, 2, 4> h = MeasurementMatrix();
  const Eigen::Matrix2d r =
      measurement_sigma * measurement_sigma * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d innovation_cov =
      h * state.covariance * h.transpose() + r;
  const Eigen::Matrix<double, 4, 2> gain =
      state.covariance * h.transpose() * innovation_cov.inverse();
  TrackState updated;
  updated.mean = state.mean + gain * (measurement - h * state.mean);
  // Joseph form keeps P positive semidefinite under round-off.
  const Eigen::Matrix4d i_kh = Eigen::Matrix4d::Identity() - gain * h;
  updated.covariance = i_kh * state.covariance * i_kh.transpose() +
                       gain * r * gain.transpose();
  updated.covariance =
      0.5 * (updated.covariance + updated.covariance.transpose());
  return updated;
}

}  // namespace tracking
}  // namespace hullslam
