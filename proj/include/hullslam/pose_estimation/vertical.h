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

#ifndef HULLSLAM_POSE_ESTIMATION_VERTICAL_H_
#define HULLSLAM_POSE_ESTIMATION_VERTICAL_H_

#include <optional>
#include <span>
#include <vector>

#include "Eigen/Core"

namespace hullslam {
namespace pose_estimation {

// Axis-aligned box in the sensor xy-plane.
struct GroundRegion {
  double x_min;
  double x_max;
  double y_abs_max;

  bool Contains(const Eigen::Vector3d& p) const {
    return p.x() >= x_min && p.x() <= x_max && std::abs(p.y()) <= y_abs_max;
  }
};

struct VerticalConfig {
  GroundRegion front{2.0, 12.0, 3.0};
  GroundRegion rear{-12.0, -2.0, 3.0};
  int min_points = 20;
  double trim_sigma = 3.0;
  int trim_rounds = 2;
};

// n . p + offset = 0 with |n| = 1 and n.z > 0.
struct GroundPlane {
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  double offset = 0.0;
  int inliers = 0;

  // Perpendicular distance from the sensor origin.
  double SensorHeight() const { return std::abs(offset); }
};

// Least-squares fit of z = a x + b y + c followed by `rounds` passes that drop
// points whose residual is more than `trim_sigma` robust deviations (scaled
// median absolute deviation) from the median residual, then refit.
std::optional<GroundPlane> FitGroundPlane(std::span<const Eigen::Vector3d> points,
                                          double trim_sigma, int rounds);

// Pitch of a unit ground normal seen from the sensor; positive when the
// ground rises ahead (nose pitched down, rotation about +y).
double PitchOfNormal(const Eigen::Vector3d& normal);

struct VerticalEstimate {
  double pitch = 0.0;  // radians, relative to the reference normal
  double dz = 0.0;     // meters, change in sensor height since last estimate
  double sensor_height = 0.0;
  Eigen::Vector3d normal = Eigen::Vector3d::UnitZ();
  // Not enough ground points; pitch and height carried forward.
  bool carried_forward = false;
};

// Estimates pitch against a reference ground normal (the initial pose's) and
// the sensor height change relative to `previous`.
VerticalEstimate EstimateVertical(std::span<const Eigen::Vector3d> ground_points,
                                  const Eigen::Vector3d& reference_normal,
                                  const VerticalEstimate& previous,
                                  const VerticalConfig& cfg = {});

// Keeps the reference normal (first successful fit) and the previous estimate
// across frames.
class VerticalEstimator {
 public:
  explicit VerticalEstimator(const VerticalConfig& cfg = {}) : cfg_(cfg) {}

  VerticalEstimate Estimate(std::span<const Eigen::Vector3d> ground_points);

 private:
  VerticalConfig cfg_;
  std::optional<Eigen::Vector3d> reference_normal_;
  std::optional<VerticalEstimate> previous_;
};

}  // namespace pose_estimation
}  // namespace hullslam

#endif  // HULLSLAM_POSE_ESTIMATION_VERTICAL_H_
