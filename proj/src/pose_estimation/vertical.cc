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

#include "hullslam/pose_estimation/vertical.h"

#include <algorithm>
#include <cmath>

#include "Eigen/Cholesky"
#include "Eigen/LU"

namespace hullslam {
namespace pose_estimation {
namespace {

// Consistent scale factor from MAD to a Gaussian standard deviation.
constexpr double kMadToSigma = 1.4826;
// Floor on the trimming deviation so exact (noise-free) ground keeps all points.
constexpr double kMinTrimSigma = 1e-3;

double Median(std::vector<double> values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  double median = values[mid];
  if (values.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(values.begin(),
                                               values.begin() + mid));
  }
  return median;
}

std::optional<Eigen::Vector3d> SolveHeightField(
    std::span<const Eigen::Vector3d> points, const std::vector<char>& keep) {
  Eigen::Matrix3d ata = Eigen::Matrix3d::Zero();
  Eigen::Vector3d atb = Eigen::Vector3d::Zero();
  int used = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!keep[i]) continue;
    const Eigen::Vector3d row(points[i].x(), points[i].y(), 1.0);
    ata += row * row.transpose();
    atb += row * points[i].z();
    ++used;
  }
  if (used < 3) return std::nullopt;
  const Eigen::LDLT<Eigen::Matrix3d> ldlt(ata);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      std::abs(ata.determinant()) < 1e-12) {
    return std::nullopt;
  }
  return ldlt.solve(atb);
}

}  // namespace

std::optional<GroundPlane> FitGroundPlane(std::span<const Eigen::Vector3d> points,
                                          double trim_sigma, int rounds) {
  std::vector<char> keep(points.size(), 1);
  std::optional<Eigen::Vector3d> coeffs = SolveHeightField(points, keep);
  for (int round = 0; round < rounds && coeffs; ++round) {
    std::vector<double> residuals(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      residuals[i] = points[i].z() - ((*coeffs)[0] * points[i].x() +
                                      (*coeffs)[1] * points[i].y() + (*coeffs)[2]);
    }
    const double median = Median(residuals);
    std::vector<double> deviations(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      deviations[i] = std::abs(residuals[i] - median);
    }
    const double sigma = std::max(kMadToSigma * Median(deviations), kMinTrimSigma);
    for (std::size_t i = 0; i < points.size(); ++i) {
      keep[i] = deviations[i] <= trim_sigma * sigma;
    }
    coeffs = SolveHeightField(points, keep);
  }
  if (!coeffs) return std::nullopt;

  const Eigen::Vector3d raw(-(*coeffs)[0], -(*coeffs)[1], 1.0);
  const double norm = raw.norm();
  GroundPlane plane;
  plane.normal = raw / norm;
  plane.offset = -(*coeffs)[2] / norm;
  plane.inliers = static_cast<int>(std::count(keep.begin(), keep.end(), 1));
  return plane;
}

double PitchOfNormal(const Eigen::Vector3d& normal) {
  return std::atan2(-normal.x(), normal.z());
}

VerticalEstimate EstimateVertical(std::span<const Eigen::Vector3d> ground_points,
                                  const Eigen::Vector3d& reference_normal,
                                  const VerticalEstimate& previous,
                                  const VerticalConfig& cfg) {
  std::vector<Eigen::Vector3d> front, rear;
  for (const Eigen::Vector3d& p : ground_points) {
    if (cfg.front.Contains(p)) front.push_back(p);
    if (cfg.rear.Contains(p)) rear.push_back(p);
  }
  VerticalEstimate carried = previous;
  carried.dz = 0.0;
  carried.carried_forward = true;
  if (static_cast<int>(front.size()) < cfg.min_points ||
      static_cast<int>(rear.size()) < cfg.min_points) {
    return carried;
  }
  const auto front_plane = FitGroundPlane(front, cfg.trim_sigma, cfg.trim_rounds);
  const auto rear_plane = FitGroundPlane(rear, cfg.trim_sigma, cfg.trim_rounds);
  if (!front_plane || !rear_plane) return carried;

  VerticalEstimate estimate;
  estimate.normal = (front_plane->normal + rear_plane->normal).normalized();
  estimate.pitch = PitchOfNormal(estimate.normal) - PitchOfNormal(reference_normal);
  estimate.sensor_height =
      0.5 * (front_plane->SensorHeight() + rear_plane->SensorHeight());
  estimate.dz = previous.sensor_height > 0.0
                    ? estimate.sensor_height - previous.sensor_height
                    : 0.0;
  return estimate;
}

VerticalEstimate VerticalEstimator::Estimate(
    std::span<const Eigen::Vector3d> ground_points) {
  const VerticalEstimate previous = previous_.value_or(VerticalEstimate{});
  VerticalEstimate estimate = EstimateVertical(
      ground_points, reference_normal_.value_or(Eigen::Vector3d::UnitZ()),
      previous, cfg_);
  if (!estimate.carried_forward && !reference_normal_) {
    // The first successful fit defines the initial-pose ground normal.
    reference_normal_ = estimate.normal;
    estimate.pitch = 0.0;
  }
  previous_ = estimate;
  return estimate;
}

}  // namespace pose_estimation
}  // namespace hullslam
