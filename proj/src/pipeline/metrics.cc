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

#include "hullslam/pipeline/metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hullslam/common/errors.h"

namespace hullslam {
namespace pipeline {

std::vector<double> TrajectoryDistances(std::span<const PoseSE3> poses) {
  std::vector<double> distances(poses.size(), 0.0);
  for (std::size_t i = 1; i < poses.size(); ++i) {
    distances[i] = distances[i - 1] +
                   (poses[i].translation - poses[i - 1].translation).norm();
  }
  return distances;
}

double RotationAngle(const Eigen::Matrix3d& rotation) {
  const double c = 0.5 * (rotation.trace() - 1.0);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

RelativeErrors KittiRelativeErrors(std::span<const PoseSE3> estimated,
                                   std::span<const PoseSE3> ground_truth) {
  Require(estimated.size() == ground_truth.size(),
          "KittiRelativeErrors: trajectories differ in length");
  static constexpr double kLengths[] = {100, 200, 300, 400, 500, 600, 700, 800};
  const std::vector<double> distances = TrajectoryDistances(ground_truth);
  double t_sum = 0.0;
  double r_sum = 0.0;
  int segments = 0;
  for (std::size_t first = 0; first < ground_truth.size(); ++first) {
    for (const double length : kLengths) {
      const auto last_it = std::upper_bound(distances.begin() + first,
                                            distances.end(),
                                            distances[first] + length);
      if (last_it == distances.end()) continue;
      const std::size_t last = static_cast<std::size_t>(last_it - distances.begin());
      const PoseSE3 delta_gt = ground_truth[first].Inverse() * ground_truth[last];
      const PoseSE3 delta_est = estimated[first].Inverse() * estimated[last];
      const PoseSE3 error = delta_est.Inverse() * delta_gt;
      t_sum += error.translation.norm() / length;
      r_sum += RotationAngle(error.rotation) / length;
      ++segments;
    }
  }
  if (segments == 0) throw DataError("insufficient length");
  RelativeErrors out;
  out.segments = segments;
  out.t_rel = 100.0 * t_sum / segments;
  out.r_rel = (180.0 / std::numbers::pi) * r_sum / segments;
  return out;
}

}  // namespace pipeline
}  // namespace hullslam
