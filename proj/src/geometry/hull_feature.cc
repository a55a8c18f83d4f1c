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

#include "hullslam/geometry/hull_feature.h"

#include "hullslam/common/errors.h"

namespace hullslam {
namespace geometry {
namespace {

void Assign(std::span<const Eigen::Vector3d> points, double threshold,
            LayeredPoints& out) {
  for (const Eigen::Vector3d& p : points) {
    (p.z() >= threshold ? out.upper : out.lower).emplace_back(p.x(), p.y());
  }
}

}  // namespace

LayerSplit SplitLayers(std::span<const Eigen::Vector3d> prev_points,
                       std::span<const Eigen::Vector3d> curr_points) {
  Require(!prev_points.empty() && !curr_points.empty(),
          "SplitLayers: both landmarks need points");
  double sum = 0.0;
  for (const auto& p : prev_points) sum += p.z();
  for (const auto& p : curr_points) sum += p.z();
  LayerSplit split;
  split.threshold = sum / static_cast<double>(prev_points.size() +
                                              curr_points.size());
  Assign(prev_points, split.threshold, split.prev);
  Assign(curr_points, split.threshold, split.curr);
  return split;
}

}  // namespace geometry
}  // namespace hullslam
