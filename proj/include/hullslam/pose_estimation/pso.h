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

#ifndef HULLSLAM_POSE_ESTIMATION_PSO_H_
#define HULLSLAM_POSE_ESTIMATION_PSO_H_

#include <cstdint>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/pose.h"
#include "hullslam/geometry/hull_feature.h"

namespace hullslam {
namespace pose_estimation {

// Particle swarm with linearly decaying inertia. Positions are pose deltas
// (dx, dy, dtheta); velocities are their per-iteration adjustments.
struct PsoConfig {
  int swarm_size = 50;
  int max_iterations = 100;
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  double cognitive = 2.0;  // c1, pull toward the particle's own best
  double social = 2.0;     // c2, pull toward the swarm's best
  // Half-widths of the search box around the prior: meters, meters, radians.
  Eigen::Vector3d search_bounds{2.0, 2.0, 5.0 * std::numbers::pi / 180.0};
  std::uint64_t seed = 1;
};

struct PsoResult {
  PoseDelta2D pose;
  double objective = 0.0;
  // Global-best objective after each iteration.
  std::vector<double> best_history;
  // Too few features to register; `pose` is the prior.
  bool low_confidence = false;
};

using PoseObjective = std::function<double(const PoseDelta2D&)>;

// Maximizes `objective` over prior +- cfg.search_bounds. Particle 0 starts at
// the prior. Every particle's velocity is updated before its position, and
// the global best is refreshed only after the whole swarm has been evaluated.
PsoResult MaximizeWithPso(const PoseObjective& objective,
                          const PoseDelta2D& prior, const PsoConfig& cfg);

inline constexpr int kMinPsoFeatures = 3;

// Maximizes OverlapObjective. With fewer than kMinPsoFeatures features the
// prior is returned flagged low-confidence.
PsoResult SolvePso(std::span<const geometry::ConvexHullFeature> features,
                   const PoseDelta2D& prior, const PsoConfig& cfg);

}  // namespace pose_estimation
}  // namespace hullslam

#endif  // HULLSLAM_POSE_ESTIMATION_PSO_H_
