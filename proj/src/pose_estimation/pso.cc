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

#include "hullslam/pose_estimation/pso.h"

#include <algorithm>
#include <random>

#include "hullslam/common/errors.h"
#include "hullslam/pose_estimation/registration.h"

namespace hullslam {
namespace pose_estimation {
namespace {

using Vector3 = Eigen::Vector3d;

PoseDelta2D ToPose(const Vector3& x) { return {x[0], x[1], x[2]}; }

struct Particle {
  Vector3 position;
  Vector3 velocity;
  Vector3 best_position;
  double best_value;
};

}  // namespace

PsoResult MaximizeWithPso(const PoseObjective& objective,
                          const PoseDelta2D& prior, const PsoConfig& cfg) {
  Require(cfg.swarm_size >= 2, "PSO: swarm_size must be >= 2");
  Require(cfg.max_iterations >= 1, "PSO: max_iterations must be >= 1");
  Require((cfg.search_bounds.array() > 0.0).all(),
          "PSO: search bounds must be positive");

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Vector3 centre(prior.dx, prior.dy, prior.dtheta);
  const Vector3 lower = centre - cfg.search_bounds;
  const Vector3 upper = centre + cfg.search_bounds;
  const Vector3& max_speed = cfg.search_bounds;

  std::vector<Particle> swarm(cfg.swarm_size);
  for (int i = 0; i < cfg.swarm_size; ++i) {
    Particle& p = swarm[i];
    for (int d = 0; d < 3; ++d) {
      p.position[d] = i == 0 ? centre[d] : lower[d] + unit(rng) * (upper[d] - lower[d]);
      p.velocity[d] = (2.0 * unit(rng) - 1.0) * 0.1 * max_speed[d];
    }
    p.best_position = p.position;
    p.best_value = objective(ToPose(p.position));
  }
  const auto best_of_swarm = [&swarm]() {
    return std::max_element(swarm.begin(), swarm.end(),
                            [](const Particle& a, const Particle& b) {
                              return a.best_value < b.best_value;
                            });
  };
  Vector3 global_best = best_of_swarm()->best_position;
  double global_value = best_of_swarm()->best_value;

  PsoResult result;
  result.best_history.reserve(cfg.max_iterations);
  for (int iteration = 0; iteration < cfg.max_iterations; ++iteration) {
    const double progress =
        cfg.max_iterations > 1
            ? static_cast<double>(iteration) / (cfg.max_iterations - 1)
            : 1.0;
    const double inertia =
        cfg.inertia_start + (cfg.inertia_end - cfg.inertia_start) * progress;
    for (Particle& p : swarm) {
      for (int d = 0; d < 3; ++d) {
        const double r1 = unit(rng);
        const double r2 = unit(rng);
        double v = inertia * p.velocity[d] +
                   cfg.cognitive * r1 * (p.best_position[d] - p.position[d]) +
                   cfg.social * r2 * (global_best[d] - p.position[d]);
        v = std::clamp(v, -max_speed[d], max_speed[d]);
        double x = p.position[d] + v;
        if (x < lower[d] || x > upper[d]) {
          x = std::clamp(x, lower[d], upper[d]);
          v = 0.0;
        }
        p.velocity[d] = v;
        p.position[d] = x;
      }
      const double value = objective(ToPose(p.position));
      if (value > p.best_value) {
        p.best_value = value;
        p.best_position = p.position;
      }
    }
    // Barrier: the swarm best moves only once every particle is evaluated.
    const auto best = best_of_swarm();
    if (best->best_value > global_value) {
      global_value = best->best_value;
      global_best = best->best_position;
    }
    result.best_history.push_back(global_value);
  }

  result.pose = {global_best[0], global_best[1], WrapAngle(global_best[2])};
  result.objective = global_value;
  return result;
}

PsoResult SolvePso(std::span<const geometry::ConvexHullFeature> features,
                   const PoseDelta2D& prior, const PsoConfig& cfg) {
  if (static_cast<int>(features.size()) < kMinPsoFeatures) {
    PsoResult result;
    result.pose = prior;
    result.objective = OverlapObjective(prior, features);
    result.low_confidence = true;
    return result;
  }
  return MaximizeWithPso(
      [features](const PoseDelta2D& t) { return OverlapObjective(t, features); },
      prior, cfg);
}

}  // namespace pose_estimation
}  // namespace hullslam
