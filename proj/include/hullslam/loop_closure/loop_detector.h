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

#ifndef HULLSLAM_LOOP_CLOSURE_LOOP_DETECTOR_H_
#define HULLSLAM_LOOP_CLOSURE_LOOP_DETECTOR_H_

#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>

#include "hullslam/common/pose.h"
#include "hullslam/loop_closure/descriptor.h"
#include "hullslam/pose_estimation/pso.h"

namespace hullslam {
namespace loop_closure {

struct LoopConfig {
  int keyframe_every = 5;
  double sim_threshold = 0.85;
  int min_separation = 50;  // keyframes
  int top_k = 3;
  int min_pairs = 5;
  double overlap_ratio = 0.4;
  DescriptorConfig descriptor;
  pose_estimation::PsoConfig pso{
      .search_bounds = {10.0, 10.0, std::numbers::pi}};
  // Centre-constellation hypothesis used as the PSO prior.
  double hypothesis_tolerance_m = 0.5;
  double inlier_radius_m = 1.0;
  int hypothesis_landmarks = 30;
};

struct LoopCandidate {
  int keyframe_id = 0;
  double similarity = 0.0;
};

// Relative motion mapping the current keyframe into the candidate keyframe:
// p_candidate = delta * p_current (+ dz vertically).
struct LoopConstraint {
  int candidate_keyframe = 0;
  int current_keyframe = 0;
  PoseDelta2D delta;
  double dz = 0.0;
  int pair_count = 0;
  double overlap_ratio = 0.0;
  double similarity = 0.0;
};

class LoopDatabase {
 public:
  explicit LoopDatabase(const LoopConfig& config = {}) : config_(config) {}

  void Add(KeyframeDescriptor descriptor);
  // Non-weak past descriptors at least min_separation keyframes older than
  // `query` and at least sim_threshold similar, best first, at most top_k.
  std::vector<LoopCandidate> Query(const KeyframeDescriptor& query) const;
  const KeyframeDescriptor& Get(int keyframe_id) const;
  std::size_t size() const { return descriptors_.size(); }

 private:
  LoopConfig config_;
  std::vector<KeyframeDescriptor> descriptors_;
};

// Rigid planar alignment from centre constellations: the hypothesis with the
// most same-class centre inliers, refined by least squares over its inliers.
// nullopt when no hypothesis has two or more inliers.
std::optional<PoseDelta2D> AlignConstellations(
    std::span<const segmentation::Landmark> candidate,
    std::span<const segmentation::Landmark> current, const LoopConfig& config);

// Pairs the snapshots (semantic + distance criteria) under the constellation
// prior and registers them with PSO over the wide loop bounds. Accepted iff
// at least min_pairs pairs and the overlap ratio reaches the threshold.
std::optional<LoopConstraint> VerifyLoop(const KeyframeDescriptor& candidate,
                                         const KeyframeDescriptor& current,
                                         const LoopConfig& config,
                                         std::uint64_t seed);

}  // namespace loop_closure
}  // namespace hullslam

#endif  // HULLSLAM_LOOP_CLOSURE_LOOP_DETECTOR_H_
