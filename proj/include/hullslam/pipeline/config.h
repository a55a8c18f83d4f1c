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

#ifndef HULLSLAM_PIPELINE_CONFIG_H_
#define HULLSLAM_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "hullslam/loop_closure/loop_detector.h"
#include "hullslam/pose_estimation/odometry.h"
#include "hullslam/pose_estimation/vertical.h"
#include "hullslam/segmentation/segmentation.h"
#include "hullslam/tracking/tracker.h"

namespace hullslam {
namespace pipeline {

enum class PipelineMode {
  kFull,            // preliminary + tracking + scan-to-submap + vertical
  kPreliminaryAll,  // scan-to-scan on every landmark only (ablation baseline)
};

struct SlamConfig {
  segmentation::SegmentationConfig segmentation;
  pose_estimation::PreliminaryConfig prelim;
  pose_estimation::SubmapConfig submap;
  pose_estimation::PreciseConfig precise;
  pose_estimation::VerticalConfig vertical;
  tracking::TrackingConfig tracking;
  loop_closure::LoopConfig loop;
  bool loop_enabled = true;
  double voxel_size = 0.2;
  PipelineMode mode = PipelineMode::kFull;
  std::uint64_t seed = 1;
  // Fault injection for back-end tests: added to every frame's yaw delta.
  double yaw_bias_rad_per_frame = 0.0;
};

// Applies a JSON object of dotted keys (nested objects are flattened, so
// {"loop": {"enabled": false}} equals {"loop.enabled": false}), e.g.
//   {"pso.swarm_size": 40, "tracking.v_max.car": 0.7, "loop.enabled": false}
// on top of `base`. Unknown keys and wrongly typed values throw FormatError.
SlamConfig ParseConfig(const std::string& json_text, SlamConfig base = {});
SlamConfig LoadConfig(const std::filesystem::path& path, SlamConfig base = {});

// Every scalar setting as a flat dotted-key JSON object (per-class tracking
// overrides included when set). ParseConfig(DumpConfig(c)) == c.
std::string DumpConfig(const SlamConfig& config);

}  // namespace pipeline
}  // namespace hullslam

#endif  // HULLSLAM_PIPELINE_CONFIG_H_
