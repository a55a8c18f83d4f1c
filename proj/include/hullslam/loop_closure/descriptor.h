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

#ifndef HULLSLAM_LOOP_CLOSURE_DESCRIPTOR_H_
#define HULLSLAM_LOOP_CLOSURE_DESCRIPTOR_H_

#include <span>
#include <vector>

#include "hullslam/common/semantic_classes.h"
#include "hullslam/segmentation/segmentation.h"

namespace hullslam {
namespace loop_closure {

struct DescriptorConfig {
  int bins = 16;
  double bin_width_m = 4.0;
  // Fewer pure-static landmarks than this flags the descriptor weak.
  int min_landmarks = 5;
  // Points kept per landmark in the snapshot used for verification.
  int snapshot_points = 256;
};

// Rotation-invariant place signature: for every pure-static class, a
// histogram of landmark centre ranges in the sensor xy-plane.
struct KeyframeDescriptor {
  int keyframe_id = 0;
  int frame_index = 0;
  // One row per entry of semantic::PureStaticClasses(), `bins` columns.
  std::vector<std::vector<int>> histograms;
  // Sensor-frame landmarks (points subsampled) for geometric verification.
  std::vector<segmentation::Landmark> landmarks;
  bool weak = false;

  int LandmarkCount() const;
};

// Throws ContractViolation if any landmark is not pure-static.
KeyframeDescriptor MakeDescriptor(int keyframe_id, int frame_index,
                                  std::span<const segmentation::Landmark> landmarks,
                                  const DescriptorConfig& config = {});

// Cosine similarity of the concatenated histograms, each class row scaled to
// unit length first. 0 when either side is empty.
double DescriptorSimilarity(const KeyframeDescriptor& a,
                            const KeyframeDescriptor& b);

}  // namespace loop_closure
}  // namespace hullslam

#endif  // HULLSLAM_LOOP_CLOSURE_DESCRIPTOR_H_
