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

#include "hullslam/loop_closure/descriptor.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "hullslam/common/errors.h"

namespace hullslam {
namespace loop_closure {
namespace {

int ClassRow(ClassId id) {
  const auto classes = semantic::PureStaticClasses();
  const auto it = std::find(classes.begin(), classes.end(), id);
  return static_cast<int>(it - classes.begin());
}

std::vector<double> NormalizedRows(const KeyframeDescriptor& d) {
  std::vector<double> out;
  for (const std::vector<int>& row : d.histograms) {
    double norm = 0.0;
    for (const int count : row) norm += static_cast<double>(count) * count;
    norm = std::sqrt(norm);
    for (const int count : row) out.push_back(norm > 0.0 ? count / norm : 0.0);
  }
  return out;
}

}  // namespace

int KeyframeDescriptor::LandmarkCount() const {
  int total = 0;
  for (const auto& row : histograms) {
    for (const int count : row) total += count;
  }
  return total;
}

KeyframeDescriptor MakeDescriptor(int keyframe_id, int frame_index,
                                  std::span<const segmentation::Landmark> landmarks,
                                  const DescriptorConfig& config) {
  Require(config.bins > 0 && config.bin_width_m > 0.0,
          "MakeDescriptor: bad bin geometry");
  KeyframeDescriptor descriptor;
  descriptor.keyframe_id = keyframe_id;
  descriptor.frame_index = frame_index;
  descriptor.histograms.assign(semantic::PureStaticClasses().size(),
                               std::vector<int>(config.bins, 0));
  for (const segmentation::Landmark& landmark : landmarks) {
    // Audit: moving or possibly-moving objects must never shape a place
    // signature.
    Require(semantic::IsPureStatic(landmark.class_id),
            "MakeDescriptor: landmark of class " +
                std::to_string(landmark.class_id) + " is not pure-static");
    const double range = std::hypot(landmark.centre.x(), landmark.centre.y());
    const int bin = static_cast<int>(std::floor(range / config.bin_width_m));
    if (bin < 0 || bin >= config.bins) continue;
    ++descriptor.histograms[ClassRow(landmark.class_id)][bin];

    segmentation::Landmark snapshot;
    snapshot.instance_id = landmark.instance_id;
    snapshot.class_id = landmark.class_id;
    snapshot.centre = landmark.centre;
    const std::size_t stride = std::max<std::size_t>(
        1, (landmark.points.size() + config.snapshot_points - 1) /
               config.snapshot_points);
    for (std::size_t i = 0; i < landmark.points.size(); i += stride) {
      snapshot.points.push_back(landmark.points[i]);
    }
    descriptor.landmarks.push_back(std::move(snapshot));
  }
  descriptor.weak = descriptor.LandmarkCount() < config.min_landmarks;
  return descriptor;
}

double DescriptorSimilarity(const KeyframeDescriptor& a,
                            const KeyframeDescriptor& b) {
  const std::vector<double> va = NormalizedRows(a);
  const std::vector<double> vb = NormalizedRows(b);
  if (va.size() != vb.size()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

}  // namespace loop_closure
}  // namespace hullslam
