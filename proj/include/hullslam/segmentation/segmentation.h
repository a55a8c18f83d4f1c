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

#ifndef HULLSLAM_SEGMENTATION_SEGMENTATION_H_
#define HULLSLAM_SEGMENTATION_SEGMENTATION_H_

#include <cstddef>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/semantic_classes.h"
#include "hullslam/dataio/kitti_io.h"

namespace hullslam {
namespace segmentation {

struct LabeledPoint {
  Eigen::Vector3d position;
  ClassId class_id;
};

// Disjoint split of one frame; the four sets together hold every input point.
struct ClassPartition {
  std::vector<LabeledPoint> ground;
  std::vector<LabeledPoint> static_candidates;
  std::vector<LabeledPoint> unknown_candidates;
  std::vector<LabeledPoint> discarded;
  // Points whose class id this library does not know (counted into
  // `discarded`).
  std::size_t unknown_class_count = 0;

  std::size_t size() const {
    return ground.size() + static_candidates.size() +
           unknown_candidates.size() + discarded.size();
  }
};

ClassPartition PartitionByClass(const dataio::LabeledFrame& frame);

struct DbscanParams {
  double eps = 1.0;  // neighborhood radius, meters
  int min_pts = 10;  // neighborhood size (self included) for a core point
};

enum class SizeGroup { kSmall, kMedium, kLarge };

struct SegmentationConfig {
  DbscanParams small{0.5, 5};
  DbscanParams medium{1.0, 10};
  DbscanParams large{2.0, 20};
  // Candidates farther than this (3D range) are dropped before clustering.
  double max_range_m = 60.0;
};

// Throws ContractViolation for ground and discarded classes.
SizeGroup SizeGroupOf(ClassId class_id);
DbscanParams AdaptiveParams(ClassId class_id,
                            const SegmentationConfig& config = {});

// One clustered instance. `centre` is the componentwise mean of `points`.
struct Landmark {
  int instance_id = 0;
  ClassId class_id = semantic::kUnlabeled;
  std::vector<Eigen::Vector3d> points;
  Eigen::Vector3d centre = Eigen::Vector3d::Zero();
};

Eigen::Vector3d Centroid(std::span<const Eigen::Vector3d> points);

inline constexpr int kNoise = -1;

// DBSCAN over 3D Euclidean distance. Returns a cluster label per point, or
// kNoise. Clusters are numbered by the index of their lowest-index core point;
// a border point reachable from several clusters joins the cluster of its
// lowest-index core neighbor.
std::vector<int> DbscanLabels(std::span<const Eigen::Vector3d> points,
                              const DbscanParams& params);

// Clusters points that all carry `class_id`. Instance ids start at
// `first_instance_id` and follow cluster order.
std::vector<Landmark> ClusterInstances(std::span<const Eigen::Vector3d> points,
                                       ClassId class_id,
                                       const DbscanParams& params,
                                       int first_instance_id = 0);

struct SegmentedFrame {
  std::vector<Eigen::Vector3d> ground;
  std::vector<LabeledPoint> ground_labeled;
  std::vector<Landmark> static_landmarks;
  std::vector<Landmark> unknown_landmarks;
  std::size_t discarded_count = 0;
  std::size_t unknown_class_count = 0;
};

// Partition, range cap, then per-class clustering. Instance ids are unique
// within the frame.
SegmentedFrame SegmentFrame(const dataio::LabeledFrame& frame,
                            const SegmentationConfig& config = {});

}  // namespace segmentation
}  // namespace hullslam

#endif  // HULLSLAM_SEGMENTATION_SEGMENTATION_H_
