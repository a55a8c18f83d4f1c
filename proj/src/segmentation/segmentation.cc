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

#include "hullslam/segmentation/segmentation.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <unordered_map>

#include "hullslam/common/errors.h"

namespace hullslam {
namespace segmentation {
namespace {

struct CellKey {
  std::int64_t x, y, z;
  bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
  std::size_t operator()(const CellKey& k) const {
    std::uint64_t h = static_cast<std::uint64_t>(k.x) * 73856093ULL;
    h ^= static_cast<std::uint64_t>(k.y) * 19349663ULL;
    h ^= static_cast<std::uint64_t>(k.z) * 83492791ULL;
    return static_cast<std::size_t>(h);
  }
};

// Uniform grid with cell size eps; a radius-eps query visits 27 cells.
class NeighborGrid {
 public:
  NeighborGrid(std::span<const Eigen::Vector3d> points, double eps)
      : points_(points), eps_(eps), eps_squared_(eps * eps) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      cells_[KeyOf(points[i])].push_back(static_cast<int>(i));
    }
  }

  template <typename Visitor>
  void ForEachNeighbor(int index, Visitor&& visit) const {
    const Eigen::Vector3d& p = points_[index];
    const CellKey center = KeyOf(p);
    for (std::int64_t dx = -1; dx <= 1; ++dx) {
      for (std::int64_t dy = -1; dy <= 1; ++dy) {
        for (std::int64_t dz = -1; dz <= 1; ++dz) {
          const auto it =
              cells_.find({center.x + dx, center.y + dy, center.z + dz});
          if (it == cells_.end()) continue;
          for (const int j : it->second) {
            if ((points_[j] - p).squaredNorm() <= eps_squared_) visit(j);
          }
        }
      }
    }
  }

 private:
  CellKey KeyOf(const Eigen::Vector3d& p) const {
    return {static_cast<std::int64_t>(std::floor(p.x() / eps_)),
            static_cast<std::int64_t>(std::floor(p.y() / eps_)),
            static_cast<std::int64_t>(std::floor(p.z() / eps_))};
  }

  std::span<const Eigen::Vector3d> points_;
  double eps_;
  double eps_squared_;
  std::unordered_map<CellKey, std::vector<int>, CellKeyHash> cells_;
};

int FindRoot(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

void Unite(std::vector<int>& parent, int a, int b) {
  a = FindRoot(parent, a);
  b = FindRoot(parent, b);
  if (a == b) return;
  // Lower index becomes the root so a root is its component's minimum.
  if (a < b) {
    parent[b] = a;
  } else {
    parent[a] = b;
  }
}

}  // namespace

ClassPartition PartitionByClass(const dataio::LabeledFrame& frame) {
  Require(frame.labels.size() == frame.points.size(),
          "PartitionByClass: frame has no labels attached");
  ClassPartition partition;
  for (std::size_t i = 0; i < frame.points.size(); ++i) {
    const LabeledPoint point{frame.points[i], frame.labels[i]};
    switch (semantic::GroupOf(point.class_id)) {
      case semantic::MotionGroup::kGround:
        partition.ground.push_back(point);
        break;
      case semantic::MotionGroup::kPureStatic:
        partition.static_candidates.push_back(point);
        break;
      case semantic::MotionGroup::kUnknownMotion:
        partition.unknown_candidates.push_back(point);
        break;
      case semantic::MotionGroup::kDiscarded:
        if (!semantic::IsKnownClass(point.class_id)) {
          ++partition.unknown_class_count;
        }
        partition.discarded.push_back(point);
        break;
    }
  }
  return partition;
}

SizeGroup SizeGroupOf(ClassId class_id) {
  using namespace semantic;
  switch (class_id) {
    case kPerson:
    case kBicyclist:
    case kMotorcyclist:
    case kTrunk:
    case kPole:
    case kTrafficSign:
      return SizeGroup::kSmall;
    case kCar:
    case kBicycle:
    case kMotorcycle:
    case kOtherVehicle:
      return SizeGroup::kMedium;
    case kBus:
    case kOnRails:
    case kTruck:
    case kBuilding:
    case kFence:
    case kOtherStructure:
    case kVegetation:
      return SizeGroup::kLarge;
    default:
      throw ContractViolation("class " + std::to_string(class_id) + " (" +
                              std::string(ClassName(class_id)) +
                              ") is not clustered");
  }
}

DbscanParams AdaptiveParams(ClassId class_id, const SegmentationConfig& config) {
  switch (SizeGroupOf(class_id)) {
    case SizeGroup::kSmall:
      return config.small;
    case SizeGroup::kMedium:
      return config.medium;
    case SizeGroup::kLarge:
      return config.large;
  }
  return config.medium;
}

Eigen::Vector3d Centroid(std::span<const Eigen::Vector3d> points) {
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  for (const Eigen::Vector3d& p : points) sum += p;
  return points.empty() ? sum : Eigen::Vector3d(sum / points.size());
}

std::vector<int> DbscanLabels(std::span<const Eigen::Vector3d> points,
                              const DbscanParams& params) {
  Require(params.eps > 0.0 && params.min_pts >= 2,
          "DbscanLabels: need eps > 0 and min_pts >= 2");
  const int n = static_cast<int>(points.size());
  std::vector<int> labels(n, kNoise);
  if (n == 0) return labels;

  const NeighborGrid grid(points, params.eps);
  std::vector<char> core(n, 0);
  for (int i = 0; i < n; ++i) {
    int count = 0;
    grid.ForEachNeighbor(i, [&count](int) { ++count; });
    core[i] = count >= params.min_pts;
  }

  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> lowest_core_neighbor(n, n);
  for (int i = 0; i < n; ++i) {
    grid.ForEachNeighbor(i, [&](int j) {
      if (!core[j]) return;
      if (core[i]) Unite(parent, i, j);
      lowest_core_neighbor[i] = std::min(lowest_core_neighbor[i], j);
    });
  }

  // Roots are component minima, so visiting cores in index order numbers
  // clusters by their lowest-index core point.
  std::vector<int> cluster_of_root(n, kNoise);
  int next_cluster = 0;
  for (int i = 0; i < n; ++i) {
    if (!core[i]) continue;
    const int root = FindRoot(parent, i);
    if (cluster_of_root[root] == kNoise) cluster_of_root[root] = next_cluster++;
    labels[i] = cluster_of_root[root];
  }
  for (int i = 0; i < n; ++i) {
    if (core[i] || lowest_core_neighbor[i] == n) continue;
    labels[i] = labels[lowest_core_neighbor[i]];
  }
  return labels;
}

std::vector<Landmark> ClusterInstances(std::span<const Eigen::Vector3d> points,
                                       ClassId class_id,
                                       const DbscanParams& params,
                                       int first_instance_id) {
  const std::vector<int> labels = DbscanLabels(points, params);
  const int cluster_count =
      labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
  std::vector<Landmark> landmarks(cluster_count);
  for (int c = 0; c < cluster_count; ++c) {
    landmarks[c].instance_id = first_instance_id + c;
    landmarks[c].class_id = class_id;
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (labels[i] != kNoise) landmarks[labels[i]].points.push_back(points[i]);
  }
  for (Landmark& landmark : landmarks) {
    landmark.centre = Centroid(landmark.points);
  }
  return landmarks;
}

SegmentedFrame SegmentFrame(const dataio::LabeledFrame& frame,
                            const SegmentationConfig& config) {
  const ClassPartition partition = PartitionByClass(frame);
  SegmentedFrame result;
  result.discarded_count = partition.discarded.size();
  result.unknown_class_count = partition.unknown_class_count;
  result.ground.reserve(partition.ground.size());
  for (const LabeledPoint& p : partition.ground) {
    result.ground.push_back(p.position);
  }
  result.ground_labeled = partition.ground;

  const double max_range_sq = config.max_range_m * config.max_range_m;
  int next_instance = 0;
  const auto cluster_group = [&](const std::vector<LabeledPoint>& candidates,
                                 std::vector<Landmark>& out) {
    std::map<ClassId, std::vector<Eigen::Vector3d>> by_class;
    for (const LabeledPoint& p : candidates) {
      if (p.position.squaredNorm() > max_range_sq) continue;
      by_class[p.class_id].push_back(p.position);
    }
    for (const auto& [class_id, points] : by_class) {
      std::vector<Landmark> landmarks = ClusterInstances(
          points, class_id, AdaptiveParams(class_id, config), next_instance);
      next_instance += static_cast<int>(landmarks.size());
      std::move(landmarks.begin(), landmarks.end(), std::back_inserter(out));
    }
  };
  cluster_group(partition.static_candidates, result.static_landmarks);
  cluster_group(partition.unknown_candidates, result.unknown_landmarks);
  return result;
}

}  // namespace segmentation
}  // namespace hullslam
