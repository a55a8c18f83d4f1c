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

#ifndef HULLSLAM_MAPPING_VOXEL_MAP_H_
#define HULLSLAM_MAPPING_VOXEL_MAP_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/pose.h"
#include "hullslam/common/semantic_classes.h"
#include "hullslam/segmentation/segmentation.h"

namespace hullslam {
namespace mapping {

using VoxelKey = Eigen::Vector3i;

struct VoxelKeyHash {
  std::size_t operator()(const VoxelKey& key) const {
    std::size_t h = static_cast<std::size_t>(key.x()) * 73856093u;
    h ^= static_cast<std::size_t>(key.y()) * 19349663u;
    h ^= static_cast<std::size_t>(key.z()) * 83492791u;
    return h;
  }
};

struct Voxel {
  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  std::uint64_t count = 0;
  std::map<ClassId, std::uint64_t> class_counts;

  // argmax of class_counts; ties go to the lower class id.
  ClassId MajorityClass() const;
};

struct PlyVertex {
  Eigen::Vector3f position;
  std::uint8_t red = 0, green = 0, blue = 0;
  ClassId class_id = 0;
};

// Sparse world-frame grid of ground and pure-static points.
class SemanticVoxelMap {
 public:
  explicit SemanticVoxelMap(double voxel_size = 0.2);

  VoxelKey KeyOf(const Eigen::Vector3d& world_point) const;

  // Transforms every point into the world by `world_from_sensor` and bins it.
  // Throws ContractViolation for any class outside the ground and pure-static
  // groups, before touching the map.
  void Integrate(std::span<const segmentation::LabeledPoint> points,
                 const PoseSE3& world_from_sensor);

  std::size_t size() const { return voxels_.size(); }
  bool empty() const { return voxels_.empty(); }
  double voxel_size() const { return voxel_size_; }
  const Voxel* Find(const VoxelKey& key) const;

  // Voxels ordered by key (x, then y, then z).
  std::vector<std::pair<VoxelKey, Voxel>> SortedVoxels() const;

  // ASCII PLY, one vertex per voxel at its centroid. Throws ContractViolation
  // on an empty map and IoError when the file cannot be written.
  void ExportPly(const std::filesystem::path& path) const;

 private:
  double voxel_size_;
  std::unordered_map<VoxelKey, Voxel, VoxelKeyHash> voxels_;
};

// Parses an ASCII PLY written by ExportPly. Throws FormatError.
std::vector<PlyVertex> ReadPly(const std::filesystem::path& path);

}  // namespace mapping
}  // namespace hullslam

#endif  // HULLSLAM_MAPPING_VOXEL_MAP_H_
