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

#ifndef HULLSLAM_DATAIO_KITTI_IO_H_
#define HULLSLAM_DATAIO_KITTI_IO_H_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/pose.h"
#include "hullslam/common/semantic_classes.h"

namespace hullslam {
namespace dataio {

// One LiDAR scan. `labels` is empty until a label source has been attached;
// once attached it has exactly one entry per point.
struct LabeledFrame {
  int frame_index = 0;
  std::vector<Eigen::Vector3d> points;
  std::vector<ClassId> labels;
  // LiDAR period in seconds (KITTI records at 10 Hz).
  double timestamp_period = 0.1;

  std::size_t size() const { return points.size(); }
  bool HasLabels() const { return !points.empty() && labels.size() == points.size(); }
};

// Throws FormatError when the cardinalities differ.
void AttachLabels(LabeledFrame& frame, std::vector<ClassId> labels);

// KITTI velodyne .bin: packed little-endian float32 (x, y, z, intensity).
// Intensity is dropped.
LabeledFrame ReadPointCloud(const std::filesystem::path& path);
void WritePointCloud(const std::filesystem::path& path,
                     std::span<const Eigen::Vector3d> points);

// SemanticKITTI .label: packed little-endian uint32, semantic class in the
// low 16 bits. The instance id in the high bits is discarded.
std::vector<ClassId> ReadLabels(const std::filesystem::path& path,
                                std::size_t expected_count);
void WriteLabels(const std::filesystem::path& path,
                 std::span<const ClassId> labels);

// KITTI pose text, one row-major 3x4 [R|t] per line. Rotations within 1e-3
// of orthonormal are projected back onto SO(3); worse ones raise DataError.
std::vector<PoseSE3> ReadPoses(const std::filesystem::path& path);

// Writes the shortest decimal form that parses back to the same double, so
// ReadPoses(WriteTrajectory(p)) reproduces p up to the re-orthonormalization.
void WriteTrajectory(std::span<const PoseSE3> poses,
                     const std::filesystem::path& path);

// "Tr:" entry of a KITTI odometry calib.txt (velodyne -> camera), if any.
std::optional<PoseSE3> ReadVelodyneToCamera(const std::filesystem::path& path);

}  // namespace dataio
}  // namespace hullslam

#endif  // HULLSLAM_DATAIO_KITTI_IO_H_
