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

#include "hullslam/dataio/frame_source.h"

#include <algorithm>
#include <cstdio>

#include "hullslam/common/errors.h"

namespace hullslam {
namespace dataio {

std::string FrameFileStem(std::size_t index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "%06zu", index);
  return buffer;
}

std::vector<ClassId> FileLabelSource::Labels(std::size_t frame_index,
                                             std::size_t point_count) const {
  std::vector<ClassId> labels = ReadLabels(
      directory_ / (FrameFileStem(frame_index) + ".label"), point_count);
  for (ClassId& label : labels) label = semantic::CollapseMovingClass(label);
  return labels;
}

KittiSequence::KittiSequence(const std::filesystem::path& root,
                             const std::string& sequence,
                             std::shared_ptr<const LabelSource> labels)
    : root_(root),
      sequence_dir_(root / "sequences" / sequence),
      sequence_(sequence),
      labels_(std::move(labels)) {
  const std::filesystem::path velodyne = sequence_dir_ / "velodyne";
  if (!std::filesystem::is_directory(velodyne)) {
    throw IoError("missing scan directory " + velodyne.string());
  }
  for (const auto& entry : std::filesystem::directory_iterator(velodyne)) {
    if (entry.path().extension() == ".bin") scan_paths_.push_back(entry.path());
  }
  std::sort(scan_paths_.begin(), scan_paths_.end());
  if (labels_ == nullptr) {
    labels_ = std::make_shared<FileLabelSource>(sequence_dir_ / "labels");
  }
}

LabeledFrame KittiSequence::Load(std::size_t index) const {
  LabeledFrame frame = ReadPointCloud(scan_paths_.at(index));
  frame.frame_index = static_cast<int>(index);
  AttachLabels(frame, labels_->Labels(index, frame.size()));
  return frame;
}

std::optional<std::filesystem::path> KittiSequence::GroundTruthPath() const {
  for (const std::filesystem::path& candidate :
       {root_ / "poses" / (sequence_ + ".txt"), sequence_dir_ / "poses.txt"}) {
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return std::nullopt;
}

std::optional<PoseSE3> KittiSequence::VelodyneToCamera() const {
  return ReadVelodyneToCamera(sequence_dir_ / "calib.txt");
}

}  // namespace dataio
}  // namespace hullslam
