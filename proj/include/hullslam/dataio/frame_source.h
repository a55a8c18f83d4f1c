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

#ifndef HULLSLAM_DATAIO_FRAME_SOURCE_H_
#define HULLSLAM_DATAIO_FRAME_SOURCE_H_

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "hullslam/dataio/kitti_io.h"

namespace hullslam {
namespace dataio {

// Supplies per-point semantic classes for a frame. Swappable so that network
// predictions can replace dataset ground truth.
class LabelSource {
 public:
  virtual ~LabelSource() = default;
  virtual std::vector<ClassId> Labels(std::size_t frame_index,
                                      std::size_t point_count) const = 0;
};

// Reads <directory>/NNNNNN.label and collapses moving-* codes.
class FileLabelSource : public LabelSource {
 public:
  explicit FileLabelSource(std::filesystem::path directory)
      : directory_(std::move(directory)) {}

  std::vector<ClassId> Labels(std::size_t frame_index,
                              std::size_t point_count) const override;

 private:
  std::filesystem::path directory_;
};

class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::size_t size() const = 0;
  // Returns a labeled frame; throws on any ingestion error.
  virtual LabeledFrame Load(std::size_t index) const = 0;
};

class InMemoryFrameSource : public FrameSource {
 public:
  explicit InMemoryFrameSource(std::vector<LabeledFrame> frames)
      : frames_(std::move(frames)) {}

  std::size_t size() const override { return frames_.size(); }
  LabeledFrame Load(std::size_t index) const override {
    return frames_.at(index);
  }

 private:
  std::vector<LabeledFrame> frames_;
};

// KITTI odometry layout:
//   <root>/sequences/<NN>/velodyne/NNNNNN.bin
//   <root>/sequences/<NN>/labels/NNNNNN.label
//   <root>/poses/<NN>.txt or <root>/sequences/<NN>/poses.txt
//   <root>/sequences/<NN>/calib.txt (optional)
class KittiSequence : public FrameSource {
 public:
  // Uses the sequence's labels/ directory when `labels` is null.
  KittiSequence(const std::filesystem::path& root, const std::string& sequence,
                std::shared_ptr<const LabelSource> labels = nullptr);

  std::size_t size() const override { return scan_paths_.size(); }
  LabeledFrame Load(std::size_t index) const override;

  std::optional<std::filesystem::path> GroundTruthPath() const;
  std::optional<PoseSE3> VelodyneToCamera() const;

 private:
  std::filesystem::path root_;
  std::filesystem::path sequence_dir_;
  std::string sequence_;
  std::vector<std::filesystem::path> scan_paths_;
  std::shared_ptr<const LabelSource> labels_;
};

std::string FrameFileStem(std::size_t index);

}  // namespace dataio
}  // namespace hullslam

#endif  // HULLSLAM_DATAIO_FRAME_SOURCE_H_
