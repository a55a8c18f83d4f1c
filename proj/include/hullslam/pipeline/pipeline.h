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

#ifndef HULLSLAM_PIPELINE_PIPELINE_H_
#define HULLSLAM_PIPELINE_PIPELINE_H_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hullslam/common/pose.h"
#include "hullslam/dataio/frame_source.h"
#include "hullslam/loop_closure/loop_detector.h"
#include "hullslam/loop_closure/pose_graph.h"
#include "hullslam/mapping/voxel_map.h"
#include "hullslam/pipeline/config.h"
#include "hullslam/pose_estimation/odometry.h"
#include "hullslam/pose_estimation/vertical.h"
#include "hullslam/tracking/tracker.h"

namespace hullslam {
namespace pipeline {

struct FrameDiagnostics {
  int frame = 0;
  int static_landmarks = 0;
  int unknown_landmarks = 0;
  pose_estimation::PoseEstimate preliminary;
  std::optional<pose_estimation::PoseEstimate> precise;
  int dynamic_count = 0;
  int semi_static_count = 0;
  int unverdicted_count = 0;
  double pitch = 0.0;
  double dz = 0.0;
  bool vertical_carried = false;
  bool keyframe = false;
  int loop_candidates = 0;
  bool loop_closed = false;
  PoseDelta2D delta;  // planar motion applied this frame
};

// One tracked unknown-motion landmark in one frame.
struct VerdictRecord {
  int frame = 0;
  int track_id = -1;
  ClassId class_id = semantic::kUnlabeled;
  Eigen::Vector2d centre_world = Eigen::Vector2d::Zero();
  tracking::MotionVerdict verdict = tracking::MotionVerdict::kUnknown;
  bool stable = false;
};

struct RunResult {
  std::vector<PoseSE3> trajectory;  // world_from_sensor per frame
  std::vector<FrameDiagnostics> diagnostics;
  std::vector<VerdictRecord> verdicts;
  std::vector<int> keyframe_frames;
  std::vector<loop_closure::LoopConstraint> loops;
  int corrections = 0;
  bool correction_diverged = false;
};

// Applies one frame's estimate to the previous world pose: heading and
// position advance by the planar delta in the previous heading's frame, the
// height by the previous tilt plus dz, and the attitude becomes
// Rz(yaw) * Ry(pitch).
PoseSE3 AccumulatePose(const PoseSE3& previous, const PoseDelta2D& delta,
                       double pitch, double dz);

// Processes frames strictly in order.
class SlamPipeline {
 public:
  explicit SlamPipeline(const SlamConfig& config);

  void ProcessFrame(const dataio::LabeledFrame& frame);

  const RunResult& result() const { return result_; }
  RunResult TakeResult() { return std::move(result_); }

 private:
  struct PreviousFrame {
    std::vector<segmentation::Landmark> pure_static;
    std::vector<segmentation::Landmark> unknown_motion;
  };

  void Track(const std::vector<segmentation::Landmark>& unknown,
             const PoseSE3& world_from_curr, double omega, double tau,
             std::vector<tracking::TrackedObservation>& tracked,
             FrameDiagnostics& diag);
  void UpdateSubmap(const segmentation::SegmentedFrame& segmented,
                    const std::vector<tracking::TrackedObservation>& tracked);
  void HandleKeyframe(const segmentation::SegmentedFrame& segmented,
                      FrameDiagnostics& diag);
  void CorrectTrajectory();

  SlamConfig config_;
  int frame_count_ = 0;
  PoseDelta2D last_delta_;
  double last_pitch_ = 0.0;
  std::optional<PreviousFrame> previous_;
  pose_estimation::LocalSubmap submap_;
  pose_estimation::VerticalEstimator vertical_;
  tracking::MultiObjectTracker tracker_;
  loop_closure::LoopDatabase database_;
  std::vector<loop_closure::GraphEdge> odometry_edges_;
  std::vector<loop_closure::GraphEdge> loop_edges_;
  RunResult result_;
};

// Runs the pipeline over every frame of `source`. Ingestion errors are
// rethrown with the frame index prepended.
RunResult RunSequence(const dataio::FrameSource& source, const SlamConfig& config);

// Second pass: re-segments every frame and integrates ground and pure-static
// landmark points at the final trajectory.
mapping::SemanticVoxelMap BuildMap(const dataio::FrameSource& source,
                                   std::span<const PoseSE3> trajectory,
                                   const SlamConfig& config);

// One JSON object per line for a frame's diagnostics.
std::string DiagnosticsJson(const FrameDiagnostics& diag);

}  // namespace pipeline
}  // namespace hullslam

#endif  // HULLSLAM_PIPELINE_PIPELINE_H_
