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

#include "hullslam/pipeline/pipeline.h"

#include <cmath>

#include "hullslam/common/errors.h"
#include "hullslam/loop_closure/descriptor.h"
#include "hullslam/segmentation/segmentation.h"
#include "json.hpp"

namespace hullslam {
namespace pipeline {
namespace {

using pose_estimation::PoseEstimate;
using segmentation::Landmark;
using tracking::MotionVerdict;

// Odometry and loop edges share one weighting: 10 cm of position error
// costs as much as 0.01 rad of heading error.
const Eigen::Vector4d kEdgeInformation(1.0, 1.0, 100.0, 1.0);

std::uint64_t StageSeed(std::uint64_t seed, int frame, int stage) {
  return seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(frame) * 4u +
         static_cast<std::uint64_t>(stage);
}

template <typename Error>
[[noreturn]] void RethrowWithFrame(const Error& e, std::size_t index) {
  throw Error("frame " + std::to_string(index) + ": " + e.what());
}

nlohmann::json EstimateJson(const PoseEstimate& e) {
  return {{"mode", e.mode == pose_estimation::InputMode::kPureStatic ? "A" : "B"},
          {"pairs", e.pair_count},
          {"features", e.feature_count},
          {"objective", e.objective},
          {"overlap_ratio", e.overlap_ratio},
          {"degraded", e.degraded},
          {"delta", {e.delta.dx, e.delta.dy, e.delta.dtheta}}};
}

}  // namespace

PoseSE3 AccumulatePose(const PoseSE3& previous, const PoseDelta2D& delta,
                       double pitch, double dz) {
  const Eigen::Vector3d step =
      previous.rotation * Eigen::Vector3d(delta.dx, delta.dy, 0.0);
  const Eigen::Vector3d translation =
      previous.translation + step + Eigen::Vector3d(0.0, 0.0, dz);
  return PoseSE3::FromYawPitch(WrapAngle(previous.Yaw() + delta.dtheta), pitch,
                               translation);
}

SlamPipeline::SlamPipeline(const SlamConfig& config)
    : config_(config),
      submap_([&] {
        pose_estimation::SubmapConfig submap = config.submap;
        submap.seed = StageSeed(config.seed, 0, 3);
        return submap;
      }()),
      vertical_(config.vertical),
      tracker_(config.tracking),
      database_(config.loop) {}

void SlamPipeline::ProcessFrame(const dataio::LabeledFrame& frame) {
  const int k = frame_count_++;
  const bool full = config_.mode == PipelineMode::kFull;
  const segmentation::SegmentedFrame segmented =
      segmentation::SegmentFrame(frame, config_.segmentation);

  FrameDiagnostics diag;
  diag.frame = k;
  diag.static_landmarks = static_cast<int>(segmented.static_landmarks.size());
  diag.unknown_landmarks = static_cast<int>(segmented.unknown_landmarks.size());

  std::vector<tracking::TrackedObservation> tracked;
  PoseDelta2D delta;
  double pitch = last_pitch_;
  double dz = 0.0;
  if (!previous_) {
    diag.preliminary.degraded = false;
  } else {
    pose_estimation::PreliminaryConfig prelim_cfg = config_.prelim;
    prelim_cfg.pso.seed = StageSeed(config_.seed, k, 1);
    prelim_cfg.force_all_landmarks = prelim_cfg.force_all_landmarks || !full;
    const pose_estimation::FrameLandmarks prev{previous_->pure_static,
                                               previous_->unknown_motion};
    const pose_estimation::FrameLandmarks curr{segmented.static_landmarks,
                                               segmented.unknown_landmarks};
    diag.preliminary =
        pose_estimation::EstimatePreliminary(prev, curr, last_delta_, prelim_cfg);
    delta = diag.preliminary.delta;
  }

  if (full) {
    const PoseSE3 world_from_prev =
        result_.trajectory.empty() ? PoseSE3::Identity() : result_.trajectory.back();
    const double tau = frame.timestamp_period;
    const PoseSE3 world_prelim =
        previous_ ? AccumulatePose(world_from_prev, delta, last_pitch_, 0.0)
                  : PoseSE3::Identity();
    Track(segmented.unknown_landmarks, world_prelim,
          previous_ ? delta.dtheta / tau : 0.0, tau, tracked, diag);

    if (previous_) {
      // Pure-static plus semi-static landmarks; dynamic and not-yet-judged
      // ones stay out of registration.
      std::vector<Landmark> registration = segmented.static_landmarks;
      for (std::size_t i = 0; i < tracked.size(); ++i) {
        if (tracked[i].verdict == MotionVerdict::kSemiStatic) {
          registration.push_back(segmented.unknown_landmarks[i]);
        }
      }
      pose_estimation::PsoConfig pso = config_.prelim.pso;
      pso.seed = StageSeed(config_.seed, k, 2);
      const PoseEstimate precise = pose_estimation::EstimatePreciseHorizontal(
          registration, submap_, world_from_prev, delta, pso, config_.precise);
      diag.precise = precise;
      if (!precise.degraded) delta = precise.delta;
    }

    const pose_estimation::VerticalEstimate vertical =
        vertical_.Estimate(segmented.ground);
    pitch = vertical.pitch;
    dz = previous_ ? vertical.dz : 0.0;
    diag.vertical_carried = vertical.carried_forward;
  }

  last_delta_ = delta;
  last_pitch_ = pitch;
  delta.dtheta = WrapAngle(delta.dtheta + (previous_ ? config_.yaw_bias_rad_per_frame : 0.0));
  diag.delta = delta;
  diag.pitch = pitch;
  diag.dz = dz;

  if (previous_) {
    result_.trajectory.push_back(
        AccumulatePose(result_.trajectory.back(), delta, pitch, dz));
  } else {
    result_.trajectory.push_back(PoseSE3::FromYawPitch(0.0, pitch, Eigen::Vector3d::Zero()));
  }

  if (full) UpdateSubmap(segmented, tracked);
  HandleKeyframe(segmented, diag);

  previous_ = PreviousFrame{segmented.static_landmarks, segmented.unknown_landmarks};
  result_.diagnostics.push_back(std::move(diag));
}

void SlamPipeline::Track(const std::vector<Landmark>& unknown,
                         const PoseSE3& world_from_curr, double omega, double tau,
                         std::vector<tracking::TrackedObservation>& tracked,
                         FrameDiagnostics& diag) {
  std::vector<tracking::Observation> observations;
  observations.reserve(unknown.size());
  for (const Landmark& landmark : unknown) {
    observations.push_back(
        {(world_from_curr * landmark.centre).head<2>(), landmark.class_id});
  }
  tracked = tracker_.Step(observations, omega, tau);
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    switch (tracked[i].verdict) {
      case MotionVerdict::kDynamic: ++diag.dynamic_count; break;
      case MotionVerdict::kSemiStatic: ++diag.semi_static_count; break;
      case MotionVerdict::kUnknown: ++diag.unverdicted_count; break;
    }
    result_.verdicts.push_back({diag.frame, tracked[i].track_id, unknown[i].class_id,
                                observations[i].centre_world, tracked[i].verdict,
                                tracked[i].stable});
  }
}

void SlamPipeline::UpdateSubmap(const segmentation::SegmentedFrame& segmented,
                                const std::vector<tracking::TrackedObservation>& tracked) {
  const int k = frame_count_ - 1;
  const PoseSE3& pose = result_.trajectory.back();
  for (const Landmark& landmark : segmented.static_landmarks) {
    submap_.Insert(landmark, pose, k);
  }
  for (std::size_t i = 0; i < tracked.size(); ++i) {
    if (tracked[i].verdict == MotionVerdict::kSemiStatic) {
      submap_.Insert(segmented.unknown_landmarks[i], pose, k, tracked[i].track_id);
    } else if (tracked[i].verdict == MotionVerdict::kDynamic) {
      submap_.RemoveTrack(tracked[i].track_id);
    }
  }
  for (const int retired : tracker_.retired()) submap_.RemoveTrack(retired);
  submap_.Prune(k);
}

void SlamPipeline::HandleKeyframe(const segmentation::SegmentedFrame& segmented,
                                  FrameDiagnostics& diag) {
  const int k = diag.frame;
  if (!config_.loop_enabled || k % config_.loop.keyframe_every != 0) return;
  diag.keyframe = true;
  const int keyframe_id = static_cast<int>(result_.keyframe_frames.size());
  if (keyframe_id > 0) {
    const loop_closure::GraphNode a = loop_closure::GraphNode::FromPose(
        result_.trajectory[result_.keyframe_frames.back()]);
    const loop_closure::GraphNode b =
        loop_closure::GraphNode::FromPose(result_.trajectory.back());
    odometry_edges_.push_back({keyframe_id - 1, keyframe_id,
                               a.Planar().Inverse() * b.Planar(), b.z - a.z,
                               kEdgeInformation, false});
  }
  result_.keyframe_frames.push_back(k);

  loop_closure::KeyframeDescriptor descriptor = loop_closure::MakeDescriptor(
      keyframe_id, k, segmented.static_landmarks, config_.loop.descriptor);
  const std::vector<loop_closure::LoopCandidate> candidates =
      database_.Query(descriptor);
  diag.loop_candidates = static_cast<int>(candidates.size());
  for (const loop_closure::LoopCandidate& candidate : candidates) {
    const auto constraint = loop_closure::VerifyLoop(
        database_.Get(candidate.keyframe_id), descriptor, config_.loop,
        StageSeed(config_.seed, k, 3) ^ static_cast<std::uint64_t>(candidate.keyframe_id));
    if (!constraint) continue;
    loop_edges_.push_back({candidate.keyframe_id, keyframe_id, constraint->delta,
                           constraint->dz, kEdgeInformation, true});
    result_.loops.push_back(*constraint);
    diag.loop_closed = true;
    break;
  }
  database_.Add(std::move(descriptor));
  if (diag.loop_closed) CorrectTrajectory();
}

void SlamPipeline::CorrectTrajectory() {
  loop_closure::PoseGraph graph;
  std::vector<PoseSE3> old_keyframes;
  for (const int f : result_.keyframe_frames) {
    old_keyframes.push_back(result_.trajectory[f]);
    graph.AddNode(loop_closure::GraphNode::FromPose(result_.trajectory[f]));
  }
  for (const auto& e : odometry_edges_) {
    graph.AddOdometryEdge(e.from, e.to, e.delta, e.dz, e.information);
  }
  for (const auto& e : loop_edges_) {
    graph.AddLoopEdge(e.from, e.to, e.delta, e.dz, e.information);
  }
  const loop_closure::CorrectionResult corrected = graph.Correct();
  ++result_.corrections;
  if (corrected.diverged) {
    result_.correction_diverged = true;
    return;
  }
  std::vector<PoseSE3> new_keyframes;
  for (std::size_t i = 0; i < old_keyframes.size(); ++i) {
    new_keyframes.push_back(loop_closure::ApplyNode(old_keyframes[i], corrected.nodes[i]));
  }
  const PoseSE3 old_current = result_.trajectory.back();
  result_.trajectory = loop_closure::InterpolateCorrections(
      result_.trajectory, result_.keyframe_frames, old_keyframes, new_keyframes);
  const PoseSE3 correction = result_.trajectory.back() * old_current.Inverse();
  submap_.ApplyCorrection(correction);
  tracker_.ApplyCorrection(correction.ToPlanar());
}

RunResult RunSequence(const dataio::FrameSource& source, const SlamConfig& config) {
  SlamPipeline pipeline(config);
  for (std::size_t i = 0; i < source.size(); ++i) {
    dataio::LabeledFrame frame;
    try {
      frame = source.Load(i);
    } catch (const FormatError& e) {
      RethrowWithFrame(e, i);
    } catch (const DataError& e) {
      RethrowWithFrame(e, i);
    } catch (const IoError& e) {
      RethrowWithFrame(e, i);
    }
    pipeline.ProcessFrame(frame);
  }
  return pipeline.TakeResult();
}

mapping::SemanticVoxelMap BuildMap(const dataio::FrameSource& source,
                                   std::span<const PoseSE3> trajectory,
                                   const SlamConfig& config) {
  Require(trajectory.size() == source.size(), "BuildMap: trajectory length mismatch");
  mapping::SemanticVoxelMap map(config.voxel_size);
  for (std::size_t i = 0; i < source.size(); ++i) {
    const segmentation::SegmentedFrame segmented =
        segmentation::SegmentFrame(source.Load(i), config.segmentation);
    std::vector<segmentation::LabeledPoint> points = segmented.ground_labeled;
    for (const Landmark& landmark : segmented.static_landmarks) {
      for (const Eigen::Vector3d& p : landmark.points) {
        points.push_back({p, landmark.class_id});
      }
    }
    map.Integrate(points, trajectory[i]);
  }
  return map;
}

std::string DiagnosticsJson(const FrameDiagnostics& d) {
  nlohmann::json out = {
      {"frame", d.frame},
      {"static_landmarks", d.static_landmarks},
      {"unknown_landmarks", d.unknown_landmarks},
      {"preliminary", EstimateJson(d.preliminary)},
      {"verdicts",
       {{"dynamic", d.dynamic_count},
        {"semi_static", d.semi_static_count},
        {"unknown", d.unverdicted_count}}},
      {"pitch", d.pitch},
      {"dz", d.dz},
      {"vertical_carried", d.vertical_carried},
      {"keyframe", d.keyframe},
      {"loop_candidates", d.loop_candidates},
      {"loop_closed", d.loop_closed},
      {"delta", {d.delta.dx, d.delta.dy, d.delta.dtheta}}};
  out["precise"] = d.precise ? EstimateJson(*d.precise) : nlohmann::json(nullptr);
  return out.dump();
}

}  // namespace pipeline
}  // namespace hullslam
