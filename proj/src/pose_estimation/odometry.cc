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

#include "hullslam/pose_estimation/odometry.h"

#include <algorithm>
#include <limits>

#include "hullslam/common/errors.h"

namespace hullslam {
namespace pose_estimation {
namespace {

PoseEstimate Register(std::span<const Landmark> prev,
                      std::span<const Landmark> curr, const PoseDelta2D& prior,
                      const PsoConfig& pso) {
  PoseEstimate estimate;
  estimate.delta = prior;
  const std::vector<LandmarkPair> pairs = PairLandmarks(prev, curr, prior);
  estimate.pair_count = static_cast<int>(pairs.size());
  const std::vector<geometry::ConvexHullFeature> features =
      BuildFeatures(prev, curr, pairs);
  estimate.feature_count = static_cast<int>(features.size());
  const PsoResult solved = SolvePso(features, prior, pso);
  estimate.delta = solved.pose;
  estimate.objective = solved.objective;
  const double total = TotalPrevArea(features);
  estimate.overlap_ratio = total > 0.0 ? solved.objective / total : 0.0;
  estimate.degraded = solved.low_confidence;
  return estimate;
}

}  // namespace

InputMode SelectInputMode(std::size_t static_count, std::size_t unknown_count,
                          int n_min) {
  const std::size_t threshold =
      std::max(static_cast<std::size_t>(std::max(n_min, 0)), unknown_count);
  return static_count >= threshold ? InputMode::kPureStatic
                                   : InputMode::kAllLandmarks;
}

PoseEstimate EstimatePreliminary(const FrameLandmarks& prev,
                                 const FrameLandmarks& curr,
                                 const PoseDelta2D& prior,
                                 const PreliminaryConfig& cfg) {
  const InputMode mode =
      cfg.force_all_landmarks
          ? InputMode::kAllLandmarks
          : SelectInputMode(curr.pure_static.size(), curr.unknown_motion.size(),
                            cfg.n_min);
  PoseEstimate estimate;
  if (mode == InputMode::kPureStatic) {
    estimate = Register(prev.pure_static, curr.pure_static, prior, cfg.pso);
  } else {
    std::vector<Landmark> prev_all(prev.pure_static.begin(),
                                   prev.pure_static.end());
    prev_all.insert(prev_all.end(), prev.unknown_motion.begin(),
                    prev.unknown_motion.end());
    std::vector<Landmark> curr_all(curr.pure_static.begin(),
                                   curr.pure_static.end());
    curr_all.insert(curr_all.end(), curr.unknown_motion.begin(),
                    curr.unknown_motion.end());
    estimate = Register(prev_all, curr_all, prior, cfg.pso);
  }
  estimate.mode = mode;
  return estimate;
}

LocalSubmap::LocalSubmap(const SubmapConfig& config)
    : config_(config), rng_(config.seed) {
  Require(config.window >= 1 && config.max_points >= 1,
          "LocalSubmap: window and max_points must be positive");
}

void LocalSubmap::AddPoints(SubmapLandmark& target, const Landmark& landmark,
                            const PoseSE3& world_from_sensor) {
  const std::size_t cap = static_cast<std::size_t>(config_.max_points);
  for (const Eigen::Vector3d& p : landmark.points) {
    const Eigen::Vector3d world = world_from_sensor * p;
    ++target.points_seen;
    if (target.points.size() < cap) {
      target.points.push_back(world);
    } else {
      const std::uint64_t slot = rng_() % target.points_seen;
      if (slot < cap) target.points[slot] = world;
    }
  }
  target.centre = segmentation::Centroid(target.points);
}

void LocalSubmap::Insert(const Landmark& landmark,
                         const PoseSE3& world_from_sensor, int frame_index,
                         int track_id) {
  if (landmark.points.empty()) return;
  const Eigen::Vector3d centre = world_from_sensor * landmark.centre;
  SubmapLandmark* target = nullptr;
  if (track_id >= 0) {
    for (SubmapLandmark& candidate : landmarks_) {
      if (candidate.track_id == track_id) target = &candidate;
    }
  } else {
    double best = config_.merge_radius_m;
    for (SubmapLandmark& candidate : landmarks_) {
      if (candidate.track_id >= 0 || candidate.class_id != landmark.class_id) {
        continue;
      }
      const double d = (candidate.centre - centre).head<2>().norm();
      if (d <= best) {
        best = d;
        target = &candidate;
      }
    }
  }
  if (target == nullptr) {
    landmarks_.push_back({});
    target = &landmarks_.back();
    target->id = next_id_++;
    target->class_id = landmark.class_id;
    target->track_id = track_id;
  }
  AddPoints(*target, landmark, world_from_sensor);
  target->last_seen_frame = frame_index;
}

void LocalSubmap::Prune(int current_frame) {
  std::erase_if(landmarks_, [&](const SubmapLandmark& l) {
    return current_frame - l.last_seen_frame >= config_.window;
  });
}

void LocalSubmap::RemoveTrack(int track_id) {
  std::erase_if(landmarks_, [track_id](const SubmapLandmark& l) {
    return l.track_id == track_id;
  });
}

void LocalSubmap::ApplyCorrection(const PoseSE3& correction) {
  for (SubmapLandmark& landmark : landmarks_) {
    for (Eigen::Vector3d& p : landmark.points) p = correction * p;
    landmark.centre = correction * landmark.centre;
  }
}

std::vector<Landmark> LocalSubmap::InFrame(
    const PoseSE3& world_from_frame) const {
  const PoseSE3 frame_from_world = world_from_frame.Inverse();
  std::vector<Landmark> out;
  out.reserve(landmarks_.size());
  for (const SubmapLandmark& source : landmarks_) {
    Landmark landmark;
    landmark.instance_id = source.id;
    landmark.class_id = source.class_id;
    landmark.points.reserve(source.points.size());
    for (const Eigen::Vector3d& p : source.points) {
      landmark.points.push_back(frame_from_world * p);
    }
    landmark.centre = frame_from_world * source.centre;
    out.push_back(std::move(landmark));
  }
  return out;
}

PoseEstimate EstimatePreciseHorizontal(std::span<const Landmark> curr,
                                       const LocalSubmap& submap,
                                       const PoseSE3& world_from_prev,
                                       const PoseDelta2D& prelim,
                                       const PsoConfig& prelim_pso,
                                       const PreciseConfig& cfg) {
  if (submap.empty() || curr.empty()) {
    PoseEstimate estimate;
    estimate.delta = prelim;
    estimate.degraded = true;
    return estimate;
  }
  const std::vector<Landmark> reference = submap.InFrame(world_from_prev);
  PsoConfig pso = prelim_pso;
  pso.search_bounds = prelim_pso.search_bounds * cfg.bound_scale;
  return Register(reference, curr, prelim, pso);
}

}  // namespace pose_estimation
}  // namespace hullslam
