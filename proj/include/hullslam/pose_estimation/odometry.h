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

#ifndef HULLSLAM_POSE_ESTIMATION_ODOMETRY_H_
#define HULLSLAM_POSE_ESTIMATION_ODOMETRY_H_

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hullslam/common/pose.h"
#include "hullslam/pose_estimation/pso.h"
#include "hullslam/pose_estimation/registration.h"

namespace hullslam {
namespace pose_estimation {

enum class InputMode {
  kPureStatic,    // mode A: pure-static landmarks only
  kAllLandmarks,  // mode B: every landmark
};

// Mode A iff static_count >= max(n_min, unknown_count).
InputMode SelectInputMode(std::size_t static_count, std::size_t unknown_count,
                          int n_min);

struct FrameLandmarks {
  std::span<const Landmark> pure_static;
  std::span<const Landmark> unknown_motion;
};

struct PreliminaryConfig {
  int n_min = 10;
  PsoConfig pso;
  // Skip mode selection and always register every landmark.
  bool force_all_landmarks = false;
};

struct PoseEstimate {
  PoseDelta2D delta;
  InputMode mode = InputMode::kPureStatic;
  int pair_count = 0;
  int feature_count = 0;
  double objective = 0.0;
  // objective / sum of reference hull areas.
  double overlap_ratio = 0.0;
  // The prior (or preliminary result) was kept for lack of features.
  bool degraded = false;
};

// Scan-to-scan registration. `prior` is the motion guess, used both to map
// curr centres for pairing and as the PSO search centre.
PoseEstimate EstimatePreliminary(const FrameLandmarks& prev,
                                 const FrameLandmarks& curr,
                                 const PoseDelta2D& prior,
                                 const PreliminaryConfig& cfg);

struct SubmapConfig {
  int window = 10;           // frames a landmark survives without a sighting
  int max_points = 2000;     // reservoir cap per landmark
  double merge_radius_m = 1.5;
  std::uint64_t seed = 7;
};

// World-frame landmark accumulated over several frames.
struct SubmapLandmark {
  int id = 0;
  ClassId class_id = semantic::kUnlabeled;
  int track_id = -1;  // >= 0 for semi-static landmarks
  std::vector<Eigen::Vector3d> points;
  std::uint64_t points_seen = 0;
  Eigen::Vector3d centre = Eigen::Vector3d::Zero();
  int last_seen_frame = 0;
};

// Sliding window of pure-static and semi-static landmarks. Pure-static
// landmarks merge by class and centre proximity, semi-static ones by track id.
class LocalSubmap {
 public:
  explicit LocalSubmap(const SubmapConfig& config = {});

  void Insert(const Landmark& landmark, const PoseSE3& world_from_sensor,
              int frame_index, int track_id = -1);
  // Drops landmarks unseen for `window` frames.
  void Prune(int current_frame);
  void RemoveTrack(int track_id);
  // world' = correction * world for every stored point.
  void ApplyCorrection(const PoseSE3& correction);

  std::span<const SubmapLandmark> landmarks() const { return landmarks_; }
  bool empty() const { return landmarks_.empty(); }

  // Landmarks re-expressed in a frame whose world pose is `world_from_frame`.
  std::vector<Landmark> InFrame(const PoseSE3& world_from_frame) const;

 private:
  void AddPoints(SubmapLandmark& target, const Landmark& landmark,
                 const PoseSE3& world_from_sensor);

  SubmapConfig config_;
  std::vector<SubmapLandmark> landmarks_;
  int next_id_ = 0;
  std::mt19937_64 rng_;
};

struct PreciseConfig {
  // Precise search box = preliminary box * bound_scale.
  double bound_scale = 0.5;
};

// Scan-to-submap registration of the current pure-static and semi-static
// landmarks (sensor frame). Falls back to `prelim` when the submap is empty or
// fewer than kMinPsoFeatures features can be built.
PoseEstimate EstimatePreciseHorizontal(std::span<const Landmark> curr,
                                       const LocalSubmap& submap,
                                       const PoseSE3& world_from_prev,
                                       const PoseDelta2D& prelim,
                                       const PsoConfig& prelim_pso,
                                       const PreciseConfig& cfg = {});

}  // namespace pose_estimation
}  // namespace hullslam

#endif  // HULLSLAM_POSE_ESTIMATION_ODOMETRY_H_
