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

#ifndef HULLSLAM_TRACKING_TRACKER_H_
#define HULLSLAM_TRACKING_TRACKER_H_

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/pose.h"
#include "hullslam/common/semantic_classes.h"
#include "hullslam/tracking/kalman.h"

namespace hullslam {
namespace tracking {

enum class MotionVerdict { kUnknown, kDynamic, kSemiStatic };

const char* VerdictName(MotionVerdict verdict);

struct Track {
  int track_id = 0;
  ClassId class_id = semantic::kUnlabeled;
  TrackState state;
  int age = 1;  // frames observed
  int misses = 0;
  int associations = 0;
  MotionVerdict verdict = MotionVerdict::kUnknown;
  Eigen::Vector2d last_centre_world = Eigen::Vector2d::Zero();
};

// Per-class parameters; classes without an explicit entry use the vehicle or
// person default.
struct TrackingConfig {
  double vehicle_v_max = 0.8;
  double person_v_max = 0.4;
  double vehicle_d_max = 0.3;
  double person_d_max = 0.2;
  double vehicle_process_sigma = 0.5;
  double person_process_sigma = 0.3;
  double measurement_sigma = 0.15;
  std::map<ClassId, double> v_max;
  std::map<ClassId, double> d_max;
  std::map<ClassId, double> process_sigma;
  double gate_m = 3.0;
  int max_misses = 3;
  // Initial variances for x, vx, y, vy.
  Eigen::Vector4d initial_variance{1.0, 25.0, 1.0, 25.0};
  // Associations after which a verdict is considered stable.
  int stable_after = 3;

  double VMax(ClassId id) const;
  double DMax(ClassId id) const;
  double ProcessSigma(ClassId id) const;
};

struct Observation {
  Eigen::Vector2d centre_world;
  ClassId class_id;
};

struct AssociationResult {
  // (track index, observation index)
  std::vector<std::pair<int, int>> matches;
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_observations;
};

// Mutual nearest neighbours between track positions and observations,
// restricted to equal classes and to distances <= gate.
AssociationResult Associate(std::span<const Observation> tracks,
                            std::span<const Observation> observations,
                            double gate);

// Semi-static iff |v| < v_max and |d| < d_max, dynamic otherwise.
// |v| is the filtered speed, |d| the shift of the world centre since the
// track's previous observation.
MotionVerdict ClassifyMotion(const Track& track,
                             const Eigen::Vector2d& new_centre_world,
                             const TrackingConfig& cfg);

struct TrackedObservation {
  int track_id = -1;
  MotionVerdict verdict = MotionVerdict::kUnknown;
  bool stable = false;
};

// One Kalman filter per unknown-motion landmark, in world coordinates.
class MultiObjectTracker {
 public:
  explicit MultiObjectTracker(const TrackingConfig& cfg = {}) : cfg_(cfg) {}

  // Predicts every track with turn rate omega, associates, updates and
  // classifies matched tracks, spawns tracks for new observations and retires
  // tracks after max_misses. Returns one entry per observation.
  std::vector<TrackedObservation> Step(std::span<const Observation> observations,
                                       double omega, double tau);

  // Moves every track into a corrected world frame.
  void ApplyCorrection(const PoseDelta2D& correction);

  std::span<const Track> tracks() const { return tracks_; }
  // Track ids retired during the last Step().
  std::span<const int> retired() const { return retired_; }

 private:
  TrackingConfig cfg_;
  std::vector<Track> tracks_;
  std::vector<int> retired_;
  int next_id_ = 0;
};

}  // namespace tracking
}  // namespace hullslam

#endif  // HULLSLAM_TRACKING_TRACKER_H_
