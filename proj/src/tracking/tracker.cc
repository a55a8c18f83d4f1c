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

#include "hullslam/tracking/tracker.h"

#include <limits>

namespace hullslam {
namespace tracking {
namespace {

double Lookup(const std::map<ClassId, double>& table, ClassId id,
              double vehicle_default, double person_default) {
  const auto it = table.find(id);
  if (it != table.end()) return it->second;
  return semantic::IsVehicle(id) ? vehicle_default : person_default;
}

// Index of the nearest same-class candidate within the gate, or -1.
int Nearest(const Observation& from, std::span<const Observation> candidates,
            double gate) {
  int best = -1;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < candidates.size(); ++j) {
    if (candidates[j].class_id != from.class_id) continue;
    const double d = (candidates[j].centre_world - from.centre_world).norm();
    if (d <= gate && d < best_distance) {
      best_distance = d;
      best = static_cast<int>(j);
    }
  }
  return best;
}

}  // namespace

const char* VerdictName(MotionVerdict verdict) {
  switch (verdict) {
    case MotionVerdict::kUnknown: return "unknown";
    case MotionVerdict::kDynamic: return "dynamic";
    case MotionVerdict::kSemiStatic: return "semi-static";
  }
  return "unknown";
}

double TrackingConfig::VMax(ClassId id) const {
  return Lookup(v_max, id, vehicle_v_max, person_v_max);
}
double TrackingConfig::DMax(ClassId id) const {
  return Lookup(d_max, id, vehicle_d_max, person_d_max);
}
double TrackingConfig::ProcessSigma(ClassId id) const {
  return Lookup(process_sigma, id, vehicle_process_sigma, person_process_sigma);
}

AssociationResult Associate(std::span<const Observation> tracks,
                            std::span<const Observation> observations,
                            double gate) {
  AssociationResult result;
  std::vector<int> track_choice(tracks.size());
  std::vector<int> observation_choice(observations.size());
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    track_choice[i] = Nearest(tracks[i], observations, gate);
  }
  for (std::size_t j = 0; j < observations.size(); ++j) {
    observation_choice[j] = Nearest(observations[j], tracks, gate);
  }
  std::vector<char> observation_matched(observations.size(), 0);
  for (std::size_t i = 0; i < tracks.size(); ++i) {
    const int j = track_choice[i];
    if (j >= 0 && observation_choice[j] == static_cast<int>(i)) {
      result.matches.emplace_back(static_cast<int>(i), j);
      observation_matched[j] = 1;
    } else {
      result.unmatched_tracks.push_back(static_cast<int>(i));
    }
  }
  for (std::size_t j = 0; j < observations.size(); ++j) {
    if (!observation_matched[j]) {
      result.unmatched_observations.push_back(static_cast<int>(j));
    }
  }
  return result;
}

MotionVerdict ClassifyMotion(const Track& track,
                             const Eigen::Vector2d& new_centre_world,
                             const TrackingConfig& cfg) {
  const double speed = track.state.Velocity().norm();
  const double shift = (new_centre_world - track.last_centre_world).norm();
  if (speed < cfg.VMax(track.class_id) && shift < cfg.DMax(track.class_id)) {
    return MotionVerdict::kSemiStatic;
  }
  return MotionVerdict::kDynamic;
}

std::vector<TrackedObservation> MultiObjectTracker::Step(
    std::span<const Observation> observations, double omega, double tau) {
  retired_.clear();
  for (Track& track : tracks_) {
    track.state = Predict(track.state, omega, tau,
                          cfg_.ProcessSigma(track.class_id));
  }
  std::vector<Observation> predicted;
  predicted.reserve(tracks_.size());
  for (const Track& track : tracks_) {
    predicted.push_back({track.state.Position(), track.class_id});
  }
  const AssociationResult association =
      Associate(predicted, observations, cfg_.gate_m);

  std::vector<TrackedObservation> out(observations.size());
  std::vector<char> missed(tracks_.size(), 0);
  for (const int i : association.unmatched_tracks) missed[i] = 1;
  for (const auto& [i, j] : association.matches) {
    Track& track = tracks_[i];
    const Eigen::Vector2d& z = observations[j].centre_world;
    const auto updated = Update(track.state, z, cfg_.measurement_sigma);
    if (!updated) {
      missed[i] = 1;
      continue;
    }
    track.state = *updated;
    track.verdict = ClassifyMotion(track, z, cfg_);
    track.last_centre_world = z;
    ++track.age;
    ++track.associations;
    track.misses = 0;
    out[j] = {track.track_id, track.verdict,
              track.age >= cfg_.stable_after};
  }

  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    if (missed[i]) ++tracks_[i].misses;
  }
  std::vector<Track> survivors;
  survivors.reserve(tracks_.size() + association.unmatched_observations.size());
  for (Track& track : tracks_) {
    if (track.misses >= cfg_.max_misses) {
      retired_.push_back(track.track_id);
    } else {
      survivors.push_back(std::move(track));
    }
  }
  tracks_ = std::move(survivors);

  for (const int j : association.unmatched_observations) {
    if (!observations[j].centre_world.allFinite()) continue;
    Track track;
    track.track_id = next_id_++;
    track.class_id = observations[j].class_id;
    track.state.mean << observations[j].centre_world.x(), 0.0,
        observations[j].centre_world.y(), 0.0;
    track.state.covariance = cfg_.initial_variance.asDiagonal();
    track.last_centre_world = observations[j].centre_world;
    out[j] = {track.track_id, MotionVerdict::kUnknown, false};
    tracks_.push_back(std::move(track));
  }
  return out;
}

void MultiObjectTracker::ApplyCorrection(const PoseDelta2D& correction) {
  const Eigen::Matrix2d rotation =
      Eigen::Rotation2Dd(correction.dtheta).toRotationMatrix();
  Eigen::Matrix4d block = Eigen::Matrix4d::Zero();
  // State order is [x, vx, y, vy]: positions at 0, 2 and velocities at 1, 3.
  block(0, 0) = rotation(0, 0);
  block(0, 2) = rotation(0, 1);
  block(2, 0) = rotation(1, 0);
  block(2, 2) = rotation(1, 1);
  block(1, 1) = rotation(0, 0);
  block(1, 3) = rotation(0, 1);
  block(3, 1) = rotation(1, 0);
  block(3, 3) = rotation(1, 1);
  for (Track& track : tracks_) {
    track.state.mean = block * track.state.mean;
    track.state.mean[0] += correction.dx;
    track.state.mean[2] += correction.dy;
    track.state.covariance = block * track.state.covariance * block.transpose();
    track.last_centre_world = correction * track.last_centre_world;
  }
}

}  // namespace tracking
}  // namespace hullslam
