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

#include "hullslam/loop_closure/loop_detector.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hullslam/common/errors.h"
#include "hullslam/pose_estimation/registration.h"

namespace hullslam {
namespace loop_closure {
namespace {

using segmentation::Landmark;

// Up to `limit` landmark indices, nearest to the sensor first.
std::vector<int> NearestIndices(std::span<const Landmark> landmarks, int limit) {
  std::vector<int> order(landmarks.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return landmarks[a].centre.head<2>().squaredNorm() <
           landmarks[b].centre.head<2>().squaredNorm();
  });
  if (static_cast<int>(order.size()) > limit) order.resize(limit);
  return order;
}

// (candidate index, current index) pairs whose centres agree under `t`.
std::vector<std::pair<int, int>> Inliers(std::span<const Landmark> candidate,
                                         std::span<const Landmark> current,
                                         const PoseDelta2D& t, double radius) {
  std::vector<std::pair<int, int>> inliers;
  const double radius_sq = radius * radius;
  for (std::size_t j = 0; j < current.size(); ++j) {
    const Eigen::Vector2d mapped = t * Eigen::Vector2d(current[j].centre.head<2>());
    int best = -1;
    double best_sq = radius_sq;
    for (std::size_t i = 0; i < candidate.size(); ++i) {
      if (candidate[i].class_id != current[j].class_id) continue;
      const double d = (candidate[i].centre.head<2>() - mapped).squaredNorm();
      if (d <= best_sq) {
        best_sq = d;
        best = static_cast<int>(i);
      }
    }
    if (best >= 0) inliers.emplace_back(best, static_cast<int>(j));
  }
  return inliers;
}

// Least-squares rigid transform taking `from` onto `to` (2D Kabsch).
PoseDelta2D FitRigid(const std::vector<Eigen::Vector2d>& to,
                     const std::vector<Eigen::Vector2d>& from) {
  Eigen::Vector2d mean_to = Eigen::Vector2d::Zero();
  Eigen::Vector2d mean_from = Eigen::Vector2d::Zero();
  for (std::size_t i = 0; i < to.size(); ++i) {
    mean_to += to[i];
    mean_from += from[i];
  }
  mean_to /= static_cast<double>(to.size());
  mean_from /= static_cast<double>(from.size());
  double sin_sum = 0.0, cos_sum = 0.0;
  for (std::size_t i = 0; i < to.size(); ++i) {
    const Eigen::Vector2d a = from[i] - mean_from;
    const Eigen::Vector2d b = to[i] - mean_to;
    cos_sum += a.dot(b);
    sin_sum += a.x() * b.y() - a.y() * b.x();
  }
  const double theta = std::atan2(sin_sum, cos_sum);
  PoseDelta2D rotation_only{0.0, 0.0, theta};
  const Eigen::Vector2d t = mean_to - rotation_only * mean_from;
  return {t.x(), t.y(), theta};
}

}  // namespace

void LoopDatabase::Add(KeyframeDescriptor descriptor) {
  Require(descriptors_.empty() ||
              descriptor.keyframe_id > descriptors_.back().keyframe_id,
          "LoopDatabase::Add: keyframe ids must increase");
  descriptors_.push_back(std::move(descriptor));
}

const KeyframeDescriptor& LoopDatabase::Get(int keyframe_id) const {
  const auto it = std::lower_bound(
      descriptors_.begin(), descriptors_.end(), keyframe_id,
      [](const KeyframeDescriptor& d, int id) { return d.keyframe_id < id; });
  Require(it != descriptors_.end() && it->keyframe_id == keyframe_id,
          "LoopDatabase::Get: unknown keyframe");
  return *it;
}

std::vector<LoopCandidate> LoopDatabase::Query(
    const KeyframeDescriptor& query) const {
  std::vector<LoopCandidate> candidates;
  if (query.weak) return candidates;
  for (const KeyframeDescriptor& past : descriptors_) {
    if (past.weak) continue;
    if (query.keyframe_id - past.keyframe_id < config_.min_separation) continue;
    const double similarity = DescriptorSimilarity(query, past);
    if (similarity >= config_.sim_threshold) {
      candidates.push_back({past.keyframe_id, similarity});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const LoopCandidate& a, const LoopCandidate& b) {
                     return a.similarity > b.similarity;
                   });
  if (static_cast<int>(candidates.size()) > config_.top_k) {
    candidates.resize(config_.top_k);
  }
  return candidates;
}

std::optional<PoseDelta2D> AlignConstellations(
    std::span<const Landmark> candidate, std::span<const Landmark> current,
    const LoopConfig& config) {
  const std::vector<int> cand_idx =
      NearestIndices(candidate, config.hypothesis_landmarks);
  const std::vector<int> curr_idx =
      NearestIndices(current, config.hypothesis_landmarks);
  // Two landmarks closer than this give a poorly conditioned heading.
  constexpr double kMinBaseline = 2.0;

  std::size_t best_count = 0;
  std::vector<std::pair<int, int>> best_inliers;
  for (std::size_t a = 0; a < cand_idx.size(); ++a) {
    for (std::size_t b = a + 1; b < cand_idx.size(); ++b) {
      const Landmark& p1 = candidate[cand_idx[a]];
      const Landmark& p2 = candidate[cand_idx[b]];
      const Eigen::Vector2d pv = p2.centre.head<2>() - p1.centre.head<2>();
      const double pd = pv.norm();
      if (pd < kMinBaseline) continue;
      for (const int c1 : curr_idx) {
        if (current[c1].class_id != p1.class_id) continue;
        for (const int c2 : curr_idx) {
          if (c2 == c1 || current[c2].class_id != p2.class_id) continue;
          const Eigen::Vector2d cv =
              current[c2].centre.head<2>() - current[c1].centre.head<2>();
          if (std::abs(cv.norm() - pd) > config.hypothesis_tolerance_m) continue;
          const double theta =
              std::atan2(pv.y(), pv.x()) - std::atan2(cv.y(), cv.x());
          const PoseDelta2D rotation_only{0.0, 0.0, WrapAngle(theta)};
          const Eigen::Vector2d t =
              p1.centre.head<2>() -
              rotation_only * Eigen::Vector2d(current[c1].centre.head<2>());
          const PoseDelta2D hypothesis{t.x(), t.y(), rotation_only.dtheta};
          auto inliers =
              Inliers(candidate, current, hypothesis, config.inlier_radius_m);
          if (inliers.size() > best_count) {
            best_count = inliers.size();
            best_inliers = std::move(inliers);
          }
        }
      }
    }
  }
  if (best_count < 2) return std::nullopt;
  std::vector<Eigen::Vector2d> to, from;
  for (const auto& [i, j] : best_inliers) {
    to.push_back(candidate[i].centre.head<2>());
    from.push_back(current[j].centre.head<2>());
  }
  return FitRigid(to, from);
}

std::optional<LoopConstraint> VerifyLoop(const KeyframeDescriptor& candidate,
                                         const KeyframeDescriptor& current,
                                         const LoopConfig& config,
                                         std::uint64_t seed) {
  const auto prior =
      AlignConstellations(candidate.landmarks, current.landmarks, config);
  if (!prior) return std::nullopt;
  const std::vector<pose_estimation::LandmarkPair> pairs =
      pose_estimation::PairLandmarks(candidate.landmarks, current.landmarks,
                                     *prior);
  if (static_cast<int>(pairs.size()) < config.min_pairs) return std::nullopt;
  const std::vector<geometry::ConvexHullFeature> features =
      pose_estimation::BuildFeatures(candidate.landmarks, current.landmarks,
                                     pairs);
  pose_estimation::PsoConfig pso = config.pso;
  pso.seed = seed;
  const pose_estimation::PsoResult result =
      pose_estimation::SolvePso(features, *prior, pso);
  if (result.low_confidence) return std::nullopt;
  const double total = pose_estimation::TotalPrevArea(features);
  const double ratio = total > 0.0 ? result.objective / total : 0.0;
  if (ratio < config.overlap_ratio) return std::nullopt;

  LoopConstraint constraint;
  constraint.candidate_keyframe = candidate.keyframe_id;
  constraint.current_keyframe = current.keyframe_id;
  constraint.delta = result.pose;
  constraint.pair_count = static_cast<int>(pairs.size());
  constraint.overlap_ratio = ratio;
  constraint.similarity = DescriptorSimilarity(candidate, current);
  double dz = 0.0;
  for (const auto& pair : pairs) {
    dz += candidate.landmarks[pair.prev].centre.z() -
          current.landmarks[pair.curr].centre.z();
  }
  constraint.dz = dz / static_cast<double>(pairs.size());
  return constraint;
}

}  // namespace loop_closure
}  // namespace hullslam
