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

#ifndef HULLSLAM_POSE_ESTIMATION_REGISTRATION_H_
#define HULLSLAM_POSE_ESTIMATION_REGISTRATION_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hullslam/common/pose.h"
#include "hullslam/geometry/hull_feature.h"
#include "hullslam/segmentation/segmentation.h"

namespace hullslam {
namespace pose_estimation {

using segmentation::Landmark;

// Indices into the prev/curr landmark spans handed to PairLandmarks().
struct LandmarkPair {
  std::size_t prev = 0;
  std::size_t curr = 0;
  double centre_distance = 0.0;
};

// For each prev landmark the nearest curr centre is its candidate. A candidate
// is kept when its distance is at most the mean of all candidate distances
// (distance criterion) and both landmarks share a class (semantic criterion).
// Curr centres are first mapped into the prev frame by `curr_to_prev`.
std::vector<LandmarkPair> PairLandmarks(
    std::span<const Landmark> prev, std::span<const Landmark> curr,
    const PoseDelta2D& curr_to_prev = PoseDelta2D::Identity());

// Hull vertices closer than this to the chord of their neighbours are
// dropped before registration: well below the ranging noise, and it bounds
// the cost of every overlap evaluation.
inline constexpr double kHullTolerance = 0.01;

// Builds upper and lower hull pairs and keeps the more similar layer (upper on
// ties). Layers with a degenerate hull on either side are skipped; nullopt
// when no layer is usable.
std::optional<geometry::ConvexHullFeature> SelectFeatureLayer(
    std::span<const Eigen::Vector3d> prev_points,
    std::span<const Eigen::Vector3d> curr_points, ClassId class_id);

std::vector<geometry::ConvexHullFeature> BuildFeatures(
    std::span<const Landmark> prev, std::span<const Landmark> curr,
    std::span<const LandmarkPair> pairs);

// Total overlapping area sum_i Area((curr_i (x) t) n prev_i), square meters.
double OverlapObjective(const PoseDelta2D& t,
                        std::span<const geometry::ConvexHullFeature> features);

// Sum of prev hull areas: the objective's upper bound.
double TotalPrevArea(std::span<const geometry::ConvexHullFeature> features);

}  // namespace pose_estimation
}  // namespace hullslam

#endif  // HULLSLAM_POSE_ESTIMATION_REGISTRATION_H_
