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

#include "hullslam/pose_estimation/registration.h"

#include <cmath>
#include <limits>

namespace hullslam {
namespace pose_estimation {
namespace {

constexpr double kSimilarityTieTolerance = 1e-12;

Eigen::Vector3d MapCentre(const Eigen::Vector3d& centre,
                          const PoseDelta2D& curr_to_prev) {
  const Eigen::Vector2d xy = curr_to_prev * Eigen::Vector2d(centre.x(), centre.y());
  return {xy.x(), xy.y(), centre.z()};
}

}  // namespace

std::vector<LandmarkPair> PairLandmarks(std::span<const Landmark> prev,
                                        std::span<const Landmark> curr,
                                        const PoseDelta2D& curr_to_prev) {
  if (prev.empty() || curr.empty()) return {};
  std::vector<Eigen::Vector3d> mapped;
  mapped.reserve(curr.size());
  for (const Landmark& landmark : curr) {
    mapped.push_back(MapCentre(landmark.centre, curr_to_prev));
  }

  std::vector<LandmarkPair> candidates;
  candidates.reserve(prev.size());
  double distance_sum = 0.0;
  for (std::size_t i = 0; i < prev.size(); ++i) {
    LandmarkPair best{i, 0, std::numeric_limits<double>::infinity()};
    for (std::size_t j = 0; j < mapped.size(); ++j) {
      const double d = (prev[i].centre - mapped[j]).norm();
      if (d < best.centre_distance) best = {i, j, d};
    }
    candidates.push_back(best);
    distance_sum += best.centre_distance;
  }
  const double mean = distance_sum / static_cast<double>(candidates.size());

  std::vector<LandmarkPair> pairs;
  for (const LandmarkPair& c : candidates) {
    if (c.centre_distance <= mean &&
        prev[c.prev].class_id == curr[c.curr].class_id) {
      pairs.push_back(c);
    }
  }
  return pairs;
}

std::optional<geometry::ConvexHullFeature> SelectFeatureLayer(
    std::span<const Eigen::Vector3d> prev_points,
    std::span<const Eigen::Vector3d> curr_points, ClassId class_id) {
  using geometry::Layer;
  if (prev_points.empty() || curr_points.empty()) return std::nullopt;
  const geometry::LayerSplit split =
      geometry::SplitLayers(prev_points, curr_points);

  std::optional<geometry::ConvexHullFeature> best;
  for (const Layer layer : {Layer::kUpper, Layer::kLower}) {
    if (!split.LayerPopulated(layer)) continue;
    geometry::Polygon2D prev_hull = geometry::SimplifyConvex(
        geometry::ConvexHull(split.prev.Get(layer)), kHullTolerance);
    geometry::Polygon2D curr_hull = geometry::SimplifyConvex(
        geometry::ConvexHull(split.curr.Get(layer)), kHullTolerance);
    const double prev_area = geometry::PolygonArea(prev_hull);
    if (prev_area < geometry::kDegenerateArea ||
        geometry::PolygonArea(curr_hull) < geometry::kDegenerateArea) {
      continue;
    }
    const double similarity = geometry::HullSimilarity(prev_hull, curr_hull);
    if (best && similarity <= best->similarity + kSimilarityTieTolerance) {
      continue;
    }
    geometry::ConvexHullFeature feature;
    feature.prev_box = geometry::BoundingBox(prev_hull);
    feature.prev_area = prev_area;
    feature.prev_hull = std::move(prev_hull);
    feature.curr_hull = std::move(curr_hull);
    feature.layer = layer;
    feature.similarity = similarity;
    feature.class_id = class_id;
    best = std::move(feature);
  }
  return best;
}

std::vector<geometry::ConvexHullFeature> BuildFeatures(
    std::span<const Landmark> prev, std::span<const Landmark> curr,
    std::span<const LandmarkPair> pairs) {
  std::vector<geometry::ConvexHullFeature> features;
  features.reserve(pairs.size());
  for (const LandmarkPair& pair : pairs) {
    auto feature = SelectFeatureLayer(prev[pair.prev].points,
                                      curr[pair.curr].points,
                                      prev[pair.prev].class_id);
    if (feature) features.push_back(std::move(*feature));
  }
  return features;
}

double OverlapObjective(const PoseDelta2D& t,
                        std::span<const geometry::ConvexHullFeature> features) {
  thread_local geometry::Polygon2D moved;
  const double c = std::cos(t.dtheta);
  const double s = std::sin(t.dtheta);
  double total = 0.0;
  for (const auto& feature : features) {
    const auto& src = feature.curr_hull.vertices;
    moved.vertices.resize(src.size());
    geometry::Box2D box{Eigen::Vector2d::Constant(
                            std::numeric_limits<double>::infinity()),
                        Eigen::Vector2d::Constant(
                            -std::numeric_limits<double>::infinity())};
    for (std::size_t i = 0; i < src.size(); ++i) {
      const Eigen::Vector2d v(c * src[i].x() - s * src[i].y() + t.dx,
                              s * src[i].x() + c * src[i].y() + t.dy);
      moved.vertices[i] = v;
      box.min = box.min.cwiseMin(v);
      box.max = box.max.cwiseMax(v);
    }
    if (!box.Overlaps(feature.prev_box)) continue;
    total += geometry::IntersectionArea(moved, feature.prev_hull);
  }
  return total;
}

double TotalPrevArea(std::span<const geometry::ConvexHullFeature> features) {
  double total = 0.0;
  for (const auto& feature : features) total += feature.prev_area;
  return total;
}

}  // namespace pose_estimation
}  // namespace hullslam
