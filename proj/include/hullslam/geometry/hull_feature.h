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

#ifndef HULLSLAM_GEOMETRY_HULL_FEATURE_H_
#define HULLSLAM_GEOMETRY_HULL_FEATURE_H_

#include <span>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/semantic_classes.h"
#include "hullslam/geometry/polygon.h"

namespace hullslam {
namespace geometry {

enum class Layer { kUpper, kLower };

// Points of one landmark above/below a height threshold, projected to xy.
struct LayeredPoints {
  std::vector<Eigen::Vector2d> upper;
  std::vector<Eigen::Vector2d> lower;

  const std::vector<Eigen::Vector2d>& Get(Layer layer) const {
    return layer == Layer::kUpper ? upper : lower;
  }
};

struct LayerSplit {
  // Mean z over the union of both landmarks' points.
  double threshold = 0.0;
  LayeredPoints prev;
  LayeredPoints curr;

  // A layer is usable only when both landmarks have points in it.
  bool LayerPopulated(Layer layer) const {
    return !prev.Get(layer).empty() && !curr.Get(layer).empty();
  }
};

// Points with z >= threshold go to the upper layer.
LayerSplit SplitLayers(std::span<const Eigen::Vector3d> prev_points,
                       std::span<const Eigen::Vector3d> curr_points);

// The registration primitive for one landmark pair: the layer whose two hulls
// are most alike.
struct ConvexHullFeature {
  Polygon2D prev_hull;  // frame k-1 (or submap) coordinates
  Polygon2D curr_hull;  // frame k coordinates
  Layer layer = Layer::kUpper;
  double similarity = 0.0;
  ClassId class_id = semantic::kUnlabeled;
  // Cached for objective evaluation.
  double prev_area = 0.0;
  Box2D prev_box;
};

}  // namespace geometry
}  // namespace hullslam

#endif  // HULLSLAM_GEOMETRY_HULL_FEATURE_H_
