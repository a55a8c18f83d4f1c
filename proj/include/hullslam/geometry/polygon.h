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

#ifndef HULLSLAM_GEOMETRY_POLYGON_H_
#define HULLSLAM_GEOMETRY_POLYGON_H_

#include <span>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/pose.h"

namespace hullslam {
namespace geometry {

// Cross products below this magnitude are treated as collinear.
inline constexpr double kCollinearEpsilon = 1e-12;
// Hulls below this area (m^2) are not usable as registration features.
inline constexpr double kDegenerateArea = 1e-6;

// Convex polygon, counter-clockwise, no three consecutive vertices collinear.
// Fewer than three vertices is a degenerate polygon with zero area.
struct Polygon2D {
  std::vector<Eigen::Vector2d> vertices;

  std::size_t size() const { return vertices.size(); }
  bool empty() const { return vertices.empty(); }
};

inline double Cross(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
                    const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

// Graham's scan. Requires at least one point; coincident input yields a
// single vertex, collinear input the two extreme points.
Polygon2D ConvexHull(std::span<const Eigen::Vector2d> points);

// Shoelace area; non-negative for counter-clockwise input.
double PolygonArea(const Polygon2D& polygon);

// Area centroid, or the vertex mean for degenerate polygons.
Eigen::Vector2d PolygonCentroid(const Polygon2D& polygon);

// v -> R(dtheta) v + (dx, dy) for every vertex.
Polygon2D TransformPolygon(const Polygon2D& polygon, const PoseDelta2D& t);

Polygon2D TranslatePolygon(const Polygon2D& polygon,
                           const Eigen::Vector2d& offset);

// Clips `a` by each edge of `b` taken as a half-plane. Empty when the
// overlap has no area.
Polygon2D ConvexIntersection(const Polygon2D& a, const Polygon2D& b);

// Area of ConvexIntersection(a, b) without building the cleaned polygon.
double IntersectionArea(const Polygon2D& a, const Polygon2D& b);

// Centroid-aligned intersection-over-union in [0, 1]. Zero when either hull
// is degenerate.
double HullSimilarity(const Polygon2D& a, const Polygon2D& b);

// Axis-aligned bounds, for cheap overlap rejection.
struct Box2D {
  Eigen::Vector2d min;
  Eigen::Vector2d max;

  bool Overlaps(const Box2D& other) const {
    return min.x() <= other.max.x() && other.min.x() <= max.x() &&
           min.y() <= other.max.y() && other.min.y() <= max.y();
  }
};

Box2D BoundingBox(const Polygon2D& polygon);

// Repeatedly removes the vertex closest to the chord through its neighbours
// while that distance is below `tolerance` (meters) and more than three
// vertices remain. The result is convex and contained in the input.
Polygon2D SimplifyConvex(const Polygon2D& polygon, double tolerance);

}  // namespace geometry
}  // namespace hullslam

#endif  // HULLSLAM_GEOMETRY_POLYGON_H_
