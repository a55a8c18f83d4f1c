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

#include "hullslam/geometry/polygon.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "hullslam/common/errors.h"

namespace hullslam {
namespace geometry {
namespace {

double SignedArea(std::span<const Eigen::Vector2d> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    twice += vertices[j].x() * vertices[i].y() - vertices[i].x() * vertices[j].y();
  }
  return 0.5 * twice;
}

// Flat x/y buffers for the clipping ring; hot in the registration objective.
struct Ring {
  std::vector<double> x;
  std::vector<double> y;

  std::size_t size() const { return x.size(); }
  bool empty() const { return x.empty(); }
  void clear() {
    x.clear();
    y.clear();
  }
  void push(double px, double py) {
    x.push_back(px);
    y.push_back(py);
  }
};

// One Sutherland-Hodgman pass: keeps the part of `input` left of the line
// through (x0, y0) with direction (ex, ey).
void ClipByEdge(const Ring& input, double x0, double y0, double ex, double ey,
                Ring& output) {
  output.clear();
  const std::size_t n = input.size();
  if (n == 0) return;
  const double* xs = input.x.data();
  const double* ys = input.y.data();
  double prev_x = xs[n - 1];
  double prev_y = ys[n - 1];
  double prev_side = ex * (prev_y - y0) - ey * (prev_x - x0);
  for (std::size_t i = 0; i < n; ++i) {
    const double curr_x = xs[i];
    const double curr_y = ys[i];
    const double curr_side = ex * (curr_y - y0) - ey * (curr_x - x0);
    const bool curr_in = curr_side >= 0.0;
    if (curr_in != (prev_side >= 0.0)) {
      const double t = prev_side / (prev_side - curr_side);
      output.push(prev_x + t * (curr_x - prev_x), prev_y + t * (curr_y - prev_y));
    }
    if (curr_in) output.push(curr_x, curr_y);
    prev_x = curr_x;
    prev_y = curr_y;
    prev_side = curr_side;
  }
}

// Clips a by b into `result`, using `scratch` as the ping-pong buffer.
void ClipConvex(const Polygon2D& a, const Polygon2D& b, Ring& result,
                Ring& scratch) {
  result.clear();
  for (const Eigen::Vector2d& v : a.vertices) result.push(v.x(), v.y());
  const std::size_t m = b.vertices.size();
  for (std::size_t i = 0; i < m && !result.empty(); ++i) {
    const Eigen::Vector2d& e0 = b.vertices[i];
    const Eigen::Vector2d& e1 = b.vertices[i + 1 == m ? 0 : i + 1];
    ClipByEdge(result, e0.x(), e0.y(), e1.x() - e0.x(), e1.y() - e0.y(),
               scratch);
    std::swap(result, scratch);
  }
}

double RingArea(const Ring& ring) {
  const std::size_t n = ring.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    twice += ring.x[j] * ring.y[i] - ring.x[i] * ring.y[j];
  }
  return 0.5 * twice;
}

// Drops repeated and collinear vertices from a convex CCW ring.
void Simplify(std::vector<Eigen::Vector2d>& ring) {
  bool changed = true;
  while (changed && ring.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < ring.size() && ring.size() >= 3; ++i) {
      const std::size_t n = ring.size();
      const Eigen::Vector2d& prev = ring[(i + n - 1) % n];
      const Eigen::Vector2d& next = ring[(i + 1) % n];
      if ((ring[i] - prev).squaredNorm() <= kCollinearEpsilon * kCollinearEpsilon ||
          std::abs(Cross(prev, ring[i], next)) <= kCollinearEpsilon) {
        ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        --i;
      }
    }
  }
}

}  // namespace

Polygon2D ConvexHull(std::span<const Eigen::Vector2d> points) {
  Require(!points.empty(), "ConvexHull: empty point set");
  std::vector<Eigen::Vector2d> pts(points.begin(), points.end());
  const auto lexicographic = [](const Eigen::Vector2d& a,
                                const Eigen::Vector2d& b) {
    return a.y() < b.y() || (a.y() == b.y() && a.x() < b.x());
  };
  std::sort(pts.begin(), pts.end(), lexicographic);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == 1) return Polygon2D{pts};

  // pts[0] is the lowest (then leftmost) point; every other point lies in the
  // half-plane above it, so the cross product orders them by polar angle.
  const Eigen::Vector2d pivot = pts[0];
  std::sort(pts.begin() + 1, pts.end(),
            [&pivot](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
              const double cross = Cross(pivot, a, b);
              if (cross != 0.0) return cross > 0.0;
              return (a - pivot).squaredNorm() < (b - pivot).squaredNorm();
            });

  std::vector<Eigen::Vector2d> stack;
  stack.reserve(pts.size());
  stack.push_back(pivot);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    while (stack.size() >= 2 &&
           Cross(stack[stack.size() - 2], stack.back(), pts[i]) <=
               kCollinearEpsilon) {
      stack.pop_back();
    }
    stack.push_back(pts[i]);
  }
  // The last point can be collinear with the closing edge back to the pivot.
  while (stack.size() >= 3 &&
         Cross(stack[stack.size() - 2], stack.back(), pivot) <=
             kCollinearEpsilon) {
    stack.pop_back();
  }
  return Polygon2D{std::move(stack)};
}

double PolygonArea(const Polygon2D& polygon) {
  return SignedArea(polygon.vertices);
}

Eigen::Vector2d PolygonCentroid(const Polygon2D& polygon) {
  const auto& v = polygon.vertices;
  if (v.empty()) return Eigen::Vector2d::Zero();
  const double area = SignedArea(v);
  if (std::abs(area) < kDegenerateArea) {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    for (const auto& p : v) mean += p;
    return mean / static_cast<double>(v.size());
  }
  // Offsetting by the first vertex keeps the sums well conditioned far from
  // the origin.
  const Eigen::Vector2d origin = v[0];
  Eigen::Vector2d sum = Eigen::Vector2d::Zero();
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Eigen::Vector2d a = v[i] - origin;
    const Eigen::Vector2d b = v[i + 1] - origin;
    const double cross = a.x() * b.y() - a.y() * b.x();
    sum += cross * (a + b);
  }
  return origin + sum / (6.0 * area);
}

Polygon2D TransformPolygon(const Polygon2D& polygon, const PoseDelta2D& t) {
  Polygon2D out;
  out.vertices.reserve(polygon.size());
  for (const Eigen::Vector2d& v : polygon.vertices) out.vertices.push_back(t * v);
  return out;
}

Polygon2D TranslatePolygon(const Polygon2D& polygon,
                           const Eigen::Vector2d& offset) {
  Polygon2D out = polygon;
  for (Eigen::Vector2d& v : out.vertices) v += offset;
  return out;
}

Polygon2D ConvexIntersection(const Polygon2D& a, const Polygon2D& b) {
  if (a.size() < 3 || b.size() < 3) return {};
  Ring ring, scratch;
  ClipConvex(a, b, ring, scratch);
  std::vector<Eigen::Vector2d> result(ring.size());
  for (std::size_t i = 0; i < ring.size(); ++i) result[i] = {ring.x[i], ring.y[i]};
  Simplify(result);
  if (result.size() < 3 || SignedArea(result) <= 0.0) return {};
  return Polygon2D{std::move(result)};
}

double IntersectionArea(const Polygon2D& a, const Polygon2D& b) {
  if (a.size() < 3 || b.size() < 3) return 0.0;
  thread_local Ring result, scratch;
  ClipConvex(a, b, result, scratch);
  return std::max(0.0, RingArea(result));
}

double HullSimilarity(const Polygon2D& a, const Polygon2D& b) {
  const double area_a = PolygonArea(a);
  const double area_b = PolygonArea(b);
  if (a.size() < 3 || b.size() < 3 || area_a < kDegenerateArea ||
      area_b < kDegenerateArea) {
    return 0.0;
  }
  const Polygon2D centred_a = TranslatePolygon(a, -PolygonCentroid(a));
  const Polygon2D centred_b = TranslatePolygon(b, -PolygonCentroid(b));
  const double overlap = IntersectionArea(centred_a, centred_b);
  const double union_area = area_a + area_b - overlap;
  return std::clamp(overlap / union_area, 0.0, 1.0);
}

Box2D BoundingBox(const Polygon2D& polygon) {
  Box2D box{Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity()),
            Eigen::Vector2d::Constant(-std::numeric_limits<double>::infinity())};
  for (const Eigen::Vector2d& v : polygon.vertices) {
    box.min = box.min.cwiseMin(v);
    box.max = box.max.cwiseMax(v);
  }
  return box;
}

Polygon2D SimplifyConvex(const Polygon2D& polygon, double tolerance) {
  std::vector<Eigen::Vector2d> ring = polygon.vertices;
  const auto chord_distance = [&ring](std::size_t i) {
    const std::size_t n = ring.size();
    const Eigen::Vector2d& prev = ring[(i + n - 1) % n];
    const Eigen::Vector2d& next = ring[(i + 1) % n];
    const double length = (next - prev).norm();
    if (length == 0.0) return 0.0;
    return std::abs(Cross(prev, next, ring[i])) / length;
  };
  while (ring.size() > 3) {
    std::size_t best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const double d = chord_distance(i);
      if (d < best_distance) {
        best_distance = d;
        best = i;
      }
    }
    if (best_distance >= tolerance) break;
    ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return Polygon2D{std::move(ring)};
}

}  // namespace geometry
}  // namespace hullslam
