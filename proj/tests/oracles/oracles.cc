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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>

namespace hullslam {
namespace oracle {
namespace {

double CrossAt(const Eigen::Vector2d& o, const Eigen::Vector2d& a,
               const Eigen::Vector2d& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool Lexicographic(const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
  return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
}

Mat4 Multiply(const Mat4& a, const Mat4& b) {
  Mat4 c{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat4 Transpose(const Mat4& a) {
  Mat4 t{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) t[i][j] = a[j][i];
  return t;
}

}  // namespace

std::vector<Eigen::Vector2d> BruteForceHull(
    const std::vector<Eigen::Vector2d>& input) {
  std::vector<Eigen::Vector2d> points = input;
  std::sort(points.begin(), points.end(), Lexicographic);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() <= 1) return points;

  const std::size_t n = points.size();
  std::vector<char> extreme(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const Eigen::Vector2d d = points[j] - points[i];
      bool edge = true;
      for (std::size_t k = 0; k < n && edge; ++k) {
        if (k == i || k == j) continue;
        const double cross = CrossAt(points[i], points[j], points[k]);
        if (cross < 0.0) {
          edge = false;
        } else if (cross == 0.0) {
          const double along = (points[k] - points[i]).dot(d);
          if (along < 0.0 || along > d.squaredNorm()) edge = false;
        }
      }
      if (edge) extreme[i] = extreme[j] = 1;
    }
  }
  std::vector<Eigen::Vector2d> hull;
  for (std::size_t i = 0; i < n; ++i) {
    if (extreme[i]) hull.push_back(points[i]);
  }
  return hull;
}

bool InsideConvex(const std::vector<Eigen::Vector2d>& polygon,
                  const Eigen::Vector2d& p) {
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (CrossAt(polygon[i], polygon[(i + 1) % n], p) < 0.0) return false;
  }
  return n >= 3;
}

double MonteCarloIntersectionArea(const std::vector<Eigen::Vector2d>& a,
                                  const std::vector<Eigen::Vector2d>& b,
                                  int samples, std::mt19937_64& rng) {
  Eigen::Vector2d lo = Eigen::Vector2d::Constant(-std::numeric_limits<double>::infinity());
  Eigen::Vector2d hi = Eigen::Vector2d::Constant(std::numeric_limits<double>::infinity());
  for (const auto* poly : {&a, &b}) {
    Eigen::Vector2d plo = poly->front(), phi = poly->front();
    for (const auto& v : *poly) {
      plo = plo.cwiseMin(v);
      phi = phi.cwiseMax(v);
    }
    lo = lo.cwiseMax(plo);
    hi = hi.cwiseMin(phi);
  }
  if (lo.x() >= hi.x() || lo.y() >= hi.y()) return 0.0;
  std::uniform_real_distribution<double> ux(lo.x(), hi.x());
  std::uniform_real_distribution<double> uy(lo.y(), hi.y());
  long hits = 0;
  for (int s = 0; s < samples; ++s) {
    const Eigen::Vector2d p(ux(rng), uy(rng));
    if (InsideConvex(a, p) && InsideConvex(b, p)) ++hits;
  }
  return (hi.x() - lo.x()) * (hi.y() - lo.y()) * static_cast<double>(hits) /
         samples;
}

std::vector<Eigen::Vector2d> RandomConvexPolygon(std::mt19937_64& rng,
                                                 const Eigen::Vector2d& centre,
                                                 double radius, int count) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double semi_a = radius * (0.4 + 0.6 * unit(rng));
  const double semi_b = radius * (0.4 + 0.6 * unit(rng));
  const double tilt = 2.0 * std::numbers::pi * unit(rng);
  std::vector<double> angles(std::max(count, 3));
  for (double& t : angles) t = 2.0 * std::numbers::pi * unit(rng);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  std::vector<Eigen::Vector2d> polygon;
  const double c = std::cos(tilt), s = std::sin(tilt);
  for (double t : angles) {
    const double ex = semi_a * std::cos(t), ey = semi_b * std::sin(t);
    polygon.push_back(centre + Eigen::Vector2d(c * ex - s * ey, s * ex + c * ey));
  }
  return polygon;
}

std::vector<int> ReferenceDbscan(const std::vector<Eigen::Vector3d>& points,
                                 double eps, int min_pts) {
  const int n = static_cast<int>(points.size());
  std::vector<std::vector<int>> neighbours(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if ((points[i] - points[j]).squaredNorm() <= eps * eps) {
        neighbours[i].push_back(j);
      }
    }
  }
  std::vector<char> core(n);
  for (int i = 0; i < n; ++i) {
    core[i] = static_cast<int>(neighbours[i].size()) >= min_pts;
  }
  std::vector<int> labels(n, -1);
  int next = 0;
  for (int seed = 0; seed < n; ++seed) {
    if (!core[seed] || labels[seed] != -1) continue;
    std::deque<int> queue{seed};
    labels[seed] = next;
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int j : neighbours[i]) {
        if (core[j] && labels[j] == -1) {
          labels[j] = next;
          queue.push_back(j);
        }
      }
    }
    ++next;
  }
  for (int i = 0; i < n; ++i) {
    if (core[i]) continue;
    for (int j : neighbours[i]) {  // ascending index order
      if (core[j]) {
        labels[i] = labels[j];
        break;
      }
    }
  }
  return labels;
}

Mat4 ReferenceTransition(double omega, double tau) {
  const double a = omega * tau;
  return {{{1.0, std::sin(a) / omega, 0.0, -(1.0 - std::cos(a)) / omega},
           {0.0, std::cos(a), 0.0, -std::sin(a)},
           {0.0, (1.0 - std::cos(a)) / omega, 1.0, std::sin(a) / omega},
           {0.0, std::sin(a), 0.0, std::cos(a)}}};
}

Mat4 SeriesTransition(double omega, double tau) {
  const double a = omega * tau;
  const double a2 = a * a;
  const double sin_over = tau * (1.0 - a2 / 6.0 + a2 * a2 / 120.0);
  const double cos_over = tau * a * (0.5 - a2 / 24.0);
  const double c = 1.0 - a2 / 2.0 + a2 * a2 / 24.0;
  const double s = a * (1.0 - a2 / 6.0 + a2 * a2 / 120.0);
  return {{{1.0, sin_over, 0.0, -cos_over},
           {0.0, c, 0.0, -s},
           {0.0, cos_over, 1.0, sin_over},
           {0.0, s, 0.0, c}}};
}

ReferenceState ReferencePredict(const ReferenceState& s, double omega,
                                double tau, double process_sigma) {
  const Mat4 f = std::abs(omega) > 0.0 ? ReferenceTransition(omega, tau)
                                       : Mat4{{{1, tau, 0, 0},
                                               {0, 1, 0, 0},
                                               {0, 0, 1, tau},
                                               {0, 0, 0, 1}}};
  ReferenceState out{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) out.x[i] += f[i][k] * s.x[k];
  out.p = Multiply(Multiply(f, s.p), Transpose(f));
  const double g[4][2] = {{0.5 * tau * tau, 0.0},
                          {tau, 0.0},
                          {0.0, 0.5 * tau * tau},
                          {0.0, tau}};
  const double q = process_sigma * process_sigma;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.p[i][j] += q * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
  return out;
}

ReferenceState ReferenceUpdate(const ReferenceState& s, double zx, double zy,
                               double measurement_sigma) {
  // H picks rows 0 and 2.
  const double r = measurement_sigma * measurement_sigma;
  const double s00 = s.p[0][0] + r, s01 = s.p[0][2];
  const double s10 = s.p[2][0], s11 = s.p[2][2] + r;
  const double det = s00 * s11 - s01 * s10;
  const double i00 = s11 / det, i01 = -s01 / det;
  const double i10 = -s10 / det, i11 = s00 / det;
  double k[4][2];
  for (int i = 0; i < 4; ++i) {
    k[i][0] = s.p[i][0] * i00 + s.p[i][2] * i10;
    k[i][1] = s.p[i][0] * i01 + s.p[i][2] * i11;
  }
  const double ix = zx - s.x[0], iy = zy - s.x[2];
  ReferenceState out{};
  for (int i = 0; i < 4; ++i) out.x[i] = s.x[i] + k[i][0] * ix + k[i][1] * iy;
  Mat4 ikh{};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      ikh[i][j] = (i == j ? 1.0 : 0.0) - (j == 0 ? k[i][0] : 0.0) -
                  (j == 2 ? k[i][1] : 0.0);
    }
  }
  out.p = Multiply(ikh, s.p);
  return out;
}

std::vector<std::pair<int, int>> BruteForceMutualNearest(
    const std::vector<Point2WithClass>& tracks,
    const std::vector<Point2WithClass>& observations, double gate) {
  const auto nearest = [gate](const Point2WithClass& from,
                              const std::vector<Point2WithClass>& set) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < static_cast<int>(set.size()); ++j) {
      if (set[j].class_id != from.class_id) continue;
      const double d = (set[j].p - from.p).norm();
      if (d <= gate && d < best_d) {
        best = j;
        best_d = d;
      }
    }
    return best;
  };
  std::vector<std::pair<int, int>> matches;
  for (int i = 0; i < static_cast<int>(tracks.size()); ++i) {
    const int j = nearest(tracks[i], observations);
    if (j >= 0 && nearest(observations[j], tracks) == i) matches.emplace_back(i, j);
  }
  return matches;
}

std::map<std::array<int, 3>, BatchVoxel> BatchVoxelize(
    const std::vector<std::pair<Eigen::Vector3d, ClassId>>& world_points,
    double voxel_size) {
  std::map<std::array<int, 3>, std::vector<std::pair<Eigen::Vector3d, ClassId>>>
      groups;
  for (const auto& entry : world_points) {
    const std::array<int, 3> key{
        static_cast<int>(std::floor(entry.first.x() / voxel_size)),
        static_cast<int>(std::floor(entry.first.y() / voxel_size)),
        static_cast<int>(std::floor(entry.first.z() / voxel_size))};
    groups[key].push_back(entry);
  }
  std::map<std::array<int, 3>, BatchVoxel> voxels;
  for (const auto& [key, members] : groups) {
    BatchVoxel voxel;
    Eigen::Vector3d sum = Eigen::Vector3d::Zero();
    for (const auto& [p, c] : members) {
      sum += p;
      ++voxel.class_counts[c];
    }
    voxel.count = members.size();
    voxel.centroid = sum / static_cast<double>(members.size());
    voxels[key] = voxel;
  }
  return voxels;
}

}  // namespace oracle
}  // namespace hullslam
