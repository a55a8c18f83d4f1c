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

#include "hullslam/loop_closure/pose_graph.h"

#include <algorithm>
#include <cmath>

#include "Eigen/Sparse"
#include "Eigen/SparseCholesky"
#include "hullslam/common/errors.h"

namespace hullslam {
namespace loop_closure {
namespace {

constexpr int kDof = 4;

struct Linearized {
  Eigen::Vector4d residual;
  Eigen::Matrix4d jacobian_from;
  Eigen::Matrix4d jacobian_to;
};

Linearized Linearize(const GraphEdge& edge, std::span<const GraphNode> nodes) {
  const GraphNode& a = nodes[edge.from];
  const GraphNode& b = nodes[edge.to];
  const double c = std::cos(a.theta);
  const double s = std::sin(a.theta);
  const Eigen::Vector2d diff(b.x - a.x, b.y - a.y);
  Eigen::Matrix2d rt;
  rt << c, s, -s, c;
  Eigen::Matrix2d drt;  // d(R^T)/dtheta
  drt << -s, c, -c, -s;

  Linearized out;
  out.residual.head<2>() = rt * diff - edge.delta.translation();
  out.residual[2] = WrapAngle(b.theta - a.theta - edge.delta.dtheta);
  out.residual[3] = b.z - a.z - edge.dz;

  out.jacobian_from.setZero();
  out.jacobian_to.setZero();
  out.jacobian_from.block<2, 2>(0, 0) = -rt;
  out.jacobian_from.block<2, 1>(0, 2) = drt * diff;
  out.jacobian_from(2, 2) = -1.0;
  out.jacobian_from(3, 3) = -1.0;
  out.jacobian_to.block<2, 2>(0, 0) = rt;
  out.jacobian_to(2, 2) = 1.0;
  out.jacobian_to(3, 3) = 1.0;
  return out;
}

std::vector<GraphNode> Step(std::span<const GraphNode> nodes,
                            const Eigen::VectorXd& delta, double scale) {
  std::vector<GraphNode> next(nodes.begin(), nodes.end());
  for (std::size_t k = 1; k < next.size(); ++k) {
    const Eigen::Index base = static_cast<Eigen::Index>(k - 1) * kDof;
    next[k].x += scale * delta[base];
    next[k].y += scale * delta[base + 1];
    next[k].theta = WrapAngle(next[k].theta + scale * delta[base + 2]);
    next[k].z += scale * delta[base + 3];
  }
  return next;
}

}  // namespace

GraphNode GraphNode::FromPose(const PoseSE3& pose) {
  return {pose.translation.x(), pose.translation.y(), pose.Yaw(),
          pose.translation.z()};
}

Eigen::Vector4d EdgeResidual(const GraphEdge& edge,
                             std::span<const GraphNode> nodes) {
  return Linearize(edge, nodes).residual;
}

double GraphCost(std::span<const GraphNode> nodes,
                 std::span<const GraphEdge> edges) {
  double cost = 0.0;
  for (const GraphEdge& edge : edges) {
    const Eigen::Vector4d r = EdgeResidual(edge, nodes);
    cost += r.dot(edge.information.cwiseProduct(r));
  }
  return cost;
}

int PoseGraph::AddNode(const GraphNode& node) {
  nodes_.push_back(node);
  return static_cast<int>(nodes_.size()) - 1;
}

void PoseGraph::AddOdometryEdge(int from, int to, const PoseDelta2D& delta,
                                double dz, const Eigen::Vector4d& information) {
  Require(to == from + 1, "AddOdometryEdge: odometry edges must chain nodes");
  Require(to < static_cast<int>(nodes_.size()), "AddOdometryEdge: no such node");
  edges_.push_back({from, to, delta, dz, information, false});
}

void PoseGraph::AddLoopEdge(int from, int to, const PoseDelta2D& delta,
                            double dz, const Eigen::Vector4d& information) {
  Require(from >= 0 && to >= 0 && from < static_cast<int>(nodes_.size()) &&
              to < static_cast<int>(nodes_.size()) && from != to,
          "AddLoopEdge: bad node index");
  edges_.push_back({from, to, delta, dz, information, true});
}

int PoseGraph::loop_edge_count() const {
  return static_cast<int>(std::count_if(
      edges_.begin(), edges_.end(), [](const GraphEdge& e) { return e.loop; }));
}

void PoseGraph::SetNodes(std::vector<GraphNode> nodes) {
  Require(nodes.size() == nodes_.size(), "SetNodes: node count mismatch");
  nodes_ = std::move(nodes);
}

CorrectionResult PoseGraph::Correct(const PoseGraphOptions& options) const {
  Require(loop_edge_count() > 0, "PoseGraph::Correct: no loop edges");
  CorrectionResult result;
  result.nodes = nodes_;
  result.initial_cost = GraphCost(nodes_, edges_);
  result.final_cost = result.initial_cost;
  const int n = static_cast<int>(nodes_.size());
  if (n < 2 || result.initial_cost == 0.0) return result;

  const Eigen::Index dim = static_cast<Eigen::Index>(n - 1) * kDof;
  double cost = result.initial_cost;
  double scale = 1.0;
  int increases = 0;
  std::vector<Eigen::Triplet<double>> triplets;
  for (int iteration = 0; iteration < options.max_iterations; ++iteration) {
    triplets.clear();
    Eigen::VectorXd gradient = Eigen::VectorXd::Zero(dim);
    for (const GraphEdge& edge : edges_) {
      const Linearized lin = Linearize(edge, result.nodes);
      const Eigen::Matrix4d omega = edge.information.asDiagonal();
      const int ids[2] = {edge.from, edge.to};
      const Eigen::Matrix4d* jacobians[2] = {&lin.jacobian_from, &lin.jacobian_to};
      for (int u = 0; u < 2; ++u) {
        if (ids[u] == 0) continue;
        const Eigen::Index bu = static_cast<Eigen::Index>(ids[u] - 1) * kDof;
        gradient.segment<kDof>(bu) +=
            jacobians[u]->transpose() * omega * lin.residual;
        for (int v = 0; v < 2; ++v) {
          if (ids[v] == 0) continue;
          const Eigen::Index bv = static_cast<Eigen::Index>(ids[v] - 1) * kDof;
          const Eigen::Matrix4d block =
              jacobians[u]->transpose() * omega * (*jacobians[v]);
          for (int r = 0; r < kDof; ++r) {
            for (int c = 0; c < kDof; ++c) {
              if (block(r, c) != 0.0) triplets.emplace_back(bu + r, bv + c, block(r, c));
            }
          }
        }
      }
    }
    Eigen::SparseMatrix<double> hessian(dim, dim);
    hessian.setFromTriplets(triplets.begin(), triplets.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(hessian);
    if (solver.info() != Eigen::Success) break;
    const Eigen::VectorXd delta = solver.solve(-gradient);
    if (solver.info() != Eigen::Success || !delta.allFinite()) break;

    std::vector<GraphNode> candidate = Step(result.nodes, delta, scale);
    const double new_cost = GraphCost(candidate, edges_);
    result.iterations = iteration + 1;
    if (new_cost > cost) {
      // A rise at round-off level means the current nodes are already optimal.
      if (new_cost - cost <= 1e-12 * cost + 1e-24) break;
      if (++increases >= 2) {
        result.nodes = nodes_;
        result.final_cost = result.initial_cost;
        result.diverged = true;
        return result;
      }
      scale *= 0.5;
      continue;
    }
    const double relative = (cost - new_cost) / std::max(cost, 1e-300);
    result.nodes = std::move(candidate);
    cost = new_cost;
    if (relative < options.relative_tolerance || cost == 0.0) break;
  }
  result.final_cost = cost;
  return result;
}

PoseSE3 ApplyNode(const PoseSE3& old_pose, const GraphNode& node) {
  // Strip the old heading, keep whatever tilt remains, apply the new heading.
  const Eigen::Matrix3d tilt =
      Eigen::AngleAxisd(-old_pose.Yaw(), Eigen::Vector3d::UnitZ())
          .toRotationMatrix() *
      old_pose.rotation;
  PoseSE3 pose;
  pose.rotation =
      Eigen::AngleAxisd(node.theta, Eigen::Vector3d::UnitZ()).toRotationMatrix() *
      tilt;
  pose.translation = Eigen::Vector3d(node.x, node.y, node.z);
  return pose;
}

std::vector<PoseSE3> InterpolateCorrections(
    std::span<const PoseSE3> frame_poses, std::span<const int> keyframe_frames,
    std::span<const PoseSE3> old_keyframes,
    std::span<const PoseSE3> new_keyframes) {
  Require(keyframe_frames.size() == old_keyframes.size() &&
              old_keyframes.size() == new_keyframes.size(),
          "InterpolateCorrections: keyframe count mismatch");
  std::vector<PoseSE3> out(frame_poses.begin(), frame_poses.end());
  if (keyframe_frames.empty()) return out;
  Require(std::is_sorted(keyframe_frames.begin(), keyframe_frames.end()),
          "InterpolateCorrections: keyframes must be ordered");

  struct Correction {
    PoseDelta2D planar;
    double dz;
  };
  std::vector<Correction> corrections;
  for (std::size_t k = 0; k < old_keyframes.size(); ++k) {
    const PoseSE3 c = new_keyframes[k] * old_keyframes[k].Inverse();
    corrections.push_back({c.ToPlanar(), c.translation.z()});
  }
  const auto apply = [](const Correction& c, const PoseSE3& pose) {
    return PoseSE3::FromPlanar(c.planar, c.dz) * pose;
  };
  for (std::size_t f = 0; f < out.size(); ++f) {
    const int frame = static_cast<int>(f);
    const auto upper =
        std::upper_bound(keyframe_frames.begin(), keyframe_frames.end(), frame);
    if (upper == keyframe_frames.begin()) {
      out[f] = apply(corrections.front(), frame_poses[f]);
      continue;
    }
    const std::size_t a = static_cast<std::size_t>(upper - keyframe_frames.begin()) - 1;
    if (keyframe_frames[a] == frame || a + 1 == keyframe_frames.size()) {
      out[f] = apply(corrections[a], frame_poses[f]);
      continue;
    }
    const double alpha = static_cast<double>(frame - keyframe_frames[a]) /
                         (keyframe_frames[a + 1] - keyframe_frames[a]);
    const Correction& ca = corrections[a];
    const Correction& cb = corrections[a + 1];
    const Correction blended{
        {ca.planar.dx + alpha * (cb.planar.dx - ca.planar.dx),
         ca.planar.dy + alpha * (cb.planar.dy - ca.planar.dy),
         WrapAngle(ca.planar.dtheta +
                   alpha * WrapAngle(cb.planar.dtheta - ca.planar.dtheta))},
        ca.dz + alpha * (cb.dz - ca.dz)};
    out[f] = apply(blended, frame_poses[f]);
  }
  return out;
}

}  // namespace loop_closure
}  // namespace hullslam
