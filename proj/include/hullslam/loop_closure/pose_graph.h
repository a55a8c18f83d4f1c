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

#ifndef HULLSLAM_LOOP_CLOSURE_POSE_GRAPH_H_
#define HULLSLAM_LOOP_CLOSURE_POSE_GRAPH_H_

#include <span>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/pose.h"

namespace hullslam {
namespace loop_closure {

// Planar pose plus height of one keyframe.
struct GraphNode {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
  double z = 0.0;

  static GraphNode FromPose(const PoseSE3& pose);
  PoseDelta2D Planar() const { return {x, y, theta}; }
};

// Measured motion mapping node `to` into node `from`, weighted per residual
// component (x, y, theta, z).
struct GraphEdge {
  int from = 0;
  int to = 0;
  PoseDelta2D delta;
  double dz = 0.0;
  Eigen::Vector4d information = Eigen::Vector4d::Ones();
  bool loop = false;
};

// Residual of one edge: [R(theta_from)^T (t_to - t_from) - d, wrap(dtheta
// mismatch), dz mismatch].
Eigen::Vector4d EdgeResidual(const GraphEdge& edge,
                             std::span<const GraphNode> nodes);
double GraphCost(std::span<const GraphNode> nodes,
                 std::span<const GraphEdge> edges);

struct PoseGraphOptions {
  int max_iterations = 20;
  double relative_tolerance = 1e-8;
};

struct CorrectionResult {
  std::vector<GraphNode> nodes;
  double initial_cost = 0.0;
  double final_cost = 0.0;
  int iterations = 0;
  // Two cost increases: the prior nodes are returned unchanged.
  bool diverged = false;
};

class PoseGraph {
 public:
  int AddNode(const GraphNode& node);
  // Odometry edges chain node i-1 to node i.
  void AddOdometryEdge(int from, int to, const PoseDelta2D& delta, double dz,
                       const Eigen::Vector4d& information = Eigen::Vector4d::Ones());
  void AddLoopEdge(int from, int to, const PoseDelta2D& delta, double dz,
                   const Eigen::Vector4d& information = Eigen::Vector4d::Ones());

  std::span<const GraphNode> nodes() const { return nodes_; }
  std::span<const GraphEdge> edges() const { return edges_; }
  int loop_edge_count() const;
  void SetNodes(std::vector<GraphNode> nodes);

  // Gauss-Newton with node 0 held fixed. A step that raises the cost is
  // rejected and retried at half length; a second rise aborts. Throws
  // ContractViolation without loop edges.
  CorrectionResult Correct(const PoseGraphOptions& options = {}) const;

 private:
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
};

// Spreads keyframe corrections over every frame: frames between two
// keyframes blend the two corrections linearly by frame index; frames outside
// the keyframe span take the nearest keyframe's correction.
std::vector<PoseSE3> InterpolateCorrections(
    std::span<const PoseSE3> frame_poses, std::span<const int> keyframe_frames,
    std::span<const PoseSE3> old_keyframes,
    std::span<const PoseSE3> new_keyframes);

// World pose of a keyframe after moving it to `node`, keeping its pitch.
PoseSE3 ApplyNode(const PoseSE3& old_pose, const GraphNode& node);

}  // namespace loop_closure
}  // namespace hullslam

#endif  // HULLSLAM_LOOP_CLOSURE_POSE_GRAPH_H_
