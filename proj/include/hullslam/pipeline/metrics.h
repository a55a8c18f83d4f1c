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

#ifndef HULLSLAM_PIPELINE_METRICS_H_
#define HULLSLAM_PIPELINE_METRICS_H_

#include <span>
#include <vector>

#include "hullslam/common/pose.h"

namespace hullslam {
namespace pipeline {

struct RelativeErrors {
  double t_rel = 0.0;  // percent
  double r_rel = 0.0;  // degrees per meter
  int segments = 0;
};

// KITTI odometry protocol: every start frame, every length L in 100..800 m
// measured along the ground truth; the end frame is the first one whose
// travelled distance exceeds start + L. Each segment contributes its
// relative-pose translation error / L and rotation angle / L.
// Throws DataError("insufficient length") if no segment fits, and
// ContractViolation on a length mismatch.
RelativeErrors KittiRelativeErrors(std::span<const PoseSE3> estimated,
                                   std::span<const PoseSE3> ground_truth);

// Cumulative ground-truth path length per frame.
std::vector<double> TrajectoryDistances(std::span<const PoseSE3> poses);

// Rotation angle of a rotation matrix, radians in [0, pi].
double RotationAngle(const Eigen::Matrix3d& rotation);

}  // namespace pipeline
}  // namespace hullslam

#endif  // HULLSLAM_PIPELINE_METRICS_H_
