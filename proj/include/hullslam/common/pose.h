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

#ifndef HULLSLAM_COMMON_POSE_H_
#define HULLSLAM_COMMON_POSE_H_

#include <cmath>
#include <numbers>

#include "Eigen/Core"
#include "Eigen/Geometry"

namespace hullslam {

// Wraps an angle to (-pi, pi].
inline double WrapAngle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);
  if (wrapped <= -std::numbers::pi) wrapped += 2.0 * std::numbers::pi;
  return wrapped;
}

// Planar frame-to-frame motion t = [dx, dy, dtheta]. Maps coordinates of
// frame k into frame k-1: p_prev = R(dtheta) * p_curr + (dx, dy).
struct PoseDelta2D {
  double dx = 0.0;
  double dy = 0.0;
  double dtheta = 0.0;

  static PoseDelta2D Identity() { return {}; }

  Eigen::Vector2d translation() const { return {dx, dy}; }

  Eigen::Vector2d operator*(const Eigen::Vector2d& p) const {
    const double c = std::cos(dtheta);
    const double s = std::sin(dtheta);
    return {c * p.x() - s * p.y() + dx, s * p.x() + c * p.y() + dy};
  }

  // (this * other)(p) == this(other(p)).
  PoseDelta2D operator*(const PoseDelta2D& other) const {
    const Eigen::Vector2d t = (*this) * other.translation();
    return {t.x(), t.y(), WrapAngle(dtheta + other.dtheta)};
  }

  PoseDelta2D Inverse() const {
    const double c = std::cos(dtheta);
    const double s = std::sin(dtheta);
    return {-(c * dx + s * dy), -(-s * dx + c * dy), WrapAngle(-dtheta)};
  }
};

// Rigid 6-DOF pose. Maps sensor coordinates into the parent (world) frame.
struct PoseSE3 {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static PoseSE3 Identity() { return {}; }

  // R = Rz(yaw) * Ry(pitch); roll is held at zero.
  static PoseSE3 FromYawPitch(double yaw, double pitch,
                              const Eigen::Vector3d& translation) {
    PoseSE3 pose;
    pose.rotation =
        (Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()) *
         Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()))
            .toRotationMatrix();
    pose.translation = translation;
    return pose;
  }

  static PoseSE3 FromPlanar(const PoseDelta2D& delta, double dz = 0.0) {
    return FromYawPitch(delta.dtheta, 0.0,
                        Eigen::Vector3d(delta.dx, delta.dy, dz));
  }

  Eigen::Vector3d operator*(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }

  PoseSE3 operator*(const PoseSE3& other) const {
    return {rotation * other.rotation, rotation * other.translation + translation};
  }

  PoseSE3 Inverse() const {
    const Eigen::Matrix3d rt = rotation.transpose();
    return {rt, -(rt * translation)};
  }

  // Heading of the sensor x-axis projected onto the parent xy-plane.
  double Yaw() const { return std::atan2(rotation(1, 0), rotation(0, 0)); }

  // Planar part (x, y, yaw) of this pose.
  PoseDelta2D ToPlanar() const {
    return {translation.x(), translation.y(), Yaw()};
  }

  // RtR = I and det = +1, both within `tolerance`.
  bool IsOrthonormal(double tolerance = 1e-9) const;
};

// Closest rotation matrix in the Frobenius sense (SVD projection).
Eigen::Matrix3d NearestRotation(const Eigen::Matrix3d& m);

}  // namespace hullslam

#endif  // HULLSLAM_COMMON_POSE_H_
