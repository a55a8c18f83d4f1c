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

#ifndef HULLSLAM_SIM_SYNTHETIC_WORLD_H_
#define HULLSLAM_SIM_SYNTHETIC_WORLD_H_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "Eigen/Core"
#include "hullslam/common/pose.h"
#include "hullslam/common/semantic_classes.h"
#include "hullslam/dataio/frame_source.h"
#include "hullslam/dataio/kitti_io.h"

namespace hullslam {
namespace sim {

// Surface samples of an object in its own frame: x forward, z up from the
// ground contact.
std::vector<Eigen::Vector3d> MakeBody(ClassId class_id, std::mt19937_64& rng);
// Horizontal radius that bounds MakeBody() for the class.
double BodyRadius(ClassId class_id);

struct SimObject {
  int object_id = 0;
  ClassId class_id = semantic::kUnlabeled;
  std::vector<Eigen::Vector3d> body;
  Eigen::Vector2d origin = Eigen::Vector2d::Zero();  // world xy at t = 0
  double heading = 0.0;
  Eigen::Vector2d velocity = Eigen::Vector2d::Zero();  // world, m/s
  // > 0: the along-x offset from the ego vehicle wraps into
  // [-wrap_half_length, wrap_half_length), so traffic keeps streaming past.
  double wrap_half_length = 0.0;

  bool moving() const { return velocity.squaredNorm() > 0.0; }
};

struct ObjectState {
  Eigen::Vector2d position;
  double heading;
};

struct VisibleObject {
  int object_id;
  ClassId class_id;
  Eigen::Vector3d centre_world;  // mean of the noise-free world samples
  bool moving;
};

enum class ScenarioKind { kStraight, kSquareLoop, kDynamic };

ScenarioKind ScenarioFromName(const std::string& name);
std::string ScenarioName(ScenarioKind kind);

struct ScenarioOptions {
  // Straight: 20 static + 5 moving landmarks along 100 m.
  int static_count = 20;
  int dynamic_count = 5;
  // Dynamic scenario population.
  int moving_cars = 8;
  int pedestrians = 5;
  int parked_cars = 10;
  double pedestrian_speed = 1.5;
  double car_speed = 10.0;
};

struct Scenario {
  std::string name;
  double tau = 0.1;
  double sensor_height = 1.73;
  double visibility_range = 50.0;
  double point_noise = 0.015;  // per-frame Gaussian sigma, meters
  std::uint64_t seed = 0;
  std::vector<PoseSE3> poses;  // world_from_sensor per frame
  std::vector<SimObject> objects;

  int frame_count() const { return static_cast<int>(poses.size()); }
  ObjectState StateAt(const SimObject& object, int frame) const;
  std::vector<VisibleObject> Visible(int frame) const;
  // Sensor-frame labeled scan: visible object samples plus ground and a few
  // unlabeled returns, all with per-frame noise.
  dataio::LabeledFrame Render(int frame) const;
};

Scenario MakeScenario(ScenarioKind kind, std::uint64_t seed,
                      const ScenarioOptions& options = {});

// Renders frames on demand, so long scenarios never sit in memory at once.
class ScenarioFrameSource : public dataio::FrameSource {
 public:
  explicit ScenarioFrameSource(const Scenario& scenario) : scenario_(scenario) {}
  std::size_t size() const override { return scenario_.poses.size(); }
  dataio::LabeledFrame Load(std::size_t index) const override {
    return scenario_.Render(static_cast<int>(index));
  }

 private:
  const Scenario& scenario_;
};

// Writes <root>/sequences/<seq>/{velodyne,labels}/NNNNNN.* and
// <root>/poses/<seq>.txt.
void WriteKittiLayout(const Scenario& scenario, const std::filesystem::path& root,
                      const std::string& sequence = "00");

}  // namespace sim
}  // namespace hullslam

#endif  // HULLSLAM_SIM_SYNTHETIC_WORLD_H_
