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

#include "hullslam/sim/synthetic_world.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "hullslam/common/errors.h"
#include "hullslam/dataio/frame_source.h"

namespace hullslam {
namespace sim {
namespace {

using semantic::kBuilding;
using semantic::kCar;
using semantic::kPerson;
using semantic::kPole;
using semantic::kRoad;
using semantic::kTrafficSign;
using semantic::kTrunk;
using semantic::kUnlabeled;
using semantic::kVegetation;

constexpr double kPi = std::numbers::pi;

std::vector<Eigen::Vector3d> Cylinder(double radius, double height, int count,
                                      std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  std::uniform_real_distribution<double> z(0.0, height);
  std::vector<Eigen::Vector3d> out;
  for (int i = 0; i < count; ++i) {
    const double a = angle(rng);
    out.emplace_back(radius * std::cos(a), radius * std::sin(a), z(rng));
  }
  return out;
}

// Samples the surface of an axis-aligned box [-l/2, l/2] x [-w/2, w/2] x
// [z0, z0 + h], faces chosen by area. `walls_only` drops top and bottom.
std::vector<Eigen::Vector3d> Box(double length, double width, double height,
                                 double z0, int count, bool walls_only,
                                 std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double side_x = width * height;   // faces normal to x
  const double side_y = length * height;  // faces normal to y
  const double cap = walls_only ? 0.0 : length * width;
  const double total = 2.0 * (side_x + side_y + cap);
  std::vector<Eigen::Vector3d> out;
  for (int i = 0; i < count; ++i) {
    double pick = unit(rng) * total;
    const double u = unit(rng) - 0.5;
    const double v = unit(rng) - 0.5;
    const double sign = unit(rng) < 0.5 ? -1.0 : 1.0;
    Eigen::Vector3d p;
    if (pick < 2.0 * side_x) {
      p = {sign * length / 2, u * width, z0 + (v + 0.5) * height};
    } else if ((pick -= 2.0 * side_x) < 2.0 * side_y) {
      p = {u * length, sign * width / 2, z0 + (v + 0.5) * height};
    } else {
      p = {u * length, v * width, sign > 0 ? z0 + height : z0};
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Eigen::Vector3d> Ellipsoid(double rx, double ry, double rz,
                                       double z_centre, int count,
                                       std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Eigen::Vector3d> out;
  for (int i = 0; i < count; ++i) {
    Eigen::Vector3d d(gauss(rng), gauss(rng), gauss(rng));
    d.normalize();
    out.emplace_back(rx * d.x(), ry * d.y(), z_centre + rz * d.z());
  }
  return out;
}

double Wrap(double value, double half) {
  const double period = 2.0 * half;
  double r = std::fmod(value + half, period);
  if (r < 0.0) r += period;
  return r - half;
}

// --- Ego paths -------------------------------------------------------------

std::vector<PoseSE3> StraightPath(int frames, double step) {
  std::vector<PoseSE3> poses;
  for (int k = 0; k < frames; ++k) {
    poses.push_back(PoseSE3::FromYawPitch(0.0, 0.0, {k * step, 0.0, 0.0}));
  }
  return poses;
}

// Square with rounded corners: four straights of `straight` meters joined by
// quarter arcs of `radius`, counter-clockwise from the origin heading +x.
struct RoundedSquare {
  double straight = 40.0;
  double radius = 20.0;

  double Perimeter() const { return 4.0 * (straight + 0.5 * kPi * radius); }

  PoseDelta2D At(double s) const {
    s = std::fmod(s, Perimeter());
    Eigen::Vector2d corner(0.0, 0.0);
    double heading = 0.0;
    for (int side = 0; side < 4; ++side) {
      const Eigen::Vector2d dir(std::cos(heading), std::sin(heading));
      if (s <= straight) {
        const Eigen::Vector2d p = corner + s * dir;
        return {p.x(), p.y(), WrapAngle(heading)};
      }
      s -= straight;
      const Eigen::Vector2d start = corner + straight * dir;
      const Eigen::Vector2d left(-dir.y(), dir.x());
      const Eigen::Vector2d centre = start + radius * left;
      const double arc = 0.5 * kPi * radius;
      if (s <= arc) {
        const double phi = s / radius;
        const Eigen::Vector2d p =
            centre - radius * (std::cos(phi) * left - std::sin(phi) * dir);
        return {p.x(), p.y(), WrapAngle(heading + phi)};
      }
      s -= arc;
      heading += 0.5 * kPi;
      corner = centre + radius * Eigen::Vector2d(std::sin(heading), -std::cos(heading));
    }
    return {0.0, 0.0, 0.0};
  }
};

// --- Placement -------------------------------------------------------------

class Placer {
 public:
  Placer(Scenario& scenario, std::mt19937_64& rng) : scenario_(scenario), rng_(rng) {}

  // Adds an object if it keeps clear of every other static object.
  bool TryAdd(ClassId class_id, const Eigen::Vector2d& origin, double heading,
              const Eigen::Vector2d& velocity = Eigen::Vector2d::Zero(),
              double wrap = 0.0) {
    const double r = BodyRadius(class_id);
    if (velocity.squaredNorm() == 0.0 && wrap == 0.0) {
      for (const SimObject& other : scenario_.objects) {
        if (other.moving() || other.wrap_half_length > 0.0) continue;
        // Clearance beyond the largest clustering radius keeps instances apart.
        const double clearance = r + BodyRadius(other.class_id) + 2.5;
        if ((other.origin - origin).norm() < clearance) return false;
      }
    }
    SimObject object;
    object.object_id = static_cast<int>(scenario_.objects.size());
    object.class_id = class_id;
    object.body = MakeBody(class_id, rng_);
    object.origin = origin;
    object.heading = heading;
    object.velocity = velocity;
    object.wrap_half_length = wrap;
    scenario_.objects.push_back(std::move(object));
    return true;
  }

  ClassId RandomStaticClass() {
    static constexpr ClassId kClasses[] = {kPole,     kPole,  kTrunk,    kTrunk,
                                           kBuilding, kVegetation, kTrafficSign};
    std::uniform_int_distribution<int> pick(0, std::size(kClasses) - 1);
    return kClasses[pick(rng_)];
  }

 private:
  Scenario& scenario_;
  std::mt19937_64& rng_;
};

// Static landmarks beside a road running along x in [x_min, x_max].
void PlaceRoadside(Scenario& scenario, Placer& placer, std::mt19937_64& rng,
                   int count, double x_min, double x_max, double min_offset) {
  std::uniform_real_distribution<double> along(x_min, x_max);
  std::uniform_real_distribution<double> lateral(min_offset, min_offset + 16.0);
  std::uniform_real_distribution<double> yaw(-kPi, kPi);
  std::bernoulli_distribution left(0.5);
  const std::size_t target = scenario.objects.size() + count;
  for (int attempt = 0; scenario.objects.size() < target && attempt < 100000;
       ++attempt) {
    const ClassId id = placer.RandomStaticClass();
    const double offset = lateral(rng) + BodyRadius(id);
    placer.TryAdd(id, {along(rng), left(rng) ? offset : -offset}, yaw(rng));
  }
}

Scenario MakeStraight(const ScenarioOptions& options, std::mt19937_64& rng) {
  Scenario scenario;
  scenario.name = "straight";
  scenario.poses = StraightPath(200, 0.5);
  Placer placer(scenario, rng);
  PlaceRoadside(scenario, placer, rng, options.static_count, -20.0, 120.0, 9.0);
  // Oncoming cars and pedestrians streaming past the ego vehicle, evenly
  // spaced within their lanes.
  const double window = 60.0;
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  const double p0 = phase(rng);
  for (int i = 0; i < options.dynamic_count; ++i) {
    const bool car = i % 2 == 0;
    const double x = -window + 2.0 * window * (i + p0) / options.dynamic_count;
    const double y = car ? -3.5 : (i % 4 == 1 ? 7.5 : -7.5);
    const double speed = car ? -options.car_speed : options.pedestrian_speed;
    placer.TryAdd(car ? kCar : kPerson, {x, y}, car ? kPi : 0.0, {speed, 0.0},
                  window);
  }
  return scenario;
}

Scenario MakeDynamic(const ScenarioOptions& options, std::mt19937_64& rng) {
  Scenario scenario;
  scenario.name = "dynamic";
  const double ego_speed = 10.0;  // 1 m per frame
  scenario.poses = StraightPath(121, ego_speed * scenario.tau);
  Placer placer(scenario, rng);
  PlaceRoadside(scenario, placer, rng, 44, -60.0, 180.0, 11.0);
  // Parked vehicles along both kerbs.
  std::uniform_real_distribution<double> along(-50.0, 170.0);
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  int parked = 0;
  for (int attempt = 0; parked < options.parked_cars && attempt < 10000; ++attempt) {
    const double y = (attempt % 2 == 0 ? 7.0 : -7.0) + jitter(rng);
    if (placer.TryAdd(kCar, {along(rng), y}, jitter(rng))) ++parked;
  }
  // Moving cars: half with the ego vehicle, half oncoming, evenly spaced in
  // the wrap window so lanes never self-collide.
  const double window = 60.0;
  std::uniform_real_distribution<double> phase(0.0, 1.0);
  const int with_ego = (options.moving_cars + 1) / 2;
  const int oncoming = options.moving_cars - with_ego;
  const double p0 = phase(rng), p1 = phase(rng), p2 = phase(rng);
  for (int i = 0; i < with_ego; ++i) {
    const double x = -window + 2.0 * window * (i + p0) / with_ego;
    placer.TryAdd(kCar, {x, 3.5}, 0.0, {options.car_speed, 0.0}, window);
  }
  for (int i = 0; i < oncoming; ++i) {
    const double x = -window + 2.0 * window * (i + p1) / oncoming;
    placer.TryAdd(kCar, {x, -3.5}, kPi, {-options.car_speed, 0.0}, window);
  }
  for (int i = 0; i < options.pedestrians; ++i) {
    const double x = -window + 2.0 * window * (i + p2) / options.pedestrians;
    const bool forward = i % 2 == 0;
    placer.TryAdd(kPerson, {x, forward ? 9.5 : -9.5}, forward ? 0.0 : kPi,
                  {forward ? options.pedestrian_speed : -options.pedestrian_speed, 0.0},
                  window);
  }
  return scenario;
}

Scenario MakeSquareLoop(std::mt19937_64& rng) {
  Scenario scenario;
  scenario.name = "square-loop";
  const RoundedSquare path;
  const double step = 1.0;
  const int frames = static_cast<int>(std::ceil((path.Perimeter() + 30.0) / step));
  for (int k = 0; k < frames; ++k) {
    const PoseDelta2D p = path.At(k * step);
    scenario.poses.push_back(PoseSE3::FromYawPitch(p.dtheta, 0.0, {p.dx, p.dy, 0.0}));
  }
  // Dense path samples for the road-clearance test.
  std::vector<Eigen::Vector2d> samples;
  for (double s = 0.0; s < path.Perimeter(); s += 1.0) {
    samples.push_back(path.At(s).translation());
  }
  Placer placer(scenario, rng);
  std::uniform_real_distribution<double> x(-55.0, 115.0);
  std::uniform_real_distribution<double> y(-35.0, 115.0);
  std::uniform_real_distribution<double> yaw(-kPi, kPi);
  const int target = 110;
  for (int attempt = 0;
       static_cast<int>(scenario.objects.size()) < target && attempt < 200000;
       ++attempt) {
    const Eigen::Vector2d p(x(rng), y(rng));
    const ClassId id = placer.RandomStaticClass();
    double nearest = std::numeric_limits<double>::infinity();
    for (const Eigen::Vector2d& s : samples) nearest = std::min(nearest, (s - p).norm());
    if (nearest < 8.0 + BodyRadius(id) || nearest > 30.0) continue;
    placer.TryAdd(id, p, yaw(rng));
  }
  return scenario;
}

}  // namespace

double BodyRadius(ClassId class_id) {
  switch (class_id) {
    case kPole: return 0.15;
    case kTrunk: return 0.25;
    case kTrafficSign: return 0.35;
    case kBuilding: return 5.0;
    case kVegetation: return 1.3;
    case kCar: return 2.45;
    case kPerson: return 0.3;
    default: return 1.0;
  }
}

std::vector<Eigen::Vector3d> MakeBody(ClassId class_id, std::mt19937_64& rng) {
  switch (class_id) {
    case kPole: return Cylinder(0.15, 4.0, 75, rng);
    case kTrunk: return Cylinder(0.25, 3.0, 80, rng);
    case kTrafficSign: return Box(0.05, 0.6, 0.6, 2.2, 50, false, rng);
    case kBuilding: return Box(8.0, 6.0, 5.0, 0.0, 400, true, rng);
    case kVegetation: return Ellipsoid(1.2, 1.0, 0.9, 1.0, 150, rng);
    case kCar: return Box(4.5, 1.8, 1.5, 0.0, 200, false, rng);
    case kPerson: return Cylinder(0.3, 1.7, 80, rng);
    default:
      throw ContractViolation("MakeBody: no shape for class " +
                              std::to_string(class_id));
  }
}

ScenarioKind ScenarioFromName(const std::string& name) {
  if (name == "straight") return ScenarioKind::kStraight;
  if (name == "square-loop") return ScenarioKind::kSquareLoop;
  if (name == "dynamic") return ScenarioKind::kDynamic;
  throw ContractViolation("unknown scenario '" + name + "'");
}

std::string ScenarioName(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::kStraight: return "straight";
    case ScenarioKind::kSquareLoop: return "square-loop";
    case ScenarioKind::kDynamic: return "dynamic";
  }
  return "";
}

ObjectState Scenario::StateAt(const SimObject& object, int frame) const {
  const double t = frame * tau;
  Eigen::Vector2d p = object.origin + t * object.velocity;
  if (object.wrap_half_length > 0.0) {
    const double ego_x = poses.at(frame).translation.x();
    p.x() = ego_x + Wrap(p.x() - ego_x, object.wrap_half_length);
  }
  return {p, object.heading};
}

std::vector<VisibleObject> Scenario::Visible(int frame) const {
  const PoseSE3& pose = poses.at(frame);
  std::vector<VisibleObject> out;
  for (const SimObject& object : objects) {
    const ObjectState state = StateAt(object, frame);
    const Eigen::Vector2d rel = state.position - pose.translation.head<2>();
    if (rel.norm() > visibility_range) continue;
    const Eigen::Rotation2Dd rot(state.heading);
    Eigen::Vector3d centre = Eigen::Vector3d::Zero();
    for (const Eigen::Vector3d& b : object.body) {
      const Eigen::Vector2d xy = rot * b.head<2>() + state.position;
      centre += Eigen::Vector3d(xy.x(), xy.y(), b.z() - sensor_height);
    }
    centre /= static_cast<double>(object.body.size());
    out.push_back({object.object_id, object.class_id, centre, object.moving()});
  }
  return out;
}

dataio::LabeledFrame Scenario::Render(int frame) const {
  const PoseSE3& pose = poses.at(frame);
  const PoseSE3 sensor_from_world = pose.Inverse();
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + static_cast<std::uint64_t>(frame) + 1);
  std::normal_distribution<double> noise(0.0, point_noise);
  const auto jitter = [&] { return Eigen::Vector3d(noise(rng), noise(rng), noise(rng)); };

  dataio::LabeledFrame out;
  out.frame_index = frame;
  out.timestamp_period = tau;
  for (const SimObject& object : objects) {
    const ObjectState state = StateAt(object, frame);
    if ((state.position - pose.translation.head<2>()).norm() > visibility_range) {
      continue;
    }
    const Eigen::Rotation2Dd rot(state.heading);
    for (const Eigen::Vector3d& b : object.body) {
      const Eigen::Vector2d xy = rot * b.head<2>() + state.position;
      const Eigen::Vector3d world(xy.x(), xy.y(), b.z() - sensor_height);
      out.points.push_back(sensor_from_world * world + jitter());
      out.labels.push_back(object.class_id);
    }
  }
  // Flat road patch around the sensor (world z = -sensor_height).
  for (double x = -20.0; x <= 20.0; x += 0.5) {
    for (double y = -8.0; y <= 8.0; y += 0.5) {
      const Eigen::Vector3d world =
          pose * Eigen::Vector3d(x, y, 0.0);
      const Eigen::Vector3d ground(world.x(), world.y(), -sensor_height);
      out.points.push_back(sensor_from_world * ground + jitter());
      out.labels.push_back(kRoad);
    }
  }
  // A handful of unlabeled returns.
  std::uniform_real_distribution<double> scatter(-30.0, 30.0);
  for (int i = 0; i < 20; ++i) {
    out.points.emplace_back(scatter(rng), scatter(rng), 0.1 * scatter(rng));
    out.labels.push_back(kUnlabeled);
  }
  return out;
}

Scenario MakeScenario(ScenarioKind kind, std::uint64_t seed,
                      const ScenarioOptions& options) {
  std::mt19937_64 rng(seed);
  Scenario scenario;
  switch (kind) {
    case ScenarioKind::kStraight:
      scenario = MakeStraight(options, rng);
      break;
    case ScenarioKind::kSquareLoop:
      scenario = MakeSquareLoop(rng);
      break;
    case ScenarioKind::kDynamic:
      scenario = MakeDynamic(options, rng);
      break;
  }
  scenario.seed = seed;
  return scenario;
}

void WriteKittiLayout(const Scenario& scenario, const std::filesystem::path& root,
                      const std::string& sequence) {
  namespace fs = std::filesystem;
  const fs::path seq_dir = root / "sequences" / sequence;
  fs::create_directories(seq_dir / "velodyne");
  fs::create_directories(seq_dir / "labels");
  fs::create_directories(root / "poses");
  for (int k = 0; k < scenario.frame_count(); ++k) {
    const dataio::LabeledFrame frame = scenario.Render(k);
    const std::string stem = dataio::FrameFileStem(k);
    dataio::WritePointCloud(seq_dir / "velodyne" / (stem + ".bin"), frame.points);
    dataio::WriteLabels(seq_dir / "labels" / (stem + ".label"), frame.labels);
  }
  dataio::WriteTrajectory(scenario.poses, root / "poses" / (sequence + ".txt"));
}

}  // namespace sim
}  // namespace hullslam
