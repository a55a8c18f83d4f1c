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

#include "hullslam/common/semantic_classes.h"

#include <algorithm>

namespace hullslam {
namespace semantic {
namespace {

constexpr std::array<ClassId, 7> kPureStatic = {
    kBuilding, kFence, kOtherStructure, kVegetation, kTrunk, kPole,
    kTrafficSign};
constexpr std::array<ClassId, 10> kUnknownMotion = {
    kCar,         kBicycle, kBus,       kMotorcycle, kOnRails,
    kTruck,       kOtherVehicle,        kPerson,     kBicyclist,
    kMotorcyclist};
constexpr std::array<ClassId, 5> kGround = {kRoad, kParking, kSidewalk,
                                            kOtherGround, kTerrain};

struct NamedClass {
  ClassId id;
  std::string_view name;
};

constexpr std::array<NamedClass, 24> kNames = {{
    {kUnlabeled, "unlabeled"},
    {kOutlier, "outlier"},
    {kCar, "car"},
    {kBicycle, "bicycle"},
    {kBus, "bus"},
    {kMotorcycle, "motorcycle"},
    {kOnRails, "on-rails"},
    {kTruck, "truck"},
    {kOtherVehicle, "other-vehicle"},
    {kPerson, "person"},
    {kBicyclist, "bicyclist"},
    {kMotorcyclist, "motorcyclist"},
    {kRoad, "road"},
    {kParking, "parking"},
    {kSidewalk, "sidewalk"},
    {kOtherGround, "other-ground"},
    {kBuilding, "building"},
    {kFence, "fence"},
    {kOtherStructure, "other-structure"},
    {kVegetation, "vegetation"},
    {kTrunk, "trunk"},
    {kTerrain, "terrain"},
    {kPole, "pole"},
    {kTrafficSign, "traffic-sign"},
}};

template <std::size_t N>
bool Contains(const std::array<ClassId, N>& set, ClassId id) {
  return std::find(set.begin(), set.end(), id) != set.end();
}

}  // namespace

bool IsKnownClass(ClassId id) {
  return std::any_of(kNames.begin(), kNames.end(),
                     [id](const NamedClass& c) { return c.id == id; });
}

MotionGroup GroupOf(ClassId id) {
  if (Contains(kGround, id)) return MotionGroup::kGround;
  if (Contains(kPureStatic, id)) return MotionGroup::kPureStatic;
  if (Contains(kUnknownMotion, id)) return MotionGroup::kUnknownMotion;
  return MotionGroup::kDiscarded;
}

bool IsVehicle(ClassId id) {
  switch (id) {
    case kCar:
    case kBicycle:
    case kBus:
    case kMotorcycle:
    case kOnRails:
    case kTruck:
    case kOtherVehicle:
      return true;
    default:
      return false;
  }
}

std::span<const ClassId> PureStaticClasses() { return kPureStatic; }
std::span<const ClassId> UnknownMotionClasses() { return kUnknownMotion; }
std::span<const ClassId> GroundClasses() { return kGround; }

std::string_view ClassName(ClassId id) {
  for (const auto& c : kNames) {
    if (c.id == id) return c.name;
  }
  return "unknown";
}

std::optional<ClassId> ClassFromName(std::string_view name) {
  for (const auto& c : kNames) {
    if (c.name == name) return c.id;
  }
  return std::nullopt;
}

ClassId CollapseMovingClass(ClassId raw) {
  switch (raw) {
    case 252: return kCar;
    case 253: return kBicyclist;
    case 254: return kPerson;
    case 255: return kMotorcyclist;
    case 256: return kOnRails;
    case 257: return kBus;
    case 258: return kTruck;
    case 259: return kOtherVehicle;
    default: return raw;
  }
}

std::array<std::uint8_t, 3> ClassColor(ClassId id) {
  switch (id) {
    case kBuilding: return {255, 230, 150};      // pale yellow
    case kVegetation: return {0, 100, 0};        // dark green
    case kTrunk: return {100, 50, 10};           // deep brown
    case kPole: return {255, 240, 0};            // bright yellow
    case kTrafficSign: return {255, 0, 0};       // red
    case kFence: return {255, 120, 50};
    case kOtherStructure: return {255, 150, 0};
    case kRoad: return {255, 0, 255};
    case kParking: return {255, 150, 255};
    case kSidewalk: return {75, 0, 75};
    case kOtherGround: return {175, 0, 75};
    case kTerrain: return {150, 240, 80};
    default: return {128, 128, 128};
  }
}

}  // namespace semantic
}  // namespace hullslam
