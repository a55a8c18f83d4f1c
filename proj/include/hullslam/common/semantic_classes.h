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

#ifndef HULLSLAM_COMMON_SEMANTIC_CLASSES_H_
#define HULLSLAM_COMMON_SEMANTIC_CLASSES_H_

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace hullslam {

// SemanticKITTI semantic code (lower 16 bits of a .label record).
using ClassId = std::uint16_t;

namespace semantic {

inline constexpr ClassId kUnlabeled = 0;
inline constexpr ClassId kOutlier = 1;
inline constexpr ClassId kCar = 10;
inline constexpr ClassId kBicycle = 11;
inline constexpr ClassId kBus = 13;
inline constexpr ClassId kMotorcycle = 15;
inline constexpr ClassId kOnRails = 16;
inline constexpr ClassId kTruck = 18;
inline constexpr ClassId kOtherVehicle = 20;
inline constexpr ClassId kPerson = 30;
inline constexpr ClassId kBicyclist = 31;
inline constexpr ClassId kMotorcyclist = 32;
inline constexpr ClassId kRoad = 40;
inline constexpr ClassId kParking = 44;
inline constexpr ClassId kSidewalk = 48;
inline constexpr ClassId kOtherGround = 49;
inline constexpr ClassId kBuilding = 50;
inline constexpr ClassId kFence = 51;
inline constexpr ClassId kOtherStructure = 52;
inline constexpr ClassId kVegetation = 70;
inline constexpr ClassId kTrunk = 71;
inline constexpr ClassId kTerrain = 72;
inline constexpr ClassId kPole = 80;
inline constexpr ClassId kTrafficSign = 81;

enum class MotionGroup {
  kGround,
  kPureStatic,
  kUnknownMotion,
  kDiscarded,
};

// Codes this library recognizes. Anything else is routed to kDiscarded by
// GroupOf() and counted by the partitioner.
bool IsKnownClass(ClassId id);

MotionGroup GroupOf(ClassId id);

inline bool IsPureStatic(ClassId id) {
  return GroupOf(id) == MotionGroup::kPureStatic;
}
inline bool IsUnknownMotion(ClassId id) {
  return GroupOf(id) == MotionGroup::kUnknownMotion;
}
inline bool IsGround(ClassId id) { return GroupOf(id) == MotionGroup::kGround; }

// Vehicles use the vehicle threshold/noise defaults, everything else in the
// unknown-motion group is a person or a rider.
bool IsVehicle(ClassId id);

std::span<const ClassId> PureStaticClasses();
std::span<const ClassId> UnknownMotionClasses();
std::span<const ClassId> GroundClasses();

std::string_view ClassName(ClassId id);
std::optional<ClassId> ClassFromName(std::string_view name);

// Maps SemanticKITTI "moving-*" codes (252..259) to their base class. Other
// codes pass through unchanged.
ClassId CollapseMovingClass(ClassId raw);

// 8-bit RGB used for map export.
std::array<std::uint8_t, 3> ClassColor(ClassId id);

}  // namespace semantic
}  // namespace hullslam

#endif  // HULLSLAM_COMMON_SEMANTIC_CLASSES_H_
