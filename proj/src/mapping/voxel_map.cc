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

#include "hullslam/mapping/voxel_map.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "hullslam/common/errors.h"

namespace hullslam {
namespace mapping {

ClassId Voxel::MajorityClass() const {
  ClassId best = semantic::kUnlabeled;
  std::uint64_t best_count = 0;
  // std::map iterates in ascending id order, so strict > keeps the lower id.
  for (const auto& [id, n] : class_counts) {
    if (n > best_count) {
      best = id;
      best_count = n;
    }
  }
  return best;
}

SemanticVoxelMap::SemanticVoxelMap(double voxel_size) : voxel_size_(voxel_size) {
  Require(voxel_size > 0.0, "SemanticVoxelMap: voxel size must be positive");
}

VoxelKey SemanticVoxelMap::KeyOf(const Eigen::Vector3d& p) const {
  return {static_cast<int>(std::floor(p.x() / voxel_size_)),
          static_cast<int>(std::floor(p.y() / voxel_size_)),
          static_cast<int>(std::floor(p.z() / voxel_size_))};
}

void SemanticVoxelMap::Integrate(std::span<const segmentation::LabeledPoint> points,
                                 const PoseSE3& world_from_sensor) {
  Require(world_from_sensor.rotation.allFinite() &&
              world_from_sensor.translation.allFinite(),
          "SemanticVoxelMap::Integrate: non-finite pose");
  for (const auto& p : points) {
    Require(semantic::IsGround(p.class_id) || semantic::IsPureStatic(p.class_id),
            "SemanticVoxelMap::Integrate: class " + std::to_string(p.class_id) +
                " may move and must not enter the map");
  }
  for (const auto& p : points) {
    const Eigen::Vector3d world = world_from_sensor * p.position;
    Voxel& voxel = voxels_[KeyOf(world)];
    ++voxel.count;
    voxel.centroid += (world - voxel.centroid) / static_cast<double>(voxel.count);
    ++voxel.class_counts[p.class_id];
  }
}

const Voxel* SemanticVoxelMap::Find(const VoxelKey& key) const {
  const auto it = voxels_.find(key);
  return it == voxels_.end() ? nullptr : &it->second;
}

std::vector<std::pair<VoxelKey, Voxel>> SemanticVoxelMap::SortedVoxels() const {
  std::vector<std::pair<VoxelKey, Voxel>> out(voxels_.begin(), voxels_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return std::lexicographical_compare(a.first.data(), a.first.data() + 3,
                                        b.first.data(), b.first.data() + 3);
  });
  return out;
}

void SemanticVoxelMap::ExportPly(const std::filesystem::path& path) const {
  Require(!voxels_.empty(), "ExportPly: empty map");
  const auto voxels = SortedVoxels();
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "ply\nformat ascii 1.0\nelement vertex " << voxels.size() << "\n"
      << "property float x\nproperty float y\nproperty float z\n"
      << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      << "property ushort class_id\nend_header\n";
  // Enough digits for every float to parse back exactly.
  out << std::setprecision(std::numeric_limits<float>::max_digits10);
  for (const auto& [key, voxel] : voxels) {
    const ClassId id = voxel.MajorityClass();
    // Audit: nothing that may move is ever exported.
    Require(!semantic::IsUnknownMotion(id), "ExportPly: non-static voxel");
    const auto rgb = semantic::ClassColor(id);
    const Eigen::Vector3f c = voxel.centroid.cast<float>();
    out << c.x() << ' ' << c.y() << ' ' << c.z() << ' ' << int{rgb[0]} << ' '
        << int{rgb[1]} << ' ' << int{rgb[2]} << ' ' << id << '\n';
  }
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<PlyVertex> ReadPly(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t count = 0;
  bool header_done = false;
  if (!std::getline(in, line) || line != "ply") {
    throw FormatError(path.string() + ": not a PLY file");
  }
  while (std::getline(in, line)) {
    if (line.rfind("element vertex ", 0) == 0) {
      count = std::stoul(line.substr(15));
    } else if (line == "end_header") {
      header_done = true;
      break;
    }
  }
  if (!header_done) throw FormatError(path.string() + ": missing end_header");
  std::vector<PlyVertex> vertices;
  vertices.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) {
      throw FormatError(path.string() + ": truncated vertex list");
    }
    std::istringstream fields(line);
    PlyVertex v;
    int r, g, b;
    unsigned id;
    if (!(fields >> v.position.x() >> v.position.y() >> v.position.z() >> r >> g >>
          b >> id)) {
      throw FormatError(path.string() + ": bad vertex line " + std::to_string(i));
    }
    v.red = static_cast<std::uint8_t>(r);
    v.green = static_cast<std::uint8_t>(g);
    v.blue = static_cast<std::uint8_t>(b);
    v.class_id = static_cast<ClassId>(id);
    vertices.push_back(v);
  }
  return vertices;
}

}  // namespace mapping
}  // namespace hullslam
