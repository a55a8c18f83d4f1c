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

#include "hullslam/dataio/kitti_io.h"

#include <array>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "hullslam/common/errors.h"

namespace hullslam {
namespace dataio {
namespace {

static_assert(std::endian::native == std::endian::little,
              "KITTI binaries are little-endian; add byte swapping for this "
              "platform");

constexpr std::size_t kPointRecordBytes = 16;
constexpr std::size_t kLabelRecordBytes = 4;
constexpr double kMaxRotationDrift = 1e-3;

std::vector<char> ReadAllBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw IoError("cannot open " + path.string());
  const std::streamsize size = in.tellg();
  std::vector<char> bytes(static_cast<std::size_t>(size));
  in.seekg(0);
  if (size > 0 && !in.read(bytes.data(), size)) {
    throw IoError("cannot read " + path.string());
  }
  return bytes;
}

std::ofstream OpenForWrite(const std::filesystem::path& path,
                           std::ios::openmode mode = std::ios::out) {
  std::ofstream out(path, mode);
  if (!out) throw IoError("cannot write " + path.string());
  return out;
}

void AppendShortest(std::string& line, double value) {
  std::array<char, 32> buffer;
  const auto result =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  line.append(buffer.data(), result.ptr);
}

}  // namespace

void AttachLabels(LabeledFrame& frame, std::vector<ClassId> labels) {
  if (labels.size() != frame.points.size()) {
    throw FormatError("frame " + std::to_string(frame.frame_index) + ": " +
                      std::to_string(labels.size()) + " labels for " +
                      std::to_string(frame.points.size()) + " points");
  }
  frame.labels = std::move(labels);
}

LabeledFrame ReadPointCloud(const std::filesystem::path& path) {
  const std::vector<char> bytes = ReadAllBytes(path);
  if (bytes.size() % kPointRecordBytes != 0) {
    throw FormatError(path.string() + ": length " +
                      std::to_string(bytes.size()) +
                      " is not a multiple of 16 bytes");
  }
  LabeledFrame frame;
  const std::size_t count = bytes.size() / kPointRecordBytes;
  frame.points.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::array<float, 4> record;
    std::memcpy(record.data(), bytes.data() + i * kPointRecordBytes,
                kPointRecordBytes);
    if (!std::isfinite(record[0]) || !std::isfinite(record[1]) ||
        !std::isfinite(record[2])) {
      throw DataError(path.string() + ": non-finite coordinate at point " +
                      std::to_string(i));
    }
    frame.points.emplace_back(record[0], record[1], record[2]);
  }
  return frame;
}

void WritePointCloud(const std::filesystem::path& path,
                     std::span<const Eigen::Vector3d> points) {
  std::vector<float> buffer;
  buffer.reserve(points.size() * 4);
  for (const Eigen::Vector3d& p : points) {
    buffer.push_back(static_cast<float>(p.x()));
    buffer.push_back(static_cast<float>(p.y()));
    buffer.push_back(static_cast<float>(p.z()));
    buffer.push_back(0.f);
  }
  std::ofstream out = OpenForWrite(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(buffer.data()),
            static_cast<std::streamsize>(buffer.size() * sizeof(float)));
  if (!out) throw IoError("short write to " + path.string());
}

std::vector<ClassId> ReadLabels(const std::filesystem::path& path,
                                std::size_t expected_count) {
  const std::vector<char> bytes = ReadAllBytes(path);
  if (bytes.size() != expected_count * kLabelRecordBytes) {
    throw FormatError(path.string() + ": expected " +
                      std::to_string(expected_count) + " label records, got " +
                      std::to_string(bytes.size()) + " bytes");
  }
  std::vector<ClassId> labels(expected_count);
  for (std::size_t i = 0; i < expected_count; ++i) {
    std::uint32_t record;
    std::memcpy(&record, bytes.data() + i * kLabelRecordBytes,
                kLabelRecordBytes);
    labels[i] = static_cast<ClassId>(record & 0xFFFFu);
  }
  return labels;
}

void WriteLabels(const std::filesystem::path& path,
                 std::span<const ClassId> labels) {
  std::vector<std::uint32_t> buffer(labels.begin(), labels.end());
  std::ofstream out = OpenForWrite(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(buffer.data()),
            static_cast<std::streamsize>(buffer.size() * kLabelRecordBytes));
  if (!out) throw IoError("short write to " + path.string());
}

std::vector<PoseSE3> ReadPoses(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<PoseSE3> poses;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream tokens(line);
    std::vector<double> values;
    std::string token;
    while (tokens >> token) {
      double value = 0.0;
      const auto result =
          std::from_chars(token.data(), token.data() + token.size(), value);
      if (result.ec != std::errc() || result.ptr != token.data() + token.size()) {
        throw FormatError(path.string() + ":" + std::to_string(line_number) +
                          ": bad number '" + token + "'");
      }
      values.push_back(value);
    }
    if (values.size() != 12) {
      throw FormatError(path.string() + ":" + std::to_string(line_number) +
                        ": expected 12 values, got " +
                        std::to_string(values.size()));
    }
    PoseSE3 pose;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) pose.rotation(r, c) = values[r * 4 + c];
      pose.translation[r] = values[r * 4 + 3];
    }
    if (!pose.rotation.allFinite() || !pose.translation.allFinite()) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": non-finite pose");
    }
    if (!pose.IsOrthonormal(kMaxRotationDrift)) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": rotation is not orthonormal");
    }
    pose.rotation = NearestRotation(pose.rotation);
    poses.push_back(pose);
  }
  return poses;
}

void WriteTrajectory(std::span<const PoseSE3> poses,
                     const std::filesystem::path& path) {
  if (poses.empty()) throw ContractViolation("WriteTrajectory: no poses");
  std::ofstream out = OpenForWrite(path);
  std::string line;
  for (const PoseSE3& pose : poses) {
    line.clear();
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        if (r + c > 0) line.push_back(' ');
        AppendShortest(line, c < 3 ? pose.rotation(r, c) : pose.translation[r]);
      }
    }
    out << line << '\n';
  }
  if (!out) throw IoError("short write to " + path.string());
}

std::optional<PoseSE3> ReadVelodyneToCamera(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("Tr:", 0) != 0) continue;
    std::istringstream tokens(line.substr(3));
    PoseSE3 pose;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        double value;
        if (!(tokens >> value)) {
          throw FormatError(path.string() + ": malformed Tr entry");
        }
        if (c < 3) {
          pose.rotation(r, c) = value;
        } else {
          pose.translation[r] = value;
        }
      }
    }
    pose.rotation = NearestRotation(pose.rotation);
    return pose;
  }
  return std::nullopt;
}

}  // namespace dataio
}  // namespace hullslam
