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

#include "hullslam/pipeline/config.h"

#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include "hullslam/common/errors.h"
#include "json.hpp"

namespace hullslam {
namespace pipeline {
namespace {

using nlohmann::json;

constexpr double kDegToRad = std::numbers::pi / 180.0;

double AsNumber(const std::string& key, const json& value) {
  if (!value.is_number()) throw FormatError("config key '" + key + "' expects a number");
  return value.get<double>();
}

int AsInt(const std::string& key, const json& value) {
  if (!value.is_number_integer()) {
    throw FormatError("config key '" + key + "' expects an integer");
  }
  return value.get<int>();
}

bool AsBool(const std::string& key, const json& value) {
  if (!value.is_boolean()) throw FormatError("config key '" + key + "' expects true/false");
  return value.get<bool>();
}

pose_estimation::GroundRegion AsRegion(const std::string& key, const json& value) {
  if (!value.is_array() || value.size() != 3) {
    throw FormatError("config key '" + key + "' expects [x_min, x_max, y_abs_max]");
  }
  return {AsNumber(key, value[0]), AsNumber(key, value[1]), AsNumber(key, value[2])};
}

using Setter = std::function<void(SlamConfig&, const std::string&, const json&)>;

#define HULLSLAM_NUMBER(field) \
  [](SlamConfig& c, const std::string& k, const json& v) { c.field = AsNumber(k, v); }
#define HULLSLAM_INT(field) \
  [](SlamConfig& c, const std::string& k, const json& v) { c.field = AsInt(k, v); }
#define HULLSLAM_BOOL(field) \
  [](SlamConfig& c, const std::string& k, const json& v) { c.field = AsBool(k, v); }

const std::map<std::string, Setter>& Setters() {
  static const auto* setters = new std::map<std::string, Setter>{
      {"segmentation.eps.small", HULLSLAM_NUMBER(segmentation.small.eps)},
      {"segmentation.eps.medium", HULLSLAM_NUMBER(segmentation.medium.eps)},
      {"segmentation.eps.large", HULLSLAM_NUMBER(segmentation.large.eps)},
      {"segmentation.min_pts.small", HULLSLAM_INT(segmentation.small.min_pts)},
      {"segmentation.min_pts.medium", HULLSLAM_INT(segmentation.medium.min_pts)},
      {"segmentation.min_pts.large", HULLSLAM_INT(segmentation.large.min_pts)},
      {"segmentation.max_range_m", HULLSLAM_NUMBER(segmentation.max_range_m)},
      {"pso.swarm_size", HULLSLAM_INT(prelim.pso.swarm_size)},
      {"pso.max_iterations", HULLSLAM_INT(prelim.pso.max_iterations)},
      {"pso.inertia_start", HULLSLAM_NUMBER(prelim.pso.inertia_start)},
      {"pso.inertia_end", HULLSLAM_NUMBER(prelim.pso.inertia_end)},
      {"pso.cognitive", HULLSLAM_NUMBER(prelim.pso.cognitive)},
      {"pso.social", HULLSLAM_NUMBER(prelim.pso.social)},
      {"pso.bound_x_m", HULLSLAM_NUMBER(prelim.pso.search_bounds[0])},
      {"pso.bound_y_m", HULLSLAM_NUMBER(prelim.pso.search_bounds[1])},
      {"pso.bound_theta_deg",
       [](SlamConfig& c, const std::string& k, const json& v) {
         c.prelim.pso.search_bounds[2] = AsNumber(k, v) * kDegToRad;
       }},
      {"prelim.n_min", HULLSLAM_INT(prelim.n_min)},
      {"precise.window", HULLSLAM_INT(submap.window)},
      {"precise.max_points", HULLSLAM_INT(submap.max_points)},
      {"precise.merge_radius_m", HULLSLAM_NUMBER(submap.merge_radius_m)},
      {"precise.bound_scale", HULLSLAM_NUMBER(precise.bound_scale)},
      {"vertical.front_region",
       [](SlamConfig& c, const std::string& k, const json& v) {
         c.vertical.front = AsRegion(k, v);
       }},
      {"vertical.rear_region",
       [](SlamConfig& c, const std::string& k, const json& v) {
         c.vertical.rear = AsRegion(k, v);
       }},
      {"vertical.min_points", HULLSLAM_INT(vertical.min_points)},
      {"vertical.trim_sigma", HULLSLAM_NUMBER(vertical.trim_sigma)},
      {"vertical.trim_rounds", HULLSLAM_INT(vertical.trim_rounds)},
      {"tracking.v_max.vehicles", HULLSLAM_NUMBER(tracking.vehicle_v_max)},
      {"tracking.v_max.persons", HULLSLAM_NUMBER(tracking.person_v_max)},
      {"tracking.d_max.vehicles", HULLSLAM_NUMBER(tracking.vehicle_d_max)},
      {"tracking.d_max.persons", HULLSLAM_NUMBER(tracking.person_d_max)},
      {"tracking.process_sigma.vehicles", HULLSLAM_NUMBER(tracking.vehicle_process_sigma)},
      {"tracking.process_sigma.persons", HULLSLAM_NUMBER(tracking.person_process_sigma)},
      {"tracking.measurement_sigma", HULLSLAM_NUMBER(tracking.measurement_sigma)},
      {"tracking.gate_m", HULLSLAM_NUMBER(tracking.gate_m)},
      {"tracking.max_misses", HULLSLAM_INT(tracking.max_misses)},
      {"tracking.stable_after", HULLSLAM_INT(tracking.stable_after)},
      {"loop.enabled", HULLSLAM_BOOL(loop_enabled)},
      {"loop.keyframe_every", HULLSLAM_INT(loop.keyframe_every)},
      {"loop.sim_threshold", HULLSLAM_NUMBER(loop.sim_threshold)},
      {"loop.min_separation", HULLSLAM_INT(loop.min_separation)},
      {"loop.min_pairs", HULLSLAM_INT(loop.min_pairs)},
      {"loop.overlap_ratio", HULLSLAM_NUMBER(loop.overlap_ratio)},
      {"loop.top_k", HULLSLAM_INT(loop.top_k)},
      {"loop.descriptor.bins", HULLSLAM_INT(loop.descriptor.bins)},
      {"loop.descriptor.bin_width_m", HULLSLAM_NUMBER(loop.descriptor.bin_width_m)},
      {"loop.descriptor.min_landmarks", HULLSLAM_INT(loop.descriptor.min_landmarks)},
      {"mapping.voxel_size", HULLSLAM_NUMBER(voxel_size)},
      {"run.seed",
       [](SlamConfig& c, const std::string& k, const json& v) {
         if (!v.is_number_unsigned()) throw FormatError("config key '" + k + "' expects a non-negative integer");
         c.seed = v.get<std::uint64_t>();
       }},
      {"run.mode",
       [](SlamConfig& c, const std::string& k, const json& v) {
         const std::string mode = v.is_string() ? v.get<std::string>() : "";
         if (mode == "full") {
           c.mode = PipelineMode::kFull;
         } else if (mode == "preliminary-all") {
           c.mode = PipelineMode::kPreliminaryAll;
         } else {
           throw FormatError("config key '" + k + "' expects \"full\" or \"preliminary-all\"");
         }
       }},
      {"debug.yaw_bias_deg_per_frame",
       [](SlamConfig& c, const std::string& k, const json& v) {
         c.yaw_bias_rad_per_frame = AsNumber(k, v) * kDegToRad;
       }},
  };
  return *setters;
}

#undef HULLSLAM_NUMBER
#undef HULLSLAM_INT
#undef HULLSLAM_BOOL

// tracking.<field>.<class name> per-class overrides.
bool ApplyPerClass(SlamConfig& config, const std::string& key, const json& value) {
  static const std::map<std::string, std::map<ClassId, double> tracking::TrackingConfig::*>
      kTables = {{"tracking.v_max.", &tracking::TrackingConfig::v_max},
                 {"tracking.d_max.", &tracking::TrackingConfig::d_max},
                 {"tracking.process_sigma.", &tracking::TrackingConfig::process_sigma}};
  for (const auto& [prefix, table] : kTables) {
    if (key.rfind(prefix, 0) != 0) continue;
    const auto id = semantic::ClassFromName(key.substr(prefix.size()));
    if (!id || !semantic::IsUnknownMotion(*id)) return false;
    (config.tracking.*table)[*id] = AsNumber(key, value);
    return true;
  }
  return false;
}

// Nested objects and dotted keys are interchangeable: {"loop": {"enabled":
// false}} is read as "loop.enabled". Arrays are leaf values.
void Flatten(const json& node, const std::string& prefix,
             std::vector<std::pair<std::string, json>>& out) {
  for (const auto& [key, value] : node.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      Flatten(value, full, out);
    } else {
      out.emplace_back(full, value);
    }
  }
}

void Validate(const SlamConfig& c) {
  const auto check = [](bool ok, const std::string& what) {
    if (!ok) throw FormatError("invalid config: " + what);
  };
  for (const auto* p : {&c.segmentation.small, &c.segmentation.medium, &c.segmentation.large}) {
    check(p->eps > 0.0 && p->min_pts >= 2, "DBSCAN eps > 0 and min_pts >= 2");
  }
  check(c.prelim.pso.swarm_size >= 2, "pso.swarm_size >= 2");
  check(c.prelim.pso.max_iterations >= 1, "pso.max_iterations >= 1");
  check((c.prelim.pso.search_bounds.array() > 0.0).all(), "pso bounds positive");
  check(c.submap.window >= 1 && c.submap.max_points >= 1, "precise.window/max_points >= 1");
  check(c.tracking.measurement_sigma > 0.0 && c.tracking.gate_m > 0.0, "tracking sigmas/gate positive");
  check(c.tracking.vehicle_v_max > 0.0 && c.tracking.person_v_max > 0.0 &&
            c.tracking.vehicle_d_max > 0.0 && c.tracking.person_d_max > 0.0,
        "motion thresholds positive");
  check(c.loop.keyframe_every >= 1, "loop.keyframe_every >= 1");
  check(c.voxel_size > 0.0, "mapping.voxel_size > 0");
}

}  // namespace

SlamConfig ParseConfig(const std::string& json_text, SlamConfig base) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw FormatError("config must be a JSON object");
  const auto& setters = Setters();
  std::vector<std::pair<std::string, json>> entries;
  Flatten(root, "", entries);
  for (const auto& [key, value] : entries) {
    const auto it = setters.find(key);
    if (it != setters.end()) {
      it->second(base, key, value);
    } else if (!ApplyPerClass(base, key, value)) {
      throw FormatError("unknown config key '" + key + "'");
    }
  }
  Validate(base);
  return base;
}

SlamConfig LoadConfig(const std::filesystem::path& path, SlamConfig base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConfig(buffer.str(), std::move(base));
}

std::string DumpConfig(const SlamConfig& c) {
  json out;
  out["segmentation.eps.small"] = c.segmentation.small.eps;
  out["segmentation.eps.medium"] = c.segmentation.medium.eps;
  out["segmentation.eps.large"] = c.segmentation.large.eps;
  out["segmentation.min_pts.small"] = c.segmentation.small.min_pts;
  out["segmentation.min_pts.medium"] = c.segmentation.medium.min_pts;
  out["segmentation.min_pts.large"] = c.segmentation.large.min_pts;
  out["segmentation.max_range_m"] = c.segmentation.max_range_m;
  out["pso.swarm_size"] = c.prelim.pso.swarm_size;
  out["pso.max_iterations"] = c.prelim.pso.max_iterations;
  out["pso.inertia_start"] = c.prelim.pso.inertia_start;
  out["pso.inertia_end"] = c.prelim.pso.inertia_end;
  out["pso.cognitive"] = c.prelim.pso.cognitive;
  out["pso.social"] = c.prelim.pso.social;
  out["pso.bound_x_m"] = c.prelim.pso.search_bounds[0];
  out["pso.bound_y_m"] = c.prelim.pso.search_bounds[1];
  out["pso.bound_theta_deg"] = c.prelim.pso.search_bounds[2] / kDegToRad;
  out["prelim.n_min"] = c.prelim.n_min;
  out["precise.window"] = c.submap.window;
  out["precise.max_points"] = c.submap.max_points;
  out["precise.merge_radius_m"] = c.submap.merge_radius_m;
  out["precise.bound_scale"] = c.precise.bound_scale;
  const auto region = [](const pose_estimation::GroundRegion& r) {
    return json::array({r.x_min, r.x_max, r.y_abs_max});
  };
  out["vertical.front_region"] = region(c.vertical.front);
  out["vertical.rear_region"] = region(c.vertical.rear);
  out["vertical.min_points"] = c.vertical.min_points;
  out["vertical.trim_sigma"] = c.vertical.trim_sigma;
  out["vertical.trim_rounds"] = c.vertical.trim_rounds;
  out["tracking.v_max.vehicles"] = c.tracking.vehicle_v_max;
  out["tracking.v_max.persons"] = c.tracking.person_v_max;
  out["tracking.d_max.vehicles"] = c.tracking.vehicle_d_max;
  out["tracking.d_max.persons"] = c.tracking.person_d_max;
  out["tracking.process_sigma.vehicles"] = c.tracking.vehicle_process_sigma;
  out["tracking.process_sigma.persons"] = c.tracking.person_process_sigma;
  for (const auto& [id, v] : c.tracking.v_max) {
    out["tracking.v_max." + std::string(semantic::ClassName(id))] = v;
  }
  for (const auto& [id, v] : c.tracking.d_max) {
    out["tracking.d_max." + std::string(semantic::ClassName(id))] = v;
  }
  for (const auto& [id, v] : c.tracking.process_sigma) {
    out["tracking.process_sigma." + std::string(semantic::ClassName(id))] = v;
  }
  out["tracking.measurement_sigma"] = c.tracking.measurement_sigma;
  out["tracking.gate_m"] = c.tracking.gate_m;
  out["tracking.max_misses"] = c.tracking.max_misses;
  out["tracking.stable_after"] = c.tracking.stable_after;
  out["loop.enabled"] = c.loop_enabled;
  out["loop.keyframe_every"] = c.loop.keyframe_every;
  out["loop.sim_threshold"] = c.loop.sim_threshold;
  out["loop.min_separation"] = c.loop.min_separation;
  out["loop.min_pairs"] = c.loop.min_pairs;
  out["loop.overlap_ratio"] = c.loop.overlap_ratio;
  out["loop.top_k"] = c.loop.top_k;
  out["loop.descriptor.bins"] = c.loop.descriptor.bins;
  out["loop.descriptor.bin_width_m"] = c.loop.descriptor.bin_width_m;
  out["loop.descriptor.min_landmarks"] = c.loop.descriptor.min_landmarks;
  out["mapping.voxel_size"] = c.voxel_size;
  out["run.seed"] = c.seed;
  out["run.mode"] = c.mode == PipelineMode::kFull ? "full" : "preliminary-all";
  out["debug.yaw_bias_deg_per_frame"] = c.yaw_bias_rad_per_frame / kDegToRad;
  return out.dump(2);
}

}  // namespace pipeline
}  // namespace hullslam
