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

// hullslam command line: run a sequence, evaluate a trajectory, or write a
// synthetic world in the KITTI layout.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hullslam/common/errors.h"
#include "hullslam/dataio/frame_source.h"
#include "hullslam/dataio/kitti_io.h"
#include "hullslam/pipeline/config.h"
#include "hullslam/pipeline/metrics.h"
#include "hullslam/pipeline/pipeline.h"
#include "hullslam/sim/synthetic_world.h"

namespace fs = std::filesystem;
using namespace hullslam;

namespace {

void PrintErrors(std::ostream& out, const pipeline::RelativeErrors& e) {
  out << "t_rel_percent " << e.t_rel << "\n"
      << "r_rel_deg_per_m " << e.r_rel << "\n"
      << "r_rel_deg_per_100m " << 100.0 * e.r_rel << "\n"
      << "segments " << e.segments << "\n";
}

int Run(const fs::path& dataset, const std::string& sequence,
        const std::optional<fs::path>& config_path, const fs::path& output,
        bool no_loop, bool export_map, std::optional<std::uint64_t> seed) {
  pipeline::SlamConfig config;
  if (config_path) config = pipeline::LoadConfig(*config_path);
  if (no_loop) config.loop_enabled = false;
  if (seed) config.seed = *seed;

  const dataio::KittiSequence source(dataset, sequence);
  if (source.size() == 0) throw IoError("no scans found for sequence " + sequence);
  fs::create_directories(output);
  {
    std::ofstream effective(output / "config.json");
    effective << pipeline::DumpConfig(config) << "\n";
  }

  const auto start = std::chrono::steady_clock::now();
  pipeline::SlamPipeline slam(config);
  for (std::size_t i = 0; i < source.size(); ++i) {
    slam.ProcessFrame(source.Load(i));
    if ((i + 1) % 100 == 0) {
      std::cerr << "frame " << i + 1 << "/" << source.size() << "\n";
    }
  }
  pipeline::RunResult result = slam.TakeResult();
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  // KITTI ground truth lives in the left camera frame.
  std::vector<PoseSE3> trajectory = result.trajectory;
  if (const auto tr = source.VelodyneToCamera()) {
    const PoseSE3 tr_inv = tr->Inverse();
    for (PoseSE3& pose : trajectory) pose = (*tr) * pose * tr_inv;
  }
  dataio::WriteTrajectory(trajectory, output / (sequence + ".txt"));
  {
    std::ofstream log(output / "diagnostics.jsonl");
    for (const auto& d : result.diagnostics) log << pipeline::DiagnosticsJson(d) << "\n";
  }

  std::ofstream summary(output / "metrics.txt");
  summary << "frames " << trajectory.size() << "\n"
          << "seconds " << seconds << "\n"
          << "loop_closures " << result.loops.size() << "\n"
          << "corrections " << result.corrections << "\n"
          << "correction_diverged " << (result.correction_diverged ? 1 : 0) << "\n";
  if (const auto gt_path = source.GroundTruthPath()) {
    const std::vector<PoseSE3> gt = dataio::ReadPoses(*gt_path);
    if (gt.size() == trajectory.size()) {
      try {
        const auto errors = pipeline::KittiRelativeErrors(trajectory, gt);
        PrintErrors(summary, errors);
        PrintErrors(std::cout, errors);
      } catch (const DataError& e) {
        summary << "metrics_unavailable " << e.what() << "\n";
        std::cout << "metrics unavailable: " << e.what() << "\n";
      }
    }
  }
  if (export_map) {
    const mapping::SemanticVoxelMap map =
        pipeline::BuildMap(source, result.trajectory, config);
    map.ExportPly(output / "map.ply");
    summary << "map_voxels " << map.size() << "\n";
  }
  std::cout << "wrote " << (output / (sequence + ".txt")).string() << " ("
            << trajectory.size() << " poses, " << seconds << " s)\n";
  return 0;
}

int Eval(const fs::path& est, const fs::path& gt) {
  const auto errors =
      pipeline::KittiRelativeErrors(dataio::ReadPoses(est), dataio::ReadPoses(gt));
  PrintErrors(std::cout, errors);
  return 0;
}

int Synth(const std::string& scenario_name, const fs::path& output,
          std::uint64_t seed) {
  const sim::Scenario scenario =
      sim::MakeScenario(sim::ScenarioFromName(scenario_name), seed);
  sim::WriteKittiLayout(scenario, output);
  std::cout << "wrote " << scenario.frame_count() << " frames of '"
            << scenario.name << "' to " << output.string() << " (sequence 00)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic LiDAR SLAM for dynamic scenes"};
  app.require_subcommand(1);

  std::string dataset, sequence, output, config_file;
  bool no_loop = false, export_map = false;
  std::uint64_t seed = 0;
  auto* run = app.add_subcommand("run", "Estimate a trajectory for one sequence");
  run->add_option("--dataset", dataset, "KITTI odometry root")->required();
  run->add_option("--sequence", sequence, "Sequence id, e.g. 07")->required();
  auto* config_opt = run->add_option("--config", config_file, "Flat JSON config");
  run->add_option("--output", output, "Output directory")->required();
  run->add_flag("--no-loop", no_loop, "Disable loop closure");
  run->add_flag("--export-map", export_map, "Write map.ply");
  auto* seed_opt = run->add_option("--seed", seed, "Random seed");

  std::string est, gt;
  auto* eval = app.add_subcommand("eval", "KITTI relative errors of a trajectory");
  eval->add_option("--est", est, "Estimated poses")->required();
  eval->add_option("--gt", gt, "Ground-truth poses")->required();

  std::string scenario, synth_output;
  std::uint64_t synth_seed = 1;
  auto* synth = app.add_subcommand("synth", "Write a synthetic sequence");
  synth->add_option("--scenario", scenario, "Scenario")
      ->required()
      ->check(CLI::IsMember({"straight", "square-loop", "dynamic"}));
  synth->add_option("--output", synth_output, "Output dataset root")->required();
  synth->add_option("--seed", synth_seed, "World seed");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) {
      return Run(dataset, sequence,
                 config_opt->count() ? std::optional<fs::path>(config_file) : std::nullopt,
                 output, no_loop, export_map,
                 seed_opt->count() ? std::optional<std::uint64_t>(seed) : std::nullopt);
    }
    if (*eval) return Eval(est, gt);
    if (*synth) return Synth(scenario, synth_output, synth_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
