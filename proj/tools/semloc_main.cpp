/*
 * Copyright 2026 The Semloc Authors
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

#include <CLI11.hpp>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <thread>

#include "semloc/annotator.hpp"
#include "semloc/io/json_io.hpp"
#include "semloc/io/log.hpp"
#include "semloc/mapper.hpp"
#include "semloc/mcl.hpp"
#include "semloc/metrics.hpp"
#include "semloc/simulator.hpp"

namespace semloc {
namespace {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Configuration: one JSON file, flags win over file values.

struct TrajectoryConfig {
  double speed = 0.5;
  double turn_rate = 1.0;
  double dt = 0.1;
  int obs_every = 2;
};

struct RunConfig {
  std::uint64_t seed = 1;
  int jobs = 0;  // 0: hardware concurrency
  WorldSpec world;
  TrajectoryConfig trajectory;
  MapperConfig mapper;
  MclConfig mcl;
  NoiseModelConfig noise;
  AnnotatorConfig annotator;
  RoomSegmentationConfig rooms;
};

template <typename T>
void read_if(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

void parse_world(const Json& j, WorldSpec& w) {
  read_if(j, "rooms_x", w.rooms_x);
  read_if(j, "rooms_y", w.rooms_y);
  read_if(j, "room_width", w.room_width);
  read_if(j, "room_depth", w.room_depth);
  read_if(j, "wall_thickness", w.wall_thickness);
  read_if(j, "door_width", w.door_width);
  read_if(j, "resolution", w.resolution);
  read_if(j, "n_objects", w.n_objects);
  read_if(j, "sigma_center", w.sigma_center);
  read_if(j, "dim_noise_rel", w.dim_noise_rel);
  read_if(j, "yaw_noise", w.yaw_noise);
  read_if(j, "z_noise", w.z_noise);
  read_if(j, "p_detect", w.rates.p_detect);
  read_if(j, "fp_rate", w.rates.fp_rate);
  read_if(j, "max_range", w.max_range);
}

RunConfig load_config(const std::string& path) {
  RunConfig config;
  if (path.empty()) return config;
  const Json j = read_json_file(path);
  read_if(j, "seed", config.seed);
  read_if(j, "jobs", config.jobs);
  if (j.contains("world")) parse_world(j.at("world"), config.world);
  if (j.contains("trajectory")) {
    const Json& t = j.at("trajectory");
    read_if(t, "speed", config.trajectory.speed);
    read_if(t, "turn_rate", config.trajectory.turn_rate);
    read_if(t, "dt", config.trajectory.dt);
    read_if(t, "obs_every", config.trajectory.obs_every);
  }
  if (j.contains("mapper")) {
    const Json& m = j.at("mapper");
    read_if(m, "d_xy", config.mapper.d_xy);
    read_if(m, "d_theta", config.mapper.d_theta);
    read_if(m, "tau_cost", config.mapper.tau_cost);
    read_if(m, "tau_purge", config.mapper.tau_purge);
    read_if(m, "delta", config.mapper.delta);
  }
  if (j.contains("mcl")) {
    const Json& m = j.at("mcl");
    read_if(m, "n_particles", config.mcl.n_particles);
    read_if(m, "eta", config.mcl.eta);
    read_if(m, "resample_threshold", config.mcl.resample_threshold);
    read_if(m, "min_confidence", config.mcl.min_confidence);
    if (m.contains("sigma_odom")) {
      const Json& s = m.at("sigma_odom");
      config.mcl.sigma_odom = {s.at(0).get<double>(), s.at(1).get<double>(),
                               s.at(2).get<double>()};
    }
    if (m.contains("sensor_model")) {
      config.mcl.sensor_model =
          sensor_model_from_string(m.at("sensor_model").get<std::string>());
    }
  }
  if (j.contains("noise")) {
    const Json& n = j.at("noise");
    read_if(n, "delta", config.noise.match_distance);
    read_if(n, "histogram_cell", config.noise.histogram_cell);
    read_if(n, "min_samples", config.noise.min_samples);
  }
  if (j.contains("annotator")) {
    read_if(j.at("annotator"), "tau_2d", config.annotator.tau_2d);
  }
  if (j.contains("rooms")) {
    const Json& r = j.at("rooms");
    read_if(r, "erosion_radius", config.rooms.erosion_radius);
    read_if(r, "min_room_area", config.rooms.min_room_area);
  }
  return config;
}

Json resolved_config_json(const RunConfig& c) {
  return Json{
      {"seed", c.seed},
      {"jobs", c.jobs},
      {"world",
       {{"rooms_x", c.world.rooms_x},
        {"rooms_y", c.world.rooms_y},
        {"room_width", c.world.room_width},
        {"room_depth", c.world.room_depth},
        {"wall_thickness", c.world.wall_thickness},
        {"door_width", c.world.door_width},
        {"resolution", c.world.resolution},
        {"n_objects", c.world.n_objects},
        {"sigma_center", c.world.sigma_center},
        {"dim_noise_rel", c.world.dim_noise_rel},
        {"yaw_noise", c.world.yaw_noise},
        {"z_noise", c.world.z_noise},
        {"p_detect", c.world.rates.p_detect},
        {"fp_rate", c.world.rates.fp_rate},
        {"max_range", c.world.max_range}}},
      {"trajectory",
       {{"speed", c.trajectory.speed},
        {"turn_rate", c.trajectory.turn_rate},
        {"dt", c.trajectory.dt},
        {"obs_every", c.trajectory.obs_every}}},
      {"mapper",
       {{"d_xy", c.mapper.d_xy},
        {"d_theta", c.mapper.d_theta},
        {"tau_cost", c.mapper.tau_cost},
        {"tau_purge", c.mapper.tau_purge},
        {"delta", c.mapper.delta}}},
      {"mcl",
       {{"n_particles", c.mcl.n_particles},
        {"sigma_odom",
         {c.mcl.sigma_odom.x(), c.mcl.sigma_odom.y(), c.mcl.sigma_odom.z()}},
        {"eta", c.mcl.eta},
        {"resample_threshold", c.mcl.resample_threshold},
        {"sensor_model", to_string(c.mcl.sensor_model)},
        {"min_confidence", c.mcl.min_confidence}}},
      {"noise",
       {{"delta", c.noise.match_distance},
        {"histogram_cell", c.noise.histogram_cell},
        {"min_samples", c.noise.min_samples}}},
      {"annotator", {{"tau_2d", c.annotator.tau_2d}}},
      {"rooms",
       {{"erosion_radius", c.rooms.erosion_radius},
        {"min_room_area", c.rooms.min_room_area}}}};
}

int effective_jobs(const RunConfig& config) {
  if (config.jobs > 0) return config.jobs;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Deterministic parallel-for; the body writes to preallocated slots.
void parallel_for(std::size_t n, int jobs,
                  const std::function<void(std::size_t)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      body(i);
    }
  };
  std::vector<std::thread> threads;
  const std::size_t count = std::min<std::size_t>(jobs, n);
  threads.reserve(count);
  for (std::size_t t = 0; t < count; ++t) threads.emplace_back(worker);
  for (std::thread& t : threads) t.join();
}

std::vector<GroundTruthObject> gt_objects_from_map(const ObjectMap& map) {
  std::vector<GroundTruthObject> out;
  out.reserve(map.objects.size());
  for (const MapObject& obj : map.objects) {
    out.push_back({obj.id, obj.class_label, obj.box});
  }
  return out;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const RunConfig& config, const fs::path& out) {
  fs::create_directories(out);
  const SimWorld world = generate_world(config.seed, config.world);
  const CameraModel cam = default_camera_model();
  const Pose3 extrinsics = default_camera_extrinsics();

  save_floorplan(world.plan, out / "plan.pgm", out / "plan.meta");
  write_json_file(to_json(world.gt_object_map()), out / "gt_map.json");
  write_json_file(to_json(world.class_noise), out / "sim_noise.json");

  const SimTrajectory traj = waypoint_trajectory(
      room_tour_waypoints(world, config.world), config.trajectory.speed,
      config.trajectory.turn_rate, config.trajectory.dt,
      Pose2(0.5 * config.world.room_width + config.world.wall_thickness,
            0.5 * config.world.room_depth + config.world.wall_thickness,
            0.0));
  log_info("trajectory: " + std::to_string(traj.poses.size()) + " samples");

  std::vector<TimedPose> gt_track(traj.poses.begin(), traj.poses.end());
  write_jsonl(gt_track, out / "gt_trajectory.jsonl",
              [](const TimedPose& t) { return to_json(t); });

  const auto mapping = build_mapping_stream(world, traj, cam, extrinsics,
                                            derive_seed(config.seed, 1));
  write_jsonl(mapping, out / "mapping.jsonl",
              [](const DetectionFrame& f) { return to_json(f); });

  const auto sequence =
      build_sequence(world, traj, cam, extrinsics, config.mcl.sigma_odom,
                     config.trajectory.obs_every, derive_seed(config.seed, 2));
  write_jsonl(sequence, out / "sequence.jsonl",
              [](const SequenceEvent& e) { return to_json(e); });

  // Annotator inputs (posed frames plus an emulated 2D detector stream) and
  // world-frame predictions for noise fitting.
  std::vector<PosedFrame> frames;
  std::vector<Detection2DRecord> det2d;
  std::vector<PredictionRecord> predictions;
  std::mt19937_64 rng(derive_seed(config.seed, 3));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const DetectionFrame& frame : mapping) {
    frames.push_back({frame.frame_id, frame.timestamp_s, frame.cam_pose});

    const Pose3 cam_to_world = frame.cam_pose.inverse();
    for (const Detection3D& det : frame.detections) {
      PredictionRecord record;
      record.frame_id = frame.frame_id;
      record.detection = det;
      record.detection.box.center = cam_to_world.apply(det.box.center);
      record.detection.box.rotation = cam_to_world.rotation * det.box.rotation;
      predictions.push_back(std::move(record));
    }

    const Eigen::Vector2d cam_ground =
        camera_position_in_world(frame.cam_pose).head<2>();
    for (const GroundTruthObject& gt : world.gt_objects) {
      const auto proj = project_box_to_image(gt.box, frame.cam_pose, cam);
      if (proj.in_frustum_fraction <= 0.0 || !proj.bbox) continue;
      const Eigen::Vector2d target = gt.box.center.head<2>();
      if ((target - cam_ground).norm() > world.max_range) continue;
      if (raycast(world.plan, cam_ground, target).blocked) continue;
      if (unit(rng) > world.rates.p_detect) continue;
      Detection2DRecord record;
      record.frame_id = frame.frame_id;
      record.detection.class_label = gt.class_label;
      record.detection.bbox = *proj.bbox;
      const double jitter = 0.02 * proj.bbox->width();
      record.detection.bbox.min.x() += jitter * (2.0 * unit(rng) - 1.0);
      record.detection.bbox.max.x() += jitter * (2.0 * unit(rng) - 1.0);
      record.detection.confidence = 0.5 + 0.5 * unit(rng);
      det2d.push_back(std::move(record));
    }
  }
  write_jsonl(frames, out / "frames.jsonl",
              [](const PosedFrame& f) { return to_json(f); });
  write_jsonl(det2d, out / "detections2d.jsonl",
              [](const Detection2DRecord& d) { return to_json(d); });
  write_jsonl(predictions, out / "predictions.jsonl",
              [](const PredictionRecord& p) { return to_json(p); });

  // Validate everything written before reporting success.
  load_floorplan(out / "plan.pgm", out / "plan.meta");
  object_map_from_json(read_json_file(out / "gt_map.json"));
  class_models_from_json(read_json_file(out / "sim_noise.json"));
  read_jsonl<DetectionFrame>(out / "mapping.jsonl", detection_frame_from_json);
  read_jsonl<SequenceEvent>(out / "sequence.jsonl", sequence_event_from_json);
  read_jsonl<TimedPose>(out / "gt_trajectory.jsonl", timed_pose_from_json);
  read_jsonl<PosedFrame>(out / "frames.jsonl", posed_frame_from_json);
  read_jsonl<Detection2DRecord>(out / "detections2d.jsonl",
                                detection2d_record_from_json);
  read_jsonl<PredictionRecord>(out / "predictions.jsonl",
                               prediction_record_from_json);
  log_info("simulate: " + std::to_string(world.gt_objects.size()) +
           " objects -> " + out.string());
  return 0;
}

// ---------------------------------------------------------------------------
// annotate

int cmd_annotate(const RunConfig& config, const fs::path& gt_path,
                 const fs::path& frames_path, const fs::path& det2d_path,
                 const fs::path& plan_image, const fs::path& plan_meta,
                 const fs::path& out_path) {
  const auto gt =
      gt_objects_from_map(object_map_from_json(read_json_file(gt_path)));
  const auto frames =
      read_jsonl<PosedFrame>(frames_path, posed_frame_from_json);
  const auto det2d =
      read_jsonl<Detection2DRecord>(det2d_path, detection2d_record_from_json);
  const FloorPlan plan = load_floorplan(plan_image, plan_meta);
  const CameraModel cam = default_camera_model();

  std::map<int, std::vector<Detection2D>> det_by_frame;
  for (const Detection2DRecord& r : det2d) {
    det_by_frame[r.frame_id].push_back(r.detection);
  }

  std::vector<LabelFrame> labels(frames.size());
  parallel_for(frames.size(), effective_jobs(config), [&](std::size_t i) {
    const PosedFrame& frame = frames[i];
    static const std::vector<Detection2D> kNone;
    const auto it = det_by_frame.find(frame.frame_id);
    const auto& dets = it == det_by_frame.end() ? kNone : it->second;
    labels[i].frame_id = frame.frame_id;
    labels[i].cam_pose = frame.cam_pose;
    labels[i].labels =
        annotate_frame(gt, frame.cam_pose, cam, dets, plan, config.annotator);
  });

  write_jsonl(labels, out_path, [](const LabelFrame& l) { return to_json(l); });
  const auto written = read_jsonl<LabelFrame>(out_path, label_frame_from_json);
  std::size_t total = 0;
  for (const auto& l : written) total += l.labels.size();
  log_info("annotate: " + std::to_string(total) + " labels over " +
           std::to_string(written.size()) + " frames");
  return 0;
}

// ---------------------------------------------------------------------------
// fit-noise

int cmd_fit_noise(const RunConfig& config, const fs::path& predictions_path,
                  const fs::path& gt_path, const fs::path& out_models,
                  const fs::path& out_probmap) {
  const ObjectMap gt_map = object_map_from_json(read_json_file(gt_path));
  const auto gt = gt_objects_from_map(gt_map);
  const auto predictions =
      read_jsonl<PredictionRecord>(predictions_path, prediction_record_from_json);

  std::vector<MatchedSample> samples;
  std::map<int, const GroundTruthObject*> gt_by_id;
  for (const GroundTruthObject& g : gt) gt_by_id[g.id] = &g;
  std::size_t discarded = 0;
  for (const PredictionRecord& p : predictions) {
    const auto id = match_to_gt(p.detection, gt, config.noise.match_distance);
    if (!id) {
      ++discarded;
      continue;
    }
    samples.push_back(make_matched_sample(p.detection, *gt_by_id.at(*id)));
  }
  log_info("fit-noise: " + std::to_string(samples.size()) + " samples, " +
           std::to_string(discarded) + " discarded");

  std::set<std::string> classes;
  for (const MatchedSample& s : samples) classes.insert(s.class_label);
  std::map<std::string, ClassNoiseModel> models;
  for (const std::string& cls : classes) {
    try {
      models[cls] = fit_class_model(samples, cls, config.noise);
    } catch (const std::invalid_argument& e) {
      log_warn(std::string("fit-noise: ") + e.what() + ", skipping");
    }
  }
  write_json_file(to_json(models), out_models);

  const ProbabilityMapResult prob = build_probability_map(models, gt_map);
  for (const std::string& w : prob.warnings) log_warn("fit-noise: " + w);
  write_json_file(to_json(prob.map), out_probmap);

  class_models_from_json(read_json_file(out_models));
  const auto written = probability_map_from_json(read_json_file(out_probmap));
  for (const ObjectGaussian& g : written.gaussians) {
    if (!g.covariance_valid()) {
      log_error("fit-noise: invalid covariance for object " +
                std::to_string(g.object_id));
      return 1;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// build-map

int cmd_build_map(const RunConfig& config, const fs::path& stream_path,
                  const fs::path& plan_image, const fs::path& plan_meta,
                  const fs::path& models_path, const fs::path& resume_from,
                  const fs::path& out_path, const fs::path& event_log) {
  const FloorPlan plan = load_floorplan(plan_image, plan_meta);
  const RoomMap rooms = segment_rooms(plan, config.rooms);
  std::map<std::string, ClassNoiseModel> models;
  if (!models_path.empty()) {
    models = class_models_from_json(read_json_file(models_path));
  } else {
    log_warn(
        "build-map: no class noise models given, association falls back to "
        "the IoU-only cost");
  }
  const auto stream =
      read_jsonl<DetectionFrame>(stream_path, detection_frame_from_json);

  Mapper mapper(plan, rooms, models, default_camera_model(), config.mapper);
  if (!resume_from.empty()) {
    mapper.mutable_global_map() =
        object_map_from_json(read_json_file(resume_from));
    log_info("build-map: resuming from " +
             std::to_string(mapper.global_map().objects.size()) + " objects");
  }

  std::ofstream events;
  if (!event_log.empty()) events.open(event_log);
  std::size_t last_global = mapper.global_map().objects.size();
  Pose2 last_pose;
  for (const DetectionFrame& frame : stream) {
    mapper.ingest_frame(frame.detections, frame.robot_pose, frame.cam_pose);
    last_pose = frame.robot_pose;
    if (events.is_open() && mapper.global_map().objects.size() != last_global) {
      last_global = mapper.global_map().objects.size();
      events << Json{{"timestamp_s", frame.timestamp_s},
                     {"n_global", last_global},
                     {"n_local", mapper.local_map().objects.objects.size()}}
                    .dump()
             << "\n";
    }
  }
  if (!stream.empty()) mapper.integrate(last_pose);

  ObjectMap result = mapper.global_map();
  assign_rooms(result, rooms, plan);
  write_json_file(to_json(result), out_path);
  object_map_from_json(read_json_file(out_path));
  log_info("build-map: " + std::to_string(result.objects.size()) +
           " objects from " + std::to_string(stream.size()) + " frames");
  return 0;
}

// ---------------------------------------------------------------------------
// localize

struct RunResult {
  std::vector<EstimateRecord> estimates;
};

RunResult run_filter(const RunConfig& config, const FloorPlan& plan,
                     const SensorMap& sensors, const ClassEdt* edt,
                     const std::vector<SequenceEvent>& events,
                     std::uint64_t seed, int particle_jobs,
                     int dump_every = 0, const fs::path& dump_dir = {},
                     int run_index = 0) {
  ParticleFilter filter(config.mcl, sensors, edt, seed);
  filter.init_uniform(plan);

  RunResult result;
  int obs_count = 0;
  for (const SequenceEvent& event : events) {
    if (event.type == SequenceEvent::Type::kOdom) {
      filter.on_odometry(event.odom_delta);
      continue;
    }
    filter.on_observation(event.observation, particle_jobs);

    if (dump_every > 0 && obs_count % dump_every == 0) {
      std::ofstream dump(dump_dir /
                         ("particles_run" + std::to_string(run_index) +
                          "_obs" + std::to_string(obs_count) + ".jsonl"));
      for (const Particle& p : filter.particles()) {
        dump << Json{{"pose", to_json(p.pose)}, {"weight", p.weight}}.dump()
             << "\n";
      }
    }
    ++obs_count;

    const auto& particles = filter.particles();
    const Pose2 mean = estimate(particles);
    double var = 0.0, wsum = 0.0;
    for (const Particle& p : particles) {
      var += p.weight * (std::pow(p.pose.x - mean.x, 2) +
                         std::pow(p.pose.y - mean.y, 2));
      wsum += p.weight;
    }
    const double spread = wsum > 0.0 ? std::sqrt(var / wsum) : 1e9;
    result.estimates.push_back(
        {event.timestamp_s, mean, filter.n_eff(), spread < 0.5});
  }
  return result;
}

int cmd_localize(const RunConfig& config, const fs::path& sequence_path,
                 const fs::path& map_path, const fs::path& probmap_path,
                 const fs::path& plan_image, const fs::path& plan_meta,
                 const fs::path& gt_trajectory_path, int runs,
                 const fs::path& out_dir, int dump_every) {
  fs::create_directories(out_dir);
  const FloorPlan plan = load_floorplan(plan_image, plan_meta);
  const ObjectMap map = object_map_from_json(read_json_file(map_path));
  ObjectProbabilityMap probmap;
  if (!probmap_path.empty()) {
    probmap = probability_map_from_json(read_json_file(probmap_path));
  } else if (config.mcl.sensor_model == SensorModelKind::kObject ||
             config.mcl.sensor_model == SensorModelKind::kD) {
    throw std::runtime_error(
        "localize: sensor model '" + to_string(config.mcl.sensor_model) +
        "' needs --probmap");
  }
  const SensorMap sensors(map, probmap);

  ClassEdt edt;
  const bool needs_edt = config.mcl.sensor_model == SensorModelKind::kEdt;
  if (needs_edt) edt = build_class_edt(map, plan);

  const auto events =
      read_jsonl<SequenceEvent>(sequence_path, sequence_event_from_json);

  const int jobs = effective_jobs(config);
  std::vector<RunResult> results(runs);
  if (runs > 1) {
    parallel_for(runs, jobs, [&](std::size_t r) {
      results[r] = run_filter(config, plan, sensors, needs_edt ? &edt : nullptr,
                              events, derive_seed(config.seed, r), 1,
                              dump_every, out_dir, static_cast<int>(r));
    });
  } else {
    results[0] = run_filter(config, plan, sensors, needs_edt ? &edt : nullptr,
                            events, derive_seed(config.seed, 0), jobs,
                            dump_every, out_dir, 0);
  }

  for (int r = 0; r < runs; ++r) {
    const fs::path path =
        out_dir / ("estimates_run" + std::to_string(r) + ".jsonl");
    write_jsonl(results[r].estimates, path,
                [](const EstimateRecord& e) { return to_json(e); });
    read_jsonl<EstimateRecord>(path, estimate_record_from_json);
  }

  if (!gt_trajectory_path.empty()) {
    const auto gt =
        read_jsonl<TimedPose>(gt_trajectory_path, timed_pose_from_json);
    std::vector<std::pair<std::string, LocalizationReport>> rows;
    Json per_run = Json::array();
    for (int r = 0; r < runs; ++r) {
      std::vector<TimedPose> track;
      for (const EstimateRecord& e : results[r].estimates) {
        track.push_back({e.timestamp_s, e.estimate});
      }
      const LocalizationReport report = convergence(track, gt);
      rows.emplace_back("run" + std::to_string(r), report);
      per_run.push_back(Json{{"run", r},
                             {"converged", report.converged},
                             {"convergence_time_s", report.convergence_time_s},
                             {"ate_trans_m", report.ate_trans_m},
                             {"ate_rot_rad", report.ate_rot_rad},
                             {"success", report.success}});
    }
    std::vector<LocalizationReport> reports;
    for (const auto& [name, rep] : rows) reports.push_back(rep);
    const Json summary{{"sensor_model", to_string(config.mcl.sensor_model)},
                       {"runs", runs},
                       {"success_rate", success_rate(reports)},
                       {"per_run", per_run}};
    write_json_file(summary, out_dir / "localization_report.json");
    std::ofstream table(out_dir / "localization_report.txt");
    table << format_localization_table(rows,
                                       to_string(config.mcl.sensor_model));
    std::ofstream csv(out_dir / "localization_report.csv");
    csv << "run,success,converged,convergence_time_s,ate_rot_rad,"
           "ate_trans_m\n";
    for (int r = 0; r < runs; ++r) {
      const LocalizationReport& rep = rows[r].second;
      csv << r << "," << rep.success << "," << rep.converged << ","
          << rep.convergence_time_s << "," << rep.ate_rot_rad << ","
          << rep.ate_trans_m << "\n";
    }
    read_json_file(out_dir / "localization_report.json");
  }
  return 0;
}

// ---------------------------------------------------------------------------
// eval

int cmd_eval_map(const RunConfig& config, const fs::path& built_path,
                 const fs::path& gt_path, const fs::path& out_prefix) {
  const ObjectMap built = object_map_from_json(read_json_file(built_path));
  const ObjectMap gt = object_map_from_json(read_json_file(gt_path));
  MapQualityConfig mq;
  mq.delta = config.mapper.delta;
  const MapQualityReport report = map_quality(built, gt, mq);

  Json per_class = Json::array();
  for (const ClassQuality& q : report.per_class) {
    per_class.push_back(Json{{"class", q.class_label},
                             {"iou", q.iou},
                             {"precision", q.precision},
                             {"recall", q.recall},
                             {"n_built", q.n_built},
                             {"n_gt", q.n_gt},
                             {"n_matched", q.n_matched}});
  }
  // Averages are unweighted class means.
  const Json j{{"avg_iou", report.avg_iou},
               {"avg_precision", report.avg_precision},
               {"avg_recall", report.avg_recall},
               {"per_class", per_class}};
  write_json_file(j, fs::path(out_prefix.string() + ".json"));
  std::ofstream txt(out_prefix.string() + ".txt");
  txt << format_map_quality_table(report, "map");
  std::ofstream csv(out_prefix.string() + ".csv");
  csv << map_quality_csv(report);
  read_json_file(out_prefix.string() + ".json");
  std::cout << format_map_quality_table(report, "map");
  return 0;
}

int cmd_eval_localization(const fs::path& estimates_path,
                          const fs::path& gt_path,
                          const fs::path& out_prefix) {
  const auto estimates =
      read_jsonl<EstimateRecord>(estimates_path, estimate_record_from_json);
  const auto gt = read_jsonl<TimedPose>(gt_path, timed_pose_from_json);
  std::vector<TimedPose> track;
  for (const EstimateRecord& e : estimates) {
    track.push_back({e.timestamp_s, e.estimate});
  }
  const LocalizationReport report = convergence(track, gt);
  const Json j{{"converged", report.converged},
               {"convergence_time_s", report.convergence_time_s},
               {"ate_trans_m", report.ate_trans_m},
               {"ate_rot_rad", report.ate_rot_rad},
               {"success", report.success}};
  write_json_file(j, fs::path(out_prefix.string() + ".json"));
  std::ofstream txt(out_prefix.string() + ".txt");
  txt << format_localization_table({{"run0", report}}, "eval");
  read_json_file(out_prefix.string() + ".json");
  std::cout << format_localization_table({{"run0", report}}, "eval");
  return 0;
}

}  // namespace
}  // namespace semloc

int main(int argc, char** argv) {
  using namespace semloc;
  CLI::App app{"object-based metric-semantic mapping and localization"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed_flag = 0;
  bool seed_set = false;
  int jobs_flag = 0;
  bool print_config = false;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--seed", seed_flag, "override the config seed")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--jobs", jobs_flag, "worker threads (0 = hardware)");
  app.add_flag("--print-config", print_config,
               "echo the fully resolved configuration");

  std::string out = "out";
  std::string gt_map, frames, det2d, plan_image, plan_meta, labels_out;
  std::string predictions, models_out, probmap_out;
  std::string stream, models_in, resume_from, map_out, event_log;
  std::string sequence, map_in, probmap_in, gt_trajectory, sensor_model;
  std::string built, estimates, out_prefix;
  int runs = 1;
  int dump_particles = 0;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "generate a synthetic world and event streams");
  simulate->add_option("--out", out, "output directory");

  CLI::App* annotate = app.add_subcommand(
      "annotate", "generate 3D labels from posed frames and 2D detections");
  annotate->add_option("--gt", gt_map, "ground-truth object map JSON")
      ->required();
  annotate->add_option("--frames", frames, "posed-frame index JSONL")
      ->required();
  annotate->add_option("--det2d", det2d, "2D detection stream JSONL")
      ->required();
  annotate->add_option("--plan", plan_image, "floor plan image")->required();
  annotate->add_option("--plan-meta", plan_meta, "floor plan metadata")
      ->required();
  annotate->add_option("--out", labels_out, "labels JSONL output")->required();

  CLI::App* fit =
      app.add_subcommand("fit-noise", "fit per-class detection noise models");
  fit->add_option("--predictions", predictions,
                  "world-frame predictions JSONL")
      ->required();
  fit->add_option("--gt", gt_map, "ground-truth object map JSON")->required();
  fit->add_option("--out-models", models_out, "class models JSON output")
      ->required();
  fit->add_option("--out-probmap", probmap_out,
                  "object probability map JSON output")
      ->required();

  CLI::App* build = app.add_subcommand(
      "build-map", "build the object map from a detection stream");
  build->add_option("--stream", stream, "detection frames JSONL")->required();
  build->add_option("--plan", plan_image, "floor plan image")->required();
  build->add_option("--plan-meta", plan_meta, "floor plan metadata")
      ->required();
  build->add_option("--models", models_in, "class noise models JSON");
  build->add_option("--resume-from", resume_from,
                    "existing map JSON to update");
  build->add_option("--event-log", event_log,
                    "per-integration event log JSONL");
  build->add_option("--out", map_out, "object map JSON output")->required();

  CLI::App* localize =
      app.add_subcommand("localize", "global Monte Carlo localization");
  localize->add_option("--sequence", sequence,
                       "odometry/observation events JSONL")
      ->required();
  localize->add_option("--map", map_in, "object map JSON")->required();
  localize->add_option("--probmap", probmap_in,
                       "object probability map JSON");
  localize->add_option("--plan", plan_image, "floor plan image")->required();
  localize->add_option("--plan-meta", plan_meta, "floor plan metadata")
      ->required();
  localize->add_option("--gt-trajectory", gt_trajectory,
                       "ground-truth trajectory JSONL (enables the report)");
  localize->add_option("--sensor-model", sensor_model, "object|edt|d|o");
  localize->add_option("--runs", runs, "number of repeated runs");
  localize->add_option("--dump-particles", dump_particles,
                       "dump the particle cloud every M observations");
  localize->add_option("--out", out, "output directory");

  CLI::App* eval =
      app.add_subcommand("eval", "map-quality or localization reports");
  eval->add_option("--built", built, "built object map JSON");
  eval->add_option("--gt", gt_map, "ground-truth object map JSON");
  eval->add_option("--estimates", estimates, "estimate log JSONL");
  eval->add_option("--gt-trajectory", gt_trajectory,
                   "ground-truth trajectory JSONL");
  eval->add_option("--out", out_prefix, "output file prefix")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig config = load_config(config_path);
    if (seed_set) config.seed = seed_flag;
    if (jobs_flag > 0) config.jobs = jobs_flag;
    if (!sensor_model.empty()) {
      config.mcl.sensor_model = sensor_model_from_string(sensor_model);
    }
    if (print_config) {
      std::cout << resolved_config_json(config).dump(2) << "\n";
    }

    if (simulate->parsed()) {
      return cmd_simulate(config, out);
    }
    if (annotate->parsed()) {
      return cmd_annotate(config, gt_map, frames, det2d, plan_image, plan_meta,
                          labels_out);
    }
    if (fit->parsed()) {
      return cmd_fit_noise(config, predictions, gt_map, models_out,
                           probmap_out);
    }
    if (build->parsed()) {
      return cmd_build_map(config, stream, plan_image, plan_meta, models_in,
                           resume_from, map_out, event_log);
    }
    if (localize->parsed()) {
      if (runs < 1) throw std::runtime_error("localize: --runs must be >= 1");
      return cmd_localize(config, sequence, map_in, probmap_in, plan_image,
                          plan_meta, gt_trajectory, runs, out,
                          dump_particles);
    }
    if (eval->parsed()) {
      if (!built.empty() && !gt_map.empty()) {
        return cmd_eval_map(config, built, gt_map, out_prefix);
      }
      if (!estimates.empty() && !gt_trajectory.empty()) {
        return cmd_eval_localization(estimates, gt_trajectory, out_prefix);
      }
      throw std::runtime_error(
          "eval: provide --built/--gt or --estimates/--gt-trajectory");
    }
  } catch (const std::exception& e) {
    log_error(e.what());
    return 1;
  }
  return 0;
}
