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

#include "semloc/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "semloc/polygon.hpp"

namespace semloc {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<SimClassSpec> default_class_catalogue() {
  return {
      {"table", {1.2, 0.75, 0.8}, 0.08},
      {"cabinet", {0.5, 1.8, 1.0}, 0.08},
      {"sofa", {0.9, 0.8, 1.9}, 0.08},
      {"sink", {0.5, 0.9, 0.6}, 0.05},
      {"plant", {0.4, 1.2, 0.4}, 0.10},
      {"board", {0.12, 1.0, 1.5}, 0.05},
      {"desk", {0.7, 0.75, 1.4}, 0.08},
      {"drawers", {0.5, 0.6, 0.5}, 0.05},
  };
}

ObjectMap SimWorld::gt_object_map() const {
  ObjectMap map;
  for (const GroundTruthObject& gt : gt_objects) {
    MapObject& obj = map.add(gt.class_label, gt.box);
    obj.id = gt.id;
    map.next_id = std::max(map.next_id, gt.id + 1);
  }
  assign_rooms(map, rooms, plan);
  return map;
}

namespace {

struct RoomLayout {
  int rooms_x;
  int rooms_y;
  double room_w;
  double room_d;
  double wall;

  // Interior rectangle of room (ix, iy).
  Eigen::Vector4d interior(int ix, int iy) const {
    const double x0 = wall + ix * (room_w + wall);
    const double y0 = wall + iy * (room_d + wall);
    return {x0, y0, x0 + room_w, y0 + room_d};
  }

  Eigen::Vector2d center(int ix, int iy) const {
    const Eigen::Vector4d r = interior(ix, iy);
    return {0.5 * (r[0] + r[2]), 0.5 * (r[1] + r[3])};
  }

  // Door between horizontally adjacent rooms (ix, iy) and (ix + 1, iy).
  Eigen::Vector2d door_center_h(int ix, int iy) const {
    const double x = wall + (ix + 1) * (room_w + wall) - 0.5 * wall;
    const Eigen::Vector4d r = interior(ix, iy);
    return {x, 0.5 * (r[1] + r[3])};
  }

  // Door between vertically adjacent rooms (ix, iy) and (ix, iy + 1).
  Eigen::Vector2d door_center_v(int ix, int iy) const {
    const double y = wall + (iy + 1) * (room_d + wall) - 0.5 * wall;
    const Eigen::Vector4d r = interior(ix, iy);
    return {0.5 * (r[0] + r[2]), y};
  }

  double total_w() const { return rooms_x * (room_w + wall) + wall; }
  double total_d() const { return rooms_y * (room_d + wall) + wall; }
};

RoomLayout layout_of(const WorldSpec& spec) {
  return {spec.rooms_x, spec.rooms_y, spec.room_width, spec.room_depth,
          spec.wall_thickness};
}

std::vector<Eigen::Vector2d> door_centers(const WorldSpec& spec) {
  const RoomLayout lay = layout_of(spec);
  std::vector<Eigen::Vector2d> doors;
  for (int iy = 0; iy < spec.rooms_y; ++iy) {
    for (int ix = 0; ix + 1 < spec.rooms_x; ++ix) {
      doors.push_back(lay.door_center_h(ix, iy));
    }
  }
  for (int iy = 0; iy + 1 < spec.rooms_y; ++iy) {
    for (int ix = 0; ix < spec.rooms_x; ++ix) {
      doors.push_back(lay.door_center_v(ix, iy));
    }
  }
  return doors;
}

FloorPlan build_plan(const WorldSpec& spec) {
  const RoomLayout lay = layout_of(spec);
  FloorPlanMeta meta;
  meta.resolution = spec.resolution;
  meta.origin = Pose2(0.0, 0.0, 0.0);

  const int cols = static_cast<int>(std::round(lay.total_w() / spec.resolution));
  const int rows = static_cast<int>(std::round(lay.total_d() / spec.resolution));
  FloorPlan plan(rows, cols, meta, CellState::kOccupied);

  auto carve_free = [&](double x0, double y0, double x1, double y1) {
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        const Eigen::Vector2d p = plan.cell_center(r, c);
        if (p.x() > x0 && p.x() < x1 && p.y() > y0 && p.y() < y1) {
          plan.set(r, c, CellState::kFree);
        }
      }
    }
  };

  for (int iy = 0; iy < spec.rooms_y; ++iy) {
    for (int ix = 0; ix < spec.rooms_x; ++ix) {
      const Eigen::Vector4d r = lay.interior(ix, iy);
      carve_free(r[0], r[1], r[2], r[3]);
    }
  }

  // Door openings through internal walls.
  const double half_door = 0.5 * spec.door_width;
  for (int iy = 0; iy < spec.rooms_y; ++iy) {
    for (int ix = 0; ix + 1 < spec.rooms_x; ++ix) {
      const Eigen::Vector2d d = lay.door_center_h(ix, iy);
      carve_free(d.x() - lay.wall, d.y() - half_door, d.x() + lay.wall,
                 d.y() + half_door);
    }
  }
  for (int iy = 0; iy + 1 < spec.rooms_y; ++iy) {
    for (int ix = 0; ix < spec.rooms_x; ++ix) {
      const Eigen::Vector2d d = lay.door_center_v(ix, iy);
      carve_free(d.x() - half_door, d.y() - lay.wall, d.x() + half_door,
                 d.y() + lay.wall);
    }
  }
  return plan;
}

bool footprint_in_free_space(const FloorPlan& plan, const Footprint2& fp) {
  if (!plan.is_free(fp.center)) return false;
  for (const Eigen::Vector2d& corner : fp.corners()) {
    if (!plan.is_free(corner)) return false;
    // Midpoint of center-corner diagonal, cheap interior probe.
    if (!plan.is_free(0.5 * (corner + fp.center))) return false;
  }
  return true;
}

// Distance from a point to a footprint rectangle (0 inside).
double point_footprint_distance(const Eigen::Vector2d& p,
                                const Footprint2& fp) {
  const Eigen::Matrix2d r = yaw_rotation2(fp.yaw);
  const Eigen::Vector2d local = r.transpose() * (p - fp.center);
  const double dx = std::max(0.0, std::abs(local.x()) - fp.extents.x());
  const double dy = std::max(0.0, std::abs(local.y()) - fp.extents.y());
  return std::hypot(dx, dy);
}

// Substantial visibility: the whole footprint needs wall-free rays from the
// camera. Cuts sliver sightings through door apertures, which a real
// detector would not fire on.
bool substantially_visible(const FloorPlan& plan,
                           const Eigen::Vector2d& cam_ground,
                           const Footprint2& fp) {
  if (!plan.contains_world(cam_ground)) return false;
  int clear = 0;
  int total = 0;
  auto probe = [&](const Eigen::Vector2d& p) {
    if (!plan.contains_world(p)) return;
    ++total;
    if (!raycast(plan, cam_ground, p).blocked) ++clear;
  };
  probe(fp.center);
  for (const Eigen::Vector2d& corner : fp.corners()) probe(corner);
  return total > 0 && clear == total;
}

}  // namespace

SimWorld generate_world(std::uint64_t seed, const WorldSpec& spec) {
  SimWorld world;
  world.plan = build_plan(spec);
  world.rooms = segment_rooms(world.plan);
  world.rates = spec.rates;
  world.max_range = spec.max_range;
  world.dim_noise_rel = spec.dim_noise_rel;
  world.yaw_noise = spec.yaw_noise;
  world.z_noise = spec.z_noise;

  const std::vector<SimClassSpec> catalogue =
      spec.classes.empty() ? default_class_catalogue() : spec.classes;

  // Class noise models: explicit ones win, otherwise isotropic sigma_center.
  if (!spec.class_noise.empty()) {
    world.class_noise = spec.class_noise;
  } else {
    const double var =
        std::max(spec.sigma_center * spec.sigma_center, 1e-6);
    for (const SimClassSpec& cls : catalogue) {
      ClassNoiseModel model;
      model.class_label = cls.name;
      model.mean = Eigen::Vector2d::Zero();
      model.covariance = var * Eigen::Matrix2d::Identity();
      model.sample_count = 0;
      model.peak_density = 1.0 / (2.0 * kPi * var);
      world.class_noise[cls.name] = model;
    }
  }

  const RoomLayout lay = layout_of(spec);
  const std::vector<Eigen::Vector2d> doors = door_centers(spec);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Footprint2> placed;
  int next_id = 1;
  for (int k = 0; k < spec.n_objects; ++k) {
    const SimClassSpec& cls = catalogue[k % catalogue.size()];
    bool done = false;
    for (int attempt = 0; attempt < 200 && !done; ++attempt) {
      const int ix = static_cast<int>(unit(rng) * spec.rooms_x) % spec.rooms_x;
      const int iy = static_cast<int>(unit(rng) * spec.rooms_y) % spec.rooms_y;
      const Eigen::Vector4d room = lay.interior(ix, iy);

      Eigen::Vector3d dims = cls.dims;
      for (int a = 0; a < 3; ++a) {
        dims[a] *= 1.0 + cls.dim_jitter * (2.0 * unit(rng) - 1.0);
      }

      const int side = static_cast<int>(unit(rng) * 4.0) % 4;
      // Long axis runs along the wall, with a small jitter. The footprint
      // length lies on the local y axis, so north/south walls take a 90
      // degree yaw.
      const double base_yaw = (side < 2) ? 0.5 * kPi : 0.0;
      const double yaw = base_yaw + 0.1 * (2.0 * unit(rng) - 1.0);

      OrientedBox3 box;
      box.dims = dims;
      box.rotation = yaw_rotation(yaw);
      box.center.z() = 0.5 * dims.y();

      // World-aligned half extents of the yawed footprint.
      Footprint2 fp = footprint(box);
      Eigen::Vector2d half(0.0, 0.0);
      for (const Eigen::Vector2d& c : fp.corners()) {
        half = half.cwiseMax(c.cwiseAbs());
      }

      const double gap = 0.05 + 0.10 * unit(rng);
      double cx = 0.0, cy = 0.0;
      const double lo_x = room[0] + half.x() + 0.2;
      const double hi_x = room[2] - half.x() - 0.2;
      const double lo_y = room[1] + half.y() + 0.2;
      const double hi_y = room[3] - half.y() - 0.2;
      if (hi_x <= lo_x || hi_y <= lo_y) continue;
      switch (side) {
        case 0:  // south wall
          cy = room[1] + half.y() + gap;
          cx = lo_x + (hi_x - lo_x) * unit(rng);
          break;
        case 1:  // north wall
          cy = room[3] - half.y() - gap;
          cx = lo_x + (hi_x - lo_x) * unit(rng);
          break;
        case 2:  // west wall
          cx = room[0] + half.x() + gap;
          cy = lo_y + (hi_y - lo_y) * unit(rng);
          break;
        default:  // east wall
          cx = room[2] - half.x() - gap;
          cy = lo_y + (hi_y - lo_y) * unit(rng);
          break;
      }
      box.center.x() = cx;
      box.center.y() = cy;
      fp = footprint(box);

      if (!footprint_in_free_space(world.plan, fp)) continue;

      // Keep door approaches and the room center clear for the robot.
      const Eigen::Vector2d room_center = lay.center(ix, iy);
      if (point_footprint_distance(room_center, fp) < 0.9) continue;
      bool blocks_door = false;
      for (const Eigen::Vector2d& door : doors) {
        if (point_footprint_distance(door, fp) < 0.8) {
          blocks_door = true;
          break;
        }
      }
      if (blocks_door) continue;

      // Collision-free against everything placed so far, with clearance.
      bool collides = false;
      Footprint2 inflated = fp;
      inflated.extents.array() += 0.15;
      for (const Footprint2& other : placed) {
        Footprint2 other_inflated = other;
        other_inflated.extents.array() += 0.15;
        if (intersection_area(inflated, other_inflated) > 1e-12) {
          collides = true;
          break;
        }
      }
      if (collides) continue;

      // Same-class instances keep their centers apart so that noisy
      // detections stay attributable.
      for (std::size_t i = 0; i < placed.size() && !collides; ++i) {
        if (world.gt_objects[i].class_label == cls.name &&
            (placed[i].center - fp.center).norm() < 1.5) {
          collides = true;
        }
      }
      if (collides) continue;

      GroundTruthObject gt;
      gt.id = next_id++;
      gt.class_label = cls.name;
      gt.box = box;
      world.gt_objects.push_back(gt);
      placed.push_back(fp);
      done = true;
    }
    if (!done) {
      throw PlacementFailure("generate_world: could not place object " +
                             std::to_string(k) + " of class " + cls.name);
    }
  }
  return world;
}

Pose3 default_camera_extrinsics() {
  // Optical axis along robot +x, camera 1.0 m above the base.
  Eigen::Matrix3d r;
  r << 0.0, -1.0, 0.0,   // x_cam = -y_robot (right)
       0.0, 0.0, -1.0,   // y_cam = -z_robot (down)
       1.0, 0.0, 0.0;    // z_cam = +x_robot (forward)
  const Eigen::Vector3d cam_in_robot(0.1, 0.0, 1.0);
  return {r, -(r * cam_in_robot)};
}

CameraModel default_camera_model() {
  return CameraModel::simple(320.0, 320.0, 320.0, 240.0, 640, 480);
}

Pose3 camera_pose_at(const Pose2& robot_pose, const Pose3& cam_in_robot) {
  return cam_in_robot * lift_to_3d(robot_pose).inverse();
}

std::vector<Detection3D> simulate_detections(const SimWorld& world,
                                             const Pose2& robot_pose,
                                             const CameraModel& cam,
                                             const Pose3& cam_in_robot,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const Pose3 cam_pose = camera_pose_at(robot_pose, cam_in_robot);
  const Eigen::Vector2d cam_ground =
      camera_position_in_world(cam_pose).head<2>();

  std::vector<Detection3D> detections;
  for (const GroundTruthObject& gt : world.gt_objects) {
    const Eigen::Vector2d target = gt.box.center.head<2>();
    if ((target - cam_ground).norm() > world.max_range) continue;
    const BoxProjection proj = project_box_to_image(gt.box, cam_pose, cam);
    if (proj.in_frustum_fraction <= 0.0) continue;
    if (!substantially_visible(world.plan, cam_ground, footprint(gt.box))) {
      continue;
    }
    if (unit(rng) > world.rates.p_detect) continue;

    const auto noise_it = world.class_noise.find(gt.class_label);

    OrientedBox3 noisy = gt.box;
    if (noise_it != world.class_noise.end()) {
      const ClassNoiseModel& model = noise_it->second;
      const Eigen::Matrix2d chol = model.covariance.llt().matrixL();
      const Eigen::Vector2d local =
          model.mean + chol * Eigen::Vector2d(gauss(rng), gauss(rng));
      const Eigen::Matrix2d r2 = yaw_rotation2(box_yaw(gt.box.rotation));
      noisy.center.head<2>() += r2 * local;
    }
    if (world.z_noise > 0.0) noisy.center.z() += world.z_noise * gauss(rng);
    if (world.dim_noise_rel > 0.0) {
      for (int a = 0; a < 3; ++a) {
        noisy.dims[a] *= std::max(0.2, 1.0 + world.dim_noise_rel * gauss(rng));
      }
    }
    if (world.yaw_noise > 0.0) {
      noisy.rotation =
          yaw_rotation(world.yaw_noise * gauss(rng)) * noisy.rotation;
    }

    Detection3D det;
    det.class_label = gt.class_label;
    det.confidence = 0.6 + 0.4 * unit(rng);
    det.box.center = cam_pose.apply(noisy.center);
    det.box.dims = noisy.dims;
    det.box.rotation = cam_pose.rotation * noisy.rotation;
    detections.push_back(std::move(det));
  }

  // False positives, uniform over the forward field of view.
  if (world.rates.fp_rate > 0.0) {
    std::poisson_distribution<int> poisson(world.rates.fp_rate);
    const int count = poisson(rng);
    const std::vector<SimClassSpec> catalogue = default_class_catalogue();
    std::set<std::string> world_classes;
    for (const GroundTruthObject& gt : world.gt_objects) {
      world_classes.insert(gt.class_label);
    }
    const double half_fov = std::atan2(0.5 * cam.image_width,
                                       cam.intrinsics(0, 0));
    for (int i = 0; i < count; ++i) {
      const double bearing = (2.0 * unit(rng) - 1.0) * 0.8 * half_fov;
      const double range = 1.5 + unit(rng) * (0.7 * world.max_range - 1.5);
      const double heading = robot_pose.theta + bearing;
      const Eigen::Vector2d p(robot_pose.x + range * std::cos(heading),
                              robot_pose.y + range * std::sin(heading));
      if (!world.plan.is_free(p)) continue;
      // Hallucinations sit on visible image content, never behind walls.
      if (!world.plan.contains_world(cam_ground) ||
          raycast(world.plan, cam_ground, p).blocked) {
        continue;
      }

      // Random class drawn from the classes present in the world.
      std::size_t pick = static_cast<std::size_t>(unit(rng) *
                                                  world_classes.size()) %
                         world_classes.size();
      auto it = world_classes.begin();
      std::advance(it, pick);
      const SimClassSpec* cls = nullptr;
      for (const SimClassSpec& c : catalogue) {
        if (c.name == *it) cls = &c;
      }
      if (cls == nullptr) continue;

      OrientedBox3 box;
      box.dims = cls->dims;
      box.rotation = yaw_rotation((2.0 * unit(rng) - 1.0) * kPi);
      box.center = {p.x(), p.y(), 0.5 * cls->dims.y()};

      Detection3D det;
      det.class_label = *it;
      det.confidence = 0.3 + 0.4 * unit(rng);
      det.box.center = cam_pose.apply(box.center);
      det.box.dims = box.dims;
      det.box.rotation = cam_pose.rotation * box.rotation;
      detections.push_back(std::move(det));
    }
  }
  return detections;
}

SimTrajectory waypoint_trajectory(const std::vector<Eigen::Vector2d>& waypoints,
                                  double speed, double turn_rate, double dt,
                                  const Pose2& start) {
  SimTrajectory traj;
  Pose2 pose = start;
  double t = 0.0;
  traj.poses.push_back({t, pose});

  for (const Eigen::Vector2d& target : waypoints) {
    int guard = 0;
    while ((target - Eigen::Vector2d(pose.x, pose.y)).norm() > 0.08 &&
           guard++ < 100000) {
      const Eigen::Vector2d to_target =
          target - Eigen::Vector2d(pose.x, pose.y);
      const double desired = std::atan2(to_target.y(), to_target.x());
      const double err = angle_diff(desired, pose.theta);
      double dtheta = 0.0;
      double step = 0.0;
      if (std::abs(err) > 0.15) {
        dtheta = std::clamp(err, -turn_rate * dt, turn_rate * dt);
      } else {
        dtheta = std::clamp(err, -turn_rate * dt, turn_rate * dt);
        step = std::min(speed * dt, to_target.norm());
      }
      pose = Pose2(pose.x + step * std::cos(pose.theta),
                   pose.y + step * std::sin(pose.theta), pose.theta + dtheta);
      t += dt;
      traj.poses.push_back({t, pose});
    }
  }
  return traj;
}

std::vector<Eigen::Vector2d> room_tour_waypoints(const SimWorld& /*world*/,
                                                 const WorldSpec& spec) {
  const RoomLayout lay = layout_of(spec);

  // Room visit order: serpentine over the grid, then back to the start so
  // every room is re-entered once and stale map objects get purged.
  std::vector<std::pair<int, int>> order;
  for (int iy = 0; iy < spec.rooms_y; ++iy) {
    const bool reverse = (iy % 2) == 1;
    for (int k = 0; k < spec.rooms_x; ++k) {
      order.emplace_back(reverse ? spec.rooms_x - 1 - k : k, iy);
    }
  }
  const std::size_t forward = order.size();
  for (std::size_t k = forward - 1; k-- > 0;) order.push_back(order[k]);

  std::vector<Eigen::Vector2d> waypoints;
  int prev_ix = -1, prev_iy = -1;
  for (std::size_t stop = 0; stop < order.size(); ++stop) {
    const auto [ix, iy] = order[stop];
    if (prev_ix >= 0) {
      // Dogleg through the shared door: oblique approach keeps the forward
      // camera off the door axis until the crossing itself.
      Eigen::Vector2d door;
      Eigen::Vector2d normal;
      if (prev_iy == iy) {
        door = lay.door_center_h(std::min(prev_ix, ix), iy);
        normal = {ix > prev_ix ? 1.0 : -1.0, 0.0};
      } else {
        door = lay.door_center_v(ix, std::min(prev_iy, iy));
        normal = {0.0, iy > prev_iy ? 1.0 : -1.0};
      }
      const Eigen::Vector2d lateral(-normal.y(), normal.x());
      waypoints.push_back(door - 1.2 * normal + 0.9 * lateral);
      waypoints.push_back(door);
      waypoints.push_back(door + 1.2 * normal - 0.9 * lateral);
    }
    const Eigen::Vector2d c = lay.center(ix, iy);
    waypoints.push_back(c);
    if (stop < forward) {
      // A loop inside the room sweeps the camera around on the first visit.
      waypoints.push_back(c + Eigen::Vector2d(1.1, 0.7));
      waypoints.push_back(c + Eigen::Vector2d(-1.1, 0.7));
      waypoints.push_back(c + Eigen::Vector2d(-1.1, -0.7));
      waypoints.push_back(c + Eigen::Vector2d(1.1, -0.7));
      waypoints.push_back(c);
    } else {
      // A shorter sweep on the revisit keeps the purge rule fed.
      waypoints.push_back(c + Eigen::Vector2d(0.9, 0.6));
      waypoints.push_back(c + Eigen::Vector2d(-0.9, -0.6));
      waypoints.push_back(c);
    }
    prev_ix = ix;
    prev_iy = iy;
  }
  return waypoints;
}

std::vector<SequenceEvent> corrupt_odometry(const SimTrajectory& traj,
                                            const Eigen::Vector3d& sigma,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<SequenceEvent> events;
  for (std::size_t i = 1; i < traj.poses.size(); ++i) {
    const Pose2 delta =
        traj.poses[i - 1].pose.relative_to(traj.poses[i].pose);
    const double trans = delta.translation().norm();
    const double rot = std::abs(delta.theta);

    Pose2 noisy = delta;
    if (trans > 0.0 || rot > 0.0) {
      const double s_xy = std::max(trans, 0.1);
      const double s_t = std::max(rot, 0.1);
      noisy = Pose2(delta.x + sigma.x() * s_xy * gauss(rng),
                    delta.y + sigma.y() * s_xy * gauss(rng),
                    delta.theta + sigma.z() * s_t * gauss(rng));
    }

    SequenceEvent event;
    event.type = SequenceEvent::Type::kOdom;
    event.timestamp_s = traj.poses[i].timestamp_s;
    event.odom_delta = noisy;
    events.push_back(event);
  }
  return events;
}

std::vector<SequenceEvent> build_sequence(const SimWorld& world,
                                          const SimTrajectory& traj,
                                          const CameraModel& cam,
                                          const Pose3& cam_in_robot,
                                          const Eigen::Vector3d& odom_sigma,
                                          int obs_every, std::uint64_t seed) {
  const std::vector<SequenceEvent> odom =
      corrupt_odometry(traj, odom_sigma, derive_seed(seed, 0));

  std::vector<SequenceEvent> events;
  events.reserve(traj.poses.size() + traj.poses.size() / obs_every + 1);
  for (std::size_t i = 0; i < traj.poses.size(); ++i) {
    if (i > 0) events.push_back(odom[i - 1]);
    if (i % obs_every == 0) {
      SequenceEvent obs;
      obs.type = SequenceEvent::Type::kObs;
      obs.timestamp_s = traj.poses[i].timestamp_s;
      obs.observation.timestamp_s = traj.poses[i].timestamp_s;
      obs.observation.cam_pose_in_robot = cam_in_robot;
      obs.observation.detections = simulate_detections(
          world, traj.poses[i].pose, cam, cam_in_robot, derive_seed(seed, i + 1));
      events.push_back(std::move(obs));
    }
  }
  return events;
}

std::vector<DetectionFrame> build_mapping_stream(const SimWorld& world,
                                                 const SimTrajectory& traj,
                                                 const CameraModel& cam,
                                                 const Pose3& cam_in_robot,
                                                 std::uint64_t seed) {
  std::vector<DetectionFrame> frames;
  frames.reserve(traj.poses.size());
  for (std::size_t i = 0; i < traj.poses.size(); ++i) {
    DetectionFrame frame;
    frame.frame_id = static_cast<int>(i);
    frame.timestamp_s = traj.poses[i].timestamp_s;
    frame.robot_pose = traj.poses[i].pose;
    frame.cam_pose = camera_pose_at(traj.poses[i].pose, cam_in_robot);
    frame.detections = simulate_detections(world, traj.poses[i].pose, cam,
                                           cam_in_robot, derive_seed(seed, i));
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace semloc
