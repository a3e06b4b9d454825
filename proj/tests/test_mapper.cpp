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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "semloc/hungarian.hpp"
#include "semloc/mapper.hpp"
#include "semloc/simulator.hpp"

using namespace semloc;

namespace {

MapObject object_at(const std::string& cls, double x, double y,
                    const Eigen::Vector3d& dims = {1.0, 1.0, 1.0},
                    double yaw = 0.0) {
  MapObject obj;
  obj.class_label = cls;
  obj.box = {{x, y, 0.5 * dims.y()}, dims, yaw_rotation(yaw)};
  return obj;
}

// Two 4 x 4 m rooms joined by a 0.9 m door, via the simulator builder.
struct MapperFixture {
  WorldSpec spec;
  SimWorld world;
  CameraModel cam = default_camera_model();
  Pose3 extrinsics = default_camera_extrinsics();

  MapperFixture() {
    spec.rooms_x = 2;
    spec.rooms_y = 1;
    spec.room_width = 4.0;
    spec.room_depth = 4.0;
    spec.n_objects = 0;
    world = generate_world(1, spec);
  }

  Mapper make_mapper(MapperConfig config = {}) const {
    return Mapper(world.plan, world.rooms, {}, cam, config);
  }

  Detection3D detection_of(const OrientedBox3& world_box,
                           const std::string& cls,
                           const Pose2& robot_pose) const {
    const Pose3 cam_pose = camera_pose_at(robot_pose, extrinsics);
    Detection3D det;
    det.class_label = cls;
    det.box.center = cam_pose.apply(world_box.center);
    det.box.dims = world_box.dims;
    det.box.rotation = cam_pose.rotation * world_box.rotation;
    return det;
  }
};

}  // namespace

TEST_CASE("solve_assignment equals brute force on random instances") {
  std::mt19937_64 rng(61);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int rows = 1 + static_cast<int>(unit(rng) * 7.0);
    const int cols = 1 + static_cast<int>(unit(rng) * 7.0);
    Eigen::MatrixXd cost(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        cost(i, j) = unit(rng) < 0.15 ? 1e6 : unit(rng);

    const auto assignment = solve_assignment(cost);
    const double solver_cost = assignment_cost(cost, assignment);
    const double brute = oracles::brute_force_assignment_cost(cost);
    CHECK(solver_cost == doctest::Approx(brute).epsilon(1e-9));

    // Every index of the smaller side is assigned, no column reused.
    std::vector<bool> used(cols, false);
    int assigned = 0;
    for (int j : assignment) {
      if (j < 0) continue;
      CHECK_FALSE(used[j]);
      used[j] = true;
      ++assigned;
    }
    CHECK(assigned == std::min(rows, cols));
  }
}

TEST_CASE("association_cost of identical boxes at the model mean is zero") {
  std::map<std::string, ClassNoiseModel> models;
  ClassNoiseModel m;
  m.class_label = "table";
  m.mean = Eigen::Vector2d::Zero();
  m.covariance = 0.04 * Eigen::Matrix2d::Identity();
  models["table"] = m;

  const MapObject a = object_at("table", 2.0, 3.0);
  const auto cost = association_cost(a, a, models);
  REQUIRE(cost.has_value());
  CHECK(*cost == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("association_cost is Forbidden across classes") {
  CHECK_FALSE(association_cost(object_at("table", 0, 0),
                               object_at("sofa", 0, 0), {})
                  .has_value());
}

TEST_CASE("association_cost composes IoU and center terms") {
  std::map<std::string, ClassNoiseModel> models;
  ClassNoiseModel m;
  m.class_label = "table";
  m.mean = Eigen::Vector2d::Zero();
  m.covariance = 0.04 * Eigen::Matrix2d::Identity();
  models["table"] = m;

  // Disjoint boxes whose centers sit one Mahalanobis unit apart.
  const MapObject a = object_at("table", 0.0, 0.0, {0.1, 0.1, 0.1});
  const MapObject b = object_at("table", 0.2, 0.0, {0.1, 0.1, 0.1});
  const auto cost = association_cost(a, b, models);
  REQUIRE(cost.has_value());
  const double expected = 0.5 * (1.0 + (1.0 - std::exp(-0.5)));
  CHECK(*cost == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("association_cost without a model falls back to IoU only") {
  const MapObject a = object_at("table", 0.0, 0.0);
  const MapObject b = object_at("table", 0.0, 0.0);
  const auto cost = association_cost(a, b, {});
  REQUIRE(cost.has_value());
  CHECK(*cost == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("associate pairs below tau_cost and demotes the rest") {
  const std::vector<MapObject> targets = {object_at("table", 0.0, 0.0)};
  const std::vector<MapObject> close = {object_at("table", 0.05, 0.0)};
  const auto good = associate(targets, close, {}, 0.5);
  REQUIRE(good.pairs.size() == 1);
  CHECK(good.pairs[0] == std::pair<std::size_t, std::size_t>{0, 0});

  const std::vector<MapObject> far = {object_at("table", 3.0, 0.0)};
  const auto bad = associate(targets, far, {}, 0.5);
  CHECK(bad.pairs.empty());
  CHECK(bad.unmatched_targets == std::vector<std::size_t>{0});
  CHECK(bad.unmatched_candidates == std::vector<std::size_t>{0});
}

TEST_CASE("merge_objects averages by n_match and sums the counters") {
  MapObject target = object_at("table", 0.0, 0.0);
  MapObject pred = object_at("table", 1.0, 0.0);
  merge_objects(target, pred);
  CHECK(target.box.center.x() == doctest::Approx(0.5));
  CHECK(target.n_match == 2);

  MapObject heavy = object_at("table", 0.0, 0.0, {1.0, 1.0, 1.0});
  heavy.n_match = 3;
  MapObject light = object_at("table", 0.0, 0.0, {2.0, 2.0, 2.0});
  merge_objects(heavy, light);
  CHECK(heavy.box.dims.x() == doctest::Approx(1.25));
  CHECK(heavy.box.dims.y() == doctest::Approx(1.25));
  CHECK(heavy.box.dims.z() == doctest::Approx(1.25));
  CHECK(heavy.n_match == 4);
}

TEST_CASE("merge_objects keeps identical rotations fixed") {
  MapObject target = object_at("table", 0.0, 0.0, {1, 1, 1}, 0.7);
  MapObject pred = object_at("table", 0.2, 0.0, {1, 1, 1}, 0.7);
  const Eigen::Matrix3d before = target.box.rotation;
  merge_objects(target, pred);
  CHECK((target.box.rotation - before).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("merge_objects center/dims accumulation is order independent") {
  std::mt19937_64 rng(67);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const MapObject b = object_at("x", unit(rng), unit(rng));
    const MapObject c = object_at("x", unit(rng), unit(rng));

    MapObject first = object_at("x", unit(rng), unit(rng));
    MapObject second = first;
    MapObject bb = b, cc = c;

    merge_objects(first, bb);
    merge_objects(first, cc);
    merge_objects(second, cc);
    merge_objects(second, bb);
    CHECK((first.box.center - second.box.center).norm() < 1e-9);
    CHECK((first.box.dims - second.box.dims).norm() < 1e-9);
    CHECK(first.n_match == second.n_match);
  }
}

TEST_CASE("ingest_frame creates objects from an empty local map") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();
  const Pose2 robot(1.0, 2.0, 0.0);

  const OrientedBox3 t1{{3.0, 1.5, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};
  const OrientedBox3 t2{{3.0, 2.8, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};
  mapper.ingest_frame({fx.detection_of(t1, "table", robot),
                       fx.detection_of(t2, "sofa", robot)},
                      robot, camera_pose_at(robot, fx.extrinsics));

  const auto& local = mapper.local_map().objects.objects;
  REQUIRE(local.size() == 2);
  CHECK(local[0].n_match == 1);
  CHECK(local[1].n_match == 1);
  // Detections were given in the camera frame; the local map is world frame.
  CHECK((local[0].box.center - t1.center).norm() < 1e-9);
}

TEST_CASE("re-observing one object across 5 frames accumulates n_match") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();
  const Pose2 robot(1.0, 2.0, 0.0);
  const OrientedBox3 t1{{3.0, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};

  for (int i = 0; i < 5; ++i) {
    mapper.ingest_frame({fx.detection_of(t1, "table", robot)}, robot,
                        camera_pose_at(robot, fx.extrinsics));
  }
  REQUIRE(mapper.local_map().objects.objects.size() == 1);
  CHECK(mapper.local_map().objects.objects[0].n_match == 5);

  mapper.integrate(robot);
  REQUIRE(mapper.global_map().objects.size() == 1);
  CHECK(mapper.global_map().objects[0].n_match == 5);
  CHECK(mapper.local_map().objects.objects.empty());
}

TEST_CASE("active object with no detection gains n_skip") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();
  const Pose2 robot(1.0, 2.0, 0.0);
  const OrientedBox3 t1{{3.0, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};

  mapper.ingest_frame({fx.detection_of(t1, "table", robot)}, robot,
                      camera_pose_at(robot, fx.extrinsics));
  mapper.ingest_frame({}, robot, camera_pose_at(robot, fx.extrinsics));
  REQUIRE(mapper.local_map().objects.objects.size() == 1);
  CHECK(mapper.local_map().objects.objects[0].n_skip == 1);
}

TEST_CASE("integration fires on the translation threshold") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();
  const OrientedBox3 t1{{3.0, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};

  Pose2 robot(1.0, 2.0, 0.0);
  mapper.ingest_frame({fx.detection_of(t1, "table", robot)}, robot,
                      camera_pose_at(robot, fx.extrinsics));

  // Below both Table-style thresholds: still local.
  robot = Pose2(1.05, 2.0, 0.01);
  mapper.ingest_frame({fx.detection_of(t1, "table", robot)}, robot,
                      camera_pose_at(robot, fx.extrinsics));
  CHECK(mapper.global_map().objects.empty());
  CHECK_FALSE(mapper.local_map().objects.objects.empty());

  // 0.15 m beyond the anchor: integration fires.
  robot = Pose2(1.15, 2.0, 0.0);
  mapper.ingest_frame({fx.detection_of(t1, "table", robot)}, robot,
                      camera_pose_at(robot, fx.extrinsics));
  CHECK(mapper.global_map().objects.size() == 1);
  CHECK(mapper.local_map().objects.objects.empty());
}

TEST_CASE("integration fires on the rotation threshold") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();
  const OrientedBox3 t1{{3.0, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};

  Pose2 robot(1.0, 2.0, 0.0);
  mapper.ingest_frame({fx.detection_of(t1, "table", robot)}, robot,
                      camera_pose_at(robot, fx.extrinsics));
  robot = Pose2(1.0, 2.0, 0.05);  // 0.05 rad > 0.03 rad
  mapper.ingest_frame({fx.detection_of(t1, "table", robot)}, robot,
                      camera_pose_at(robot, fx.extrinsics));
  CHECK(mapper.global_map().objects.size() == 1);
}

TEST_CASE("cross-room sightings are added, not merged against other rooms") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();

  // Object in the right room (x > 4.2); robot first maps it from inside.
  const OrientedBox3 t1{{6.5, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};
  const Pose2 in_room2(5.0, 2.0, 0.0);
  mapper.ingest_frame({fx.detection_of(t1, "table", in_room2)}, in_room2,
                      camera_pose_at(in_room2, fx.extrinsics));
  mapper.integrate(in_room2);
  REQUIRE(mapper.global_map().objects.size() == 1);
  const int room2 = mapper.global_map().objects[0].room_id;
  CHECK(room2 != 0);

  // Same object seen from the left room through the door: the room gate
  // blocks the merge and a duplicate appears, tagged with its own room.
  const Pose2 in_room1(3.0, 2.0, 0.0);
  const int room1 = mapper.rooms().label_at(mapper.plan(), {3.0, 2.0});
  REQUIRE(room1 != room2);
  mapper.ingest_frame({fx.detection_of(t1, "table", in_room1)}, in_room1,
                      camera_pose_at(in_room1, fx.extrinsics));
  mapper.integrate(in_room1);
  REQUIRE(mapper.global_map().objects.size() == 2);
  CHECK(mapper.global_map().objects[1].room_id == room2);
}

TEST_CASE("purge removes starved objects and keeps n_skip zero ones") {
  MapperConfig config;
  config.tau_purge = 0.2;

  ObjectMap map;
  MapObject& kept = map.add("a", {{0, 0, 0.5}, {1, 1, 1},
                                  Eigen::Matrix3d::Identity()});
  kept.n_match = 10;
  kept.n_skip = 1;  // ratio 10
  MapObject& starved = map.add("b", {{2, 0, 0.5}, {1, 1, 1},
                                     Eigen::Matrix3d::Identity()});
  starved.n_match = 1;
  starved.n_skip = 10;  // ratio 0.1
  MapObject& untouched = map.add("c", {{4, 0, 0.5}, {1, 1, 1},
                                       Eigen::Matrix3d::Identity()});
  untouched.n_match = 1;
  untouched.n_skip = 0;  // never purged

  purge(map, config);
  REQUIRE(map.objects.size() == 2);
  CHECK(map.objects[0].class_label == "a");
  CHECK(map.objects[1].class_label == "c");
}

TEST_CASE("a displaced detection near a claimed object does not spawn") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();
  const Pose2 robot(1.0, 2.0, 0.0);
  const OrientedBox3 t1{{3.0, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};
  OrientedBox3 t1_shifted = t1;
  t1_shifted.center.x() += 0.1;

  mapper.ingest_frame({fx.detection_of(t1, "table", robot)}, robot,
                      camera_pose_at(robot, fx.extrinsics));
  REQUIRE(mapper.local_map().objects.objects.size() == 1);

  // Second frame with two near-identical detections of the object (e.g. a
  // false positive next to the real hit): one merges, the displaced one is
  // explained by the same object and must not spawn a twin.
  mapper.ingest_frame({fx.detection_of(t1, "table", robot),
                       fx.detection_of(t1_shifted, "table", robot)},
                      robot, camera_pose_at(robot, fx.extrinsics));
  CHECK(mapper.local_map().objects.objects.size() == 1);
  CHECK(mapper.local_map().objects.objects[0].n_match == 2);
}

TEST_CASE("consolidate_room merges same-instance twins in the visited room") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();

  ObjectMap& global = mapper.mutable_global_map();
  MapObject& a = global.add(
      "table", {{3.0, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)});
  a.n_match = 10;
  a.room_id = 1;
  MapObject& b = global.add(
      "table", {{3.02, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)});
  b.n_match = 4;
  b.room_id = 1;
  MapObject& other_room = global.add(
      "table", {{3.02, 2.0, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)});
  other_room.n_match = 2;
  other_room.room_id = 2;

  mapper.consolidate_room(1);
  REQUIRE(mapper.global_map().objects.size() == 2);
  CHECK(mapper.global_map().objects[0].n_match == 14);  // counters conserved
  CHECK(mapper.global_map().objects[1].room_id == 2);   // other room untouched
}

TEST_CASE("n_match is conserved through ingest and integrate") {
  const MapperFixture fx;
  Mapper mapper = fx.make_mapper();
  const OrientedBox3 t1{{3.0, 1.5, 0.4}, {1.0, 0.8, 0.6}, yaw_rotation(0.0)};
  const OrientedBox3 t2{{3.0, 2.8, 0.4}, {0.6, 0.8, 0.6}, yaw_rotation(0.0)};

  int detections_fed = 0;
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Pose2 robot(1.0, 2.0, 0.0);
  for (int i = 0; i < 30; ++i) {
    std::vector<Detection3D> dets;
    if (unit(rng) < 0.8) {
      dets.push_back(fx.detection_of(t1, "table", robot));
      ++detections_fed;
    }
    if (unit(rng) < 0.8) {
      dets.push_back(fx.detection_of(t2, "sofa", robot));
      ++detections_fed;
    }
    mapper.ingest_frame(dets, robot, camera_pose_at(robot, fx.extrinsics));
    robot = Pose2(1.0 + 0.02 * (i + 1), 2.0, 0.0);
  }
  mapper.integrate(robot);

  int total = 0;
  for (const MapObject& obj : mapper.global_map().objects) {
    total += obj.n_match;
  }
  CHECK(total == detections_fed);
  CHECK(mapper.global_map().objects.size() == 2);
}
