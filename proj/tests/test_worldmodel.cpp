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

#include <filesystem>
#include <random>

#include "semloc/floor_plan.hpp"
#include "semloc/noise_model.hpp"
#include "semloc/object_map.hpp"
#include "semloc/probability_map.hpp"
#include "semloc/room_map.hpp"

using namespace semloc;

namespace {

FloorPlanMeta meta_005() {
  FloorPlanMeta meta;
  meta.resolution = 0.05;
  return meta;
}

// Two 4 x 4 m rooms separated by a 0.1 m wall with a door of given width.
FloorPlan two_room_plan(double door_width) {
  FloorPlanMeta meta = meta_005();
  const int cols = static_cast<int>(std::round(8.3 / meta.resolution));
  const int rows = static_cast<int>(std::round(4.2 / meta.resolution));
  FloorPlan plan(rows, cols, meta, CellState::kOccupied);
  auto carve = [&](double x0, double y0, double x1, double y1) {
    for (int r = 0; r < plan.rows(); ++r) {
      for (int c = 0; c < plan.cols(); ++c) {
        const Eigen::Vector2d p = plan.cell_center(r, c);
        if (p.x() > x0 && p.x() < x1 && p.y() > y0 && p.y() < y1) {
          plan.set(r, c, CellState::kFree);
        }
      }
    }
  };
  carve(0.1, 0.1, 4.1, 4.1);
  carve(4.2, 0.1, 8.2, 4.1);
  carve(4.0, 2.1 - door_width / 2.0, 4.4, 2.1 + door_width / 2.0);
  return plan;
}

}  // namespace

TEST_CASE("floorplan_from_image classifies by thresholds") {
  GrayImage white;
  white.width = 10;
  white.height = 10;
  white.pixels.assign(100, 255);
  const FloorPlan free_plan = floorplan_from_image(white, meta_005());
  CHECK(free_plan.count(CellState::kFree) == 100);

  GrayImage black = white;
  black.pixels.assign(100, 0);
  const FloorPlan occ_plan = floorplan_from_image(black, meta_005());
  CHECK(occ_plan.count(CellState::kOccupied) == 100);
}

TEST_CASE("floorplan_from_image checkerboard at tight thresholds") {
  GrayImage img;
  img.width = 8;
  img.height = 8;
  img.pixels.resize(64);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) img.at(r, c) = ((r + c) % 2) ? 255 : 0;
  FloorPlanMeta meta = meta_005();
  meta.occ_thresh = 0.45;
  meta.free_thresh = 0.55;
  const FloorPlan plan = floorplan_from_image(img, meta);
  CHECK(plan.count(CellState::kFree) == 32);
  CHECK(plan.count(CellState::kOccupied) == 32);
  CHECK(plan.count(CellState::kUnknown) == 0);
}

TEST_CASE("floorplan save/load round trip") {
  FloorPlan plan = two_room_plan(0.7);
  const auto dir = std::filesystem::temp_directory_path() / "semloc_wm_test";
  std::filesystem::create_directories(dir);
  save_floorplan(plan, dir / "plan.pgm", dir / "plan.meta");
  const FloorPlan loaded = load_floorplan(dir / "plan.pgm", dir / "plan.meta");
  REQUIRE(loaded.rows() == plan.rows());
  REQUIRE(loaded.cols() == plan.cols());
  CHECK(loaded.count(CellState::kFree) == plan.count(CellState::kFree));
  CHECK(loaded.count(CellState::kOccupied) == plan.count(CellState::kOccupied));
  CHECK(loaded.resolution() == doctest::Approx(0.05));
}

TEST_CASE("load_floorplan_meta rejects a file without resolution") {
  const auto dir = std::filesystem::temp_directory_path() / "semloc_wm_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "bad.meta");
    out << "origin: 0 0 0\n";
  }
  CHECK_THROWS_AS(load_floorplan_meta(dir / "bad.meta"), MissingMetadata);
}

TEST_CASE("segment_rooms labels a single room") {
  FloorPlanMeta meta = meta_005();
  FloorPlan plan(84, 84, meta, CellState::kOccupied);
  for (int r = 2; r < 82; ++r)
    for (int c = 2; c < 82; ++c) plan.set(r, c, CellState::kFree);
  const RoomMap rooms = segment_rooms(plan);
  CHECK(rooms.room_count == 1);
  for (int r = 0; r < plan.rows(); ++r) {
    for (int c = 0; c < plan.cols(); ++c) {
      if (plan.at(r, c) == CellState::kFree) {
        CHECK(rooms.at(r, c) == 1);
      }
    }
  }
}

TEST_CASE("segment_rooms cuts a narrow door into two rooms") {
  // Door 0.7 m < 2 * erosion radius 0.4 m.
  const FloorPlan plan = two_room_plan(0.7);
  const RoomMap rooms = segment_rooms(plan);
  CHECK(rooms.room_count == 2);
  const int left = rooms.label_at(plan, {2.0, 2.0});
  const int right = rooms.label_at(plan, {6.0, 2.0});
  CHECK(left >= 1);
  CHECK(right >= 1);
  CHECK(left != right);
  // Re-dilation covers every free cell.
  for (int r = 0; r < plan.rows(); ++r) {
    for (int c = 0; c < plan.cols(); ++c) {
      if (plan.at(r, c) == CellState::kFree) CHECK(rooms.at(r, c) != 0);
    }
  }
}

TEST_CASE("segment_rooms of a fully occupied plan finds nothing") {
  const FloorPlan plan(40, 40, meta_005(), CellState::kOccupied);
  CHECK(segment_rooms(plan).room_count == 0);
}

TEST_CASE("segment_rooms labeling is deterministic") {
  const FloorPlan plan = two_room_plan(0.7);
  const RoomMap a = segment_rooms(plan);
  const RoomMap b = segment_rooms(plan);
  CHECK(a.labels == b.labels);

  // Canonical numbering: ids appear in first-seen row-major order.
  int seen_max = 0;
  for (const int label : a.labels) {
    if (label > seen_max) {
      CHECK(label == seen_max + 1);
      seen_max = label;
    }
  }
  CHECK(seen_max == a.room_count);
}

TEST_CASE("raycast in open space is clear") {
  const FloorPlan plan = two_room_plan(0.7);
  CHECK_FALSE(raycast(plan, {1.0, 1.0}, {3.0, 3.0}).blocked);
  CHECK_FALSE(raycast(plan, {1.0, 1.0}, {1.0, 1.0}).blocked);
}

TEST_CASE("raycast through the wall reports a hit near the wall") {
  const FloorPlan plan = two_room_plan(0.7);
  // Segment crossing the dividing wall away from the door (y = 0.5).
  const auto result = raycast(plan, {2.0, 0.5}, {6.0, 0.5});
  REQUIRE(result.blocked);
  // Analytic wall intersection: the wall spans x in [4.1, 4.2].
  CHECK(result.hit.x() == doctest::Approx(4.15).epsilon(0.05));
  CHECK(std::abs(result.hit.y() - 0.5) < 0.08);
}

TEST_CASE("raycast through the door is clear") {
  const FloorPlan plan = two_room_plan(0.7);
  CHECK_FALSE(raycast(plan, {2.0, 2.1}, {6.0, 2.1}).blocked);
}

TEST_CASE("raycast blocking is symmetric") {
  const FloorPlan plan = two_room_plan(0.7);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const Eigen::Vector2d a(0.2 + 7.9 * unit(rng), 0.2 + 3.8 * unit(rng));
    const Eigen::Vector2d b(0.2 + 7.9 * unit(rng), 0.2 + 3.8 * unit(rng));
    if (!plan.is_free(a) || !plan.is_free(b)) continue;
    const auto fwd = raycast(plan, a, b);
    const auto bwd = raycast(plan, b, a);
    CHECK(fwd.blocked == bwd.blocked);
    if (fwd.blocked) {
      CHECK(plan.state_at(fwd.hit) == CellState::kOccupied);
      CHECK(plan.state_at(bwd.hit) == CellState::kOccupied);
    }
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("raycast hits from both directions agree on a single wall") {
  const FloorPlan plan = two_room_plan(0.7);
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double diag = plan.resolution() * std::sqrt(2.0);
  int blocked_pairs = 0;
  for (int i = 0; i < 200; ++i) {
    // Left-room to right-room rays within 45 degrees of the wall normal, so
    // the entry cells on either wall face stay adjacent.
    const Eigen::Vector2d a(0.3 + 2.0 * unit(rng), 1.0 + 2.0 * unit(rng));
    const double dy = (a.x() < 4.0 ? 1.0 : 0.0) * 0.0;  // keep slope small
    const Eigen::Vector2d b(6.0 + 1.8 * unit(rng),
                            a.y() + dy + (unit(rng) - 0.5) * 1.0);
    if (!plan.is_free(a) || !plan.is_free(b)) continue;
    const auto fwd = raycast(plan, a, b);
    const auto bwd = raycast(plan, b, a);
    REQUIRE(fwd.blocked == bwd.blocked);
    if (fwd.blocked) {
      CHECK((fwd.hit - bwd.hit).norm() <= diag + 1e-12);
      ++blocked_pairs;
    }
  }
  CHECK(blocked_pairs > 50);
}

TEST_CASE("raycast rejects endpoints outside the grid") {
  const FloorPlan plan = two_room_plan(0.7);
  CHECK_THROWS_AS(raycast(plan, {-1.0, 0.5}, {1.0, 0.5}), std::out_of_range);
}

TEST_CASE("assign_rooms stamps room ids from footprint centers") {
  const FloorPlan plan = two_room_plan(0.7);
  const RoomMap rooms = segment_rooms(plan);
  ObjectMap map;
  map.add("table", {{2.0, 2.0, 0.4}, {1.0, 0.8, 0.6}, Eigen::Matrix3d::Identity()});
  map.add("sofa", {{6.0, 2.0, 0.4}, {1.0, 0.8, 0.6}, Eigen::Matrix3d::Identity()});
  assign_rooms(map, rooms, plan);
  CHECK(map.objects[0].room_id == rooms.label_at(plan, {2.0, 2.0}));
  CHECK(map.objects[1].room_id == rooms.label_at(plan, {6.0, 2.0}));
  CHECK(map.objects[0].room_id != map.objects[1].room_id);
}

TEST_CASE("object on an unlabeled cell gets room 0") {
  const FloorPlan plan = two_room_plan(0.7);
  const RoomMap rooms = segment_rooms(plan);
  ObjectMap map;
  // Center inside the wall band (never free, never labeled).
  map.add("box", {{4.15, 0.5, 0.4}, {0.2, 0.2, 0.2}, Eigen::Matrix3d::Identity()});
  assign_rooms(map, rooms, plan);
  CHECK(map.objects[0].room_id == 0);
}

TEST_CASE("ObjectGaussian density and covariance validity") {
  Eigen::Matrix2d cov;
  cov << 0.04, 0.0, 0.0, 0.01;
  const ObjectGaussian g(1, "table", {1.0, 2.0}, cov);
  CHECK(g.covariance_valid());
  CHECK(g.normalized_density({1.0, 2.0}) == doctest::Approx(1.0));
  CHECK(g.density({1.0, 2.0}) ==
        doctest::Approx(1.0 / (2.0 * kPi * std::sqrt(cov.determinant()))));
  // One Mahalanobis unit along x: offset = sqrt(0.04) = 0.2.
  CHECK(g.normalized_density({1.2, 2.0}) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  CHECK((g.covariance - g.covariance.transpose()).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("ObjectMap ids are unique and find works") {
  ObjectMap map;
  const int a_id = map.add("table", {{0, 0, 0.5}, {1, 1, 1},
                                     Eigen::Matrix3d::Identity()}).id;
  const int b_id = map.add("sofa", {{2, 0, 0.5}, {1, 1, 1},
                                    Eigen::Matrix3d::Identity()}).id;
  CHECK(a_id != b_id);
  CHECK(map.find(a_id) != nullptr);
  CHECK(map.find(a_id)->class_label == "table");
  CHECK(map.find(999) == nullptr);
  CHECK(map.class_dictionary().size() == 2);
}
