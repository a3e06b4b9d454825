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

#include "semloc/floor_plan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace semloc {

FloorPlan::FloorPlan(int rows, int cols, const FloorPlanMeta& meta,
                     CellState fill)
    : rows_(rows), cols_(cols), meta_(meta) {
  if (rows <= 0 || cols <= 0 || meta.resolution <= 0.0) {
    throw std::invalid_argument("FloorPlan: non-positive size or resolution");
  }
  cells_.assign(static_cast<std::size_t>(rows) * cols, fill);
}

Eigen::Vector2i FloorPlan::world_to_cell(const Eigen::Vector2d& p) const {
  const double dx = p.x() - meta_.origin.x;
  const double dy = p.y() - meta_.origin.y;
  return {static_cast<int>(std::floor(dy / meta_.resolution)),
          static_cast<int>(std::floor(dx / meta_.resolution))};
}

Eigen::Vector2d FloorPlan::cell_center(int row, int col) const {
  return {meta_.origin.x + (col + 0.5) * meta_.resolution,
          meta_.origin.y + (row + 0.5) * meta_.resolution};
}

bool FloorPlan::contains_world(const Eigen::Vector2d& p) const {
  const Eigen::Vector2i cell = world_to_cell(p);
  return in_bounds(cell.x(), cell.y());
}

CellState FloorPlan::state_at(const Eigen::Vector2d& p) const {
  const Eigen::Vector2i cell = world_to_cell(p);
  return at(cell.x(), cell.y());
}

std::size_t FloorPlan::count(CellState s) const {
  return static_cast<std::size_t>(std::count(cells_.begin(), cells_.end(), s));
}

RaycastResult raycast(const FloorPlan& plan, const Eigen::Vector2d& from,
                      const Eigen::Vector2d& to) {
  if (!plan.contains_world(from) || !plan.contains_world(to)) {
    throw std::out_of_range("raycast: endpoint outside the grid");
  }

  // Amanatides-Woo traversal over the cells crossed by the segment.
  Eigen::Vector2i cell = plan.world_to_cell(from);
  const Eigen::Vector2i goal = plan.world_to_cell(to);
  const Eigen::Vector2d dir = to - from;
  const double res = plan.resolution();

  const int step_col = dir.x() > 0.0 ? 1 : (dir.x() < 0.0 ? -1 : 0);
  const int step_row = dir.y() > 0.0 ? 1 : (dir.y() < 0.0 ? -1 : 0);

  const double inf = std::numeric_limits<double>::infinity();
  auto boundary = [&](int index, int step, double origin) {
    return origin + (index + (step > 0 ? 1 : 0)) * res;
  };
  double t_max_x =
      step_col != 0
          ? (boundary(cell.y(), step_col, plan.meta().origin.x) - from.x()) /
                dir.x()
          : inf;
  double t_max_y =
      step_row != 0
          ? (boundary(cell.x(), step_row, plan.meta().origin.y) - from.y()) /
                dir.y()
          : inf;
  const double t_delta_x = step_col != 0 ? res / std::abs(dir.x()) : inf;
  const double t_delta_y = step_row != 0 ? res / std::abs(dir.y()) : inf;

  while (true) {
    if (plan.at(cell.x(), cell.y()) == CellState::kOccupied) {
      return {true, plan.cell_center(cell.x(), cell.y())};
    }
    if (cell == goal) break;
    // Stop once the segment ends inside the current cell; floor rounding can
    // otherwise step diagonally past a goal lying on a cell corner.
    if (std::min(t_max_x, t_max_y) > 1.0) break;
    if (t_max_x < t_max_y) {
      t_max_x += t_delta_x;
      cell.y() += step_col;
    } else {
      t_max_y += t_delta_y;
      cell.x() += step_row;
    }
    if (!plan.in_bounds(cell.x(), cell.y())) break;
  }
  return {false, {}};
}

FloorPlan floorplan_from_image(const GrayImage& image,
                               const FloorPlanMeta& meta) {
  if (image.width <= 0 || image.height <= 0) {
    throw MalformedImage("floorplan image is empty");
  }
  FloorPlan plan(image.height, image.width, meta, CellState::kUnknown);
  for (int row = 0; row < image.height; ++row) {
    const int image_row = image.height - 1 - row;  // vertical flip
    for (int col = 0; col < image.width; ++col) {
      const double value = image.at(image_row, col) / 255.0;
      CellState s = CellState::kUnknown;
      if (value <= meta.occ_thresh) {
        s = CellState::kOccupied;
      } else if (value >= meta.free_thresh) {
        s = CellState::kFree;
      }
      plan.set(row, col, s);
    }
  }
  return plan;
}

FloorPlanMeta load_floorplan_meta(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw MissingMetadata("cannot open metadata file: " + path.string());
  }
  FloorPlanMeta meta;
  bool have_resolution = false;
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) continue;
    const std::string key = line.substr(0, colon);
    std::istringstream values(line.substr(colon + 1));
    if (key == "resolution") {
      values >> meta.resolution;
      have_resolution = true;
    } else if (key == "origin") {
      double x = 0.0, y = 0.0, theta = 0.0;
      values >> x >> y >> theta;
      meta.origin = Pose2(x, y, theta);
    } else if (key == "occ_thresh") {
      values >> meta.occ_thresh;
    } else if (key == "free_thresh") {
      values >> meta.free_thresh;
    }
  }
  if (!have_resolution || meta.resolution <= 0.0) {
    throw MissingMetadata("metadata missing a positive resolution: " +
                          path.string());
  }
  return meta;
}

FloorPlan load_floorplan(const std::filesystem::path& image_path,
                         const std::filesystem::path& meta_path) {
  return floorplan_from_image(load_gray_image(image_path),
                              load_floorplan_meta(meta_path));
}

void save_floorplan(const FloorPlan& plan,
                    const std::filesystem::path& image_path,
                    const std::filesystem::path& meta_path) {
  GrayImage image;
  image.width = plan.cols();
  image.height = plan.rows();
  image.pixels.resize(static_cast<std::size_t>(image.width) * image.height);
  for (int row = 0; row < plan.rows(); ++row) {
    const int image_row = plan.rows() - 1 - row;
    for (int col = 0; col < plan.cols(); ++col) {
      std::uint8_t v = 128;
      switch (plan.at(row, col)) {
        case CellState::kFree: v = 255; break;
        case CellState::kOccupied: v = 0; break;
        case CellState::kUnknown: v = 128; break;
      }
      image.at(image_row, col) = v;
    }
  }
  save_pgm(image, image_path);

  std::ofstream meta(meta_path);
  if (!meta) {
    throw std::runtime_error("cannot write metadata file: " +
                             meta_path.string());
  }
  meta << "resolution: " << plan.meta().resolution << "\n";
  meta << "origin: " << plan.meta().origin.x << " " << plan.meta().origin.y
       << " " << plan.meta().origin.theta << "\n";
  meta << "occ_thresh: " << plan.meta().occ_thresh << "\n";
  meta << "free_thresh: " << plan.meta().free_thresh << "\n";
}

}  // namespace semloc
