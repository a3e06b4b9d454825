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

#ifndef SEMLOC_FLOOR_PLAN_HPP_
#define SEMLOC_FLOOR_PLAN_HPP_

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "semloc/io/image.hpp"
#include "semloc/pose.hpp"

namespace semloc {

enum class CellState : std::uint8_t { kFree, kOccupied, kUnknown };

struct MissingMetadata : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FloorPlanMeta {
  double resolution = 0.05;       // meters per cell
  Pose2 origin;                   // world pose of cell (0, 0)
  double occ_thresh = 0.35;       // normalized pixel value <= -> occupied
  double free_thresh = 0.65;      // normalized pixel value >= -> free
};

// 2D occupancy grid of permanent structure. Cell (row, col) covers the world
// square with corner origin + resolution * (col, row); rows grow with +y.
class FloorPlan {
 public:
  FloorPlan() = default;
  FloorPlan(int rows, int cols, const FloorPlanMeta& meta,
            CellState fill = CellState::kFree);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double resolution() const { return meta_.resolution; }
  const FloorPlanMeta& meta() const { return meta_; }

  CellState at(int row, int col) const { return cells_[row * cols_ + col]; }
  void set(int row, int col, CellState s) { cells_[row * cols_ + col] = s; }

  bool in_bounds(int row, int col) const {
    return row >= 0 && row < rows_ && col >= 0 && col < cols_;
  }

  // World <-> grid. Cells are indexed by the cell containing the point.
  Eigen::Vector2i world_to_cell(const Eigen::Vector2d& p) const;
  Eigen::Vector2d cell_center(int row, int col) const;

  bool contains_world(const Eigen::Vector2d& p) const;
  CellState state_at(const Eigen::Vector2d& p) const;

  bool is_free(const Eigen::Vector2d& p) const {
    return contains_world(p) && state_at(p) == CellState::kFree;
  }

  std::size_t count(CellState s) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  FloorPlanMeta meta_;
  std::vector<CellState> cells_;
};

struct RaycastResult {
  bool blocked = false;
  Eigen::Vector2d hit = Eigen::Vector2d::Zero();  // occupied cell center
};

// Walks the grid cells crossed by the segment from `from` to `to` and
// reports the first occupied cell. Throws std::out_of_range when either
// endpoint lies outside the grid.
RaycastResult raycast(const FloorPlan& plan, const Eigen::Vector2d& from,
                      const Eigen::Vector2d& to);

// Classifies a grayscale raster into a FloorPlan using the meta thresholds.
// Pixel row 0 is the top of the image and maps to the highest grid row, the
// usual image-versus-map vertical flip.
FloorPlan floorplan_from_image(const GrayImage& image,
                               const FloorPlanMeta& meta);

FloorPlan load_floorplan(const std::filesystem::path& image_path,
                         const std::filesystem::path& meta_path);

FloorPlanMeta load_floorplan_meta(const std::filesystem::path& path);

void save_floorplan(const FloorPlan& plan,
                    const std::filesystem::path& image_path,
                    const std::filesystem::path& meta_path);

}  // namespace semloc

#endif  // SEMLOC_FLOOR_PLAN_HPP_
