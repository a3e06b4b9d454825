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

#ifndef SEMLOC_METRICS_HPP_
#define SEMLOC_METRICS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semloc/object_map.hpp"
#include "semloc/streams.hpp"

namespace semloc {

struct ClassQuality {
  std::string class_label;
  double iou = 0.0;        // mean over matched pairs
  double precision = 0.0;  // matches / built instances
  double recall = 0.0;     // matches / ground-truth instances
  int n_built = 0;
  int n_gt = 0;
  int n_matched = 0;
};

struct MapQualityReport {
  std::vector<ClassQuality> per_class;  // sorted by class name
  double avg_iou = 0.0;                 // unweighted class means
  double avg_precision = 0.0;
  double avg_recall = 0.0;
  std::vector<std::pair<int, int>> matched_pairs;  // (built id, gt id)
};

struct MapQualityConfig {
  double match_iou_min = 0.0;
  double delta = 1.0;  // max 2D center distance for a match
};

// Greedy same-class matching by descending 3D IoU within center distance
// delta; per-class IoU / precision / recall, averaged unweighted over
// classes (precision over classes with built instances, recall over classes
// with ground-truth instances).
MapQualityReport map_quality(const ObjectMap& built, const ObjectMap& gt,
                             const MapQualityConfig& config = {});

struct LocalizationReport {
  bool converged = false;
  double convergence_time_s = 0.0;  // since sequence start
  double ate_trans_m = 0.0;         // RMSE over post-convergence samples
  double ate_rot_rad = 0.0;
  bool success = false;
};

struct ConvergenceConfig {
  double radius_m = 0.3;
  double max_angle_rad = kPi / 4.0;
  double divergence_budget_s = 1.5;
  double deadline_fraction = 0.95;
  double align_tolerance_s = 0.05;
};

// Convergence, success, and ATE of an estimate trace against ground truth.
// Throws std::invalid_argument when no timestamps align (EmptyOverlap).
LocalizationReport convergence(const std::vector<TimedPose>& estimates,
                               const std::vector<TimedPose>& ground_truth,
                               const ConvergenceConfig& config = {});

double success_rate(const std::vector<LocalizationReport>& reports);

// Plain-text tables: per-class map-quality rows (IoU / Pr / Rc columns plus
// AVG) and per-run localization summaries.
std::string format_map_quality_table(const MapQualityReport& report,
                                     const std::string& map_name);
std::string format_localization_table(
    const std::vector<std::pair<std::string, LocalizationReport>>& rows,
    const std::string& method);
std::string map_quality_csv(const MapQualityReport& report);

}  // namespace semloc

#endif  // SEMLOC_METRICS_HPP_
