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

#include "semloc/metrics.hpp"

using namespace semloc;

namespace {

ObjectMap two_chair_map() {
  ObjectMap map;
  map.add("chair",
          {{1.0, 1.0, 0.4}, {0.5, 0.8, 0.5}, Eigen::Matrix3d::Identity()});
  map.add("chair",
          {{3.0, 1.0, 0.4}, {0.5, 0.8, 0.5}, Eigen::Matrix3d::Identity()});
  map.add("table",
          {{5.0, 1.0, 0.4}, {1.2, 0.8, 0.8}, Eigen::Matrix3d::Identity()});
  return map;
}

std::vector<TimedPose> constant_track(double x_offset, double t0, double t1,
                                      double dt) {
  std::vector<TimedPose> track;
  for (double t = t0; t <= t1 + 1e-9; t += dt) {
    track.push_back({t, Pose2(t * 0.1 + x_offset, 0.0, 0.0)});
  }
  return track;
}

}  // namespace

TEST_CASE("map_quality of a map against itself is all ones") {
  const ObjectMap map = two_chair_map();
  const MapQualityReport report = map_quality(map, map);
  CHECK(report.avg_iou == doctest::Approx(1.0));
  CHECK(report.avg_precision == doctest::Approx(1.0));
  CHECK(report.avg_recall == doctest::Approx(1.0));
  for (const ClassQuality& q : report.per_class) {
    CHECK(q.iou == doctest::Approx(1.0));
    CHECK(q.precision == doctest::Approx(1.0));
    CHECK(q.recall == doctest::Approx(1.0));
  }
  CHECK(report.matched_pairs.size() == 3);
}

TEST_CASE("map_quality with a missing chair: recall drops, precision holds") {
  const ObjectMap gt = two_chair_map();
  ObjectMap built = two_chair_map();
  built.objects.erase(built.objects.begin());  // drop one chair

  const MapQualityReport report = map_quality(built, gt);
  const auto chair = std::find_if(
      report.per_class.begin(), report.per_class.end(),
      [](const ClassQuality& q) { return q.class_label == "chair"; });
  REQUIRE(chair != report.per_class.end());
  CHECK(chair->recall == doctest::Approx(0.5));
  CHECK(chair->precision == doctest::Approx(1.0));
  CHECK(chair->n_gt == 2);
  CHECK(chair->n_built == 1);
}

TEST_CASE("map_quality matching respects the distance gate") {
  ObjectMap gt;
  gt.add("chair",
         {{0.0, 0.0, 0.4}, {0.5, 0.8, 0.5}, Eigen::Matrix3d::Identity()});
  ObjectMap built;
  built.add("chair",
            {{2.0, 0.0, 0.4}, {0.5, 0.8, 0.5}, Eigen::Matrix3d::Identity()});
  MapQualityConfig config;
  config.delta = 1.0;
  const MapQualityReport report = map_quality(built, gt, config);
  CHECK(report.matched_pairs.empty());
  CHECK(report.avg_recall == 0.0);
}

TEST_CASE("convergence: perfect estimates converge immediately") {
  const auto gt = constant_track(0.0, 0.0, 100.0, 0.5);
  const LocalizationReport report = convergence(gt, gt);
  CHECK(report.converged);
  CHECK(report.convergence_time_s == doctest::Approx(0.0));
  CHECK(report.ate_trans_m == doctest::Approx(0.0));
  CHECK(report.ate_rot_rad == doctest::Approx(0.0));
  CHECK(report.success);
}

TEST_CASE("convergence: constant 1 m offset never converges") {
  const auto gt = constant_track(0.0, 0.0, 100.0, 0.5);
  const auto est = constant_track(1.0, 0.0, 100.0, 0.5);
  const LocalizationReport report = convergence(est, gt);
  CHECK_FALSE(report.converged);
  CHECK_FALSE(report.success);
}

TEST_CASE("convergence after the 95% deadline is not a success") {
  const auto gt = constant_track(0.0, 0.0, 100.0, 0.5);
  auto est = constant_track(1.0, 0.0, 100.0, 0.5);
  for (auto& tp : est) {
    if (tp.timestamp_s >= 96.0) tp.pose.x -= 1.0;  // snap onto ground truth
  }
  const LocalizationReport report = convergence(est, gt);
  CHECK(report.converged);
  CHECK(report.convergence_time_s == doctest::Approx(96.0));
  CHECK_FALSE(report.success);
}

TEST_CASE("convergence skips early fixes that diverge beyond the budget") {
  const auto gt = constant_track(0.0, 0.0, 100.0, 0.5);
  auto est = gt;
  // Diverge for 2 s starting at t = 50: more than the 1.5 s budget, so the
  // first valid convergence is after the excursion.
  for (auto& tp : est) {
    if (tp.timestamp_s >= 50.0 && tp.timestamp_s < 52.0) tp.pose.y += 2.0;
  }
  const LocalizationReport report = convergence(est, gt);
  CHECK(report.converged);
  CHECK(report.convergence_time_s == doctest::Approx(52.0));
  CHECK(report.success);
}

TEST_CASE("a short excursion within the budget does not reset convergence") {
  const auto gt = constant_track(0.0, 0.0, 100.0, 0.5);
  auto est = gt;
  for (auto& tp : est) {
    if (tp.timestamp_s >= 50.0 && tp.timestamp_s < 51.0) tp.pose.y += 2.0;
  }
  const LocalizationReport report = convergence(est, gt);
  CHECK(report.converged);
  CHECK(report.convergence_time_s == doctest::Approx(0.0));
  CHECK(report.success);
  // The excursion still contributes to the ATE.
  CHECK(report.ate_trans_m > 0.0);
}

TEST_CASE("convergence is monotone in the radius threshold") {
  const auto gt = constant_track(0.0, 0.0, 60.0, 0.5);
  auto est = gt;
  for (auto& tp : est) {
    // Error shrinking over time: 0.5 m at t=0 down to 0 at t=60.
    tp.pose.y += 0.5 * (1.0 - tp.timestamp_s / 60.0);
  }
  ConvergenceConfig wide;
  wide.radius_m = 0.3;
  ConvergenceConfig narrow;
  narrow.radius_m = 0.1;
  const LocalizationReport wide_report = convergence(est, gt, wide);
  const LocalizationReport narrow_report = convergence(est, gt, narrow);
  REQUIRE(wide_report.converged);
  REQUIRE(narrow_report.converged);
  CHECK(narrow_report.convergence_time_s >= wide_report.convergence_time_s);
}

TEST_CASE("ATE is the RMSE over post-convergence samples") {
  const auto gt = constant_track(0.0, 0.0, 100.0, 0.5);
  auto est = gt;
  for (auto& tp : est) tp.pose.y += 0.1;
  const LocalizationReport report = convergence(est, gt);
  REQUIRE(report.converged);
  CHECK(report.ate_trans_m == doctest::Approx(0.1).epsilon(1e-9));
}

TEST_CASE("appending perfect samples never raises the ATE") {
  std::mt19937_64 rng(59);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    auto gt = constant_track(0.0, 0.0, 40.0, 0.5);
    auto est = gt;
    for (auto& tp : est) tp.pose.y += 0.25 * unit(rng);
    const LocalizationReport before = convergence(est, gt);
    REQUIRE(before.converged);

    // Extend both tracks with estimate == ground truth.
    for (double t = 40.5; t <= 60.0; t += 0.5) {
      const TimedPose tp{t, Pose2(t * 0.1, 0.0, 0.0)};
      gt.push_back(tp);
      est.push_back(tp);
    }
    const LocalizationReport after = convergence(est, gt);
    CHECK(after.ate_trans_m <= before.ate_trans_m + 1e-12);
    CHECK(after.ate_rot_rad <= before.ate_rot_rad + 1e-12);
  }
}

TEST_CASE("convergence throws on unalignable timestamps") {
  const auto gt = constant_track(0.0, 0.0, 10.0, 0.5);
  const auto est = constant_track(0.0, 100.0, 110.0, 0.5);
  CHECK_THROWS_AS(convergence(est, gt), std::invalid_argument);
}

TEST_CASE("success_rate counts successes") {
  LocalizationReport good;
  good.success = true;
  LocalizationReport bad;
  std::vector<LocalizationReport> reports = {good, good, good, bad, bad};
  CHECK(success_rate(reports) == doctest::Approx(0.6));
  CHECK(success_rate({good}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(success_rate({}), std::invalid_argument);
}

TEST_CASE("report tables carry per-class columns and AVG") {
  const ObjectMap map = two_chair_map();
  const MapQualityReport report = map_quality(map, map);
  const std::string table = format_map_quality_table(report, "KP");
  CHECK(table.find("chair") != std::string::npos);
  CHECK(table.find("table") != std::string::npos);
  CHECK(table.find("AVG") != std::string::npos);
  CHECK(table.find("IoU") != std::string::npos);
  CHECK(table.find("1.00") != std::string::npos);

  const std::string csv = map_quality_csv(report);
  CHECK(csv.find("class,iou,precision,recall") != std::string::npos);

  LocalizationReport run;
  run.converged = true;
  run.success = true;
  run.ate_trans_m = 0.15;
  run.ate_rot_rad = 0.066;
  const std::string loc = format_localization_table({{"R1", run}}, "ours");
  CHECK(loc.find("ours") != std::string::npos);
  CHECK(loc.find("AVG") != std::string::npos);
}
