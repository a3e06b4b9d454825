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

#include "semloc/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "semloc/polygon.hpp"

namespace semloc {

MapQualityReport map_quality(const ObjectMap& built, const ObjectMap& gt,
                             const MapQualityConfig& config) {
  struct Pair {
    double iou;
    std::size_t built_idx;
    std::size_t gt_idx;
  };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < built.objects.size(); ++i) {
    for (std::size_t j = 0; j < gt.objects.size(); ++j) {
      const MapObject& b = built.objects[i];
      const MapObject& g = gt.objects[j];
      if (b.class_label != g.class_label) continue;
      const double dist =
          (b.box.center.head<2>() - g.box.center.head<2>()).norm();
      if (dist >= config.delta) continue;
      const double iou = iou_box3(b.box, g.box);
      if (iou < config.match_iou_min) continue;
      pairs.push_back({iou, i, j});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& a, const Pair& b) { return a.iou > b.iou; });

  std::vector<bool> built_used(built.objects.size(), false);
  std::vector<bool> gt_used(gt.objects.size(), false);

  struct Accum {
    double iou_sum = 0.0;
    int matched = 0;
    int n_built = 0;
    int n_gt = 0;
  };
  std::map<std::string, Accum> by_class;
  for (const MapObject& b : built.objects) ++by_class[b.class_label].n_built;
  for (const MapObject& g : gt.objects) ++by_class[g.class_label].n_gt;

  MapQualityReport report;
  for (const Pair& p : pairs) {
    if (built_used[p.built_idx] || gt_used[p.gt_idx]) continue;
    built_used[p.built_idx] = true;
    gt_used[p.gt_idx] = true;
    Accum& acc = by_class[built.objects[p.built_idx].class_label];
    acc.iou_sum += p.iou;
    ++acc.matched;
    report.matched_pairs.emplace_back(built.objects[p.built_idx].id,
                                      gt.objects[p.gt_idx].id);
  }

  double iou_total = 0.0, pr_total = 0.0, rc_total = 0.0;
  int iou_classes = 0, pr_classes = 0, rc_classes = 0;
  for (const auto& [cls, acc] : by_class) {
    ClassQuality q;
    q.class_label = cls;
    q.n_built = acc.n_built;
    q.n_gt = acc.n_gt;
    q.n_matched = acc.matched;
    q.iou = acc.matched > 0 ? acc.iou_sum / acc.matched : 0.0;
    q.precision = acc.n_built > 0
                      ? static_cast<double>(acc.matched) / acc.n_built
                      : 0.0;
    q.recall =
        acc.n_gt > 0 ? static_cast<double>(acc.matched) / acc.n_gt : 0.0;
    report.per_class.push_back(q);

    if (acc.matched > 0) {
      iou_total += q.iou;
      ++iou_classes;
    }
    if (acc.n_built > 0) {
      pr_total += q.precision;
      ++pr_classes;
    }
    if (acc.n_gt > 0) {
      rc_total += q.recall;
      ++rc_classes;
    }
  }
  report.avg_iou = iou_classes > 0 ? iou_total / iou_classes : 0.0;
  report.avg_precision = pr_classes > 0 ? pr_total / pr_classes : 0.0;
  report.avg_recall = rc_classes > 0 ? rc_total / rc_classes : 0.0;
  return report;
}

LocalizationReport convergence(const std::vector<TimedPose>& estimates,
                               const std::vector<TimedPose>& ground_truth,
                               const ConvergenceConfig& config) {
  struct Aligned {
    double t;
    double err_trans;
    double err_rot;
  };
  // Nearest ground-truth sample within the alignment tolerance.
  std::vector<Aligned> aligned;
  std::size_t gi = 0;
  for (const TimedPose& est : estimates) {
    while (gi + 1 < ground_truth.size() &&
           std::abs(ground_truth[gi + 1].timestamp_s - est.timestamp_s) <=
               std::abs(ground_truth[gi].timestamp_s - est.timestamp_s)) {
      ++gi;
    }
    if (ground_truth.empty() ||
        std::abs(ground_truth[gi].timestamp_s - est.timestamp_s) >
            config.align_tolerance_s) {
      continue;
    }
    const Pose2& gt = ground_truth[gi].pose;
    const double err_trans =
        std::hypot(est.pose.x - gt.x, est.pose.y - gt.y);
    const double err_rot = std::abs(angle_diff(est.pose.theta, gt.theta));
    aligned.push_back({est.timestamp_s, err_trans, err_rot});
  }
  if (aligned.empty()) {
    throw std::invalid_argument("convergence: no alignable timestamps");
  }

  const double t_start = aligned.front().t;
  const double t_end = aligned.back().t;
  const double duration = t_end - t_start;

  auto within = [&config](const Aligned& a) {
    return a.err_trans <= config.radius_m && a.err_rot <= config.max_angle_rad;
  };

  // Divergence dwell time attributable to each sample (until the next one).
  std::vector<double> dwell(aligned.size(), 0.0);
  for (std::size_t i = 0; i + 1 < aligned.size(); ++i) {
    dwell[i] = aligned[i + 1].t - aligned[i].t;
  }

  // Suffix sums of diverged dwell time.
  std::vector<double> diverged_after(aligned.size() + 1, 0.0);
  for (std::size_t i = aligned.size(); i-- > 0;) {
    diverged_after[i] =
        diverged_after[i + 1] + (within(aligned[i]) ? 0.0 : dwell[i]);
  }

  LocalizationReport report;
  std::size_t conv_index = aligned.size();
  for (std::size_t i = 0; i < aligned.size(); ++i) {
    if (within(aligned[i]) &&
        diverged_after[i] <= config.divergence_budget_s) {
      conv_index = i;
      break;
    }
  }
  if (conv_index == aligned.size()) {
    return report;  // never converged
  }

  report.converged = true;
  report.convergence_time_s = aligned[conv_index].t - t_start;
  report.success =
      report.convergence_time_s <= config.deadline_fraction * duration;

  double sum_sq_trans = 0.0, sum_sq_rot = 0.0;
  std::size_t n = 0;
  for (std::size_t i = conv_index; i < aligned.size(); ++i) {
    sum_sq_trans += aligned[i].err_trans * aligned[i].err_trans;
    sum_sq_rot += aligned[i].err_rot * aligned[i].err_rot;
    ++n;
  }
  report.ate_trans_m = std::sqrt(sum_sq_trans / n);
  report.ate_rot_rad = std::sqrt(sum_sq_rot / n);
  return report;
}

double success_rate(const std::vector<LocalizationReport>& reports) {
  if (reports.empty()) {
    throw std::invalid_argument("success_rate: no reports");
  }
  std::size_t ok = 0;
  for (const LocalizationReport& r : reports) ok += r.success ? 1 : 0;
  return static_cast<double>(ok) / static_cast<double>(reports.size());
}

namespace {

std::string fixed2(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2) << v;
  return out.str();
}

}  // namespace

std::string format_map_quality_table(const MapQualityReport& report,
                                     const std::string& map_name) {
  // Column per class plus AVG; rows IoU / Pr / Rc.
  std::ostringstream out;
  out << "# AVG columns are unweighted class means\n";
  out << std::left << std::setw(6) << "" << std::setw(8) << "map";
  for (const ClassQuality& q : report.per_class) {
    out << std::setw(10) << q.class_label;
  }
  out << std::setw(8) << "AVG" << "\n";

  auto row = [&](const std::string& name, auto getter, double avg) {
    out << std::left << std::setw(6) << name << std::setw(8) << map_name;
    for (const ClassQuality& q : report.per_class) {
      out << std::setw(10) << fixed2(getter(q));
    }
    out << std::setw(8) << fixed2(avg) << "\n";
  };
  row("IoU", [](const ClassQuality& q) { return q.iou; }, report.avg_iou);
  row("Pr", [](const ClassQuality& q) { return q.precision; },
      report.avg_precision);
  row("Rc", [](const ClassQuality& q) { return q.recall; }, report.avg_recall);
  return out.str();
}

std::string format_localization_table(
    const std::vector<std::pair<std::string, LocalizationReport>>& rows,
    const std::string& method) {
  std::ostringstream out;
  out << std::left << std::setw(10) << "method" << std::setw(10) << "run"
      << std::setw(10) << "success" << std::setw(16) << "ate [rad/m]"
      << std::setw(12) << "t_conv [s]" << "\n";
  double rot_sum = 0.0, trans_sum = 0.0;
  int converged = 0;
  for (const auto& [name, report] : rows) {
    out << std::left << std::setw(10) << method << std::setw(10) << name
        << std::setw(10) << (report.success ? "yes" : "no");
    if (report.converged) {
      out << std::setw(16)
          << (std::to_string(report.ate_rot_rad).substr(0, 5) + "/" +
              std::to_string(report.ate_trans_m).substr(0, 4))
          << std::setw(12) << fixed2(report.convergence_time_s);
      rot_sum += report.ate_rot_rad;
      trans_sum += report.ate_trans_m;
      ++converged;
    } else {
      out << std::setw(16) << "-/-" << std::setw(12) << "-";
    }
    out << "\n";
  }
  std::vector<LocalizationReport> reports;
  reports.reserve(rows.size());
  for (const auto& [name, report] : rows) reports.push_back(report);
  out << std::left << std::setw(10) << method << std::setw(10) << "AVG"
      << std::setw(10) << fixed2(success_rate(reports));
  if (converged > 0) {
    out << std::setw(16)
        << (std::to_string(rot_sum / converged).substr(0, 5) + "/" +
            std::to_string(trans_sum / converged).substr(0, 4));
  } else {
    out << std::setw(16) << "-/-";
  }
  out << "\n";
  return out.str();
}

std::string map_quality_csv(const MapQualityReport& report) {
  std::ostringstream out;
  out << "# AVG row holds unweighted class means\n";
  out << "class,iou,precision,recall,n_built,n_gt,n_matched\n";
  for (const ClassQuality& q : report.per_class) {
    out << q.class_label << "," << q.iou << "," << q.precision << ","
        << q.recall << "," << q.n_built << "," << q.n_gt << "," << q.n_matched
        << "\n";
  }
  out << "AVG," << report.avg_iou << "," << report.avg_precision << ","
      << report.avg_recall << ",,,\n";
  return out.str();
}

}  // namespace semloc
