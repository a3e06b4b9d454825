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

#ifndef SEMLOC_IO_JSON_IO_HPP_
#define SEMLOC_IO_JSON_IO_HPP_

#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "semloc/detections.hpp"
#include "semloc/noise_model.hpp"
#include "semloc/object_map.hpp"
#include "semloc/probability_map.hpp"
#include "semloc/streams.hpp"

namespace semloc {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

// Pose2 <-> [x, y, theta]; Pose3 <-> {rotation: 9 row-major, translation: 3};
// OrientedBox3 <-> {center, dims, rotation}.
Json to_json(const Pose2& pose);
Pose2 pose2_from_json(const Json& j);
Json to_json(const Pose3& pose);
Pose3 pose3_from_json(const Json& j);
Json to_json(const OrientedBox3& box);
OrientedBox3 box_from_json(const Json& j);

Json to_json(const ObjectMap& map);
ObjectMap object_map_from_json(const Json& j);

Json to_json(const ObjectProbabilityMap& map);
ObjectProbabilityMap probability_map_from_json(const Json& j);

Json to_json(const std::map<std::string, ClassNoiseModel>& models);
std::map<std::string, ClassNoiseModel> class_models_from_json(const Json& j);

Json to_json(const Detection3D& det);
Detection3D detection3d_from_json(const Json& j);

Json to_json(const DetectionFrame& frame);
DetectionFrame detection_frame_from_json(const Json& j);

Json to_json(const SequenceEvent& event);
SequenceEvent sequence_event_from_json(const Json& j);

Json to_json(const EstimateRecord& record);
EstimateRecord estimate_record_from_json(const Json& j);

Json to_json(const TimedPose& record);
TimedPose timed_pose_from_json(const Json& j);

Json to_json(const PosedFrame& record);
PosedFrame posed_frame_from_json(const Json& j);

Json to_json(const Detection2DRecord& record);
Detection2DRecord detection2d_record_from_json(const Json& j);

Json to_json(const LabelFrame& record);
LabelFrame label_frame_from_json(const Json& j);

Json to_json(const PredictionRecord& record);
PredictionRecord prediction_record_from_json(const Json& j);

// Whole-document JSON files.
void write_json_file(const Json& j, const std::filesystem::path& path);
Json read_json_file(const std::filesystem::path& path);

// JSON-lines: one record per line. Parse failures name the line number.
template <typename T, typename FromJson>
std::vector<T> read_jsonl(const std::filesystem::path& path, FromJson from) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::vector<T> records;
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty()) continue;
    try {
      records.push_back(from(Json::parse(line)));
    } catch (const std::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_number) +
                       ": " + e.what());
    }
  }
  return records;
}

template <typename T, typename ToJson>
void write_jsonl(const std::vector<T>& records,
                 const std::filesystem::path& path, ToJson to) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  for (const T& record : records) {
    out << to(record).dump() << "\n";
  }
}

}  // namespace semloc

#endif  // SEMLOC_IO_JSON_IO_HPP_
