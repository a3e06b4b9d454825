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

#include "semloc/io/json_io.hpp"

#include <fstream>

namespace semloc {

namespace {

Json matrix3_to_json(const Eigen::Matrix3d& m) {
  Json j = Json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) j.push_back(m(r, c));
  return j;
}

Eigen::Matrix3d matrix3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 9) {
    throw ParseError("expected 9-element row-major rotation");
  }
  Eigen::Matrix3d m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m(r, c) = j[3 * r + c].get<double>();
  return m;
}

Json vector3_to_json(const Eigen::Vector3d& v) {
  return Json::array({v.x(), v.y(), v.z()});
}

Eigen::Vector3d vector3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected 3-vector");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json vector2_to_json(const Eigen::Vector2d& v) {
  return Json::array({v.x(), v.y()});
}

Eigen::Vector2d vector2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected 2-vector");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix2_to_json(const Eigen::Matrix2d& m) {
  return Json::array({m(0, 0), m(0, 1), m(1, 0), m(1, 1)});
}

Eigen::Matrix2d matrix2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 4) {
    throw ParseError("expected 4-element row-major covariance");
  }
  Eigen::Matrix2d m;
  m << j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
      j[3].get<double>();
  return m;
}

}  // namespace

Json to_json(const Pose2& pose) {
  return Json::array({pose.x, pose.y, pose.theta});
}

Pose2 pose2_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("expected [x,y,theta]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

Json to_json(const Pose3& pose) {
  return Json{{"rotation", matrix3_to_json(pose.rotation)},
              {"translation", vector3_to_json(pose.translation)}};
}

Pose3 pose3_from_json(const Json& j) {
  return {matrix3_from_json(j.at("rotation")),
          vector3_from_json(j.at("translation"))};
}

Json to_json(const OrientedBox3& box) {
  return Json{{"center", vector3_to_json(box.center)},
              {"dims", vector3_to_json(box.dims)},
              {"rotation", matrix3_to_json(box.rotation)}};
}

OrientedBox3 box_from_json(const Json& j) {
  return {vector3_from_json(j.at("center")), vector3_from_json(j.at("dims")),
          matrix3_from_json(j.at("rotation"))};
}

Json to_json(const ObjectMap& map) {
  Json array = Json::array();
  for (const MapObject& obj : map.objects) {
    array.push_back(Json{{"id", obj.id},
                         {"class", obj.class_label},
                         {"center", vector3_to_json(obj.box.center)},
                         {"dims", vector3_to_json(obj.box.dims)},
                         {"rotation", matrix3_to_json(obj.box.rotation)},
                         {"n_match", obj.n_match},
                         {"n_skip", obj.n_skip},
                         {"room_id", obj.room_id}});
  }
  return array;
}

ObjectMap object_map_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("object map: expected array");
  ObjectMap map;
  for (const Json& o : j) {
    MapObject obj;
    obj.id = o.at("id").get<int>();
    obj.class_label = o.at("class").get<std::string>();
    obj.box.center = vector3_from_json(o.at("center"));
    obj.box.dims = vector3_from_json(o.at("dims"));
    obj.box.rotation = matrix3_from_json(o.at("rotation"));
    obj.n_match = o.at("n_match").get<int>();
    obj.n_skip = o.at("n_skip").get<int>();
    obj.room_id = o.at("room_id").get<int>();
    if (!obj.box.valid()) {
      throw ParseError("object map: invalid box for id " +
                       std::to_string(obj.id));
    }
    map.objects.push_back(std::move(obj));
    map.next_id = std::max(map.next_id, map.objects.back().id + 1);
  }
  return map;
}

Json to_json(const ObjectProbabilityMap& map) {
  Json array = Json::array();
  for (const ObjectGaussian& g : map.gaussians) {
    array.push_back(Json{{"object_id", g.object_id},
                         {"class", g.class_label},
                         {"mean", vector2_to_json(g.mean)},
                         {"cov", matrix2_to_json(g.covariance)}});
  }
  return array;
}

ObjectProbabilityMap probability_map_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("probability map: expected array");
  ObjectProbabilityMap map;
  for (const Json& o : j) {
    map.gaussians.emplace_back(o.at("object_id").get<int>(),
                               o.at("class").get<std::string>(),
                               vector2_from_json(o.at("mean")),
                               matrix2_from_json(o.at("cov")));
  }
  return map;
}

Json to_json(const std::map<std::string, ClassNoiseModel>& models) {
  Json array = Json::array();
  for (const auto& [cls, model] : models) {
    array.push_back(Json{{"class", cls},
                         {"mean", vector2_to_json(model.mean)},
                         {"cov", matrix2_to_json(model.covariance)},
                         {"n", model.sample_count}});
  }
  return array;
}

std::map<std::string, ClassNoiseModel> class_models_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("class models: expected array");
  std::map<std::string, ClassNoiseModel> models;
  for (const Json& o : j) {
    ClassNoiseModel model;
    model.class_label = o.at("class").get<std::string>();
    model.mean = vector2_from_json(o.at("mean"));
    model.covariance = matrix2_from_json(o.at("cov"));
    model.sample_count = o.at("n").get<int>();
    model.peak_density =
        1.0 / (2.0 * kPi * std::sqrt(model.covariance.determinant()));
    models[model.class_label] = std::move(model);
  }
  return models;
}

Json to_json(const Detection3D& det) {
  return Json{{"class", det.class_label},
              {"confidence", det.confidence},
              {"center", vector3_to_json(det.box.center)},
              {"dims", vector3_to_json(det.box.dims)},
              {"rotation", matrix3_to_json(det.box.rotation)}};
}

Detection3D detection3d_from_json(const Json& j) {
  Detection3D det;
  det.class_label = j.at("class").get<std::string>();
  det.confidence = j.at("confidence").get<double>();
  det.box.center = vector3_from_json(j.at("center"));
  det.box.dims = vector3_from_json(j.at("dims"));
  det.box.rotation = matrix3_from_json(j.at("rotation"));
  return det;
}

Json to_json(const DetectionFrame& frame) {
  Json dets = Json::array();
  for (const Detection3D& d : frame.detections) dets.push_back(to_json(d));
  return Json{{"frame_id", frame.frame_id},
              {"timestamp_s", frame.timestamp_s},
              {"robot_pose", to_json(frame.robot_pose)},
              {"cam_pose", to_json(frame.cam_pose)},
              {"detections", dets}};
}

DetectionFrame detection_frame_from_json(const Json& j) {
  DetectionFrame frame;
  frame.frame_id = j.at("frame_id").get<int>();
  frame.timestamp_s = j.at("timestamp_s").get<double>();
  frame.robot_pose = pose2_from_json(j.at("robot_pose"));
  frame.cam_pose = pose3_from_json(j.at("cam_pose"));
  for (const Json& d : j.at("detections")) {
    frame.detections.push_back(detection3d_from_json(d));
  }
  return frame;
}

Json to_json(const SequenceEvent& event) {
  if (event.type == SequenceEvent::Type::kOdom) {
    return Json{{"type", "odom"},
                {"timestamp_s", event.timestamp_s},
                {"delta", to_json(event.odom_delta)}};
  }
  Json dets = Json::array();
  for (const Detection3D& d : event.observation.detections) {
    dets.push_back(to_json(d));
  }
  return Json{{"type", "obs"},
              {"timestamp_s", event.timestamp_s},
              {"detections", dets},
              {"cam_pose_in_robot", to_json(event.observation.cam_pose_in_robot)}};
}

SequenceEvent sequence_event_from_json(const Json& j) {
  SequenceEvent event;
  const std::string type = j.at("type").get<std::string>();
  event.timestamp_s = j.at("timestamp_s").get<double>();
  if (type == "odom") {
    event.type = SequenceEvent::Type::kOdom;
    event.odom_delta = pose2_from_json(j.at("delta"));
  } else if (type == "obs") {
    event.type = SequenceEvent::Type::kObs;
    event.observation.timestamp_s = event.timestamp_s;
    event.observation.cam_pose_in_robot =
        pose3_from_json(j.at("cam_pose_in_robot"));
    for (const Json& d : j.at("detections")) {
      event.observation.detections.push_back(detection3d_from_json(d));
    }
  } else {
    throw ParseError("unknown event type: " + type);
  }
  return event;
}

Json to_json(const EstimateRecord& record) {
  return Json{{"timestamp_s", record.timestamp_s},
              {"estimate", to_json(record.estimate)},
              {"n_eff", record.n_eff},
              {"converged", record.converged}};
}

EstimateRecord estimate_record_from_json(const Json& j) {
  EstimateRecord record;
  record.timestamp_s = j.at("timestamp_s").get<double>();
  record.estimate = pose2_from_json(j.at("estimate"));
  record.n_eff = j.at("n_eff").get<double>();
  record.converged = j.at("converged").get<bool>();
  return record;
}

Json to_json(const TimedPose& record) {
  return Json{{"timestamp_s", record.timestamp_s},
              {"pose", to_json(record.pose)}};
}

TimedPose timed_pose_from_json(const Json& j) {
  return {j.at("timestamp_s").get<double>(), pose2_from_json(j.at("pose"))};
}

Json to_json(const PosedFrame& record) {
  return Json{{"frame_id", record.frame_id},
              {"timestamp_s", record.timestamp_s},
              {"cam_pose", to_json(record.cam_pose)}};
}

PosedFrame posed_frame_from_json(const Json& j) {
  return {j.at("frame_id").get<int>(), j.at("timestamp_s").get<double>(),
          pose3_from_json(j.at("cam_pose"))};
}

Json to_json(const Detection2DRecord& record) {
  return Json{{"frame_id", record.frame_id},
              {"class", record.detection.class_label},
              {"bbox",
               Json::array({record.detection.bbox.min.x(),
                            record.detection.bbox.min.y(),
                            record.detection.bbox.max.x(),
                            record.detection.bbox.max.y()})},
              {"confidence", record.detection.confidence}};
}

Detection2DRecord detection2d_record_from_json(const Json& j) {
  Detection2DRecord record;
  record.frame_id = j.at("frame_id").get<int>();
  record.detection.class_label = j.at("class").get<std::string>();
  const Json& b = j.at("bbox");
  if (!b.is_array() || b.size() != 4) throw ParseError("expected bbox [4]");
  record.detection.bbox.min = {b[0].get<double>(), b[1].get<double>()};
  record.detection.bbox.max = {b[2].get<double>(), b[3].get<double>()};
  record.detection.confidence = j.at("confidence").get<double>();
  return record;
}

Json to_json(const LabelFrame& record) {
  Json labels = Json::array();
  for (const FrameLabel& label : record.labels) {
    labels.push_back(
        Json{{"gt_id", label.gt_id},
             {"class", label.class_label},
             {"box_camera", to_json(label.box_camera)},
             {"bbox2d",
              Json::array({label.bbox2d.min.x(), label.bbox2d.min.y(),
                           label.bbox2d.max.x(), label.bbox2d.max.y()})},
             {"truncation", label.truncation},
             {"visibility", label.visibility}});
  }
  return Json{{"frame_id", record.frame_id},
              {"cam_pose", to_json(record.cam_pose)},
              {"labels", labels}};
}

LabelFrame label_frame_from_json(const Json& j) {
  LabelFrame record;
  record.frame_id = j.at("frame_id").get<int>();
  record.cam_pose = pose3_from_json(j.at("cam_pose"));
  for (const Json& l : j.at("labels")) {
    FrameLabel label;
    label.gt_id = l.at("gt_id").get<int>();
    label.class_label = l.at("class").get<std::string>();
    label.box_camera = box_from_json(l.at("box_camera"));
    const Json& b = l.at("bbox2d");
    label.bbox2d.min = {b[0].get<double>(), b[1].get<double>()};
    label.bbox2d.max = {b[2].get<double>(), b[3].get<double>()};
    label.truncation = l.at("truncation").get<double>();
    label.visibility = l.at("visibility").get<double>();
    record.labels.push_back(std::move(label));
  }
  return record;
}

Json to_json(const PredictionRecord& record) {
  return Json{{"frame_id", record.frame_id},
              {"class", record.detection.class_label},
              {"confidence", record.detection.confidence},
              {"box", to_json(record.detection.box)}};
}

PredictionRecord prediction_record_from_json(const Json& j) {
  PredictionRecord record;
  record.frame_id = j.at("frame_id").get<int>();
  record.detection.class_label = j.at("class").get<std::string>();
  record.detection.confidence = j.at("confidence").get<double>();
  record.detection.box = box_from_json(j.at("box"));
  return record;
}

void write_json_file(const Json& j, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace semloc
