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

#include <zlib.h>

#include <cstring>
#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "semloc/floor_plan.hpp"
#include "semloc/io/image.hpp"
#include "semloc/io/json_io.hpp"

using namespace semloc;

namespace {

// Minimal test-local PNG writer (grayscale 8-bit), choosing the filter type
// per row so every unfilter path gets exercised.
std::vector<std::uint8_t> encode_png(const GrayImage& img,
                                     const std::vector<int>& row_filters) {
  auto be32 = [](std::uint32_t v) {
    return std::vector<std::uint8_t>{
        static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
        static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
  };
  auto chunk = [&](const char* type, const std::vector<std::uint8_t>& payload) {
    std::vector<std::uint8_t> out = be32(payload.size());
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), payload.begin(), payload.end());
    std::vector<std::uint8_t> crc_input(type, type + 4);
    crc_input.insert(crc_input.end(), payload.begin(), payload.end());
    const auto crc =
        be32(crc32(0L, crc_input.data(), crc_input.size()));
    out.insert(out.end(), crc.begin(), crc.end());
    return out;
  };
  auto paeth = [](int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a), pb = std::abs(p - b), pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return a;
    if (pb <= pc) return b;
    return c;
  };

  // Filtered scanlines.
  std::vector<std::uint8_t> raw;
  for (int r = 0; r < img.height; ++r) {
    const int filter = row_filters[r % row_filters.size()];
    raw.push_back(static_cast<std::uint8_t>(filter));
    for (int c = 0; c < img.width; ++c) {
      const int x = img.at(r, c);
      const int left = c > 0 ? img.at(r, c - 1) : 0;
      const int up = r > 0 ? img.at(r - 1, c) : 0;
      const int ul = (r > 0 && c > 0) ? img.at(r - 1, c - 1) : 0;
      int value = x;
      switch (filter) {
        case 0: break;
        case 1: value = x - left; break;
        case 2: value = x - up; break;
        case 3: value = x - (left + up) / 2; break;
        case 4: value = x - paeth(left, up, ul); break;
      }
      raw.push_back(static_cast<std::uint8_t>(value & 0xff));
    }
  }
  uLongf compressed_size = compressBound(raw.size());
  std::vector<std::uint8_t> compressed(compressed_size);
  REQUIRE(compress(compressed.data(), &compressed_size, raw.data(),
                   raw.size()) == Z_OK);
  compressed.resize(compressed_size);

  std::vector<std::uint8_t> ihdr = be32(img.width);
  const auto h = be32(img.height);
  ihdr.insert(ihdr.end(), h.begin(), h.end());
  ihdr.push_back(8);  // bit depth
  ihdr.push_back(0);  // grayscale
  ihdr.push_back(0);
  ihdr.push_back(0);
  ihdr.push_back(0);  // no interlace

  std::vector<std::uint8_t> png = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  const auto ihdr_chunk = chunk("IHDR", ihdr);
  const auto idat_chunk = chunk("IDAT", compressed);
  const auto iend_chunk = chunk("IEND", {});
  png.insert(png.end(), ihdr_chunk.begin(), ihdr_chunk.end());
  png.insert(png.end(), idat_chunk.begin(), idat_chunk.end());
  png.insert(png.end(), iend_chunk.begin(), iend_chunk.end());
  return png;
}

GrayImage random_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GrayImage img;
  img.width = w;
  img.height = h;
  img.pixels.resize(static_cast<std::size_t>(w) * h);
  for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng() & 0xff);
  return img;
}

}  // namespace

TEST_CASE("PGM P5 save/load round trip") {
  const GrayImage img = random_image(33, 17, 1);
  const auto dir = std::filesystem::temp_directory_path() / "semloc_io_test";
  std::filesystem::create_directories(dir);
  save_pgm(img, dir / "img.pgm");
  const GrayImage back = load_gray_image(dir / "img.pgm");
  CHECK(back.width == img.width);
  CHECK(back.height == img.height);
  CHECK(back.pixels == img.pixels);
}

TEST_CASE("PGM P2 (ascii) decoding with comments") {
  const std::string text = "P2\n# a comment\n3 2\n255\n0 10 20\n30 40 255\n";
  const std::vector<std::uint8_t> data(text.begin(), text.end());
  const GrayImage img = decode_pgm(data);
  CHECK(img.width == 3);
  CHECK(img.height == 2);
  CHECK(img.at(0, 0) == 0);
  CHECK(img.at(1, 2) == 255);
}

TEST_CASE("PNG round trip across all filter types") {
  const GrayImage img = random_image(41, 23, 2);
  for (const std::vector<int>& filters :
       {std::vector<int>{0}, std::vector<int>{1}, std::vector<int>{2},
        std::vector<int>{3}, std::vector<int>{4},
        std::vector<int>{0, 1, 2, 3, 4}}) {
    const auto png = encode_png(img, filters);
    const GrayImage back = decode_png_gray8(png);
    REQUIRE(back.width == img.width);
    REQUIRE(back.height == img.height);
    CHECK(back.pixels == img.pixels);
  }
}

TEST_CASE("PNG loader rejects unsupported color types") {
  GrayImage img = random_image(4, 4, 3);
  auto png = encode_png(img, {0});
  png[25] = 2;  // IHDR color type -> truecolor
  // CRC no longer matches but the header is read before any validation of
  // pixel data; the decoder must still refuse the color type.
  CHECK_THROWS_AS(decode_png_gray8(png), MalformedImage);
}

TEST_CASE("floor plans load from PNG as well as PGM") {
  GrayImage img;
  img.width = 20;
  img.height = 16;
  img.pixels.assign(20 * 16, 255);
  for (int c = 0; c < 20; ++c) img.at(3, c) = 0;  // one wall row

  const auto dir = std::filesystem::temp_directory_path() / "semloc_io_test";
  std::filesystem::create_directories(dir);
  const auto png = encode_png(img, {0, 1, 2, 3, 4});
  {
    std::ofstream out(dir / "plan.png", std::ios::binary);
    out.write(reinterpret_cast<const char*>(png.data()),
              static_cast<std::streamsize>(png.size()));
    std::ofstream meta(dir / "plan.meta");
    meta << "resolution: 0.1\norigin: 0 0 0\n";
  }
  const FloorPlan plan = load_floorplan(dir / "plan.png", dir / "plan.meta");
  CHECK(plan.rows() == 16);
  CHECK(plan.cols() == 20);
  CHECK(plan.count(CellState::kOccupied) == 20);
  CHECK(plan.count(CellState::kFree) == 20 * 15);
  // Image row 3 lands at grid row height-1-3 = 12 after the vertical flip.
  CHECK(plan.at(12, 5) == CellState::kOccupied);
  CHECK(plan.resolution() == doctest::Approx(0.1));
}

TEST_CASE("load_gray_image rejects garbage") {
  const auto dir = std::filesystem::temp_directory_path() / "semloc_io_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "junk.bin", std::ios::binary);
    out << "this is not an image";
  }
  CHECK_THROWS_AS(load_gray_image(dir / "junk.bin"), MalformedImage);
  CHECK_THROWS_AS(load_gray_image(dir / "missing.pgm"), MalformedImage);
}

TEST_CASE("pose and box JSON round trips") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> unit(-3.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const Pose2 p2(unit(rng), unit(rng), unit(rng));
    const Pose2 p2_back = pose2_from_json(to_json(p2));
    CHECK(p2.x == p2_back.x);
    CHECK(p2.y == p2_back.y);
    CHECK(p2.theta == p2_back.theta);

    Pose3 p3;
    p3.rotation = oracles::random_rotation(rng);
    p3.translation = {unit(rng), unit(rng), unit(rng)};
    const Pose3 p3_back = pose3_from_json(to_json(p3));
    CHECK((p3.rotation - p3_back.rotation).cwiseAbs().maxCoeff() == 0.0);
    CHECK((p3.translation - p3_back.translation).norm() == 0.0);

    OrientedBox3 box{{unit(rng), unit(rng), std::abs(unit(rng)) + 0.1},
                     {std::abs(unit(rng)) + 0.1, std::abs(unit(rng)) + 0.1,
                      std::abs(unit(rng)) + 0.1},
                     oracles::random_rotation(rng)};
    const OrientedBox3 box_back = box_from_json(to_json(box));
    CHECK((box.center - box_back.center).norm() == 0.0);
    CHECK((box.dims - box_back.dims).norm() == 0.0);
    CHECK((box.rotation - box_back.rotation).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("object map JSON schema and round trip") {
  ObjectMap map;
  MapObject& a = map.add(
      "table", {{1.0, 2.0, 0.4}, {1.2, 0.8, 0.8}, Eigen::Matrix3d::Identity()});
  a.n_match = 7;
  a.n_skip = 2;
  a.room_id = 3;

  const Json j = to_json(map);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  for (const char* key :
       {"id", "class", "center", "dims", "rotation", "n_match", "n_skip",
        "room_id"}) {
    CHECK(j[0].contains(key));
  }

  const ObjectMap back = object_map_from_json(j);
  REQUIRE(back.objects.size() == 1);
  CHECK(back.objects[0].n_match == 7);
  CHECK(back.objects[0].n_skip == 2);
  CHECK(back.objects[0].room_id == 3);
  CHECK(back.objects[0].class_label == "table");
  CHECK(back.next_id == a.id + 1);
}

TEST_CASE("probability map and class models round trip") {
  ObjectProbabilityMap prob;
  Eigen::Matrix2d cov;
  cov << 0.04, 0.01, 0.01, 0.02;
  prob.gaussians.emplace_back(4, "sink", Eigen::Vector2d(1.0, 2.0), cov);
  const ObjectProbabilityMap back = probability_map_from_json(to_json(prob));
  REQUIRE(back.gaussians.size() == 1);
  CHECK(back.gaussians[0].object_id == 4);
  CHECK((back.gaussians[0].covariance - cov).cwiseAbs().maxCoeff() == 0.0);
  // The cached inverse is rebuilt on load.
  CHECK((back.gaussians[0].cov_inverse - cov.inverse()).cwiseAbs().maxCoeff() <
        1e-12);

  std::map<std::string, ClassNoiseModel> models;
  ClassNoiseModel m;
  m.class_label = "sink";
  m.mean = {0.1, -0.05};
  m.covariance = cov;
  m.sample_count = 321;
  models["sink"] = m;
  const auto models_back = class_models_from_json(to_json(models));
  REQUIRE(models_back.count("sink") == 1);
  CHECK(models_back.at("sink").sample_count == 321);
  CHECK((models_back.at("sink").mean - m.mean).norm() == 0.0);
}

TEST_CASE("sequence events round trip") {
  SequenceEvent odom;
  odom.type = SequenceEvent::Type::kOdom;
  odom.timestamp_s = 1.5;
  odom.odom_delta = Pose2(0.1, 0.0, 0.02);
  const SequenceEvent odom_back = sequence_event_from_json(to_json(odom));
  CHECK(odom_back.type == SequenceEvent::Type::kOdom);
  CHECK(odom_back.odom_delta.x == 0.1);

  SequenceEvent obs;
  obs.type = SequenceEvent::Type::kObs;
  obs.timestamp_s = 2.0;
  Detection3D det;
  det.class_label = "table";
  det.confidence = 0.8;
  det.box = {{1, 2, 3}, {1, 1, 1}, Eigen::Matrix3d::Identity()};
  obs.observation.detections.push_back(det);
  const SequenceEvent obs_back = sequence_event_from_json(to_json(obs));
  CHECK(obs_back.type == SequenceEvent::Type::kObs);
  REQUIRE(obs_back.observation.detections.size() == 1);
  CHECK(obs_back.observation.detections[0].confidence == 0.8);
}

TEST_CASE("read_jsonl names the offending line on parse errors") {
  const auto dir = std::filesystem::temp_directory_path() / "semloc_io_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "broken.jsonl";
  {
    std::ofstream out(path);
    out << R"({"timestamp_s": 0.0, "pose": [0, 0, 0]})" << "\n";
    out << "{not json}\n";
  }
  try {
    read_jsonl<TimedPose>(path, timed_pose_from_json);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("object map JSON rejects invalid boxes") {
  Json j = Json::array();
  j.push_back(Json{{"id", 1},
                   {"class", "x"},
                   {"center", {0, 0, 0}},
                   {"dims", {-1.0, 1.0, 1.0}},
                   {"rotation", {1, 0, 0, 0, 1, 0, 0, 0, 1}},
                   {"n_match", 1},
                   {"n_skip", 0},
                   {"room_id", 0}});
  CHECK_THROWS_AS(object_map_from_json(j), ParseError);
}
