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

#ifndef SEMLOC_IO_IMAGE_HPP_
#define SEMLOC_IO_IMAGE_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace semloc {

struct MalformedImage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// 8-bit grayscale raster, row-major, top row first.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;

  std::uint8_t at(int row, int col) const { return pixels[row * width + col]; }
  std::uint8_t& at(int row, int col) { return pixels[row * width + col]; }
};

// Loads a PGM (P2/P5) or an 8-bit grayscale non-interlaced PNG, dispatching
// on the file signature. Throws MalformedImage on anything else.
GrayImage load_gray_image(const std::filesystem::path& path);

GrayImage decode_pgm(const std::vector<std::uint8_t>& data);
GrayImage decode_png_gray8(const std::vector<std::uint8_t>& data);

void save_pgm(const GrayImage& image, const std::filesystem::path& path);

}  // namespace semloc

#endif  // SEMLOC_IO_IMAGE_HPP_
