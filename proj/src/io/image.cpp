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

#include "semloc/io/image.hpp"

#include <zlib.h>

#include <cctype>
#include <cstring>
#include <fstream>

namespace semloc {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw MalformedImage("cannot open image file: " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Skips PGM whitespace and '#' comments, then parses one unsigned integer.
int next_pgm_int(const std::vector<std::uint8_t>& data, std::size_t& pos) {
  while (pos < data.size()) {
    if (std::isspace(data[pos])) {
      ++pos;
    } else if (data[pos] == '#') {
      while (pos < data.size() && data[pos] != '\n') ++pos;
    } else {
      break;
    }
  }
  if (pos >= data.size() || !std::isdigit(data[pos])) {
    throw MalformedImage("PGM header: expected integer");
  }
  int value = 0;
  while (pos < data.size() && std::isdigit(data[pos])) {
    value = value * 10 + (data[pos] - '0');
    ++pos;
  }
  return value;
}

std::uint32_t read_be32(const std::uint8_t* p) {
  return (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
         (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
}

std::vector<std::uint8_t> zlib_inflate(const std::vector<std::uint8_t>& in,
                                       std::size_t expected_size) {
  std::vector<std::uint8_t> out(expected_size);
  uLongf out_len = out.size();
  const int rc = uncompress(out.data(), &out_len, in.data(), in.size());
  if (rc != Z_OK || out_len != expected_size) {
    throw MalformedImage("PNG: zlib inflate failed");
  }
  return out;
}

int paeth(int a, int b, int c) {
  const int p = a + b - c;
  const int pa = std::abs(p - a);
  const int pb = std::abs(p - b);
  const int pc = std::abs(p - c);
  if (pa <= pb && pa <= pc) return a;
  if (pb <= pc) return b;
  return c;
}

}  // namespace

GrayImage decode_pgm(const std::vector<std::uint8_t>& data) {
  if (data.size() < 2 || data[0] != 'P' || (data[1] != '2' && data[1] != '5')) {
    throw MalformedImage("not a PGM file");
  }
  const bool binary = data[1] == '5';
  std::size_t pos = 2;
  GrayImage img;
  img.width = next_pgm_int(data, pos);
  img.height = next_pgm_int(data, pos);
  const int maxval = next_pgm_int(data, pos);
  if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 255) {
    throw MalformedImage("PGM: unsupported dimensions or maxval");
  }
  const std::size_t count =
      static_cast<std::size_t>(img.width) * static_cast<std::size_t>(img.height);
  img.pixels.resize(count);
  if (binary) {
    ++pos;  // single whitespace after maxval
    if (data.size() - pos < count) {
      throw MalformedImage("PGM: truncated pixel data");
    }
    std::memcpy(img.pixels.data(), data.data() + pos, count);
  } else {
    for (std::size_t i = 0; i < count; ++i) {
      const int v = next_pgm_int(data, pos);
      if (v < 0 || v > maxval) throw MalformedImage("PGM: pixel out of range");
      img.pixels[i] = static_cast<std::uint8_t>(v);
    }
  }
  if (maxval != 255) {
    for (auto& p : img.pixels) {
      p = static_cast<std::uint8_t>(p * 255 / maxval);
    }
  }
  return img;
}

GrayImage decode_png_gray8(const std::vector<std::uint8_t>& data) {
  static const std::uint8_t kSignature[8] = {0x89, 'P', 'N', 'G',
                                             '\r', '\n', 0x1a, '\n'};
  if (data.size() < 8 || std::memcmp(data.data(), kSignature, 8) != 0) {
    throw MalformedImage("not a PNG file");
  }

  GrayImage img;
  std::vector<std::uint8_t> idat;
  bool have_header = false;
  std::size_t pos = 8;
  while (pos + 8 <= data.size()) {
    const std::uint32_t length = read_be32(&data[pos]);
    if (pos + 12 + length > data.size()) {
      throw MalformedImage("PNG: truncated chunk");
    }
    const char* type = reinterpret_cast<const char*>(&data[pos + 4]);
    const std::uint8_t* payload = &data[pos + 8];
    if (std::memcmp(type, "IHDR", 4) == 0) {
      if (length != 13) throw MalformedImage("PNG: bad IHDR");
      img.width = static_cast<int>(read_be32(payload));
      img.height = static_cast<int>(read_be32(payload + 4));
      const int bit_depth = payload[8];
      const int color_type = payload[9];
      const int interlace = payload[12];
      if (bit_depth != 8 || color_type != 0 || interlace != 0) {
        throw MalformedImage(
            "PNG: only 8-bit grayscale non-interlaced images are supported");
      }
      have_header = true;
    } else if (std::memcmp(type, "IDAT", 4) == 0) {
      idat.insert(idat.end(), payload, payload + length);
    } else if (std::memcmp(type, "IEND", 4) == 0) {
      break;
    }
    pos += 12 + length;
  }
  if (!have_header || img.width <= 0 || img.height <= 0 || idat.empty()) {
    throw MalformedImage("PNG: missing IHDR or IDAT");
  }

  const std::size_t stride = static_cast<std::size_t>(img.width);
  const std::vector<std::uint8_t> raw =
      zlib_inflate(idat, (stride + 1) * img.height);

  img.pixels.resize(stride * img.height);
  for (int row = 0; row < img.height; ++row) {
    const std::uint8_t filter = raw[row * (stride + 1)];
    const std::uint8_t* src = &raw[row * (stride + 1) + 1];
    std::uint8_t* dst = &img.pixels[row * stride];
    const std::uint8_t* up =
        row > 0 ? &img.pixels[(row - 1) * stride] : nullptr;
    for (std::size_t col = 0; col < stride; ++col) {
      const int left = col > 0 ? dst[col - 1] : 0;
      const int above = up ? up[col] : 0;
      const int upper_left = (up && col > 0) ? up[col - 1] : 0;
      int value = src[col];
      switch (filter) {
        case 0: break;
        case 1: value += left; break;
        case 2: value += above; break;
        case 3: value += (left + above) / 2; break;
        case 4: value += paeth(left, above, upper_left); break;
        default: throw MalformedImage("PNG: unknown filter type");
      }
      dst[col] = static_cast<std::uint8_t>(value & 0xff);
    }
  }
  return img;
}

GrayImage load_gray_image(const std::filesystem::path& path) {
  const auto data = read_file(path);
  if (data.size() >= 2 && data[0] == 'P') return decode_pgm(data);
  return decode_png_gray8(data);
}

void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write image file: " + path.string());
  }
  out << "P5\n" << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels.data()),
            static_cast<std::streamsize>(image.pixels.size()));
}

}  // namespace semloc
