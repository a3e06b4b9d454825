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

#ifndef SEMLOC_ANGLES_HPP_
#define SEMLOC_ANGLES_HPP_

#include <cmath>
#include <numbers>

namespace semloc {

constexpr double kPi = std::numbers::pi;

// Normalizes an angle to (-pi, pi].
inline double normalize_angle(double theta) {
  theta = std::fmod(theta, 2.0 * kPi);
  if (theta <= -kPi) {
    theta += 2.0 * kPi;
  } else if (theta > kPi) {
    theta -= 2.0 * kPi;
  }
  return theta;
}

inline double angle_diff(double a, double b) { return normalize_angle(a - b); }

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

}  // namespace semloc

#endif  // SEMLOC_ANGLES_HPP_
