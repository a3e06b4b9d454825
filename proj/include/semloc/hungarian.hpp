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

#ifndef SEMLOC_HUNGARIAN_HPP_
#define SEMLOC_HUNGARIAN_HPP_

#include <vector>

#include <Eigen/Dense>

namespace semloc {

// Minimum-cost assignment over a dense rows x cols cost matrix (Hungarian
// algorithm, shortest-augmenting-path form, O(n^3)). Every index of the
// smaller dimension is assigned. Returns, per row, the assigned column or
// -1 when rows > cols and the row stayed unassigned.
std::vector<int> solve_assignment(const Eigen::MatrixXd& cost);

double assignment_cost(const Eigen::MatrixXd& cost,
                       const std::vector<int>& row_to_col);

}  // namespace semloc

#endif  // SEMLOC_HUNGARIAN_HPP_
