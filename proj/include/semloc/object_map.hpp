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

#ifndef SEMLOC_OBJECT_MAP_HPP_
#define SEMLOC_OBJECT_MAP_HPP_

#include <set>
#include <string>
#include <vector>

#include "semloc/oriented_box.hpp"
#include "semloc/room_map.hpp"

namespace semloc {

// One semantic map object: class-labeled oriented box plus the bookkeeping
// counters driving merge weights and the purge rule.
struct MapObject {
  int id = 0;
  std::string class_label;
  OrientedBox3 box;
  bool active = false;
  int n_skip = 0;
  int n_match = 1;
  int room_id = 0;
};

// The metric-semantic object map anchored to the floor plan frame.
struct ObjectMap {
  std::vector<MapObject> objects;
  int next_id = 1;

  // Returned reference is valid only until the next add().
  MapObject& add(const std::string& class_label, const OrientedBox3& box);

  const MapObject* find(int id) const;

  std::set<std::string> class_dictionary() const;
};

// Stamps each object's room_id with the room label at its footprint center.
void assign_rooms(ObjectMap& map, const RoomMap& rooms, const FloorPlan& plan);

}  // namespace semloc

#endif  // SEMLOC_OBJECT_MAP_HPP_
