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

#include "semloc/object_map.hpp"

#include <algorithm>

namespace semloc {

MapObject& ObjectMap::add(const std::string& class_label,
                          const OrientedBox3& box) {
  MapObject obj;
  obj.id = next_id++;
  obj.class_label = class_label;
  obj.box = box;
  objects.push_back(std::move(obj));
  return objects.back();
}

const MapObject* ObjectMap::find(int id) const {
  const auto it = std::find_if(objects.begin(), objects.end(),
                               [id](const MapObject& o) { return o.id == id; });
  return it == objects.end() ? nullptr : &*it;
}

std::set<std::string> ObjectMap::class_dictionary() const {
  std::set<std::string> classes;
  for (const MapObject& o : objects) classes.insert(o.class_label);
  return classes;
}

void assign_rooms(ObjectMap& map, const RoomMap& rooms, const FloorPlan& plan) {
  for (MapObject& obj : map.objects) {
    obj.room_id = rooms.label_at(plan, footprint(obj.box).center);
  }
}

}  // namespace semloc
