/**
 * Copyright (c) 2026 The LotusFilter Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "lotus/ordered_set.hpp"

#include <string>

namespace lotus {

OrderedSet::OrderedSet(std::span<const Id> ids) : order_(ids.begin(), ids.end()) {
  members_.reserve(order_.size());
  for (Id id : order_) {
    if (!members_.insert(id).second) {
      throw std::invalid_argument("OrderedSet: duplicate id " + std::to_string(id));
    }
  }
}

std::vector<Id> OrderedSet::drain_in_order() {
  std::vector<Id> out;
  out.reserve(members_.size());
  for (; cursor_ < order_.size() && !members_.empty(); advance()) {
    if (members_.erase(order_[cursor_]) != 0) out.push_back(order_[cursor_]);
  }
  return out;
}

}  // namespace lotus
