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

#pragma once

#include <absl/container/flat_hash_set.h>

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "lotus/dataset.hpp"

namespace lotus {

/**
 * A set that remembers the order of the array it was built from.
 *
 * The original array is kept untouched and membership lives in an
 * open-addressing hash set. remove() only erases from the hash set (a
 * "shallow" delete), and pop() walks a cursor forward over the array until it
 * reaches an element that is still a member. Between two pops the cursor
 * skips at most the number of elements removed in between, so a full
 * consumption advances the cursor at most V times in total.
 *
 *   order_:   [ 5 | 3 | 9 | 1 ]
 *                   ^ cursor_
 *   members_: { 9, 1 }          -> pop() skips 3, returns 9
 *
 * Not thread-safe; use one instance per query.
 */
class OrderedSet {
 public:
  OrderedSet() = default;

  /// Throws std::invalid_argument if `ids` contains a duplicate.
  explicit OrderedSet(std::span<const Id> ids);

  [[nodiscard]] std::size_t size() const noexcept { return members_.size(); }
  [[nodiscard]] bool empty() const noexcept { return members_.empty(); }
  [[nodiscard]] bool contains(Id id) const { return members_.contains(id); }

  /// Removes and returns the earliest remaining element.
  /// Throws std::out_of_range when empty.
  Id pop() {
    if (members_.empty()) throw std::out_of_range("OrderedSet::pop on empty set");
    while (!members_.contains(order_[cursor_])) advance();
    const Id head = order_[cursor_];
    members_.erase(head);
    advance();
    return head;
  }

  /// Shallow delete; a non-member is ignored. Returns whether `id` was present.
  bool remove(Id id) { return members_.erase(id) != 0; }

  /// Remaining members in original order; leaves the set empty.
  std::vector<Id> drain_in_order();

  /// Total cursor moves so far. Diagnostic only.
  [[nodiscard]] std::size_t cursor_advances() const noexcept { return advances_; }

 private:
  void advance() noexcept {
    ++cursor_;
    ++advances_;
  }

  std::vector<Id> order_;
  absl::flat_hash_set<Id> members_;
  std::size_t cursor_ = 0;
  std::size_t advances_ = 0;
};

}  // namespace lotus
