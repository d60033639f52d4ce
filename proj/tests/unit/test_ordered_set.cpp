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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>
#include <random>

#include "lotus/ordered_set.hpp"
#include "oracles.hpp"

using namespace lotus;

TEST_CASE("pop and remove on a small set", "[ordered_set]") {
  const std::vector<Id> ids{5, 3, 9, 1};
  OrderedSet set(ids);
  CHECK(set.size() == 4);
  CHECK(set.contains(3));

  CHECK(set.remove(3));
  CHECK_FALSE(set.remove(3));
  CHECK_FALSE(set.remove(42));
  CHECK(set.pop() == 5);
  CHECK(set.pop() == 9);
  CHECK(set.size() == 1);
  CHECK(set.pop() == 1);
  CHECK(set.empty());
  CHECK_THROWS_AS(set.pop(), std::out_of_range);
}

TEST_CASE("drain keeps original order", "[ordered_set]") {
  const std::vector<Id> ids{5, 3, 9, 1};
  OrderedSet set(ids);
  set.remove(9);
  CHECK(set.drain_in_order() == std::vector<Id>{5, 3, 1});
  CHECK(set.empty());
  CHECK(set.drain_in_order().empty());
}

TEST_CASE("construction edge cases", "[ordered_set]") {
  OrderedSet empty;
  CHECK(empty.empty());
  CHECK_THROWS_AS(empty.pop(), std::out_of_range);

  const std::vector<Id> dup{1, 2, 1};
  CHECK_THROWS_AS(OrderedSet(dup), std::invalid_argument);

  const std::vector<Id> one{7};
  OrderedSet single(one);
  CHECK(single.pop() == 7);
  CHECK(single.empty());
}

TEST_CASE("random traces match the tombstone oracle", "[ordered_set][property]") {
  std::mt19937_64 rng(2024);
  for (int trace = 0; trace < 2000; ++trace) {
    const std::size_t v = 1 + rng() % 60;
    std::vector<Id> pool(3 * v);
    std::iota(pool.begin(), pool.end(), Id{0});
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(v);

    OrderedSet set(pool);
    lotus::testing::TombstoneSet oracle(pool);

    for (int op = 0; op < 100; ++op) {
      const auto kind = rng() % 10;
      if (kind < 4) {
        if (set.empty()) {
          REQUIRE(oracle.size() == 0);
          REQUIRE_THROWS_AS(set.pop(), std::out_of_range);
        } else {
          REQUIRE(set.pop() == *oracle.pop());
        }
      } else if (kind < 9) {
        const Id id = static_cast<Id>(rng() % (3 * v));
        const bool was = set.contains(id);
        REQUIRE(set.remove(id) == was);
        oracle.remove(id);
      } else {
        REQUIRE(set.drain_in_order() == oracle.drain());
      }
      REQUIRE(set.size() == oracle.size());
    }
    // The cursor never walks past the array.
    REQUIRE(set.cursor_advances() <= v);
  }
}

TEST_CASE("cursor work is linear in the set size", "[ordered_set]") {
  const std::size_t v = 10000;
  std::vector<Id> ids(v);
  std::iota(ids.begin(), ids.end(), Id{0});
  std::mt19937_64 rng(3);
  std::shuffle(ids.begin(), ids.end(), rng);

  OrderedSet set(ids);
  while (!set.empty()) {
    set.pop();
    for (int r = 0; r < 3; ++r) set.remove(static_cast<Id>(rng() % v));
  }
  CHECK(set.cursor_advances() <= v);
}
