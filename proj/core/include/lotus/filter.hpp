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

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "lotus/cutoff_table.hpp"
#include "lotus/neighbor_index.hpp"
#include "lotus/ordered_set.hpp"

namespace lotus {

struct FilterParams {
  std::size_t s_candidates = 100;
  std::size_t k_results = 10;
  bool safeguard = false;

  /// Throws std::invalid_argument unless 1 <= K <= S.
  void validate() const;
};

struct DiverseResult {
  std::vector<Id> ids;     // accepted heads in proximity order, then any safeguard fill
  bool truncated = false;  // safeguard fired, or fewer than K ids came back

  friend bool operator==(const DiverseResult&, const DiverseResult&) = default;
};

namespace detail {

/**
 * Greedy diversification over `candidates` (nearest first).
 *
 * Pops the nearest remaining candidate, accepts it, and strikes its cutoff
 * neighbors from the remaining candidates, until K are accepted or nothing is
 * left. `neighbors_of(id)` yields the cutoff list for an accepted id; entries
 * that are not candidates are ignored.
 *
 * With the safeguard on, a strike that would leave fewer than K reachable
 * results is not applied: pruning stops and the result is topped up with the
 * nearest remaining candidates.
 */
template <class NeighborsOf>
DiverseResult greedy_filter(std::span<const Id> candidates, std::size_t k, bool safeguard,
                            NeighborsOf&& neighbors_of) {
  OrderedSet remaining(candidates);
  DiverseResult result;
  result.ids.reserve(std::min(k, candidates.size()));

  while (result.ids.size() < k && !remaining.empty()) {
    const Id head = remaining.pop();
    result.ids.push_back(head);
    if (result.ids.size() == k) break;

    const auto& cut = neighbors_of(head);
    if (safeguard) {
      std::size_t doomed = 0;
      for (Id id : cut) doomed += remaining.contains(id) ? 1 : 0;
      if (result.ids.size() + (remaining.size() - doomed) < k) {
        const auto rest = remaining.drain_in_order();
        const std::size_t need = std::min(k - result.ids.size(), rest.size());
        result.ids.insert(result.ids.end(), rest.begin(),
                          rest.begin() + static_cast<std::ptrdiff_t>(need));
        result.truncated = true;
        return result;
      }
    }
    for (Id id : cut) remaining.remove(id);
  }
  result.truncated = result.ids.size() < k;
  return result;
}

}  // namespace detail

/// Greedy filter over an ordered candidate list using the cutoff table.
/// Throws std::invalid_argument for k == 0, duplicate candidates, or a
/// candidate outside the table.
DiverseResult filter_candidates(std::span<const Id> candidates, const CutoffTable& table,
                                std::size_t k, bool safeguard);

/// knn(query, S) followed by filter_candidates. The index and table must cover
/// the same rows.
DiverseResult search_and_filter(std::span<const float> query, const NeighborIndex& index,
                                const CutoffTable& table, const FilterParams& params);

}  // namespace lotus
