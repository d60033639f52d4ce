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

#include "lotus/filter.hpp"

#include <stdexcept>
#include <string>

namespace lotus {

void FilterParams::validate() const {
  if (k_results == 0 || k_results > s_candidates) {
    throw std::invalid_argument("filter params: need 1 <= K <= S (K=" + std::to_string(k_results) +
                                ", S=" + std::to_string(s_candidates) + ")");
  }
}

DiverseResult filter_candidates(std::span<const Id> candidates, const CutoffTable& table,
                                std::size_t k, bool safeguard) {
  if (k == 0) throw std::invalid_argument("filter_candidates: k must be >= 1");
  for (Id id : candidates) {
    if (id >= table.size()) {
      throw std::invalid_argument("filter_candidates: candidate " + std::to_string(id) +
                                  " is outside the cutoff table (" +
                                  std::to_string(table.size()) + " rows)");
    }
  }
  return detail::greedy_filter(candidates, k, safeguard,
                               [&table](Id id) { return table.list(id); });
}

DiverseResult search_and_filter(std::span<const float> query, const NeighborIndex& index,
                                const CutoffTable& table, const FilterParams& params) {
  params.validate();
  if (table.size() != index.size()) {
    throw std::invalid_argument("search_and_filter: table has " + std::to_string(table.size()) +
                                " rows but the index has " + std::to_string(index.size()));
  }
  const auto hits = index.knn(query, params.s_candidates);
  std::vector<Id> candidates(hits.size());
  for (std::size_t i = 0; i < hits.size(); ++i) candidates[i] = hits[i].id;
  return filter_candidates(candidates, table, params.k_results, params.safeguard);
}

}  // namespace lotus
