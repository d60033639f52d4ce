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

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "lotus/dataset.hpp"

namespace lotus {

struct Neighbor {
  Id id;
  double distance;  // squared

  friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/**
 * Search backbone contract.
 *
 * - knn returns min(s, size()) distinct IDs ordered by (distance, id).
 * - range_search returns, in ascending ID order, every ID whose squared
 *   distance to the point is strictly below eps.
 * - range_search_row does the same around a database row and leaves the row
 *   itself out.
 *
 * Implementations are immutable once built and safe to query concurrently.
 * An approximate backbone may implement the same interface but must document
 * its recall; both implementations shipped here are exact.
 */
class NeighborIndex {
 public:
  virtual ~NeighborIndex() = default;

  [[nodiscard]] virtual std::size_t size() const noexcept = 0;
  [[nodiscard]] virtual const VectorDataset& dataset() const noexcept = 0;

  [[nodiscard]] virtual std::vector<Neighbor> knn(std::span<const float> query,
                                                  std::size_t s) const = 0;
  [[nodiscard]] virtual std::vector<Id> range_search(std::span<const float> point,
                                                     double eps) const = 0;
  [[nodiscard]] virtual std::vector<Id> range_search_row(Id row, double eps) const;
};

/// Exhaustive scan over the dataset. The dataset must outlive the index.
class ExactIndex final : public NeighborIndex {
 public:
  explicit ExactIndex(const VectorDataset& dataset) noexcept : dataset_(&dataset) {}

  [[nodiscard]] std::size_t size() const noexcept override { return dataset_->size(); }
  [[nodiscard]] const VectorDataset& dataset() const noexcept override { return *dataset_; }

  [[nodiscard]] std::vector<Neighbor> knn(std::span<const float> query,
                                          std::size_t s) const override;
  [[nodiscard]] std::vector<Id> range_search(std::span<const float> point,
                                             double eps) const override;

 private:
  const VectorDataset* dataset_;
};

struct PivotIndexOptions {
  std::size_t n_pivots = 0;  // 0 picks round(sqrt(N))
  std::uint64_t seed = 0;
};

/**
 * Exact index whose range search prunes whole partitions.
 *
 * Rows are grouped around randomly chosen pivot rows. A partition is skipped
 * when the triangle inequality proves none of its members can be closer than
 * sqrt(eps); surviving members are screened in single precision and then
 * confirmed with squared_distance, so answers are identical to ExactIndex.
 * knn is the same exhaustive scan as ExactIndex.
 */
class PivotIndex final : public NeighborIndex {
 public:
  explicit PivotIndex(const VectorDataset& dataset, PivotIndexOptions options = {});

  [[nodiscard]] std::size_t size() const noexcept override { return dataset_->size(); }
  [[nodiscard]] const VectorDataset& dataset() const noexcept override { return *dataset_; }
  [[nodiscard]] std::size_t n_pivots() const noexcept { return pivots_.size(); }

  [[nodiscard]] std::vector<Neighbor> knn(std::span<const float> query,
                                          std::size_t s) const override;
  [[nodiscard]] std::vector<Id> range_search(std::span<const float> point,
                                             double eps) const override;

 private:
  const VectorDataset* dataset_;
  std::vector<Id> pivots_;
  std::vector<double> radius_;              // max member distance (not squared)
  std::vector<std::size_t> offsets_;        // CSR over members_
  std::vector<Id> members_;
};

enum class IndexKind { exact, pivot };

ExactIndex build_index(const VectorDataset& dataset);
std::unique_ptr<NeighborIndex> make_index(IndexKind kind, const VectorDataset& dataset);

}  // namespace lotus
