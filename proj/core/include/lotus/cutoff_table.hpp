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
#include <filesystem>
#include <span>
#include <vector>

#include "lotus/dataset.hpp"
#include "lotus/neighbor_index.hpp"

namespace lotus {

/**
 * For every database row n, the ascending list of rows i != n with
 * squared_distance(x_n, x_i) < epsilon.
 *
 * Stored as one flat ID array plus N+1 offsets. The constructor only checks
 * shape (offsets monotone, IDs in range, no self entries, each list strictly
 * ascending); symmetry is a property of tables produced by
 * build_cutoff_table and is verified by the test suite, not enforced here.
 */
class CutoffTable {
 public:
  CutoffTable(double epsilon, std::vector<std::size_t> offsets, std::vector<Id> ids);

  /// Convenience for hand-built tables and tests.
  static CutoffTable from_lists(double epsilon, const std::vector<std::vector<Id>>& lists);

  [[nodiscard]] double epsilon() const noexcept { return epsilon_; }
  [[nodiscard]] std::size_t size() const noexcept { return offsets_.size() - 1; }
  [[nodiscard]] std::size_t total_entries() const noexcept { return ids_.size(); }

  [[nodiscard]] std::span<const Id> list(Id n) const noexcept {
    return {ids_.data() + offsets_[n], offsets_[n + 1] - offsets_[n]};
  }

  /// Bytes actually held by this in-memory representation.
  [[nodiscard]] std::size_t actual_bytes() const noexcept {
    return offsets_.size() * sizeof(std::size_t) + ids_.size() * sizeof(Id);
  }

  friend bool operator==(const CutoffTable&, const CutoffTable&) = default;

 private:
  double epsilon_;
  std::vector<std::size_t> offsets_;
  std::vector<Id> ids_;
};

/// One range search per row. `threads` > 1 splits rows across workers; the
/// result does not depend on the thread count.
CutoffTable build_cutoff_table(const NeighborIndex& index, double epsilon,
                               std::size_t threads = 1);

/// Mean list length L.
double avg_list_length(const CutoffTable& table) noexcept;

/// 64 bits per stored ID, i.e. 64 * L * N.
std::uint64_t memory_bits(const CutoffTable& table) noexcept;

// "lotf" format: "LOTF", version 0x01, epsilon f64 LE, N u64 LE,
// N list lengths u64 LE, then all IDs as u64 LE.
void serialize(const CutoffTable& table, const std::filesystem::path& path);
CutoffTable deserialize(const std::filesystem::path& path);

}  // namespace lotus
