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

#include "lotus/cutoff_table.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "binary_io.hpp"

namespace lotus {

namespace {
constexpr std::array<char, 4> kMagic{'L', 'O', 'T', 'F'};
constexpr std::uint8_t kVersion = 0x01;
}  // namespace

CutoffTable::CutoffTable(double epsilon, std::vector<std::size_t> offsets, std::vector<Id> ids)
    : epsilon_(epsilon), offsets_(std::move(offsets)), ids_(std::move(ids)) {
  if (!(epsilon_ >= 0.0) || !std::isfinite(epsilon_)) {
    throw std::invalid_argument("CutoffTable: epsilon must be finite and >= 0");
  }
  if (offsets_.size() < 2 || offsets_.front() != 0 || offsets_.back() != ids_.size()) {
    throw std::invalid_argument("CutoffTable: offsets do not describe the ID payload");
  }
  const std::size_t n = offsets_.size() - 1;
  for (std::size_t row = 0; row < n; ++row) {
    if (offsets_[row] > offsets_[row + 1]) {
      throw std::invalid_argument("CutoffTable: offsets must be non-decreasing");
    }
    for (std::size_t j = offsets_[row]; j < offsets_[row + 1]; ++j) {
      if (ids_[j] >= n || ids_[j] == row) {
        throw std::invalid_argument("CutoffTable: list " + std::to_string(row) +
                                    " has an out-of-range or self entry");
      }
      if (j > offsets_[row] && ids_[j - 1] >= ids_[j]) {
        throw std::invalid_argument("CutoffTable: list " + std::to_string(row) +
                                    " is not strictly ascending");
      }
    }
  }
}

CutoffTable CutoffTable::from_lists(double epsilon, const std::vector<std::vector<Id>>& lists) {
  std::vector<std::size_t> offsets{0};
  std::vector<Id> ids;
  for (const auto& l : lists) {
    ids.insert(ids.end(), l.begin(), l.end());
    offsets.push_back(ids.size());
  }
  return {epsilon, std::move(offsets), std::move(ids)};
}

CutoffTable build_cutoff_table(const NeighborIndex& index, double epsilon, std::size_t threads) {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("build_cutoff_table: eps must be >= 0");
  const std::size_t n = index.size();
  std::vector<std::vector<Id>> lists(n);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t row = begin; row < end; ++row) {
      lists[row] = index.range_search_row(static_cast<Id>(row), epsilon);
    }
  };

  threads = std::clamp<std::size_t>(threads, 1, n);
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
  }
  return CutoffTable::from_lists(epsilon, lists);
}

double avg_list_length(const CutoffTable& table) noexcept {
  return static_cast<double>(table.total_entries()) / static_cast<double>(table.size());
}

std::uint64_t memory_bits(const CutoffTable& table) noexcept {
  return std::uint64_t{64} * table.total_entries();
}

void serialize(const CutoffTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  io::Writer writer(out);
  writer.magic(kMagic, kVersion);
  writer.f64(table.epsilon());
  writer.u64(table.size());
  for (Id n = 0; n < table.size(); ++n) writer.u64(table.list(n).size());
  for (Id n = 0; n < table.size(); ++n) {
    for (Id id : table.list(n)) writer.u64(id);
  }
  writer.finish(path.string());
}

CutoffTable deserialize(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  io::Reader reader(in, path.string());
  reader.expect_magic(kMagic, kVersion);
  const double epsilon = reader.f64();
  const std::uint64_t n = reader.u64();
  if (n == 0 || n > std::numeric_limits<Id>::max()) {
    throw FormatError(path.string() + ": invalid row count " + std::to_string(n));
  }

  std::vector<std::uint64_t> lengths(n);
  reader.u64_array(lengths);
  std::vector<std::size_t> offsets(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (lengths[i] >= n) throw FormatError(path.string() + ": list length exceeds row count");
    offsets[i + 1] = offsets[i] + lengths[i];
  }

  std::vector<std::uint64_t> wide(offsets.back());
  reader.u64_array(wide);
  reader.expect_eof();

  std::vector<Id> ids(wide.size());
  for (std::size_t i = 0; i < wide.size(); ++i) {
    if (wide[i] >= n) throw FormatError(path.string() + ": ID out of range");
    ids[i] = static_cast<Id>(wide[i]);
  }
  try {
    return {epsilon, std::move(offsets), std::move(ids)};
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace lotus
