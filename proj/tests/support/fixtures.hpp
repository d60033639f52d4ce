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

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "lotus/dataset.hpp"

namespace lotus::testing {

// The five 1-D points {0, 0.1, 1, 1.05, 2}; row i is the i-th point.
inline VectorDataset five_points() { return {5, 1, {0.0F, 0.1F, 1.0F, 1.05F, 2.0F}}; }

inline VectorDataset random_dataset(std::size_t n, std::size_t dim, std::uint64_t seed,
                                    float scale = 1.0F) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<float> u(0.0F, scale);
  std::vector<float> data(n * dim);
  for (auto& v : data) v = u(rng);
  return {n, dim, std::move(data)};
}

/// Unique scratch path under the system temp directory, removed on scope exit.
class TempPath {
 public:
  explicit TempPath(const std::string& stem) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("lotus_" + stem + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
  }
  ~TempPath() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempPath(const TempPath&) = delete;
  TempPath& operator=(const TempPath&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }
  operator const std::filesystem::path&() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace lotus::testing
