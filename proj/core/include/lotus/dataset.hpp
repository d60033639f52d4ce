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
#include <stdexcept>
#include <string>
#include <vector>

namespace lotus {

/// Row identifier. 0-based in memory; widened to 64 bits on disk.
using Id = std::uint32_t;

/// Raised when a file does not match the expected binary layout.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Dense row-major matrix of single-precision vectors.
 *
 * Immutable after construction. Construction validates the shape and rejects
 * non-finite values, so every instance satisfies N >= 1, D >= 1 and
 * data().size() == N * D.
 */
class VectorDataset {
 public:
  VectorDataset(std::size_t n_vectors, std::size_t dim, std::vector<float> data);

  [[nodiscard]] std::size_t size() const noexcept { return n_vectors_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] std::span<const float> data() const noexcept { return data_; }

  [[nodiscard]] std::span<const float> row(std::size_t i) const noexcept {
    return {data_.data() + i * dim_, dim_};
  }

  /// Copy of the first `count` rows (clamped to size()).
  [[nodiscard]] VectorDataset head(std::size_t count) const;

  friend bool operator==(const VectorDataset&, const VectorDataset&) = default;

 private:
  std::size_t n_vectors_;
  std::size_t dim_;
  std::vector<float> data_;
};

/// Queries share the dataset layout; the dimension must match the base set
/// they are run against.
using QuerySet = VectorDataset;

/// Squared Euclidean distance with double accumulation, summed in index order.
/// Throws std::invalid_argument on a dimension mismatch.
double squared_distance(std::span<const float> a, std::span<const float> b);

namespace detail {
// Unchecked variant for inner loops; callers guarantee a.size() == b.size().
inline double squared_distance_unchecked(const float* a, const float* b,
                                         std::size_t dim) noexcept {
  double acc = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double diff = static_cast<double>(a[d]) - static_cast<double>(b[d]);
    acc += diff * diff;
  }
  return acc;
}
}  // namespace detail

// "lvec" format: "LVEC", version 0x01, N u64 LE, D u64 LE, N*D f32 LE.
VectorDataset load_binary(const std::filesystem::path& path);
void save_binary(const VectorDataset& dataset, const std::filesystem::path& path);

/**
 * Parameters of the synthetic Gaussian mixture.
 *
 * Cluster centers are uniform in [0,1]^D; each member is its center plus
 * isotropic N(0, spread^2) noise. Row r belongs to cluster r % n_clusters, so
 * any prefix of the dataset covers the clusters evenly.
 */
struct MixtureSpec {
  std::size_t n_clusters = 1;
  std::size_t per_cluster = 1;
  std::size_t dim = 1;
  double spread = 0.1;
  std::uint64_t seed = 0;
};

VectorDataset generate_synthetic(const MixtureSpec& spec);

/// Draws `n_queries` fresh points around the same centers as
/// generate_synthetic(spec), using `query_seed` for the noise.
QuerySet generate_synthetic_queries(const MixtureSpec& spec, std::size_t n_queries,
                                    std::uint64_t query_seed);

}  // namespace lotus
