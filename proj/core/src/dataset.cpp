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

#include "lotus/dataset.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <random>

#include "binary_io.hpp"

namespace lotus {

namespace {

constexpr std::array<char, 4> kMagic{'L', 'V', 'E', 'C'};
constexpr std::uint8_t kVersion = 0x01;

std::vector<float> centers_for(const MixtureSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<float> unit(0.0F, 1.0F);
  std::vector<float> centers(spec.n_clusters * spec.dim);
  for (auto& c : centers) c = unit(rng);
  return centers;
}

void check_mixture(const MixtureSpec& spec) {
  if (spec.n_clusters == 0 || spec.per_cluster == 0 || spec.dim == 0) {
    throw std::invalid_argument("synthetic mixture: counts must be >= 1");
  }
  if (!(spec.spread > 0.0) || !std::isfinite(spec.spread)) {
    throw std::invalid_argument("synthetic mixture: spread must be > 0");
  }
}

std::vector<float> sample_members(const MixtureSpec& spec, const std::vector<float>& centers,
                                  std::size_t count, std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, spec.spread);
  std::vector<float> out(count * spec.dim);
  for (std::size_t r = 0; r < count; ++r) {
    const float* center = centers.data() + (r % spec.n_clusters) * spec.dim;
    for (std::size_t d = 0; d < spec.dim; ++d) {
      out[r * spec.dim + d] = static_cast<float>(center[d] + noise(rng));
    }
  }
  return out;
}

}  // namespace

VectorDataset::VectorDataset(std::size_t n_vectors, std::size_t dim, std::vector<float> data)
    : n_vectors_(n_vectors), dim_(dim), data_(std::move(data)) {
  if (n_vectors_ == 0 || dim_ == 0) {
    throw std::invalid_argument("VectorDataset: N and D must be >= 1");
  }
  if (data_.size() / dim_ != n_vectors_ || data_.size() % dim_ != 0) {
    throw std::invalid_argument("VectorDataset: data length must equal N*D");
  }
  if (!std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); })) {
    throw std::invalid_argument("VectorDataset: non-finite value");
  }
}

VectorDataset VectorDataset::head(std::size_t count) const {
  count = std::clamp<std::size_t>(count, 1, n_vectors_);
  return {count, dim_, std::vector<float>(data_.begin(), data_.begin() + count * dim_)};
}

double squared_distance(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("squared_distance: dimension mismatch (" +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                                ")");
  }
  return detail::squared_distance_unchecked(a.data(), b.data(), a.size());
}

VectorDataset load_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  io::Reader reader(in, path.string());

  reader.expect_magic(kMagic, kVersion);
  const std::uint64_t n = reader.u64();
  const std::uint64_t dim = reader.u64();
  if (n == 0 || dim == 0) throw FormatError(path.string() + ": empty shape in header");
  if (n > (std::uint64_t{1} << 40) / dim) throw FormatError(path.string() + ": shape too large");

  std::vector<float> data(n * dim);
  reader.f32_array(data);
  reader.expect_eof();
  try {
    return {n, dim, std::move(data)};
  } catch (const std::invalid_argument& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void save_binary(const VectorDataset& dataset, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  io::Writer writer(out);
  writer.magic(kMagic, kVersion);
  writer.u64(dataset.size());
  writer.u64(dataset.dim());
  writer.f32_array(dataset.data());
  writer.finish(path.string());
}

VectorDataset generate_synthetic(const MixtureSpec& spec) {
  check_mixture(spec);
  std::mt19937_64 rng(spec.seed);
  const auto centers = centers_for(spec, rng);
  const std::size_t n = spec.n_clusters * spec.per_cluster;
  return {n, spec.dim, sample_members(spec, centers, n, rng)};
}

QuerySet generate_synthetic_queries(const MixtureSpec& spec, std::size_t n_queries,
                                    std::uint64_t query_seed) {
  check_mixture(spec);
  if (n_queries == 0) throw std::invalid_argument("synthetic queries: n_queries must be >= 1");
  std::mt19937_64 center_rng(spec.seed);
  const auto centers = centers_for(spec, center_rng);
  std::mt19937_64 rng(query_seed);
  return {n_queries, spec.dim, sample_members(spec, centers, n_queries, rng)};
}

}  // namespace lotus
