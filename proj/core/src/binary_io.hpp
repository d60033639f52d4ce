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

// Little-endian stream helpers shared by the on-disk formats.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <span>
#include <string>

#include "lotus/dataset.hpp"

namespace lotus::io {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
T to_little(T value) noexcept {
  if constexpr (std::endian::native == std::endian::big) {
    auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
    std::reverse(bytes.begin(), bytes.end());
    return std::bit_cast<T>(bytes);
  } else {
    return value;
  }
}

class Reader {
 public:
  Reader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

  void expect_magic(const std::array<char, 4>& magic, std::uint8_t version) {
    std::array<char, 4> got{};
    raw(got.data(), got.size());
    if (got != magic) {
      throw FormatError(name_ + ": bad magic, expected \"" + std::string(magic.data(), 4) + "\"");
    }
    std::uint8_t v = 0;
    raw(&v, 1);
    if (v != version) {
      throw FormatError(name_ + ": unsupported version " + std::to_string(v));
    }
  }

  std::uint64_t u64() { return scalar<std::uint64_t>(); }
  double f64() { return scalar<double>(); }

  void f32_array(std::span<float> out) {
    raw(out.data(), out.size_bytes());
    if constexpr (std::endian::native == std::endian::big) {
      for (auto& v : out) v = to_little(v);
    }
  }

  void u64_array(std::span<std::uint64_t> out) {
    raw(out.data(), out.size_bytes());
    if constexpr (std::endian::native == std::endian::big) {
      for (auto& v : out) v = to_little(v);
    }
  }

  void expect_eof() {
    if (in_.peek() != std::char_traits<char>::eof()) {
      throw FormatError(name_ + ": trailing bytes after payload");
    }
  }

 private:
  template <class T>
  T scalar() {
    T value{};
    raw(&value, sizeof(T));
    return to_little(value);
  }

  void raw(void* dst, std::size_t bytes) {
    in_.read(static_cast<char*>(dst), static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(in_.gcount()) != bytes) {
      throw FormatError(name_ + ": truncated file");
    }
  }

  std::istream& in_;
  std::string name_;
};

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}

  void magic(const std::array<char, 4>& magic, std::uint8_t version) {
    out_.write(magic.data(), magic.size());
    out_.put(static_cast<char>(version));
  }

  void u64(std::uint64_t v) { scalar(v); }
  void f64(double v) { scalar(v); }

  void f32_array(std::span<const float> values) {
    if constexpr (std::endian::native == std::endian::big) {
      for (float v : values) scalar(v);
    } else {
      out_.write(reinterpret_cast<const char*>(values.data()),
                 static_cast<std::streamsize>(values.size_bytes()));
    }
  }

  void finish(const std::string& name) {
    out_.flush();
    if (!out_) throw std::runtime_error("write failed: " + name);
  }

 private:
  template <class T>
  void scalar(T v) {
    v = to_little(v);
    out_.write(reinterpret_cast<const char*>(&v), sizeof(T));
  }

  std::ostream& out_;
};

}  // namespace lotus::io
