/*
 * Copyright 2026 The mrsde Authors
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
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrsde {

/// H x W x C raster with interleaved channels, row-major, nominal range [0,1].
/// Grayscale images have C = 1, color images C = 3.
template <typename T>
class Image {
 public:
  Image() = default;

  Image(int height, int width, int channels, T fill = T(0))
      : height_(height),
        width_(width),
        channels_(channels),
        data_(checked_size(height, width, channels), fill) {}

  Image(int height, int width, int channels, std::vector<T> data)
      : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
    if (data_.size() != checked_size(height, width, channels)) {
      throw std::invalid_argument("Image: data length does not match H*W*C");
    }
  }

  int height() const { return height_; }
  int width() const { return width_; }
  int channels() const { return channels_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& at(int y, int x, int c) { return data_[index(y, x, c)]; }
  const T& at(int y, int x, int c) const { return data_[index(y, x, c)]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& values() { return data_; }
  const std::vector<T>& values() const { return data_; }

  auto begin() { return data_.begin(); }
  auto end() { return data_.end(); }
  auto begin() const { return data_.begin(); }
  auto end() const { return data_.end(); }

  bool same_shape(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
  }

  bool operator==(const Image& other) const {
    return same_shape(other) && data_ == other.data_;
  }

  void clamp(T lo, T hi) {
    for (T& v : data_) v = std::clamp(v, lo, hi);
  }

  bool all_finite() const {
    for (const T& v : data_) {
      if (!std::isfinite(static_cast<double>(v))) return false;
    }
    return true;
  }

 private:
  static std::size_t checked_size(int height, int width, int channels) {
    if (height < 1 || width < 1) {
      throw std::invalid_argument("Image: dimensions must be positive");
    }
    if (channels != 1 && channels != 3) {
      throw std::invalid_argument("Image: channels must be 1 or 3");
    }
    return static_cast<std::size_t>(height) * width * channels;
  }

  std::size_t index(int y, int x, int c) const {
    return (static_cast<std::size_t>(y) * width_ + x) * channels_ + c;
  }

  int height_ = 0;
  int width_ = 0;
  int channels_ = 0;
  std::vector<T> data_;
};

using ImageF = Image<float>;
using ImageD = Image<double>;

template <typename To, typename From>
Image<To> image_cast(const Image<From>& src) {
  Image<To> out(src.height(), src.width(), src.channels());
  for (std::size_t i = 0; i < src.size(); ++i) {
    out.data()[i] = static_cast<To>(src.data()[i]);
  }
  return out;
}

template <typename T>
void require_same_shape(const Image<T>& a, const Image<T>& b, const std::string& where) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(where + ": image shapes do not match");
  }
}

}  // namespace mrsde
