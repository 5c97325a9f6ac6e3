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

#include "mrsde/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrsde {
namespace {

Kernel alloc_kernel(int size) {
  if (size < 1 || size % 2 == 0) {
    throw std::invalid_argument("make_kernel: size must be a positive odd integer");
  }
  Kernel k;
  k.size = size;
  k.weights.assign(static_cast<std::size_t>(size) * size, 0.0);
  return k;
}

void normalize(Kernel& k) {
  double sum = 0.0;
  for (double w : k.weights) sum += w;
  if (sum <= 0.0) {
    throw std::invalid_argument("make_kernel: kernel has no mass");
  }
  for (double& w : k.weights) w /= sum;
}

Kernel gaussian_kernel(const GaussianKernelSpec& spec) {
  if (!(spec.sigma > 0.0)) {
    throw std::invalid_argument("make_kernel: gaussian sigma must be positive");
  }
  int size = spec.size;
  if (size == 0) {
    size = static_cast<int>(std::ceil(6.0 * spec.sigma));
    if (size % 2 == 0) size += 1;
    size = std::max(size, 3);
  }
  Kernel k = alloc_kernel(size);
  const int r = k.radius();
  const double inv2s2 = 1.0 / (2.0 * spec.sigma * spec.sigma);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dy = y - r;
      const double dx = x - r;
      k.weights[static_cast<std::size_t>(y) * size + x] = std::exp(-(dx * dx + dy * dy) * inv2s2);
    }
  }
  normalize(k);
  return k;
}

Kernel defocus_kernel(const DefocusKernelSpec& spec) {
  if (!(spec.radius > 0.0)) {
    throw std::invalid_argument("make_kernel: defocus radius must be positive");
  }
  int size = 2 * static_cast<int>(std::ceil(spec.radius + 0.5)) + 1;
  Kernel k = alloc_kernel(size);
  const int r = k.radius();
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double d = std::hypot(static_cast<double>(x - r), static_cast<double>(y - r));
      // Disk indicator with a 1 px linear ramp on the rim.
      k.weights[static_cast<std::size_t>(y) * size + x] =
          std::clamp(spec.radius - d + 0.5, 0.0, 1.0);
    }
  }
  normalize(k);
  return k;
}

Kernel box_kernel(const BoxKernelSpec& spec) {
  Kernel k = alloc_kernel(spec.size);
  const double w = 1.0 / (static_cast<double>(spec.size) * spec.size);
  std::fill(k.weights.begin(), k.weights.end(), w);
  return k;
}

Kernel motion_kernel(const MotionKernelSpec& spec) {
  if (!(spec.length >= 1.0)) {
    throw std::invalid_argument("make_kernel: motion length must be >= 1");
  }
  const double half = (spec.length - 1.0) / 2.0;
  int size = 2 * static_cast<int>(std::ceil(half)) + 1;
  if (size < 1) size = 1;
  Kernel k = alloc_kernel(size);
  const int r = k.radius();
  const double angle = spec.angle_deg * std::acos(-1.0) / 180.0;
  const double ux = std::cos(angle);
  const double uy = std::sin(angle);
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double px = x - r;
      const double py = y - r;
      // Distance from the pixel center to the segment [-half, half] * (ux, uy).
      const double along = std::clamp(px * ux + py * uy, -half, half);
      const double dx = px - along * ux;
      const double dy = py - along * uy;
      const double d = std::hypot(dx, dy);
      k.weights[static_cast<std::size_t>(y) * size + x] = std::clamp(1.0 - d, 0.0, 1.0);
    }
  }
  normalize(k);
  return k;
}

}  // namespace

Kernel make_kernel(const KernelSpec& spec) {
  return std::visit(
      [](const auto& s) -> Kernel {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, GaussianKernelSpec>) return gaussian_kernel(s);
        if constexpr (std::is_same_v<S, DefocusKernelSpec>) return defocus_kernel(s);
        if constexpr (std::is_same_v<S, BoxKernelSpec>) return box_kernel(s);
        if constexpr (std::is_same_v<S, MotionKernelSpec>) return motion_kernel(s);
      },
      spec);
}

}  // namespace mrsde
