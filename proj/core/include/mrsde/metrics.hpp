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

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mrsde/image.hpp"

namespace mrsde {

/// Reference-based distortion metrics. Both metrics accumulate in double
/// regardless of the image sample type.

/// 10 log10(peak^2 / MSE) in dB; identical images return +infinity. Tabular
/// writers cap the sentinel at 99.99 dB.
template <typename T>
double psnr(const Image<T>& a, const Image<T>& b, double peak = 1.0) {
  require_same_shape(a, b, "psnr");
  double sq = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a.data()[i]) - static_cast<double>(b.data()[i]);
    sq += d * d;
  }
  const double mse = sq / static_cast<double>(a.size());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak * peak / mse);
}

/// Display cap for the identity sentinel.
inline double psnr_capped(double value) { return std::min(value, 99.99); }

struct SsimParams {
  int window_size = 11;
  double window_sigma = 1.5;
  double k1 = 0.01;
  double k2 = 0.03;
  double dynamic_range = 1.0;
};

namespace detail {

inline std::vector<double> ssim_window(const SsimParams& params) {
  const int n = params.window_size;
  const int r = n / 2;
  std::vector<double> w(static_cast<std::size_t>(n) * n);
  double sum = 0.0;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const double dy = y - r;
      const double dx = x - r;
      const double v =
          std::exp(-(dx * dx + dy * dy) / (2.0 * params.window_sigma * params.window_sigma));
      w[static_cast<std::size_t>(y) * n + x] = v;
      sum += v;
    }
  }
  for (double& v : w) v /= sum;
  return w;
}

// Luma plane (BT.601 for RGB), double precision.
template <typename T>
std::vector<double> luma_plane(const Image<T>& img) {
  std::vector<double> plane(static_cast<std::size_t>(img.height()) * img.width());
  if (img.channels() == 1) {
    for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = static_cast<double>(img.data()[i]);
  } else {
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        plane[static_cast<std::size_t>(y) * img.width() + x] = 0.299 * img.at(y, x, 0) +
                                                               0.587 * img.at(y, x, 1) +
                                                               0.114 * img.at(y, x, 2);
      }
    }
  }
  return plane;
}

}  // namespace detail

/// Mean local SSIM over valid (fully interior) windows of the luma channel.
/// Identical inputs give exactly 1.0.
template <typename T>
double ssim(const Image<T>& a, const Image<T>& b, const SsimParams& params = {}) {
  require_same_shape(a, b, "ssim");
  const int n = params.window_size;
  if (a.height() < n || a.width() < n) {
    throw std::invalid_argument("ssim: image smaller than the window");
  }
  const std::vector<double> window = detail::ssim_window(params);
  const std::vector<double> pa = detail::luma_plane(a);
  const std::vector<double> pb = detail::luma_plane(b);

  const double c1 = params.k1 * params.dynamic_range * params.k1 * params.dynamic_range;
  const double c2 = params.k2 * params.dynamic_range * params.k2 * params.dynamic_range;

  const int h = a.height();
  const int w = a.width();
  double total = 0.0;
  std::size_t count = 0;
  for (int y = 0; y + n <= h; ++y) {
    for (int x = 0; x + n <= w; ++x) {
      double mu1 = 0.0, mu2 = 0.0, e11 = 0.0, e22 = 0.0, e12 = 0.0;
      for (int wy = 0; wy < n; ++wy) {
        const double* ra = &pa[static_cast<std::size_t>(y + wy) * w + x];
        const double* rb = &pb[static_cast<std::size_t>(y + wy) * w + x];
        const double* wr = &window[static_cast<std::size_t>(wy) * n];
        for (int wx = 0; wx < n; ++wx) {
          const double va = ra[wx];
          const double vb = rb[wx];
          const double wt = wr[wx];
          mu1 += wt * va;
          mu2 += wt * vb;
          e11 += wt * va * va;
          e22 += wt * vb * vb;
          e12 += wt * va * vb;
        }
      }
      const double s11 = e11 - mu1 * mu1;
      const double s22 = e22 - mu2 * mu2;
      const double s12 = e12 - mu1 * mu2;
      const double num = (2.0 * mu1 * mu2 + c1) * (2.0 * s12 + c2);
      const double den = (mu1 * mu1 + mu2 * mu2 + c1) * (s11 + s22 + c2);
      total += num / den;
      ++count;
    }
  }
  return total / static_cast<double>(count);
}

}  // namespace mrsde
