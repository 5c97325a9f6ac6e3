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

#include "mrsde/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mrsde {
namespace {

// Reflect an out-of-range index back into [0, n): ... 2 1 | 0 1 2 ... n-1 | n-1 n-2 ...
int reflect(int i, int n) {
  while (i < 0 || i >= n) {
    if (i < 0) i = -i - 1;
    if (i >= n) i = 2 * n - 1 - i;
  }
  return i;
}

// Keys cubic interpolation kernel, a = -0.5.
double cubic_weight(double x) {
  x = std::fabs(x);
  if (x < 1.0) return (1.5 * x - 2.5) * x * x + 1.0;
  if (x < 2.0) return ((-0.5 * x + 2.5) * x - 4.0) * x + 2.0;
  return 0.0;
}

}  // namespace

ImageF convolve(const ImageF& img, const Kernel& kernel) {
  if (kernel.size > 2 * std::min(img.height(), img.width())) {
    throw std::invalid_argument("convolve: kernel larger than twice the image extent");
  }
  const int h = img.height();
  const int w = img.width();
  const int ch = img.channels();
  const int r = kernel.radius();

  ImageF out(h, w, ch);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < ch; ++c) {
        double acc = 0.0;
        for (int ky = 0; ky < kernel.size; ++ky) {
          const int sy = reflect(y + ky - r, h);
          for (int kx = 0; kx < kernel.size; ++kx) {
            const int sx = reflect(x + kx - r, w);
            acc += kernel.at(ky, kx) * img.at(sy, sx, c);
          }
        }
        out.at(y, x, c) = static_cast<float>(acc);
      }
    }
  }
  return out;
}

ImageF resize(const ImageF& img, int out_height, int out_width, Interp interp) {
  if (out_height < 1 || out_width < 1) {
    throw std::invalid_argument("resize: target dimensions must be positive");
  }
  const int h = img.height();
  const int w = img.width();
  const int ch = img.channels();
  if (out_height == h && out_width == w && interp == Interp::kNearest) {
    return img;  // bit-exact identity
  }

  const double sy = static_cast<double>(h) / out_height;
  const double sx = static_cast<double>(w) / out_width;

  ImageF out(out_height, out_width, ch);
  for (int y = 0; y < out_height; ++y) {
    const double src_y = (y + 0.5) * sy - 0.5;
    for (int x = 0; x < out_width; ++x) {
      const double src_x = (x + 0.5) * sx - 0.5;
      switch (interp) {
        case Interp::kNearest: {
          const int iy = std::clamp(static_cast<int>(std::lround(src_y)), 0, h - 1);
          const int ix = std::clamp(static_cast<int>(std::lround(src_x)), 0, w - 1);
          for (int c = 0; c < ch; ++c) out.at(y, x, c) = img.at(iy, ix, c);
          break;
        }
        case Interp::kBilinear: {
          const int y0 = static_cast<int>(std::floor(src_y));
          const int x0 = static_cast<int>(std::floor(src_x));
          const double fy = src_y - y0;
          const double fx = src_x - x0;
          const int y0c = std::clamp(y0, 0, h - 1);
          const int y1c = std::clamp(y0 + 1, 0, h - 1);
          const int x0c = std::clamp(x0, 0, w - 1);
          const int x1c = std::clamp(x0 + 1, 0, w - 1);
          for (int c = 0; c < ch; ++c) {
            const double top = (1.0 - fx) * img.at(y0c, x0c, c) + fx * img.at(y0c, x1c, c);
            const double bot = (1.0 - fx) * img.at(y1c, x0c, c) + fx * img.at(y1c, x1c, c);
            out.at(y, x, c) = static_cast<float>((1.0 - fy) * top + fy * bot);
          }
          break;
        }
        case Interp::kBicubic: {
          const int y0 = static_cast<int>(std::floor(src_y));
          const int x0 = static_cast<int>(std::floor(src_x));
          double wy[4];
          double wx[4];
          for (int k = 0; k < 4; ++k) {
            wy[k] = cubic_weight(src_y - (y0 - 1 + k));
            wx[k] = cubic_weight(src_x - (x0 - 1 + k));
          }
          for (int c = 0; c < ch; ++c) {
            double acc = 0.0;
            for (int ky = 0; ky < 4; ++ky) {
              const int yy = std::clamp(y0 - 1 + ky, 0, h - 1);
              double row = 0.0;
              for (int kx = 0; kx < 4; ++kx) {
                const int xx = std::clamp(x0 - 1 + kx, 0, w - 1);
                row += wx[kx] * img.at(yy, xx, c);
              }
              acc += wy[ky] * row;
            }
            out.at(y, x, c) = static_cast<float>(acc);
          }
          break;
        }
      }
    }
  }
  if (interp == Interp::kBicubic) out.clamp(0.0f, 1.0f);
  return out;
}

ImageF resize_scale(const ImageF& img, double scale, Interp interp) {
  if (!(scale > 0.0)) {
    throw std::invalid_argument("resize_scale: scale must be positive");
  }
  const int out_h = std::max(1, static_cast<int>(std::lround(img.height() * scale)));
  const int out_w = std::max(1, static_cast<int>(std::lround(img.width() * scale)));
  return resize(img, out_h, out_w, interp);
}

ImageF add_gaussian_noise(const ImageF& img, double sigma, Rng& rng) {
  if (sigma < 0.0) {
    throw std::invalid_argument("add_gaussian_noise: sigma must be >= 0");
  }
  if (sigma == 0.0) return img;
  ImageF out = img;
  for (float& v : out.values()) {
    v = static_cast<float>(std::clamp(v + sigma * rng.normal(), 0.0, 1.0));
  }
  return out;
}

}  // namespace mrsde
