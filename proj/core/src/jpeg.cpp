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

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "mrsde/ops.hpp"

namespace mrsde {
namespace {

// ISO/IEC 10918-1 Annex K example quantization tables.
constexpr std::array<int, 64> kLuminanceTable = {
    16, 11, 10, 16, 24,  40,  51,  61,   //
    12, 12, 14, 19, 26,  58,  60,  55,   //
    14, 13, 16, 24, 40,  57,  69,  56,   //
    14, 17, 22, 29, 51,  87,  80,  62,   //
    18, 22, 37, 56, 68,  109, 103, 77,   //
    24, 35, 55, 64, 81,  104, 113, 92,   //
    49, 64, 78, 87, 103, 121, 120, 101,  //
    72, 92, 95, 98, 112, 100, 103, 99};

constexpr std::array<int, 64> kChrominanceTable = {
    17, 18, 24, 47, 99, 99, 99, 99,  //
    18, 21, 26, 66, 99, 99, 99, 99,  //
    24, 26, 56, 99, 99, 99, 99, 99,  //
    47, 66, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99,  //
    99, 99, 99, 99, 99, 99, 99, 99};

// Conventional IJG quality mapping: percent scaling of the base tables.
std::array<double, 64> scaled_table(const std::array<int, 64>& base, int quality) {
  const double scale = quality < 50 ? 5000.0 / quality : 200.0 - 2.0 * quality;
  std::array<double, 64> out;
  for (int i = 0; i < 64; ++i) {
    out[static_cast<std::size_t>(i)] =
        std::clamp(std::round(base[static_cast<std::size_t>(i)] * scale / 100.0), 1.0, 255.0);
  }
  return out;
}

struct Dct8 {
  // Orthonormal DCT-II basis: c[k][n] = s_k cos(pi (2n+1) k / 16).
  double basis[8][8];

  Dct8() {
    const double pi = std::acos(-1.0);
    for (int k = 0; k < 8; ++k) {
      const double s = k == 0 ? std::sqrt(1.0 / 8.0) : std::sqrt(2.0 / 8.0);
      for (int n = 0; n < 8; ++n) {
        basis[k][n] = s * std::cos(pi * (2 * n + 1) * k / 16.0);
      }
    }
  }
};

const Dct8& dct8() {
  static const Dct8 tables;
  return tables;
}

// Quantized DCT round trip of one 8x8 block, in place. Values are level
// shifted around 0 on entry.
void block_roundtrip(double block[8][8], const std::array<double, 64>& qtable) {
  const Dct8& d = dct8();
  double tmp[8][8];
  double coef[8][8];

  // rows then columns
  for (int y = 0; y < 8; ++y) {
    for (int k = 0; k < 8; ++k) {
      double acc = 0.0;
      for (int n = 0; n < 8; ++n) acc += d.basis[k][n] * block[y][n];
      tmp[y][k] = acc;
    }
  }
  for (int x = 0; x < 8; ++x) {
    for (int k = 0; k < 8; ++k) {
      double acc = 0.0;
      for (int n = 0; n < 8; ++n) acc += d.basis[k][n] * tmp[n][x];
      coef[k][x] = acc;
    }
  }

  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) {
      const double q = qtable[static_cast<std::size_t>(y) * 8 + x];
      coef[y][x] = std::round(coef[y][x] / q) * q;
    }
  }

  // inverse: columns then rows
  for (int x = 0; x < 8; ++x) {
    for (int n = 0; n < 8; ++n) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += d.basis[k][n] * coef[k][x];
      tmp[n][x] = acc;
    }
  }
  for (int y = 0; y < 8; ++y) {
    for (int n = 0; n < 8; ++n) {
      double acc = 0.0;
      for (int k = 0; k < 8; ++k) acc += d.basis[k][n] * tmp[y][k];
      block[y][n] = acc;
    }
  }
}

// Plane on the 0..255 scale, edge-padded to a multiple of 8.
struct Plane {
  int h = 0;
  int w = 0;
  int padded_h = 0;
  int padded_w = 0;
  std::vector<double> data;  // padded_h x padded_w

  Plane(int height, int width) : h(height), w(width) {
    padded_h = (h + 7) / 8 * 8;
    padded_w = (w + 7) / 8 * 8;
    data.assign(static_cast<std::size_t>(padded_h) * padded_w, 0.0);
  }

  double& at(int y, int x) { return data[static_cast<std::size_t>(y) * padded_w + x]; }
  double at(int y, int x) const { return data[static_cast<std::size_t>(y) * padded_w + x]; }

  void pad_edges() {
    for (int y = 0; y < h; ++y) {
      for (int x = w; x < padded_w; ++x) at(y, x) = at(y, w - 1);
    }
    for (int y = h; y < padded_h; ++y) {
      for (int x = 0; x < padded_w; ++x) at(y, x) = at(y - 1, x);
    }
  }

  void roundtrip(const std::array<double, 64>& qtable) {
    pad_edges();
    double block[8][8];
    for (int by = 0; by < padded_h; by += 8) {
      for (int bx = 0; bx < padded_w; bx += 8) {
        for (int y = 0; y < 8; ++y) {
          for (int x = 0; x < 8; ++x) block[y][x] = at(by + y, bx + x) - 128.0;
        }
        block_roundtrip(block, qtable);
        for (int y = 0; y < 8; ++y) {
          for (int x = 0; x < 8; ++x) at(by + y, bx + x) = block[y][x] + 128.0;
        }
      }
    }
  }
};

Plane downsample2(const Plane& src) {
  Plane out((src.h + 1) / 2, (src.w + 1) / 2);
  for (int y = 0; y < out.h; ++y) {
    for (int x = 0; x < out.w; ++x) {
      const int y0 = 2 * y;
      const int x0 = 2 * x;
      const int y1 = std::min(y0 + 1, src.h - 1);
      const int x1 = std::min(x0 + 1, src.w - 1);
      out.at(y, x) = 0.25 * (src.at(y0, x0) + src.at(y0, x1) + src.at(y1, x0) + src.at(y1, x1));
    }
  }
  return out;
}

void upsample2_into(const Plane& src, Plane& dst) {
  for (int y = 0; y < dst.h; ++y) {
    for (int x = 0; x < dst.w; ++x) {
      dst.at(y, x) = src.at(std::min(y / 2, src.h - 1), std::min(x / 2, src.w - 1));
    }
  }
}

}  // namespace

ImageF jpeg_roundtrip(const ImageF& img, int quality, const JpegOptions& options) {
  if (quality < 1 || quality > 100) {
    throw std::invalid_argument("jpeg_roundtrip: quality must be in [1, 100]");
  }
  const int h = img.height();
  const int w = img.width();
  const auto luma_table = scaled_table(kLuminanceTable, quality);
  const auto chroma_table = scaled_table(kChrominanceTable, quality);

  if (img.channels() == 1) {
    Plane y(h, w);
    for (int yy = 0; yy < h; ++yy) {
      for (int xx = 0; xx < w; ++xx) y.at(yy, xx) = img.at(yy, xx, 0) * 255.0;
    }
    y.roundtrip(luma_table);
    ImageF out(h, w, 1);
    for (int yy = 0; yy < h; ++yy) {
      for (int xx = 0; xx < w; ++xx) {
        out.at(yy, xx, 0) = static_cast<float>(std::clamp(y.at(yy, xx) / 255.0, 0.0, 1.0));
      }
    }
    return out;
  }

  // BT.601 full-range RGB -> YCbCr on the 0..255 scale.
  Plane y(h, w);
  Plane cb(h, w);
  Plane cr(h, w);
  for (int yy = 0; yy < h; ++yy) {
    for (int xx = 0; xx < w; ++xx) {
      const double r = img.at(yy, xx, 0) * 255.0;
      const double g = img.at(yy, xx, 1) * 255.0;
      const double b = img.at(yy, xx, 2) * 255.0;
      y.at(yy, xx) = 0.299 * r + 0.587 * g + 0.114 * b;
      cb.at(yy, xx) = -0.168736 * r - 0.331264 * g + 0.5 * b + 128.0;
      cr.at(yy, xx) = 0.5 * r - 0.418688 * g - 0.081312 * b + 128.0;
    }
  }

  y.roundtrip(luma_table);
  if (options.chroma_subsample_420) {
    Plane cb_small = downsample2(cb);
    Plane cr_small = downsample2(cr);
    cb_small.roundtrip(chroma_table);
    cr_small.roundtrip(chroma_table);
    upsample2_into(cb_small, cb);
    upsample2_into(cr_small, cr);
  } else {
    cb.roundtrip(chroma_table);
    cr.roundtrip(chroma_table);
  }

  ImageF out(h, w, 3);
  for (int yy = 0; yy < h; ++yy) {
    for (int xx = 0; xx < w; ++xx) {
      const double yv = y.at(yy, xx);
      const double cbv = cb.at(yy, xx) - 128.0;
      const double crv = cr.at(yy, xx) - 128.0;
      const double r = yv + 1.402 * crv;
      const double g = yv - 0.344136 * cbv - 0.714136 * crv;
      const double b = yv + 1.772 * cbv;
      out.at(yy, xx, 0) = static_cast<float>(std::clamp(r / 255.0, 0.0, 1.0));
      out.at(yy, xx, 1) = static_cast<float>(std::clamp(g / 255.0, 0.0, 1.0));
      out.at(yy, xx, 2) = static_cast<float>(std::clamp(b / 255.0, 0.0, 1.0));
    }
  }
  return out;
}

}  // namespace mrsde
