#pragma once

#include <cmath>
#include <numbers>

#include "mrsde/image.hpp"
#include "mrsde/rng.hpp"

namespace testutil {

// Smooth gradient, survives mild resampling well.
inline mrsde::ImageF gradient_image(int h, int w, int channels) {
  mrsde::ImageF img(h, w, channels);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        img.at(y, x, c) = static_cast<float>(
            0.1 + 0.8 * (0.5 * x / (w - 1.0) + 0.5 * y / (h - 1.0)) * (1.0 - 0.1 * c));
      }
    }
  }
  return img;
}

// Busy texture: waves + checker + seeded grain.
inline mrsde::ImageF texture_image(int h, int w, int channels, std::uint64_t seed) {
  mrsde::Rng rng(seed);
  mrsde::ImageF img(h, w, channels);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < channels; ++c) {
        const double wave =
            0.5 + 0.22 * std::sin(0.31 * x + 0.9 * c) + 0.18 * std::cos(0.23 * y - 0.4 * c);
        const double checker = ((x / 6 + y / 6) % 2 == 0) ? 0.07 : -0.07;
        const double grain = 0.05 * (rng.uniform() - 0.5);
        img.at(y, x, c) = static_cast<float>(std::clamp(wave + checker + grain, 0.02, 0.98));
      }
    }
  }
  return img;
}

// Periodic image whose reflect padding coincides with circular continuation:
// built from cos(2 pi k (i + 0.5) / N) terms, which are even around every
// image border.
inline mrsde::ImageF periodic_image(int h, int w) {
  mrsde::ImageF img(h, w, 1);
  const double pi = std::numbers::pi;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double vx = std::cos(2.0 * pi * (x + 0.5) / w);
      const double vy = std::cos(2.0 * pi * 2.0 * (y + 0.5) / h);
      img.at(y, x, 0) = static_cast<float>(0.5 + 0.2 * vx + 0.15 * vy);
    }
  }
  return img;
}

inline mrsde::ImageF step_edge(int h, int w, float low, float high) {
  mrsde::ImageF img(h, w, 1, low);
  for (int y = 0; y < h; ++y) {
    for (int x = w / 2; x < w; ++x) img.at(y, x, 0) = high;
  }
  return img;
}

inline double max_abs_diff(const mrsde::ImageF& a, const mrsde::ImageF& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(static_cast<double>(a.data()[i]) - b.data()[i]));
  }
  return m;
}

inline double max_abs_diff(const mrsde::ImageD& a, const mrsde::ImageD& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::fabs(a.data()[i] - b.data()[i]));
  }
  return m;
}

}  // namespace testutil
