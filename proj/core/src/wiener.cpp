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

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "mrsde/ops.hpp"

namespace mrsde {
namespace {

// FFTW plan creation is not thread-safe; execution is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffers {
  int h = 0;
  int w = 0;
  int spectrum_w = 0;
  std::vector<double> real;
  // std::complex<double> is layout-compatible with fftw_complex.
  std::vector<std::complex<double>> freq;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  fftw_complex* freq_data() { return reinterpret_cast<fftw_complex*>(freq.data()); }

  FftwBuffers(int height, int width) : h(height), w(width), spectrum_w(width / 2 + 1) {
    real.resize(static_cast<std::size_t>(h) * w);
    freq.resize(static_cast<std::size_t>(h) * spectrum_w);
    std::lock_guard<std::mutex> lock(plan_mutex());
    forward = fftw_plan_dft_r2c_2d(h, w, real.data(), freq_data(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_2d(h, w, freq_data(), real.data(), FFTW_ESTIMATE);
  }

  ~FftwBuffers() {
    std::lock_guard<std::mutex> lock(plan_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }

  FftwBuffers(const FftwBuffers&) = delete;
  FftwBuffers& operator=(const FftwBuffers&) = delete;
};

}  // namespace

ImageF wiener_deconvolve(const ImageF& img, const Kernel& kernel, double nsr) {
  if (!(nsr > 0.0)) {
    throw std::invalid_argument("wiener_deconvolve: nsr must be positive");
  }
  double kernel_mass = 0.0;
  for (double w : kernel.weights) kernel_mass += std::fabs(w);
  if (kernel_mass == 0.0) {
    throw std::invalid_argument("wiener_deconvolve: all-zero kernel");
  }

  const int h = img.height();
  const int w = img.width();
  const int ch = img.channels();
  const int r = kernel.radius();
  const std::size_t n = static_cast<std::size_t>(h) * w;

  FftwBuffers buf(h, w);

  // Kernel zero-padded to image size with its center wrapped to (0, 0), so
  // the circular correlation has no phase shift.
  std::vector<double> kernel_padded(n, 0.0);
  for (int ky = 0; ky < kernel.size; ++ky) {
    const int y = ((ky - r) % h + h) % h;
    for (int kx = 0; kx < kernel.size; ++kx) {
      const int x = ((kx - r) % w + w) % w;
      kernel_padded[static_cast<std::size_t>(y) * w + x] += kernel.at(ky, kx);
    }
  }
  std::copy(kernel_padded.begin(), kernel_padded.end(), buf.real.begin());
  fftw_execute(buf.forward);
  const std::vector<std::complex<double>> kernel_freq = buf.freq;

  ImageF out(h, w, ch);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (int c = 0; c < ch; ++c) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        buf.real[static_cast<std::size_t>(y) * w + x] = img.at(y, x, c);
      }
    }
    fftw_execute(buf.forward);
    for (std::size_t i = 0; i < buf.freq.size(); ++i) {
      const std::complex<double> k = kernel_freq[i];
      // conj(K) * Y / (|K|^2 + nsr)
      buf.freq[i] = std::conj(k) * buf.freq[i] / (std::norm(k) + nsr);
    }
    fftw_execute(buf.backward);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        const double v = buf.real[static_cast<std::size_t>(y) * w + x] * inv_n;
        out.at(y, x, c) = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  }
  return out;
}

}  // namespace mrsde
