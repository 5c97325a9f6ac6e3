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

#include "mrsde/image.hpp"
#include "mrsde/kernels.hpp"
#include "mrsde/rng.hpp"

namespace mrsde {

enum class Interp { kNearest, kBilinear, kBicubic };

/// Per-channel 2-D correlation with reflect padding; output has the input
/// size. Accumulates in double. Throws if the kernel exceeds twice the
/// smaller image dimension.
ImageF convolve(const ImageF& img, const Kernel& kernel);

/// Frequency-domain Wiener deconvolution,
///   X_hat = conj(K) Y / (|K|^2 + nsr)
/// per channel, kernel zero-padded and center-aligned to the image size with
/// circular boundary. Output clamped to [0,1]. With finite nsr this is a
/// near-inverse that overshoots at strong edges -- the ringing source of the
/// degradation pipeline.
ImageF wiener_deconvolve(const ImageF& img, const Kernel& kernel, double nsr);

/// Resampling with half-pixel-centered coordinates. Bicubic uses the Keys
/// kernel (a = -0.5) and clamps to [0,1] afterwards; nearest at scale 1 is a
/// bit-exact identity.
ImageF resize(const ImageF& img, int out_height, int out_width, Interp interp);

/// Scale both dimensions by `scale` (target rounded, floor 1 px).
ImageF resize_scale(const ImageF& img, double scale, Interp interp);

/// img + sigma * eps per sample, clamped to [0,1].
ImageF add_gaussian_noise(const ImageF& img, double sigma, Rng& rng);

struct JpegOptions {
  bool chroma_subsample_420 = true;
};

/// JPEG degradation simulation: BT.601 full-range YCbCr, optional 4:2:0
/// chroma subsampling, 8x8 block DCT, Annex-K quantization scaled by the
/// conventional quality mapping, then the inverse path. No entropy coding,
/// no file output; quality in [1, 100].
ImageF jpeg_roundtrip(const ImageF& img, int quality, const JpegOptions& options = {});

}  // namespace mrsde
