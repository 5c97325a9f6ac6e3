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

#include <string>

#include "mrsde/image.hpp"

namespace mrsde {

/// Reads an 8-bit PNG into a float image in [0,1] (value / 255). Palette and
/// 16-bit inputs are converted, alpha is dropped; the result has 1 or 3
/// channels. Throws std::runtime_error on I/O or decode failure.
ImageF read_png(const std::string& path);

/// Writes an 8-bit PNG (grayscale or RGB) from a float image; values are
/// clamped to [0,1] and quantized by round(v * 255). Byte-exact across runs.
void write_png(const std::string& path, const ImageF& img);

}  // namespace mrsde
