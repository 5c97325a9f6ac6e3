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

#include <variant>
#include <vector>

namespace mrsde {

/// Isotropic Gaussian blur kernel. `size` is the odd window width; 0 selects
/// the default truncation at 6 sigma rounded up to the next odd integer.
struct GaussianKernelSpec {
  double sigma = 1.0;
  int size = 0;
};

/// Disk (out-of-focus) kernel of the given radius in pixels, anti-aliased rim.
struct DefocusKernelSpec {
  double radius = 2.0;
};

/// size x size uniform box.
struct BoxKernelSpec {
  int size = 3;
};

/// Linear motion streak of the given length through the center, anti-aliased.
/// Length 1 degenerates to the identity kernel.
struct MotionKernelSpec {
  double length = 5.0;
  double angle_deg = 0.0;
};

using KernelSpec =
    std::variant<GaussianKernelSpec, DefocusKernelSpec, BoxKernelSpec, MotionKernelSpec>;

/// Square 2-D filter, odd size, centered, nonnegative, normalized to sum 1.
struct Kernel {
  int size = 0;
  std::vector<double> weights;  // row-major size x size

  double at(int y, int x) const { return weights[static_cast<std::size_t>(y) * size + x]; }
  int radius() const { return size / 2; }
};

/// Realizes a kernel from its spec. Throws std::invalid_argument on even
/// sizes or non-positive extents.
Kernel make_kernel(const KernelSpec& spec);

}  // namespace mrsde
