// Copyright 2026 The srfuse Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "image.hpp"

namespace srfuse {

// Reads any 8/16-bit PNG and returns it as RGB; 8-bit values map to reals
// 0..255 exactly. Alpha is dropped, gray is replicated, 16-bit is reduced.
RgbImage read_png(const std::string& path);

// Writes 8-bit RGB. Samples are rounded half away from zero and clamped to
// [0, 255].
void write_png(const RgbImage& img, const std::string& path);

// Writes an 8-bit grayscale PNG from a plane in [0, 255] (same quantization).
void write_png_gray(const Plane& plane, const std::string& path);

unsigned char quantize_sample(double v) noexcept;

}  // namespace srfuse
