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

#include "image.hpp"

namespace srfuse {

// ITU-R BT.601 studio swing: Y in [16, 235], Cb/Cr centered on 128, from
// RGB in [0, 255]. No rounding or clamping is applied.
YcbcrImage rgb_to_ycbcr(const RgbImage& img);
RgbImage ycbcr_to_rgb(const YcbcrImage& img);

// Y plane only; what the fusion masks and metrics consume.
Plane luma(const RgbImage& img);

}  // namespace srfuse
