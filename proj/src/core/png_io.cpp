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

#include "png_io.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <vector>

#include "error.hpp"

namespace srfuse {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const noexcept { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) {
    throw_io(std::string("cannot open '") + path + "' for " +
             (mode[0] == 'r' ? "reading" : "writing"));
  }
  return f;
}

[[noreturn]] void png_error_handler(png_structp, png_const_charp msg) {
  throw Error(ErrorCode::kIo, std::string("libpng: ") + msg);
}

void png_warning_handler(png_structp, png_const_charp) {}

void write_rows(const std::string& path, int width, int height, int color_type,
                int channels, const std::vector<unsigned char>& pixels) {
  FilePtr file = open_file(path, "wb");
  png_structp png = png_create_write_struct(
      PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  if (!png) throw_io("png_create_write_struct failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_write_struct(png, info); }
  } guard{&png, &info};
  if (!info) throw_io("png_create_info_struct failed");

  png_init_io(png, file.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  const std::size_t stride = static_cast<std::size_t>(width) * channels;
  for (int y = 0; y < height; ++y) {
    png_write_row(png, pixels.data() + y * stride);
  }
  png_write_end(png, nullptr);
  if (std::fflush(file.get()) != 0) throw_io("failed writing '" + path + "'");
}

}  // namespace

unsigned char quantize_sample(double v) noexcept {
  // std::round rounds half away from zero.
  const double r = std::round(std::clamp(v, 0.0, 255.0));
  return static_cast<unsigned char>(r);
}

RgbImage read_png(const std::string& path) {
  FilePtr file = open_file(path, "rb");
  unsigned char sig[8];
  if (std::fread(sig, 1, 8, file.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0) {
    throw_io("'" + path + "' is not a PNG file");
  }
  png_structp png = png_create_read_struct(
      PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  if (!png) throw_io("png_create_read_struct failed");
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_read_struct(png, info, nullptr); }
  } guard{&png, &info};
  if (!info) throw_io("png_create_info_struct failed");

  try {
    png_init_io(png, file.get());
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    const int color_type = png_get_color_type(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    if (bit_depth == 16) png_set_strip_16(png);
    if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
    if (color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) {
      png_set_expand_gray_1_2_4_to_8(png);
    }
    if (color_type == PNG_COLOR_TYPE_GRAY ||
        color_type == PNG_COLOR_TYPE_GRAY_ALPHA) {
      png_set_gray_to_rgb(png);
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
    if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_strip_alpha(png);
    png_read_update_info(png, info);

    const int width = static_cast<int>(png_get_image_width(png, info));
    const int height = static_cast<int>(png_get_image_height(png, info));
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    if (rowbytes < static_cast<std::size_t>(width) * 3) {
      throw_io("unexpected PNG layout in '" + path + "'");
    }
    std::vector<unsigned char> data(rowbytes * height);
    std::vector<png_bytep> rows(height);
    for (int y = 0; y < height; ++y) rows[y] = data.data() + y * rowbytes;
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);

    RgbImage img(width, height);
    for (int y = 0; y < height; ++y) {
      const unsigned char* src = rows[y];
      for (int x = 0; x < width; ++x) {
        img.r.at(x, y) = src[3 * x];
        img.g.at(x, y) = src[3 * x + 1];
        img.b.at(x, y) = src[3 * x + 2];
      }
    }
    return img;
  } catch (const Error& e) {
    throw_io("failed reading '" + path + "': " + e.what());
  }
}

void write_png(const RgbImage& img, const std::string& path) {
  const int w = img.width();
  const int h = img.height();
  std::vector<unsigned char> pixels(static_cast<std::size_t>(w) * h * 3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t k = (static_cast<std::size_t>(y) * w + x) * 3;
      pixels[k] = quantize_sample(img.r.at(x, y));
      pixels[k + 1] = quantize_sample(img.g.at(x, y));
      pixels[k + 2] = quantize_sample(img.b.at(x, y));
    }
  }
  write_rows(path, w, h, PNG_COLOR_TYPE_RGB, 3, pixels);
}

void write_png_gray(const Plane& plane, const std::string& path) {
  std::vector<unsigned char> pixels(plane.size());
  const auto s = plane.samples();
  std::transform(s.begin(), s.end(), pixels.begin(), quantize_sample);
  write_rows(path, plane.width(), plane.height(), PNG_COLOR_TYPE_GRAY, 1,
             pixels);
}

}  // namespace srfuse
