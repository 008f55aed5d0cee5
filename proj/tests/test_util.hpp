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

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "image.hpp"
#include "oracle/scalar_oracle.hpp"

namespace srfuse::testing {

inline Plane random_plane(int w, int h, std::mt19937_64& rng, double lo = 0.0,
                          double hi = 255.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Plane p(w, h);
  for (double& v : p.samples()) v = dist(rng);
  return p;
}

inline RgbImage random_image(int w, int h, std::mt19937_64& rng,
                             double lo = 0.0, double hi = 255.0) {
  return RgbImage(random_plane(w, h, rng, lo, hi), random_plane(w, h, rng, lo, hi),
                  random_plane(w, h, rng, lo, hi));
}

inline RgbImage constant_image(int w, int h, double r, double g, double b) {
  return RgbImage(Plane(w, h, r), Plane(w, h, g), Plane(w, h, b));
}

inline oracle::Gray to_gray(const Plane& p) {
  oracle::Gray g(p.width(), p.height());
  std::copy(p.samples().begin(), p.samples().end(), g.v.begin());
  return g;
}

inline oracle::Rgb to_oracle(const RgbImage& img) {
  oracle::Rgb o;
  for (int c = 0; c < 3; ++c) o.c[c] = to_gray(img.channel(c));
  return o;
}

inline double max_abs_diff(const Plane& a, const Plane& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
  }
  return m;
}

inline double max_abs_diff(const Plane& a, const oracle::Gray& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.samples()[i] - b.v[i]));
  }
  return m;
}

inline double max_abs_diff(const RgbImage& a, const RgbImage& b) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) {
    m = std::max(m, max_abs_diff(a.channel(c), b.channel(c)));
  }
  return m;
}

inline double max_abs_diff(const RgbImage& a, const oracle::Rgb& b) {
  double m = 0.0;
  for (int c = 0; c < 3; ++c) {
    m = std::max(m, max_abs_diff(a.channel(c), b.c[c]));
  }
  return m;
}

// Random candidate set: candidates are an upsampled-LR base plus per-candidate
// noise so the weight masks vary smoothly and are essentially tie-free.
struct RandomSet {
  RgbImage lr;
  std::vector<RgbImage> candidates;
};

RandomSet random_set(int lr_w, int lr_h, int scale, int n, std::mt19937_64& rng,
                     double noise = 30.0);

}  // namespace srfuse::testing
