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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "error.hpp"
#include "fusion.hpp"
#include "metrics.hpp"
#include "prep.hpp"
#include "sweep.hpp"
#include "test_util.hpp"

namespace srfuse::sweep {
namespace {

std::vector<SweepInput> synthetic_inputs(int count, std::uint64_t seed) {
  std::vector<SweepInput> inputs;
  for (int i = 0; i < count; ++i) {
    const RgbImage gt = prep::make_synthetic_gt(48, 48, seed + i);
    prep::SyntheticSpec spec;
    spec.distortions = {{prep::DistortionKind::kNoise, 6.0, 2},
                        {prep::DistortionKind::kBlur, 2.5, 1},
                        {prep::DistortionKind::kNoise, 40.0, 4}};
    spec.seed = seed * 31 + i;
    auto syn = prep::make_synthetic_candidates(gt, 3, spec);
    inputs.push_back({"img" + std::to_string(i), gt, std::move(syn.set)});
  }
  return inputs;
}

SweepSpec small_spec() {
  SweepSpec s;
  s.beta_grid = {0, 90, 810};
  s.beta_g_grid = {0, 0.5, 4};
  return s;
}

TEST(SweepTest, ZeroGridPointIsNaiveFusion) {
  const auto inputs = synthetic_inputs(2, 1);
  SweepSpec spec;
  spec.beta_grid = {0};
  const auto r = sweep_beta(inputs, spec);
  ASSERT_EQ(r.records.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    const RgbImage naive = fusion::naive_fuse(inputs[i].set.candidates);
    const auto m = metrics::evaluate(naive, inputs[i].gt);
    EXPECT_EQ(r.records[i].image_id, inputs[i].id);
    EXPECT_EQ(r.records[i].n_fused, 3);
    EXPECT_NEAR(r.records[i].psnr_y, m.psnr_y, 1e-9);
    EXPECT_NEAR(r.records[i].ssim, m.ssim, 1e-12);
  }
}

TEST(SweepTest, IdenticalCandidatesGiveConstantMetrics) {
  const RgbImage gt = prep::make_synthetic_gt(32, 32, 4);
  std::mt19937_64 rng(5);
  const RgbImage cand = srfuse::testing::random_image(32, 32, rng);
  const std::vector<SweepInput> inputs{
      {"same", gt, fusion::CandidateSet{prep::make_lr(gt, 4), {cand, cand}, 4}}};
  const auto r = sweep_heatmap(inputs, small_spec());
  const auto expected = metrics::evaluate(cand, gt);
  for (const auto& rec : r.records) {
    EXPECT_NEAR(rec.psnr_y, expected.psnr_y, 1e-9);
    EXPECT_NEAR(rec.ssim, expected.ssim, 1e-9);
  }
}

TEST(SweepTest, OneDimensionalSweepsAreHeatmapSlices) {
  const auto inputs = synthetic_inputs(2, 2);
  const SweepSpec spec = small_spec();
  const auto heat = sweep_heatmap(inputs, spec);
  const auto beta = sweep_beta(inputs, spec);
  const auto beta_g = sweep_beta_g(inputs, spec);
  EXPECT_EQ(heat.records.size(), 2u * 3 * 3);
  EXPECT_EQ(heat.means.size(), 9u);
  auto find = [&](const std::string& id, double b, double g) {
    for (const auto& r : heat.records)
      if (r.image_id == id && r.beta == b && r.beta_g == g) return r;
    ADD_FAILURE() << id << " " << b << " " << g;
    return SweepRecord{};
  };
  for (const auto& r : beta.records) {
    EXPECT_EQ(r.beta_g, 0.0);
    EXPECT_EQ(r, find(r.image_id, r.beta, 0.0));
  }
  for (const auto& r : beta_g.records) {
    EXPECT_EQ(r.beta, 0.0);
    EXPECT_EQ(r, find(r.image_id, 0.0, r.beta_g));
  }
}

TEST(SweepTest, RecordsSortedAndMeansAveraged) {
  const auto inputs = synthetic_inputs(3, 3);
  const auto r = sweep_heatmap(inputs, small_spec());
  for (std::size_t i = 1; i < r.records.size(); ++i) {
    const auto& a = r.records[i - 1];
    const auto& b = r.records[i];
    EXPECT_TRUE(std::tie(a.image_id, a.beta, a.beta_g, a.n_fused) <
                std::tie(b.image_id, b.beta, b.beta_g, b.n_fused));
  }
  for (const auto& m : r.means) {
    EXPECT_EQ(m.image_id, kMeanId);
    double p = 0, s = 0;
    for (const auto& rec : r.records)
      if (rec.beta == m.beta && rec.beta_g == m.beta_g) {
        p += rec.psnr_y;
        s += rec.ssim;
      }
    EXPECT_NEAR(m.psnr_y, p / 3.0, 1e-9);
    EXPECT_NEAR(m.ssim, s / 3.0, 1e-12);
  }
  for (int e : r.excluded_infinite) EXPECT_EQ(e, 0);
}

TEST(SweepTest, InfinitePsnrIsExcludedFromMean) {
  const RgbImage gt = prep::make_synthetic_gt(32, 32, 6);
  std::mt19937_64 rng(7);
  const RgbImage other = srfuse::testing::random_image(32, 32, rng);
  const std::vector<SweepInput> inputs{
      {"exact", gt, fusion::CandidateSet{prep::make_lr(gt, 4), {gt, gt}, 4}},
      {"noisy", gt, fusion::CandidateSet{prep::make_lr(gt, 4), {other, other}, 4}}};
  SweepSpec spec;
  spec.beta_grid = {0, 300};
  const auto r = sweep_beta(inputs, spec);
  ASSERT_EQ(r.means.size(), 2u);
  const double noisy = metrics::psnr_y(other, gt);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(r.excluded_infinite[k], 1);
    EXPECT_NEAR(r.means[k].psnr_y, noisy, 1e-9);
  }
  EXPECT_NE(to_csv(r).find("exact,0.0,0.0,2,inf,1.0\n"), std::string::npos);
}

TEST(SweepTest, LargeGlobalPenaltyApproachesBestCandidate) {
  const auto inputs = synthetic_inputs(1, 8);
  SweepSpec spec;
  spec.beta_g_grid = {50};
  spec.mask_beta = 810.0;
  const auto r = sweep_beta_g(inputs, spec);
  fusion::FusionConfig cfg;
  cfg.beta = 0.0;
  cfg.beta_g = 50.0;
  cfg.mask_beta = 810.0;
  const auto masks = fusion::compute_masks(inputs[0].set, cfg);
  const auto best = std::max_element(masks.areas.begin(), masks.areas.end()) -
                    masks.areas.begin();
  const auto m = metrics::evaluate(inputs[0].set.candidates[best], inputs[0].gt);
  EXPECT_NEAR(r.records[0].psnr_y, m.psnr_y, 1e-6);
}

TEST(SweepTest, FuseCountPrefixes) {
  const auto inputs = synthetic_inputs(2, 9);
  SweepSpec spec;
  spec.fixed_beta = 300;
  spec.fixed_beta_g = 0.0;
  const auto r = sweep_fuse_count(inputs, spec);
  ASSERT_EQ(r.records.size(), 6u);
  EXPECT_EQ(r.means.size(), 3u);
  // k = 1 is the first candidate alone.
  const auto m = metrics::evaluate(inputs[0].set.candidates[0], inputs[0].gt);
  EXPECT_EQ(r.records[0].n_fused, 1);
  EXPECT_NEAR(r.records[0].psnr_y, m.psnr_y, 1e-9);
  EXPECT_EQ(r.records[0].beta, 300.0);
  spec.fuse_counts = {2, 4};
  EXPECT_THROW(sweep_fuse_count(inputs, spec), Error);
}

TEST(SweepTest, CsvFormatAndDeterminism) {
  const auto inputs = synthetic_inputs(2, 10);
  const SweepSpec spec = small_spec();
  const std::string a = to_csv(sweep_heatmap(inputs, spec));
  const std::string b = to_csv(run(SweepKind::kHeatmap, inputs, spec));
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.rfind("image_id,beta,beta_g,n_fused,psnr_y,ssim\n", 0), 0u);
  std::size_t lines = 0;
  for (char c : a) lines += c == '\n';
  EXPECT_EQ(lines, 1u + 18u + 9u);
  EXPECT_NE(a.find("\n__mean__,810.0,4.0,3,"), std::string::npos);
  EXPECT_EQ(a.find('\r'), std::string::npos);
}

TEST(SweepTest, FormatReal) {
  EXPECT_EQ(format_real(0.0), "0.0");
  EXPECT_EQ(format_real(300.0), "300.0");
  EXPECT_EQ(format_real(0.5), "0.5");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(metrics::kPsnrInfinity), "inf");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(SweepTest, SpecValidation) {
  const auto inputs = synthetic_inputs(1, 11);
  for (auto grid : {std::vector<double>{}, std::vector<double>{1, 1},
                    std::vector<double>{2, 1}, std::vector<double>{-1, 0}}) {
    SweepSpec spec;
    spec.beta_grid = grid;
    EXPECT_THROW(sweep_beta(inputs, spec), Error);
    SweepSpec spec_g;
    spec_g.beta_g_grid = grid;
    EXPECT_THROW(sweep_beta_g(inputs, spec_g), Error);
  }
  EXPECT_THROW(sweep_beta({}, SweepSpec{}), Error);
  SweepSpec zero;
  zero.fuse_counts = {0};
  EXPECT_THROW(sweep_fuse_count(inputs, zero), Error);
}

}  // namespace
}  // namespace srfuse::sweep
