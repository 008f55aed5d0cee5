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

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#include "png_io.hpp"
#include "prep.hpp"

namespace {

namespace fs = std::filesystem;

struct CliResult {
  int exit_code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded and captures stdout.
CliResult run(const std::string& args) {
  const std::string cmd = std::string(SRFUSE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult r;
  FILE* p = ::popen(cmd.c_str(), "r");
  if (p == nullptr) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() /
           ("srfuse_cli_" + std::to_string(::getpid()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const CliResult r = run("prep --generate 2 --size 64x64 --synthetic 3 "
                      "--tele-size 32x32 --seed 3 --out-dir " +
                      (dir_ / "ds").string());
    ASSERT_EQ(r.exit_code, 0);
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string p(const std::string& name) { return (dir_ / name).string(); }
  static std::string ds(const std::string& name) {
    return (dir_ / "ds" / name).string();
  }
  static std::string cands() {
    return ds("000_sr1.png") + " " + ds("000_sr2.png") + " " + ds("000_sr3.png");
  }

  static fs::path dir_;
};

fs::path CliTest::dir_;

TEST_F(CliTest, HelpExitsZero) {
  for (const char* sub : {"", "fuse ", "prep ", "sweep ", "metric "}) {
    const CliResult r = run(std::string(sub) + "--help");
    EXPECT_EQ(r.exit_code, 0) << sub;
    EXPECT_NE(r.out.find("Usage"), std::string::npos) << sub;
  }
}

TEST_F(CliTest, UsageErrorsExitOne) {
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("bogus").exit_code, 1);
  EXPECT_EQ(run("fuse " + cands()).exit_code, 1);  // missing -o
  EXPECT_EQ(run("fuse --lr " + ds("000_lr.png") + " --beta -1 -o " + p("x.png") +
                " " + cands())
                .exit_code,
            1);
  EXPECT_EQ(run("sweep -o " + p("x.csv")).exit_code, 1);  // no dataset
  EXPECT_EQ(run("prep --out-dir " + p("nothing")).exit_code, 1);
}

TEST_F(CliTest, MissingFileExitsTwo) {
  const CliResult r = run("metric " + p("missing.png") + " " + ds("000_gt.png"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_EQ(run("sweep --manifest " + p("missing.txt") + " -o " + p("x.csv"))
                .exit_code,
            2);
}

TEST_F(CliTest, SizeMismatchExitsThree) {
  EXPECT_EQ(run("metric " + ds("000_gt.png") + " " + ds("000_lr.png")).exit_code,
            3);
  EXPECT_EQ(run("fuse --crop-policy error --lr " + ds("000_lr.png") + " -o " +
                p("y.png") + " " + ds("000_sr1.png") + " " + ds("000_ref1.png"))
                .exit_code,
            3);
}

TEST_F(CliTest, MetricOutput) {
  const CliResult same = run("metric " + ds("000_gt.png") + " " + ds("000_gt.png"));
  EXPECT_EQ(same.exit_code, 0);
  EXPECT_EQ(same.out, "psnr_y=inf ssim=1.0\n");
  const CliResult diff = run("metric " + ds("000_gt.png") + " " + ds("000_sr2.png"));
  EXPECT_EQ(diff.exit_code, 0);
  EXPECT_EQ(diff.out.rfind("psnr_y=", 0), 0u);
}

TEST_F(CliTest, SingleCandidateIsReproducedExactly) {
  const CliResult r = run("fuse --lr " + ds("000_lr.png") + " -o " + p("single.png") +
                    " " + ds("000_sr2.png"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(srfuse::read_png(p("single.png")), srfuse::read_png(ds("000_sr2.png")));
  EXPECT_NE(r.out.find("n_candidates=1\n"), std::string::npos);
  EXPECT_NE(r.out.find("global_weight_1=1.0\n"), std::string::npos);
}

TEST_F(CliTest, ZeroParametersMatchNaive) {
  ASSERT_EQ(run("fuse --lr " + ds("000_lr.png") + " --beta 0 --beta-g 0 -o " +
                p("zero.png") + " " + cands())
                .exit_code,
            0);
  ASSERT_EQ(run("fuse --naive -o " + p("naive.png") + " " + cands()).exit_code, 0);
  EXPECT_EQ(slurp(p("zero.png")), slurp(p("naive.png")));
}

TEST_F(CliTest, FuseReportsAndExportsMasks) {
  const CliResult r = run("fuse --lr " + ds("000_lr.png") + " --beta-g 0.01 -o " +
                    p("fused.png") + " --export-masks " + p("masks") + " " +
                    cands());
  ASSERT_EQ(r.exit_code, 0);
  for (const char* key : {"n_candidates=3\n", "beta=300.0\n", "beta_g=0.01\n",
                          "mask_area_3=", "log_global_weight_2="}) {
    EXPECT_NE(r.out.find(key), std::string::npos) << key;
  }
  EXPECT_TRUE(fs::exists(p("fused.png")));
  for (int k = 1; k <= 3; ++k) {
    EXPECT_TRUE(fs::exists(dir_ / "masks" / ("fused_binary" + std::to_string(k) + ".png")));
    EXPECT_TRUE(fs::exists(dir_ / "masks" / ("fused_weight" + std::to_string(k) + ".png")));
  }
}

TEST_F(CliTest, SweepWritesCsv) {
  const CliResult r = run("sweep --manifest " + ds("manifest.txt") +
                    " --kind beta-g --beta-gs 0,1,8 -o " + p("s.csv"));
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("records=6\n"), std::string::npos) << r.out;
  const std::string csv = slurp(p("s.csv"));
  EXPECT_EQ(csv.rfind("image_id,beta,beta_g,n_fused,psnr_y,ssim\n000,0.0,0.0,3,", 0),
            0u);
  EXPECT_NE(csv.find("__mean__,0.0,8.0,3,"), std::string::npos);

  const CliResult d = run("sweep --dir " + (dir_ / "ds").string() +
                    " --kind count -o " + p("c.csv"));
  ASSERT_EQ(d.exit_code, 0);
  EXPECT_NE(d.out.find("records=6\n"), std::string::npos) << d.out;
}

TEST_F(CliTest, OutputsIndependentOfThreadCount) {
  const std::string fuse_args = "fuse --lr " + ds("001_lr.png") +
                                " --beta-g 0.005 " + cands() + " --export-masks ";
  const std::string sweep_args = "sweep --manifest " + ds("manifest.txt") +
                                 " --kind heatmap --betas 0,300 --beta-gs 0,1 -o ";
  for (const char* t : {"1", "4"}) {
    const std::string s(t);
    ASSERT_EQ(run(fuse_args + p("m" + s) + " --threads " + s + " -o " +
                  p("f" + s + ".png"))
                  .exit_code,
              0);
    ASSERT_EQ(run(sweep_args + p("s" + s + ".csv") + " --threads " + s).exit_code,
              0);
    ASSERT_EQ(run("prep --generate 1 --size 32x32 --synthetic 2 --tele-size "
                  "16x16 --seed 5 --out-dir " + p("prep" + s) + " --threads " + s)
                  .exit_code,
              0);
  }
  EXPECT_EQ(slurp(p("f1.png")), slurp(p("f4.png")));
  EXPECT_EQ(slurp(dir_ / "m1" / "f1_weight2.png"), slurp(dir_ / "m4" / "f4_weight2.png"));
  EXPECT_EQ(slurp(p("s1.csv")), slurp(p("s4.csv")));
  for (const char* f : {"000_gt.png", "000_lr.png", "000_sr2.png", "000_ref3.png",
                        "manifest.txt"}) {
    EXPECT_EQ(slurp(dir_ / "prep1" / f), slurp(dir_ / "prep4" / f)) << f;
  }
  const std::string m = "metric " + ds("000_gt.png") + " " + ds("000_sr1.png");
  EXPECT_EQ(run(m + " --threads 1").out, run(m + " --threads 4").out);
}

}  // namespace
