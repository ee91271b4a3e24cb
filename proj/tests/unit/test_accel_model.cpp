#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "mppi/accel_model.hpp"

namespace mppi::accel {
namespace {

TEST(IterationCounts, WorkedExample) {
  EXPECT_EQ(sequential_iterations(3, 3), 9u);
  EXPECT_EQ(pipelined_iterations(3, 3), 5u);
}

TEST(IterationCounts, Examples) {
  EXPECT_EQ(sequential_iterations(1, 1), 1u);
  EXPECT_EQ(sequential_iterations(100, 25), 2500u);
  EXPECT_EQ(pipelined_iterations(1, 25), 25u);
  EXPECT_EQ(pipelined_iterations(1000, 25), 1024u);
}

TEST(IterationCounts, ZeroIsRejected) {
  EXPECT_THROW(sequential_iterations(0, 3), std::invalid_argument);
  EXPECT_THROW(pipelined_iterations(3, 0), std::invalid_argument);
  EXPECT_THROW(speedup(0, 3), std::invalid_argument);
}

TEST(Speedup, Examples) {
  EXPECT_EQ(speedup(1, 25), 1.0);
  EXPECT_NEAR(speedup(1'000'000, 25), 25e6 / 1'000'024.0, 1e-12);
  EXPECT_NEAR(speedup(1'000'000, 25), 24.9994, 1e-4);
  for (std::uint64_t k = 300; k < 5000; k += 97) EXPECT_NEAR(speedup(k, 3), 3.0, 0.03);
}

TEST(IterationCounts, PipelinedNeverExceedsSequential) {
  for (std::uint64_t k = 1; k <= 60; ++k) {
    for (std::uint64_t h = 1; h <= 60; ++h) {
      const auto p = pipelined_iterations(k, h);
      const auto s = sequential_iterations(k, h);
      ASSERT_LE(p, s);
      ASSERT_EQ(p == s, k == 1 || h == 1) << k << "," << h;
    }
  }
}

TEST(Speedup, MonotoneAndBounded) {
  for (std::uint64_t h = 1; h <= 40; ++h) {
    double prev = 0.0;
    for (std::uint64_t k = 1; k <= 400; ++k) {
      const double s = speedup(k, h);
      ASSERT_GE(s, prev);
      ASSERT_LE(s, static_cast<double>(h));
      if (k >= h) {
        const double bound = static_cast<double>(h) * (1.0 - static_cast<double>(h - 1) / k);
        ASSERT_GE(s, bound - 1e-12);
      }
      prev = s;
    }
  }
}

TEST(PipelineTiming, SingleIterationStages) {
  AccelConfig cfg;
  cfg.horizon = 25;
  cfg.stage_size = 1;
  cfg.iter_latency = 10e-6;
  const auto r = pipeline_timing(cfg);
  EXPECT_NEAR(r.fill_latency, 250e-6, 1e-15);
  EXPECT_NEAR(r.control_period, 10e-6, 1e-18);
  EXPECT_EQ(r.pipeline_stages, 26);  // 25 state stages plus the terminal-cost stage
  EXPECT_EQ(r.rollouts_per_update, 200);
  EXPECT_NEAR(r.speedup_vs_sequential, 25.0, 1e-12);
}

TEST(PipelineTiming, SingleStageIsUnpipelined) {
  AccelConfig cfg;
  cfg.horizon = 25;
  cfg.stage_size = 25;
  cfg.iter_latency = 3e-6;
  const auto r = pipeline_timing(cfg);
  EXPECT_EQ(r.pipeline_stages, 1);
  EXPECT_DOUBLE_EQ(r.control_period, 25 * 3e-6);
  EXPECT_DOUBLE_EQ(r.fill_latency, r.control_period);
  EXPECT_DOUBLE_EQ(r.speedup_vs_sequential, 1.0);
}

TEST(PipelineTiming, FiveByFive) {
  AccelConfig cfg;
  cfg.num_pipelines = 2;
  cfg.horizon = 25;
  cfg.stage_size = 5;
  cfg.iter_latency = 1e-6;
  const auto r = pipeline_timing(cfg);
  EXPECT_EQ(r.pipeline_stages, 5);
  EXPECT_DOUBLE_EQ(r.control_period, 5e-6);
  EXPECT_DOUBLE_EQ(r.initiation_interval, 5e-6);
  EXPECT_EQ(r.rollouts_per_update, 2);
}

TEST(PipelineTiming, OverheadAddsOncePerUpdate) {
  AccelConfig cfg;
  cfg.iter_latency = 1e-3;
  cfg.transfer_overhead = 2e-3;
  const auto r = pipeline_timing(cfg);
  EXPECT_DOUBLE_EQ(r.control_period, 3e-3);
  EXPECT_DOUBLE_EQ(r.fill_latency, 27e-3);
}

TEST(PipelineTiming, InvalidConfigs) {
  AccelConfig cfg;
  cfg.stage_size = 26;
  EXPECT_THROW(pipeline_timing(cfg), std::invalid_argument);
  cfg = {};
  cfg.num_pipelines = 0;
  EXPECT_THROW(pipeline_timing(cfg), std::invalid_argument);
  cfg = {};
  cfg.iter_latency = 0.0;
  EXPECT_THROW(pipeline_timing(cfg), std::invalid_argument);
  cfg = {};
  cfg.transfer_overhead = -1.0;
  EXPECT_THROW(pipeline_timing(cfg), std::invalid_argument);
}

TEST(PipelineTiming, StagePartitionConservation) {
  for (int h = 1; h <= 64; ++h) {
    for (int s = 1; s <= h; ++s) {
      AccelConfig cfg;
      cfg.horizon = h;
      cfg.stage_size = s;
      const int stages = cfg.compute_stages();
      ASSERT_GE(stages * s, h);
      ASSERT_LT((stages - 1) * s, h);
    }
  }
}

TEST(BatchTiming, Examples) {
  BatchBackendConfig b;
  b.iter_latency = 1e-6;
  const auto r = batch_timing(b, 25);
  EXPECT_DOUBLE_EQ(r.control_period, 25e-6);
  EXPECT_DOUBLE_EQ(r.fill_latency, 25e-6);
  EXPECT_EQ(r.rollouts_per_update, 2000);
  EXPECT_EQ(r.speedup_vs_sequential, 1.0);

  b.transfer_overhead = 4e-6;
  EXPECT_DOUBLE_EQ(batch_timing(b, 1).control_period, 5e-6);
  EXPECT_THROW(batch_timing(b, 0), std::invalid_argument);
}

TEST(BatchTiming, TenfoldLatencyGivesTwoAndAHalfTimesTheRate) {
  BatchBackendConfig b;
  b.iter_latency = 8e-4;
  AccelConfig a;
  a.iter_latency = 10 * b.iter_latency;
  EXPECT_DOUBLE_EQ(batch_timing(b, 25).control_period / pipeline_timing(a).control_period, 2.5);
}

TEST(Consistency, SingleStageMatchesBatchPeriod) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> h_dist(1, 64);
  std::uniform_real_distribution<double> t_dist(1e-7, 1e-2);
  for (int trial = 0; trial < 500; ++trial) {
    AccelConfig a;
    a.horizon = h_dist(rng);
    a.stage_size = a.horizon;
    a.iter_latency = t_dist(rng);
    a.transfer_overhead = t_dist(rng);
    BatchBackendConfig b;
    b.num_lanes = 1;
    b.iter_latency = a.iter_latency;
    b.transfer_overhead = a.transfer_overhead;
    ASSERT_DOUBLE_EQ(pipeline_timing(a).control_period, batch_timing(b, a.horizon).control_period);
  }
}

}  // namespace
}  // namespace mppi::accel
