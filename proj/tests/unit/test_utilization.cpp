#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "mppi/utilization.hpp"

namespace mppi::accel {
namespace {

std::vector<UtilizationRow> shipped_table() {
  return load_utilization_table(std::filesystem::path(MPPI_SOURCE_DIR) / "data" /
                                "utilization_u55c.txt");
}

double model_value(const UtilizationModel& m, const UtilizationRow& r) {
  return m.base_fraction + r.pipelines * r.stages * m.cost_for(r.stage_size);
}

TEST(UtilizationTable, ShippedTableHasFiveRows) {
  const auto rows = shipped_table();
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[0].pipelines, 1);
  EXPECT_EQ(rows[0].stages, 25);
  EXPECT_EQ(rows[0].stage_size, 1);
  EXPECT_EQ(rows[0].utilization_percent, 12.58);
  EXPECT_EQ(rows[2].pipelines, 2);
  EXPECT_EQ(rows[2].stages, 5);
  EXPECT_EQ(rows[2].stage_size, 5);
  EXPECT_EQ(rows[2].utilization_percent, 66.30);
  EXPECT_EQ(rows[4].utilization_percent, 96.56);
}

TEST(UtilizationTable, ParsesCommentsAndBlankLines) {
  std::istringstream in("# header\n\n 3 4 5 6.5  # trailing\n1 1 1 1\n");
  const auto rows = parse_utilization_table(in);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].utilization_percent, 6.5);
}

TEST(UtilizationTable, ReportsLineOfMalformedRow) {
  std::istringstream in("1 25 1 12.58\n5 25 oops 83.28\n");
  try {
    parse_utilization_table(in);
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  std::istringstream extra("1 25 1 12.58 7\n");
  EXPECT_THROW(parse_utilization_table(extra), std::runtime_error);
  std::istringstream zero("0 25 1 12.58\n");
  EXPECT_THROW(parse_utilization_table(zero), std::runtime_error);
}

TEST(UtilizationTable, MissingFileNamesPath) {
  try {
    load_utilization_table("/nonexistent/table.txt");
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/table.txt"), std::string::npos);
  }
}

TEST(UtilizationFit, ReplaysEveryRowWithinTwoPoints) {
  const auto rows = shipped_table();
  const auto model = fit_utilization_model(rows);
  for (const auto& r : rows) {
    EXPECT_NEAR(estimate_utilization(r.pipelines, r.stages * r.stage_size, r.stage_size, model),
                r.utilization_percent, 2.0)
        << r.pipelines << " pipelines, s=" << r.stage_size;
  }
}

TEST(UtilizationFit, ResidualIsOrthogonalToDesignColumns) {
  // Normal equations of the least-squares problem, checked directly.
  const auto rows = shipped_table();
  const auto model = fit_utilization_model(rows);
  double sum = 0.0;
  std::map<int, double> per_size;
  for (const auto& r : rows) {
    const double residual = r.utilization_percent - model_value(model, r);
    sum += residual;
    per_size[r.stage_size] += residual * r.pipelines * r.stages;
  }
  EXPECT_NEAR(sum, 0.0, 1e-9);
  for (const auto& [size, dot] : per_size) EXPECT_NEAR(dot, 0.0, 1e-9) << "s=" << size;
}

TEST(UtilizationFit, TwoRowFitInterpolatesLinearly) {
  const auto rows = shipped_table();
  const std::vector<UtilizationRow> last_two(rows.begin() + 3, rows.end());
  const auto model = fit_utilization_model(last_two);
  const double oracle = 69.22 + (12.0 - 10.0) * (96.56 - 69.22) / (14.0 - 10.0);
  EXPECT_NEAR(oracle, 82.89, 1e-12);
  EXPECT_NEAR(estimate_utilization(12, 25, 25, model), oracle, 1e-9);
  EXPECT_NEAR(estimate_utilization(10, 25, 25, model), 69.22, 1e-9);
  EXPECT_NEAR(estimate_utilization(14, 25, 25, model), 96.56, 1e-9);
}

TEST(UtilizationModel, ZeroCostModelGivesZero) {
  UtilizationModel m;
  m.stage_cost[1] = 0.0;
  EXPECT_EQ(estimate_utilization(1, 25, 1, m), 0.0);
}

TEST(UtilizationModel, NegativeEstimatesClampToZero) {
  UtilizationModel m;
  m.base_fraction = -10.0;
  m.stage_cost[1] = 0.1;
  EXPECT_EQ(estimate_utilization(1, 25, 1, m), 0.0);
}

TEST(UtilizationModel, UnknownStageSizeThrows) {
  const auto model = fit_utilization_model(shipped_table());
  EXPECT_THROW(estimate_utilization(1, 25, 3, model), std::out_of_range);
  EXPECT_THROW(estimate_utilization(1, 4, 5, model), std::invalid_argument);
  EXPECT_THROW(estimate_utilization(0, 25, 1, model), std::invalid_argument);
}

TEST(UtilizationModel, StrictlyIncreasingInPipelines) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> cost(1e-3, 2.0);
  std::uniform_real_distribution<double> base(0.0, 20.0);
  for (int trial = 0; trial < 200; ++trial) {
    UtilizationModel m;
    m.base_fraction = base(rng);
    m.stage_cost[1] = cost(rng);
    m.stage_cost[5] = cost(rng);
    for (int s : {1, 5}) {
      double prev = -1.0;
      for (int p = 1; p <= 50; ++p) {
        const double u = estimate_utilization(p, 25, s, m);
        ASSERT_GT(u, prev);
        prev = u;
      }
    }
  }
}

TEST(UtilizationModel, Feasibility) {
  const auto model = fit_utilization_model(shipped_table());
  EXPECT_TRUE(is_feasible(1, 25, 1, model));
  EXPECT_TRUE(is_feasible(14, 25, 25, model));
  EXPECT_FALSE(is_feasible(200, 25, 1, model));

  const int p = max_feasible_pipelines(25, 25, model);
  EXPECT_TRUE(is_feasible(p, 25, 25, model));
  EXPECT_FALSE(is_feasible(p + 1, 25, 25, model));

  UtilizationModel tight = model;
  tight.budget = 50.0;
  EXPECT_LT(max_feasible_pipelines(25, 25, tight), p);

  UtilizationModel free;
  free.stage_cost[1] = 0.0;
  EXPECT_THROW(max_feasible_pipelines(25, 1, free), std::invalid_argument);
}

TEST(UtilizationFit, EmptyTableThrows) {
  EXPECT_THROW(fit_utilization_model(std::vector<UtilizationRow>{}), std::invalid_argument);
}

}  // namespace
}  // namespace mppi::accel
