#include <gtest/gtest.h>

#include "zsk/error.hpp"
#include "zsk/kernels.hpp"
#include "zsk/methods.hpp"
#include "zsk/timing.hpp"

using namespace zsk;

TEST(Median, OddEvenAndEmpty) {
  EXPECT_DOUBLE_EQ(median({3.0, 1.0, 2.0}), 2.0);
  EXPECT_DOUBLE_EQ(median({4.0, 1.0, 2.0, 3.0}), 2.5);
  EXPECT_DOUBLE_EQ(median({}), 0.0);
}

TEST(Polyfit, ExactOnLinearAndQuadratic) {
  const std::vector<double> x{1.0, 2.0, 3.0, 4.0, 5.0};
  std::vector<double> lin, quad;
  for (double v : x) {
    lin.push_back(2.0 * v - 1.0);
    quad.push_back(0.5 * v * v - 3.0 * v + 4.0);
  }
  const auto a = polyfit(x, lin, 1);
  EXPECT_NEAR(a.coefficients[0], -1.0, 1e-10);
  EXPECT_NEAR(a.coefficients[1], 2.0, 1e-10);
  EXPECT_NEAR(a.rss, 0.0, 1e-18);
  EXPECT_NEAR(a.r_squared, 1.0, 1e-12);
  const auto b = polyfit(x, quad, 2);
  ASSERT_EQ(b.coefficients.size(), 3u);
  EXPECT_NEAR(b.coefficients[0], 4.0, 1e-9);
  EXPECT_NEAR(b.coefficients[1], -3.0, 1e-9);
  EXPECT_NEAR(b.coefficients[2], 0.5, 1e-10);
  const auto c = polyfit(x, quad, 1);
  EXPECT_LT(c.r_squared, 1.0);
  EXPECT_GT(c.rss, 0.0);
}

TEST(Polyfit, TooFewPoints) {
  EXPECT_THROW((void)polyfit({1.0, 2.0}, {1.0, 2.0}, 2), DataError);
}

TEST(KernelCost, FullAndSampled) {
  const Matrix pts = Matrix::from_rows({{1.0, 2.0, 3.0, 4.0}, {0.5, 0.1, 0.2, 0.3}, {1.0, 1.0, 1.0, 1.0}});
  const PointSet p(pts, 2);
  for (auto f : {DsilFormulation::Phi, DsilFormulation::KPhi, DsilFormulation::KQ}) {
    EXPECT_GT(measure_kernel_cost(p, KernelSpec::dsil(f), 0), 0.0);
    EXPECT_GT(measure_kernel_cost(p, KernelSpec::dsil(f), 10), 0.0);
  }
}

TEST(RunTiming, SmallGrid) {
  TimingGridSpec spec;
  spec.feature_dims = {3, 6};
  spec.side_dims = {2, 4};
  spec.instances_per_target = {4, 6};
  spec.targets = {3, 4};
  const auto grid = generate_timing_grid(spec);
  ASSERT_EQ(grid.size(), 4u);
  TimingOptions opt;
  opt.repeats = 3;
  const auto methods = default_timing_methods();
  ASSERT_EQ(methods.size(), 4u);
  const auto rec = run_timing(grid, methods, opt);
  ASSERT_EQ(rec.size(), 16u);
  for (const auto& r : rec) {
    EXPECT_EQ(r.seconds.size(), 3u);
    EXPECT_EQ(r.kernel_seconds.size(), 3u);
    EXPECT_GT(r.seconds_median, 0.0);
    EXPECT_GT(r.kernel_seconds_median, 0.0);
  }
  EXPECT_EQ(rec[0].joint_features, 5u);
  EXPECT_EQ(rec[0].instances, 12u);

  opt.include_fit = false;
  opt.kernel_sample_pairs = 5;
  const auto kernel_only = run_timing(grid, methods, opt);
  for (const auto& r : kernel_only) {
    EXPECT_TRUE(r.seconds.empty());
    EXPECT_EQ(r.kernel_seconds.size(), 3u);
  }
}
