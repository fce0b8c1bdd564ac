#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "zsk/error.hpp"
#include "zsk/statistics.hpp"

using namespace zsk;

namespace {

double round2(double v) { return std::round(v * 100.0) / 100.0; }

// Relative MSE on the R datasets: BL_L, BL_Q, DSIL.
Matrix r_block() {
  return Matrix::from_rows({{112.03, 113.85, 58.55},
                            {131.46, 0.04, 3.32e-12},
                            {108.35, 4.70e-05, 8.61e-15},
                            {111.40, 2.58e-05, 2.54e-15},
                            {115.68, 89.13, 78.73},
                            {184.42, 72.66, 61.71},
                            {100.68, 2.02e-05, 2.00e-14},
                            {117.02, 1.30e-05, 3.21e-15},
                            {104.87, 107.74, 105.50},
                            {194.14, 80.82, 65.25},
                            {102.47, 1.11e-04, 6.47e-13},
                            {108.13, 1.34e-05, 4.89e-15}});
}

// Relative MSE on the S datasets: SR_E, SR_M, MPLC, DSIL.
Matrix s_block() {
  return Matrix::from_rows({{6.73, 6.84, 136.56, 136.56},
                            {2.30, 2.33, 6.79, 2.45},
                            {1.33, 1.30, 0.28, 0.41},
                            {1.10, 1.08, 0.20, 0.20},
                            {0.19, 0.20, 109.21, 63.40},
                            {0.30, 0.30, 70.73, 70.75},
                            {0.29, 0.29, 0.04, 0.04},
                            {0.35, 0.34, 0.03, 0.03},
                            {0.65, 0.66, 54.71, 54.71},
                            {1.90, 1.90, 54.55, 54.55},
                            {1.52, 1.51, 0.50, 0.50},
                            {1.16, 1.15, 0.16, 0.16}});
}

}  // namespace

TEST(Friedman, RBlockAverageRanks) {
  const auto res = friedman_ranks(r_block());
  ASSERT_EQ(res.average_ranks.size(), 3u);
  EXPECT_DOUBLE_EQ(round2(res.average_ranks[0]), 2.75);
  EXPECT_DOUBLE_EQ(round2(res.average_ranks[1]), 2.17);
  EXPECT_DOUBLE_EQ(round2(res.average_ranks[2]), 1.08);
}

TEST(Friedman, SBlockAverageRanksWithTies) {
  const auto res = friedman_ranks(s_block());
  ASSERT_EQ(res.average_ranks.size(), 4u);
  EXPECT_DOUBLE_EQ(round2(res.average_ranks[0]), 2.54);
  EXPECT_DOUBLE_EQ(round2(res.average_ranks[1]), 2.46);
  EXPECT_DOUBLE_EQ(round2(res.average_ranks[2]), 2.50);
  EXPECT_DOUBLE_EQ(round2(res.average_ranks[3]), 2.50);
}

TEST(Friedman, RowSumsAreTriangular) {
  for (const Matrix& m : {r_block(), s_block()}) {
    const auto res = friedman_ranks(m);
    const double k = static_cast<double>(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
      const auto row = res.ranks.row(r);
      EXPECT_DOUBLE_EQ(std::accumulate(row.begin(), row.end(), 0.0), k * (k + 1.0) / 2.0);
    }
  }
}

TEST(Friedman, TiesShareAverageRank) {
  const std::vector<double> two{3.0, 3.0};
  EXPECT_EQ(rank_row(two), (std::vector<double>{1.5, 1.5}));
  const std::vector<double> mixed{5.0, 1.0, 5.0, 0.5};
  EXPECT_EQ(rank_row(mixed), (std::vector<double>{3.5, 2.0, 3.5, 1.0}));
  const std::vector<double> single{7.0};
  EXPECT_EQ(rank_row(single), (std::vector<double>{1.0}));
}

TEST(Friedman, Validation) {
  EXPECT_THROW((void)friedman_ranks(Matrix::from_rows({{1.0}, {2.0}})), ValidationError);
  EXPECT_THROW((void)friedman_ranks(Matrix::from_rows({{1.0, 2.0}})), ValidationError);
  EXPECT_THROW((void)friedman_ranks(Matrix::from_rows({{1.0, NAN}, {1.0, 2.0}})), DataError);
}

TEST(Nemenyi, CriticalDifferences) {
  EXPECT_NEAR(nemenyi_cd(3, 12, Alpha::P05), 0.9565, 5e-4);
  EXPECT_NEAR(nemenyi_cd(3, 24, Alpha::P05), 0.676, 5e-4);
  EXPECT_NEAR(nemenyi_cd(4, 12, Alpha::P05), 1.354, 5e-4);
  EXPECT_NEAR(nemenyi_cd(4, 24, Alpha::P10), 0.85, 5e-3);
  EXPECT_NEAR(nemenyi_cd(4, 12, Alpha::P10), 1.2075, 5e-4);
  EXPECT_NEAR(nemenyi_cd(6, 6, Alpha::P01), 3.633, 1e-3);
  EXPECT_NEAR(nemenyi_cd(6, 6, Alpha::P05), 3.078, 5e-4);
  EXPECT_NEAR(nemenyi_cd(6, 6, Alpha::P10), 2.796, 5e-4);
}

TEST(Nemenyi, TableValues) {
  EXPECT_NEAR(nemenyi_q(2, Alpha::P05), 1.960, 1e-3);
  EXPECT_NEAR(nemenyi_q(4, Alpha::P05), 2.569, 1e-3);
  EXPECT_NEAR(nemenyi_q(10, Alpha::P05), 3.164, 1e-3);
  EXPECT_NEAR(nemenyi_q(2, Alpha::P10), 1.645, 1e-3);
  EXPECT_NEAR(nemenyi_q(2, Alpha::P01), 2.576, 1e-3);
  for (Alpha a : {Alpha::P01, Alpha::P05, Alpha::P10}) {
    for (std::size_t k = 3; k <= 10; ++k) EXPECT_GT(nemenyi_q(k, a), nemenyi_q(k - 1, a));
  }
  EXPECT_GT(nemenyi_q(5, Alpha::P01), nemenyi_q(5, Alpha::P05));
  EXPECT_GT(nemenyi_q(5, Alpha::P05), nemenyi_q(5, Alpha::P10));
}

TEST(Nemenyi, Validation) {
  EXPECT_THROW((void)nemenyi_cd(1, 12, Alpha::P05), ValidationError);
  EXPECT_THROW((void)nemenyi_cd(11, 12, Alpha::P05), ValidationError);
  EXPECT_THROW((void)nemenyi_cd(3, 0, Alpha::P05), ValidationError);
}

TEST(Nemenyi, Significance) {
  const auto flags = nemenyi_significance({2.75, 2.17, 1.08}, 0.9565);
  EXPECT_TRUE(flags[0][2]);
  EXPECT_TRUE(flags[2][0]);
  EXPECT_TRUE(flags[1][2]);
  EXPECT_FALSE(flags[0][1]);
  EXPECT_FALSE(flags[1][1]);
}
