#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "helpers.hpp"
#include "zsk/error.hpp"
#include "zsk/splits.hpp"

using namespace zsk;

namespace {

ZeroShotDataset grid_dataset(std::size_t targets, std::size_t per_target) {
  SideInfoTable side;
  std::vector<std::string> ids;
  for (std::size_t t = 0; t < targets; ++t) {
    ids.push_back("T" + std::to_string(t));
    const double v[] = {static_cast<double>(t)};
    side.add(ids.back(), v);
  }
  Matrix x(targets * per_target, 1);
  std::vector<std::string> row_targets;
  std::vector<double> y;
  for (std::size_t r = 0; r < x.rows(); ++r) {
    x(r, 0) = static_cast<double>(r);
    row_targets.push_back(ids[r / per_target]);
    y.push_back(static_cast<double>(r));
  }
  return ZeroShotDataset(std::move(x), std::move(row_targets), std::move(y), std::move(side));
}

void check_split_properties(const ZeroShotDataset& ds, const std::vector<ZeroShotSplit>& splits) {
  std::set<std::string> all_unobserved;
  for (const auto& sp : splits) {
    const std::set<std::string> obs(sp.observed_targets.begin(), sp.observed_targets.end());
    const std::set<std::string> unobs(sp.unobserved_targets.begin(), sp.unobserved_targets.end());
    for (const auto& t : unobs) {
      ASSERT_FALSE(obs.count(t));
      ASSERT_TRUE(all_unobserved.insert(t).second) << "target held out twice: " << t;
    }
    const std::set<std::size_t> train(sp.train_rows.begin(), sp.train_rows.end());
    for (std::size_t r : sp.test_rows) {
      ASSERT_FALSE(train.count(r));
      ASSERT_TRUE(unobs.count(ds.targets()[r]));
    }
    for (std::size_t r : sp.train_rows) ASSERT_TRUE(obs.count(ds.targets()[r]));
    ASSERT_FALSE(sp.train_rows.empty());
    ASSERT_FALSE(sp.test_rows.empty());
  }
  EXPECT_EQ(all_unobserved.size(), ds.side_info().size());

  // Test instances across folds partition nothing twice, and every row of
  // a target lands in the test set at most once.
  std::vector<int> test_count(ds.rows(), 0);
  for (const auto& sp : splits)
    for (std::size_t r : sp.test_rows) ++test_count[r];
  for (int c : test_count) ASSERT_LE(c, 1);
}

}  // namespace

TEST(Splits, ThreeByThreeExample) {
  const auto ds = grid_dataset(3, 3);
  const auto splits = make_splits(ds, 3, 0);
  ASSERT_EQ(splits.size(), 3u);
  for (const auto& sp : splits) {
    EXPECT_EQ(sp.observed_targets.size(), 2u);
    EXPECT_EQ(sp.unobserved_targets.size(), 1u);
    EXPECT_EQ(sp.train_rows.size(), 4u);
    EXPECT_EQ(sp.test_rows.size(), 1u);
  }
  check_split_properties(ds, splits);
}

TEST(Splits, RandomConfigurationsKeepQuadrants) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t folds = 2 + rng() % 4;
    const std::size_t targets = folds + rng() % 8;
    const std::size_t per = folds + rng() % 6;
    const auto ds = grid_dataset(targets, per);
    const auto splits = make_splits(ds, folds, rng());
    ASSERT_EQ(splits.size(), folds);
    check_split_properties(ds, splits);
    // Each held-out target contributes exactly one instance group.
    for (const auto& sp : splits) {
      const std::size_t lo = per / folds;
      const std::size_t hi = (per + folds - 1) / folds;
      std::map<std::string, std::size_t> test_per_target;
      for (std::size_t r : sp.test_rows) ++test_per_target[ds.targets()[r]];
      for (const auto& [t, n] : test_per_target) {
        EXPECT_GE(n, lo);
        EXPECT_LE(n, hi);
      }
    }
  }
}

TEST(Splits, DeterministicInSeed) {
  const auto ds = grid_dataset(6, 6);
  const auto a = make_splits(ds, 3, 5);
  const auto b = make_splits(ds, 3, 5);
  for (std::size_t f = 0; f < 3; ++f) {
    EXPECT_EQ(a[f].train_rows, b[f].train_rows);
    EXPECT_EQ(a[f].test_rows, b[f].test_rows);
  }
}

TEST(Splits, Validation) {
  const auto ds = grid_dataset(3, 3);
  EXPECT_THROW((void)make_splits(ds, 1, 0), ValidationError);
  EXPECT_THROW((void)make_splits(ds, 4, 0), ValidationError);
  EXPECT_THROW((void)make_splits(grid_dataset(5, 2), 3, 0), ValidationError);
}

TEST(RelativeMse, Cases) {
  const std::vector<double> y{1.0, 2.0, 3.0};
  EXPECT_DOUBLE_EQ(*relative_mse(y, y, 0.0), 0.0);
  const std::vector<double> mean_pred{2.0, 2.0, 2.0};
  EXPECT_DOUBLE_EQ(*relative_mse(y, mean_pred, 2.0), 100.0);
  const std::vector<double> y2{0.0, 2.0}, p2{1.0, 1.0};
  EXPECT_DOUBLE_EQ(*relative_mse(y2, p2, 1.0), 100.0);
  const std::vector<double> flat{4.0, 4.0}, any{1.0, 2.0};
  EXPECT_FALSE(relative_mse(flat, any, 4.0).has_value());
  EXPECT_THROW((void)relative_mse(y, p2, 0.0), DataError);
}

TEST(RelativeMse, AffineInvariance) {
  std::mt19937_64 rng(3);
  const auto y = test::uniform_vector(rng, 50, -3.0, 3.0);
  const auto p = test::uniform_vector(rng, 50, -3.0, 3.0);
  const double base = *relative_mse(y, p, 0.3);
  for (double a : {0.5, 2.0, -7.0}) {
    for (double b : {0.0, 10.0}) {
      std::vector<double> ya(y), pa(p);
      for (auto& v : ya) v = a * v + b;
      for (auto& v : pa) v = a * v + b;
      EXPECT_NEAR(*relative_mse(ya, pa, a * 0.3 + b), base, 1e-9 * base);
    }
  }
}

TEST(Basics, MeanAndMse) {
  const std::vector<double> a{1.0, 3.0}, b{2.0, 5.0};
  EXPECT_DOUBLE_EQ(mean(a), 2.0);
  EXPECT_DOUBLE_EQ(mean_squared_error(a, b), 2.5);
  EXPECT_THROW((void)mean(std::vector<double>{}), DataError);
}
