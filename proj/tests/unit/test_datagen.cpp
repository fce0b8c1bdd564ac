#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "helpers.hpp"
#include "json.hpp"
#include "zsk/datagen.hpp"
#include "zsk/error.hpp"

using namespace zsk;

namespace {

SynthSpec spec_of(Family f, std::size_t targets, std::size_t side, std::size_t n_o, std::size_t a_x,
                  std::uint64_t seed) {
  SynthSpec s;
  s.family = f;
  s.targets = targets;
  s.side_dim = side;
  s.instances_per_target = n_o;
  s.feature_dim = a_x;
  s.seed = seed;
  return s;
}

}  // namespace

TEST(SignedUniform, RangeAndMoments) {
  std::mt19937_64 rng(2024);
  double sum = 0.0, abs_sum = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double v = sample_signed_uniform(rng);
    ASSERT_GE(std::abs(v), 1.0);
    ASSERT_LT(std::abs(v), 2.0);
    sum += v;
    abs_sum += std::abs(v);
  }
  EXPECT_NEAR(sum / n, 0.0, 0.01);
  EXPECT_NEAR(abs_sum / n, 1.5, 0.01);
}

TEST(SynthSpec, ValidationAndNames) {
  EXPECT_EQ(spec_of(Family::R, 10, 5, 500, 50, 0).name(), "R-10-5");
  EXPECT_EQ(spec_of(Family::S, 100, 25, 500, 50, 0).name(), "S-100-25");
  EXPECT_THROW(spec_of(Family::R, 0, 5, 500, 50, 0).validate(), ValidationError);
  EXPECT_THROW(spec_of(Family::R, 5, 0, 500, 50, 0).validate(), ValidationError);
  EXPECT_THROW((void)family_from_string("Q"), ValidationError);
}

TEST(Generator, RFormulaByHand) {
  GeneratorCoefficients coef;
  coef.beta = 1.0;
  coef.beta_i = {1.0};
  coef.gamma = Matrix::from_rows({{1.0}});
  const std::vector<double> x{2.0}, s{2.0};
  EXPECT_DOUBLE_EQ(synthetic_label(Family::R, coef, x, s), 7.0);

  const auto ds = generate_from_coefficients(spec_of(Family::R, 3, 1, 4, 1, 5), coef);
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    EXPECT_DOUBLE_EQ(ds.labels()[r], (ds.s(r)[0] + 1.0) * ds.x(r)[0] + 1.0);
  }
}

TEST(Generator, SFamilyExactPrototypeCollapses) {
  GeneratorCoefficients coef;
  coef.tau = Matrix::from_rows({{2.0, 5.0}});
  coef.prototypes = Matrix::from_rows({{0.0, 0.0}, {3.0, 4.0}});
  coef.norm = Distance::Euclidean;
  const std::vector<double> on_proto{3.0, 4.0};
  EXPECT_EQ(feature_coefficients(Family::S, coef, on_proto), std::vector<double>{5.0});
  const std::vector<double> mid{0.0, 5.0};
  const auto a = feature_coefficients(Family::S, coef, mid);
  EXPECT_NEAR(a[0], (2.0 / 5.0 + 5.0 / std::sqrt(10.0)) / (1.0 / 5.0 + 1.0 / std::sqrt(10.0)), 1e-12);
}

TEST(Generator, Shapes) {
  const auto ds = generate(spec_of(Family::R, 10, 5, 500, 50, 1));
  EXPECT_EQ(ds.rows(), 5000u);
  EXPECT_EQ(ds.feature_dim(), 50u);
  EXPECT_EQ(ds.side_info().size(), 10u);
  EXPECT_EQ(ds.side_dim(), 5u);
  EXPECT_EQ(ds.target_order().front(), "t0");
}

TEST(Generator, DeterministicInSeed) {
  for (Family f : {Family::R, Family::S}) {
    const auto a = generate(spec_of(f, 5, 5, 30, 10, 42));
    const auto b = generate(spec_of(f, 5, 5, 30, 10, 42));
    const auto c = generate(spec_of(f, 5, 5, 30, 10, 43));
    EXPECT_EQ(a, b);
    EXPECT_FALSE(a == c);
  }
}

TEST(Generator, ValuesInSignedRangeAndLabelsFollowFormula) {
  for (Family f : {Family::R, Family::S}) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto g = generate_with_coefficients(spec_of(f, 6, 4, 20, 8, seed));
      const auto& ds = g.data;
      for (double v : ds.features().data()) ASSERT_TRUE(std::abs(v) >= 1.0 && std::abs(v) < 2.0);
      for (double v : ds.side_info().values().data()) ASSERT_TRUE(std::abs(v) >= 1.0 && std::abs(v) < 2.0);
      for (std::size_t r = 0; r < ds.rows(); ++r) {
        const double y = synthetic_label(f, g.coefficients, ds.x(r), ds.s(r));
        ASSERT_LE(std::abs(y - ds.labels()[r]), 1e-12 * std::max(1.0, std::abs(y)));
      }
      if (f == Family::S) EXPECT_EQ(g.coefficients.prototypes.rows(), 10u);
    }
  }
}

TEST(Generator, NormChoiceIsSplitBetweenSeeds) {
  int manhattan = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    manhattan += generate_with_coefficients(spec_of(Family::S, 2, 2, 1, 1, seed)).coefficients.norm == Distance::Manhattan;
  }
  EXPECT_GT(manhattan, 60);
  EXPECT_LT(manhattan, 140);
}

TEST(TimingGrid, DefaultGrid) {
  TimingGridSpec spec;
  spec.feature_dims = {10, 100, 250, 500};
  spec.side_dims = {10, 100, 250, 500};
  const auto grid = generate_timing_grid(spec);
  ASSERT_EQ(grid.size(), 16u);
  EXPECT_EQ(grid[0].data.rows(), 50u);
  EXPECT_EQ(grid[0].joint_features(), 20u);
  std::set<std::size_t> features, instances;
  for (const auto& g : grid) {
    features.insert(g.joint_features());
    instances.insert(g.instances());
    EXPECT_EQ(g.data.rows(), g.instances());
    EXPECT_EQ(g.data.feature_dim() + g.data.side_dim(), g.joint_features());
  }
  EXPECT_EQ(features, (std::set<std::size_t>{20, 200, 500, 1000}));
  EXPECT_EQ(instances, (std::set<std::size_t>{50, 200, 450, 800}));
  const auto again = generate_timing_grid(spec);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_EQ(grid[i].data, again[i].data);
}

TEST(TimingGrid, UnpairedListsRejected) {
  TimingGridSpec spec;
  spec.side_dims = {10};
  EXPECT_THROW((void)generate_timing_grid(spec), ValidationError);
}

TEST(SaveDataset, MetaRecordsSpec) {
  zsk::test::TempDir dir("meta");
  SynthSpec spec = spec_of(Family::S, 4, 3, 5, 2, 77);
  spec.prototypes = 10;
  save_dataset(generate(spec), spec, dir.path);
  const auto meta = nlohmann::json::parse(zsk::test::read_file(dir.path / "meta.json"));
  EXPECT_EQ(meta.at("family"), "S");
  EXPECT_EQ(meta.at("prototypes"), 10);
  EXPECT_EQ(meta.at("seed"), 77);
  EXPECT_EQ(meta.at("targets"), 4);
}
