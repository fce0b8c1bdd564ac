#include <gtest/gtest.h>

#include "helpers.hpp"
#include "json.hpp"
#include "zsk/error.hpp"
#include "zsk/model_io.hpp"

using namespace zsk;

namespace {

SvrConfig config(double c, double eps) {
  SvrConfig cfg;
  cfg.c = c;
  cfg.epsilon = eps;
  return cfg;
}

}  // namespace

TEST(ModelIo, RoundTripPredictsIdentically) {
  std::mt19937_64 rng(13);
  const auto ds = zsk::test::random_dataset(rng, 4, 6, 2, 2);
  const std::vector<MethodVariant> variants{
      MethodVariant::bl_linear(), MethodVariant::bl_quadratic(), MethodVariant::sr(Distance::Euclidean),
      MethodVariant::sr(Distance::Manhattan), MethodVariant::mplc(), MethodVariant::dsil(DsilFormulation::Phi),
      MethodVariant::dsil(DsilFormulation::KPhi), MethodVariant::dsil(DsilFormulation::KQ)};
  zsk::test::TempDir dir("model_io");
  for (const auto& v : variants) {
    const auto reg = ZeroShotRegressor::fit(ds, v, config(1.0, 0.1));
    const auto path = dir.path / (v.name() + ".json");
    save_model(reg, path);
    const auto back = load_model(path);
    EXPECT_EQ(back.variant(), v);
    EXPECT_EQ(back.predict(ds), reg.predict(ds)) << v.name();
    EXPECT_EQ(serialize_model(back), serialize_model(reg)) << v.name();
  }
}

TEST(ModelIo, VersionMismatchIsRejected) {
  const auto reg = ZeroShotRegressor::fit(zsk::test::toy_dataset(), MethodVariant::dsil(), config(1.0, 0.1));
  auto doc = nlohmann::json::parse(serialize_model(reg));
  doc["version"] = kModelFormatVersion + 1;
  EXPECT_THROW((void)deserialize_model(doc.dump()), DataError);
  doc["version"] = kModelFormatVersion;
  doc["format"] = "something-else";
  EXPECT_THROW((void)deserialize_model(doc.dump()), DataError);
}

TEST(ModelIo, MalformedInputIsDataError) {
  EXPECT_THROW((void)deserialize_model("not json"), DataError);
  EXPECT_THROW((void)deserialize_model("{}"), DataError);
  EXPECT_THROW((void)load_model("/nonexistent/model.json"), DataError);
}
