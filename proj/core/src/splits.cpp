#include "zsk/splits.hpp"

#include <algorithm>
#include <random>

#include "zsk/error.hpp"

namespace zsk {

std::vector<ZeroShotSplit> make_splits(const ZeroShotDataset& ds, std::size_t folds, std::uint64_t seed) {
  if (folds < 2) throw ValidationError("zero-shot CV needs at least 2 folds");
  const std::vector<TargetSlice> slices = slice_by_target(ds);
  if (slices.size() < folds) {
    throw ValidationError("zero-shot CV: " + std::to_string(slices.size()) + " targets is fewer than " +
                          std::to_string(folds) + " folds");
  }
  for (const auto& s : slices) {
    if (s.rows.size() < folds) {
      throw ValidationError("zero-shot CV: target '" + s.target_id + "' has " + std::to_string(s.rows.size()) +
                            " instances, fewer than " + std::to_string(folds) + " folds");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> target_order(slices.size());
  for (std::size_t i = 0; i < target_order.size(); ++i) target_order[i] = i;
  std::shuffle(target_order.begin(), target_order.end(), rng);
  std::vector<std::size_t> target_group(slices.size());
  for (std::size_t k = 0; k < target_order.size(); ++k) target_group[target_order[k]] = k % folds;

  // instance_group[t][k] is the fold of the k-th row of slice t.
  std::vector<std::vector<std::size_t>> instance_group(slices.size());
  for (std::size_t t = 0; t < slices.size(); ++t) {
    std::vector<std::size_t> order(slices[t].rows.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    instance_group[t].resize(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) instance_group[t][order[k]] = k % folds;
  }

  std::vector<ZeroShotSplit> splits(folds);
  for (std::size_t f = 0; f < folds; ++f) {
    ZeroShotSplit& split = splits[f];
    for (std::size_t t = 0; t < slices.size(); ++t) {
      const bool unobserved = target_group[t] == f;
      (unobserved ? split.unobserved_targets : split.observed_targets).push_back(slices[t].target_id);
      for (std::size_t k = 0; k < slices[t].rows.size(); ++k) {
        const bool test_instance = instance_group[t][k] == f;
        if (unobserved && test_instance) split.test_rows.push_back(slices[t].rows[k]);
        if (!unobserved && !test_instance) split.train_rows.push_back(slices[t].rows[k]);
      }
    }
    std::sort(split.train_rows.begin(), split.train_rows.end());
    std::sort(split.test_rows.begin(), split.test_rows.end());
  }
  return splits;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw DataError("mean of an empty vector");
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double mean_squared_error(std::span<const double> y_true, std::span<const double> y_pred) {
  if (y_true.size() != y_pred.size() || y_true.empty()) throw DataError("mean_squared_error: bad lengths");
  double acc = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double d = y_true[i] - y_pred[i];
    acc += d * d;
  }
  return acc / static_cast<double>(y_true.size());
}

std::optional<double> relative_mse(std::span<const double> y_true, std::span<const double> y_pred,
                                   double y_train_mean) {
  if (y_true.size() != y_pred.size()) throw DataError("relative_mse: length mismatch");
  if (y_true.empty()) throw DataError("relative_mse: empty input");
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const double e = y_true[i] - y_pred[i];
    const double r = y_true[i] - y_train_mean;
    num += e * e;
    den += r * r;
  }
  if (den == 0.0) return std::nullopt;
  return 100.0 * num / den;
}

}  // namespace zsk
