#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "zsk/dataset.hpp"

namespace zsk {

/// One fold of zero-shot cross-validation. Training rows come from observed
/// targets and the training instance groups; test rows from unobserved
/// targets and the held-out instance group. Rows in the two remaining
/// quadrants are discarded.
struct ZeroShotSplit {
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  std::vector<std::string> observed_targets;
  std::vector<std::string> unobserved_targets;
};

/// Targets are shuffled with `seed` and dealt into `folds` groups; each
/// target's instances are independently shuffled and dealt the same way.
/// Split f holds out target group f and instance group f. Throws
/// ValidationError when folds < 2, there are fewer targets than folds, or a
/// target has fewer instances than folds.
std::vector<ZeroShotSplit> make_splits(const ZeroShotDataset& ds, std::size_t folds, std::uint64_t seed);

/// 100 * sum (y - yhat)^2 / sum (y - train_mean)^2, in percent. Returns
/// nullopt when the denominator is zero (score undefined).
std::optional<double> relative_mse(std::span<const double> y_true, std::span<const double> y_pred,
                                   double y_train_mean);

double mean_squared_error(std::span<const double> y_true, std::span<const double> y_pred);
double mean(std::span<const double> v);

}  // namespace zsk
