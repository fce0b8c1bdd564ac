#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zsk/dataset.hpp"
#include "zsk/methods.hpp"
#include "zsk/statistics.hpp"
#include "zsk/svr.hpp"

namespace zsk {

/// {1e-3, 1e-2, ..., 1e3}
std::vector<double> default_c_grid();

struct GridSearchResult {
  SvrConfig config;
  std::vector<double> c_values;
  std::vector<double> inner_mse;  ///< NaN where every inner fold failed
};

/// Picks the C minimising the mean inner-fold MSE over a zero-shot split of
/// `train`; ties (and all-failed grids) resolve to the smallest C. `base`
/// supplies epsilon, tol and max_passes.
GridSearchResult grid_search_c(const ZeroShotDataset& train, const MethodVariant& variant,
                               const std::vector<double>& grid, const SvrConfig& base, std::size_t folds,
                               std::uint64_t seed);

struct NamedDataset {
  std::string name;
  ZeroShotDataset data;
  std::string group = "all";  ///< report tables are grouped by this (e.g. "R", "S")
};

struct BenchmarkOptions {
  std::size_t folds = 3;
  std::uint64_t seed = 0;
  std::vector<double> c_grid = default_c_grid();
  SvrConfig svr;                  ///< C is overwritten by the grid search
  std::size_t max_parallel_cells = 1;
  bool verbose = false;
};

struct BenchmarkCell {
  std::optional<double> rel_mse;  ///< nullopt: the method failed on this dataset
  std::vector<double> fold_scores;
  std::vector<double> chosen_c;
  std::string error;
};

struct GroupStatistics {
  std::string group;
  std::vector<std::size_t> dataset_indices;  ///< datasets with a valid score for every method
  std::vector<double> average_ranks;
};

struct BenchmarkReport {
  std::vector<std::string> datasets;
  std::vector<std::string> groups;  ///< per dataset
  std::vector<std::string> methods;
  std::vector<std::vector<BenchmarkCell>> cells;  ///< [dataset][method]
  Matrix ranks;  ///< per dataset row; NaN for rows with an invalid cell

  std::vector<GroupStatistics> group_stats;  ///< one per group, in first-seen order
  GroupStatistics overall;
  /// Critical differences over the fully valid datasets; empty when k < 2 or k > 10.
  struct Cd {
    Alpha alpha;
    double value;
  };
  std::vector<Cd> critical_differences;
  std::vector<std::vector<bool>> significant_at_05;
  std::string note;  ///< e.g. "statistics require ≥2 methods"
};

/// Outer zero-shot CV per (dataset, method) with an inner grid search per
/// fold. A failing cell is recorded as invalid; the run continues.
BenchmarkReport run_benchmark(const std::vector<NamedDataset>& datasets, const std::vector<MethodVariant>& methods,
                              const BenchmarkOptions& options);

/// Recomputes ranks and statistics from per-cell scores (used by run_benchmark and the `stats` command).
void compute_statistics(BenchmarkReport& report);

}  // namespace zsk
