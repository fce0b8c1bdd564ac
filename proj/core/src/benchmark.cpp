#include "zsk/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <limits>
#include <thread>

#include "zsk/error.hpp"
#include "zsk/splits.hpp"

namespace zsk {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool single_model(const MethodVariant& v) { return v.kind == MethodKind::BL || v.kind == MethodKind::DSIL; }

// Inner-fold MSE for every C. Single-kernel methods build the Gram matrix
// once per fold and re-solve it for each C.
std::vector<double> fold_mse_per_c(const ZeroShotDataset& train, const ZeroShotDataset& test,
                                   const MethodVariant& variant, const std::vector<double>& grid,
                                   const SvrConfig& base) {
  std::vector<double> out(grid.size(), kNaN);
  if (single_model(variant)) {
    const KernelSpec kernel = method_kernel(variant);
    const PointSet points = joint_points(train);
    const Matrix gram = gram_matrix(points, kernel);
    // Ascending C, each solve seeded with the previous solution.
    std::vector<std::size_t> order(grid.size());
    for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });
    std::vector<double> warm;
    for (std::size_t g : order) {
      SvrConfig cfg = base;
      cfg.c = grid[g];
      const DualSolution sol = solve_dual(gram, train.labels(), cfg, warm);
      warm = sol.coefficients;
      SvrModel model = model_from_dual(points, sol, kernel);
      const ZeroShotRegressor reg(variant, train.feature_dim(), train.side_dim(), SingleModelState{std::move(model)});
      out[g] = mean_squared_error(test.labels(), reg.predict(test));
    }
    return out;
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    SvrConfig cfg = base;
    cfg.c = grid[g];
    const ZeroShotRegressor reg = ZeroShotRegressor::fit(train, variant, cfg);
    out[g] = mean_squared_error(test.labels(), reg.predict(test));
  }
  return out;
}

BenchmarkCell run_cell(const ZeroShotDataset& ds, const MethodVariant& variant, const BenchmarkOptions& opt) {
  BenchmarkCell cell;
  try {
    const auto splits = make_splits(ds, opt.folds, opt.seed);
    for (std::size_t f = 0; f < splits.size(); ++f) {
      const ZeroShotDataset train = ds.subset(splits[f].train_rows);
      const ZeroShotDataset test = ds.subset(splits[f].test_rows);
      const GridSearchResult gs = grid_search_c(train, variant, opt.c_grid, opt.svr, opt.folds, opt.seed + 1 + f);
      const ZeroShotRegressor reg = ZeroShotRegressor::fit(train, variant, gs.config);
      const auto pred = reg.predict(test);
      const auto score = relative_mse(test.labels(), pred, mean(train.labels()));
      cell.chosen_c.push_back(gs.config.c);
      if (score) cell.fold_scores.push_back(*score);
    }
    if (cell.fold_scores.empty()) {
      cell.error = "relative MSE undefined on every fold";
    } else {
      cell.rel_mse = mean(cell.fold_scores);
    }
  } catch (const std::exception& e) {
    cell.error = e.what();
    cell.rel_mse.reset();
  }
  return cell;
}

GroupStatistics group_statistics(const std::string& name, const std::vector<std::size_t>& candidates,
                                 const BenchmarkReport& report) {
  GroupStatistics g;
  g.group = name;
  const std::size_t k = report.methods.size();
  g.average_ranks.assign(k, 0.0);
  for (std::size_t d : candidates) {
    if (std::isnan(report.ranks(d, 0))) continue;
    g.dataset_indices.push_back(d);
    for (std::size_t m = 0; m < k; ++m) g.average_ranks[m] += report.ranks(d, m);
  }
  if (g.dataset_indices.empty()) {
    g.average_ranks.assign(k, kNaN);
  } else {
    for (double& r : g.average_ranks) r /= static_cast<double>(g.dataset_indices.size());
  }
  return g;
}

}  // namespace

std::vector<double> default_c_grid() { return {1e-3, 1e-2, 1e-1, 1e0, 1e1, 1e2, 1e3}; }

GridSearchResult grid_search_c(const ZeroShotDataset& train, const MethodVariant& variant,
                               const std::vector<double>& grid, const SvrConfig& base, std::size_t folds,
                               std::uint64_t seed) {
  if (grid.empty()) throw ValidationError("grid_search_c: empty C grid");
  GridSearchResult out;
  out.c_values = grid;
  out.config = base;
  out.config.c = grid.front();
  if (grid.size() == 1) {
    out.inner_mse.assign(1, kNaN);
    return out;
  }

  const auto splits = make_splits(train, folds, seed);
  std::vector<double> total(grid.size(), 0.0);
  std::vector<std::size_t> count(grid.size(), 0);
  for (const auto& split : splits) {
    const ZeroShotDataset inner_train = train.subset(split.train_rows);
    const ZeroShotDataset inner_test = train.subset(split.test_rows);
    const auto mse = fold_mse_per_c(inner_train, inner_test, variant, grid, base);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      if (std::isfinite(mse[g])) {
        total[g] += mse[g];
        ++count[g];
      }
    }
  }
  out.inner_mse.resize(grid.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t g = 0; g < grid.size(); ++g) {
    out.inner_mse[g] = count[g] == splits.size() ? total[g] / static_cast<double>(count[g]) : kNaN;
  }
  // Ascending C order so that ties keep the smaller value.
  std::vector<std::size_t> order(grid.size());
  for (std::size_t g = 0; g < order.size(); ++g) order[g] = g;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return grid[a] < grid[b]; });
  out.config.c = grid[order.front()];
  for (std::size_t g : order) {
    if (out.inner_mse[g] < best) {
      best = out.inner_mse[g];
      out.config.c = grid[g];
    }
  }
  return out;
}

void compute_statistics(BenchmarkReport& report) {
  const std::size_t n = report.datasets.size();
  const std::size_t k = report.methods.size();
  report.ranks = Matrix(n, k, kNaN);
  for (std::size_t d = 0; d < n; ++d) {
    std::vector<double> row(k);
    bool valid = true;
    for (std::size_t m = 0; m < k; ++m) {
      if (!report.cells[d][m].rel_mse) {
        valid = false;
        break;
      }
      row[m] = *report.cells[d][m].rel_mse;
    }
    if (!valid) continue;
    const auto ranks = rank_row(row);
    std::copy(ranks.begin(), ranks.end(), report.ranks.row(d).begin());
  }

  report.group_stats.clear();
  std::vector<std::string> group_names;
  for (const auto& g : report.groups) {
    if (std::find(group_names.begin(), group_names.end(), g) == group_names.end()) group_names.push_back(g);
  }
  for (const auto& name : group_names) {
    std::vector<std::size_t> members;
    for (std::size_t d = 0; d < n; ++d) {
      if (report.groups[d] == name) members.push_back(d);
    }
    report.group_stats.push_back(group_statistics(name, members, report));
  }
  std::vector<std::size_t> all(n);
  for (std::size_t d = 0; d < n; ++d) all[d] = d;
  report.overall = group_statistics("overall", all, report);

  report.critical_differences.clear();
  report.significant_at_05.clear();
  report.note.clear();
  const std::size_t valid_n = report.overall.dataset_indices.size();
  if (k < 2) {
    report.note = "statistics require ≥2 methods";
  } else if (k > 10) {
    report.note = "critical differences are tabulated for at most 10 methods";
  } else if (valid_n < 1) {
    report.note = "no dataset has a valid score for every method";
  } else {
    for (Alpha a : {Alpha::P01, Alpha::P05, Alpha::P10}) {
      report.critical_differences.push_back({a, nemenyi_cd(k, valid_n, a)});
    }
    report.significant_at_05 = nemenyi_significance(report.overall.average_ranks, nemenyi_cd(k, valid_n, Alpha::P05));
    if (valid_n < 2) report.note = "statistics over a single dataset are not meaningful";
  }
}

BenchmarkReport run_benchmark(const std::vector<NamedDataset>& datasets, const std::vector<MethodVariant>& methods,
                              const BenchmarkOptions& options) {
  if (datasets.empty()) throw ValidationError("run_benchmark: no datasets");
  if (methods.empty()) throw ValidationError("run_benchmark: no methods");
  options.svr.validate();

  BenchmarkReport report;
  for (const auto& d : datasets) {
    report.datasets.push_back(d.name);
    report.groups.push_back(d.group);
  }
  for (const auto& m : methods) report.methods.push_back(m.name());
  report.cells.assign(datasets.size(), std::vector<BenchmarkCell>(methods.size()));

  const std::size_t total = datasets.size() * methods.size();
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const std::size_t d = job / methods.size();
      const std::size_t m = job % methods.size();
      report.cells[d][m] = run_cell(datasets[d].data, methods[m], options);
      if (options.verbose) {
        const auto& cell = report.cells[d][m];
        std::cerr << "[benchmark] " << datasets[d].name << " / " << methods[m].name() << ": "
                  << (cell.rel_mse ? std::to_string(*cell.rel_mse) : "FAILED (" + cell.error + ")") << '\n';
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.max_parallel_cells, total));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  compute_statistics(report);
  return report;
}

}  // namespace zsk
