#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "zsk/benchmark.hpp"
#include "zsk/timing.hpp"

namespace zsk {

/// Wording attached to every emitted score table.
inline constexpr const char* kRelativeMseDefinition =
    "rel_mse = 100 * sum((y - y_hat)^2) / sum((y - mean(y_train))^2), in percent; "
    "the reference predictor is the training-label mean of each fold";

/// "R-10-5" -> "R"; names without a family prefix map to "all".
std::string infer_group(const std::string& dataset_name);

/// Columns: dataset,method,rel_mse,rank. Invalid cells are written as "nan".
void write_scores_csv(const BenchmarkReport& report, const std::filesystem::path& path);

/// Rebuilds a report (scores only) from scores.csv and recomputes statistics.
BenchmarkReport read_scores_csv(const std::filesystem::path& path);

std::string stats_json(const BenchmarkReport& report);
void write_stats_json(const BenchmarkReport& report, const std::filesystem::path& path);

/// Markdown tables, one block per dataset group plus an overall mean-rank line.
std::string report_markdown(const BenchmarkReport& report);
void write_report_md(const BenchmarkReport& report, const std::filesystem::path& path);

/// Columns: method,ax_plus_as,no_times_mo,seconds_median,kernel_seconds_median.
void write_timing_csv(const std::vector<TimingRecord>& records, const std::filesystem::path& path);

/// One CSV per fixed feature count (time_vs_instances_f{F}.csv) and per
/// fixed instance count (time_vs_features_n{N}.csv); one column per method.
/// Uses fit+predict medians when present, otherwise kernel-cost medians.
std::vector<std::filesystem::path> write_timing_curves(const std::vector<TimingRecord>& records,
                                                       const std::filesystem::path& dir);

}  // namespace zsk
