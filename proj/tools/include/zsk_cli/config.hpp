#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zsk/benchmark.hpp"
#include "zsk/datagen.hpp"
#include "zsk/methods.hpp"
#include "zsk/svr.hpp"
#include "zsk/timing.hpp"

namespace zsk::cli {

/// Either a directory holding instances.csv + sideinfo.csv, or a synthetic spec.
struct DatasetEntry {
  std::string name;
  std::string group = "all";
  std::filesystem::path path;
  std::optional<SynthSpec> synthetic;
  bool explicit_seed = false;
};

struct TimingSection {
  TimingGridSpec grid;
  std::vector<MethodVariant> methods = default_timing_methods();
  TimingOptions options;
};

struct ExperimentConfig {
  std::vector<DatasetEntry> datasets;
  std::vector<MethodVariant> methods;
  std::size_t folds = 3;
  std::uint64_t seed = 0;
  SvrConfig svr;
  std::vector<double> c_grid = default_c_grid();
  std::filesystem::path output_dir = "results";
  std::size_t max_parallel_cells = 0;  ///< 0: one per hardware thread
  TimingSection timing;

  /// At least one dataset and one method; folds >= 2; non-empty positive C grid.
  void validate_for_benchmark() const;
};

/// Parses a config document. Relative paths resolve against `base_dir`.
/// Throws ValidationError on unknown keys, wrong types or a missing seed.
ExperimentConfig parse_config(const std::string& json_text, const std::filesystem::path& base_dir);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Parses a ZSK_SEED value; throws ValidationError if it is not an unsigned integer.
std::uint64_t parse_seed(const std::string& text);

/// Replaces the seed (and every derived synthetic seed) when ZSK_SEED is set.
void apply_seed_override(ExperimentConfig& cfg, const char* env_value);

/// Seeds synthetic entries that did not set their own: config seed + entry index.
void assign_dataset_seeds(ExperimentConfig& cfg);

/// The 24 R/S specs (a_s in {5,15,25} x m_o in {5,10,50,100}, per family).
std::vector<SynthSpec> paper_suite(const std::vector<Family>& families, std::size_t instances_per_target,
                                   std::size_t feature_dim, const std::vector<std::size_t>& targets,
                                   const std::vector<std::size_t>& side_dims);

/// Materialises every dataset entry (generating synthetic ones).
std::vector<NamedDataset> materialise(const ExperimentConfig& cfg);

}  // namespace zsk::cli
