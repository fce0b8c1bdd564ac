#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "zsk/dataset.hpp"
#include "zsk/matrix.hpp"
#include "zsk/methods.hpp"

namespace zsk {

/// R: coefficients depend linearly on the side information.
/// S: coefficients are an inverse-distance-weighted mix of prototype values.
enum class Family { R, S };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct SynthSpec {
  Family family = Family::R;
  std::size_t targets = 5;                ///< m_o
  std::size_t side_dim = 5;               ///< a_s
  std::size_t instances_per_target = 500; ///< n_o
  std::size_t feature_dim = 50;           ///< a_x
  std::uint64_t seed = 0;
  std::size_t prototypes = 10;            ///< d, S family only

  /// Throws ValidationError if any count is zero.
  void validate() const;
  /// e.g. "R-10-5" (family, targets, side size).
  [[nodiscard]] std::string name() const;
};

/// Everything drawn to build the labels. Not written to the CSVs.
struct GeneratorCoefficients {
  double beta = 0.0;
  std::vector<double> beta_i;  ///< a_x, R only
  Matrix gamma;                ///< a_x x a_s, R only
  Matrix tau;                  ///< a_x x d, S only
  Matrix prototypes;           ///< d x a_s, S only
  Distance norm = Distance::Euclidean;  ///< S only
};

/// Uniform on (-2, -1] U [1, 2), both halves equally likely.
double sample_signed_uniform(std::mt19937_64& rng);

/// alpha_i(s) for every i under the given coefficients.
std::vector<double> feature_coefficients(Family family, const GeneratorCoefficients& coef, std::span<const double> s);

/// y = sum_i alpha_i(s) x_i + beta.
double synthetic_label(Family family, const GeneratorCoefficients& coef, std::span<const double> x,
                       std::span<const double> s);

struct GeneratedDataset {
  ZeroShotDataset data;
  GeneratorCoefficients coefficients;
};

/// Deterministic in the spec. Targets are named t0, t1, ...; instances are
/// drawn independently per target.
GeneratedDataset generate_with_coefficients(const SynthSpec& spec);
ZeroShotDataset generate(const SynthSpec& spec);

/// Uses the given coefficients instead of drawing them; side information and
/// instances are still drawn from the seed.
ZeroShotDataset generate_from_coefficients(const SynthSpec& spec, const GeneratorCoefficients& coefficients);

struct TimingGridSpec {
  std::vector<std::size_t> feature_dims{10, 100, 250, 500};
  std::vector<std::size_t> side_dims{10, 100, 250, 500};
  std::vector<std::size_t> instances_per_target{10, 20, 30, 40};
  std::vector<std::size_t> targets{5, 10, 15, 20};
  std::uint64_t seed = 0;

  void validate() const;
};

struct TimingDataset {
  std::size_t feature_dim;
  std::size_t side_dim;
  std::size_t instances_per_target;
  std::size_t targets;
  ZeroShotDataset data;

  [[nodiscard]] std::size_t joint_features() const noexcept { return feature_dim + side_dim; }
  [[nodiscard]] std::size_t instances() const noexcept { return instances_per_target * targets; }
};

/// (a_x, a_s) are paired index-wise, as are (n_o, m_o); the two pair lists
/// are then crossed. With the defaults: 16 R-family datasets.
std::vector<TimingDataset> generate_timing_grid(const TimingGridSpec& spec);

/// Writes instances.csv, sideinfo.csv and meta.json (the spec and seed).
void save_dataset(const ZeroShotDataset& ds, const SynthSpec& spec, const std::filesystem::path& dir);

}  // namespace zsk
