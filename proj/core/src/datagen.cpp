#include "zsk/datagen.hpp"

#include <fstream>

#include "json.hpp"
#include "zsk/error.hpp"

namespace zsk {
namespace {

std::vector<double> draw_vector(std::mt19937_64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = sample_signed_uniform(rng);
  return v;
}

Matrix draw_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  Matrix m(rows, cols);
  for (double& x : m.data()) x = sample_signed_uniform(rng);
  return m;
}

GeneratorCoefficients draw_coefficients(const SynthSpec& spec, std::mt19937_64& rng) {
  GeneratorCoefficients c;
  if (spec.family == Family::S) {
    c.norm = std::bernoulli_distribution(0.5)(rng) ? Distance::Manhattan : Distance::Euclidean;
  }
  c.beta = sample_signed_uniform(rng);
  if (spec.family == Family::R) {
    c.beta_i = draw_vector(rng, spec.feature_dim);
    c.gamma = draw_matrix(rng, spec.feature_dim, spec.side_dim);
  } else {
    c.tau = draw_matrix(rng, spec.feature_dim, spec.prototypes);
    c.prototypes = draw_matrix(rng, spec.prototypes, spec.side_dim);
  }
  return c;
}

ZeroShotDataset draw_dataset(const SynthSpec& spec, const GeneratorCoefficients& coef, std::mt19937_64& rng) {
  SideInfoTable side_info;
  Matrix features(spec.targets * spec.instances_per_target, spec.feature_dim);
  std::vector<std::string> targets;
  std::vector<double> labels;
  targets.reserve(features.rows());
  labels.reserve(features.rows());

  std::size_t row = 0;
  for (std::size_t t = 0; t < spec.targets; ++t) {
    const std::string id = "t" + std::to_string(t);
    const std::vector<double> s = draw_vector(rng, spec.side_dim);
    side_info.add(id, s);
    const std::vector<double> alpha = feature_coefficients(spec.family, coef, s);
    for (std::size_t k = 0; k < spec.instances_per_target; ++k, ++row) {
      auto x = features.row(row);
      double y = coef.beta;
      for (std::size_t i = 0; i < spec.feature_dim; ++i) {
        x[i] = sample_signed_uniform(rng);
        y += alpha[i] * x[i];
      }
      targets.push_back(id);
      labels.push_back(y);
    }
  }
  return ZeroShotDataset(std::move(features), std::move(targets), std::move(labels), std::move(side_info));
}

}  // namespace

std::string to_string(Family f) { return f == Family::R ? "R" : "S"; }

Family family_from_string(const std::string& s) {
  if (s == "R" || s == "r") return Family::R;
  if (s == "S" || s == "s") return Family::S;
  throw ValidationError("unknown dataset family '" + s + "' (expected R or S)");
}

void SynthSpec::validate() const {
  if (targets < 1 || side_dim < 1 || instances_per_target < 1 || feature_dim < 1) {
    throw ValidationError("synthetic spec: all counts must be >= 1");
  }
  if (family == Family::S && prototypes < 1) throw ValidationError("synthetic spec: S family needs >= 1 prototype");
}

std::string SynthSpec::name() const {
  return to_string(family) + "-" + std::to_string(targets) + "-" + std::to_string(side_dim);
}

double sample_signed_uniform(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> magnitude(1.0, 2.0);
  const bool negative = std::bernoulli_distribution(0.5)(rng);
  const double m = magnitude(rng);
  return negative ? -m : m;
}

std::vector<double> feature_coefficients(Family family, const GeneratorCoefficients& coef, std::span<const double> s) {
  if (family == Family::R) {
    const std::size_t ax = coef.gamma.rows();
    std::vector<double> alpha(ax);
    for (std::size_t i = 0; i < ax; ++i) alpha[i] = dot(coef.gamma.row(i), s) + coef.beta_i[i];
    return alpha;
  }
  const std::size_t ax = coef.tau.rows();
  const std::size_t d = coef.prototypes.rows();
  std::vector<double> weights(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double dist = distance(s, coef.prototypes.row(k), coef.norm);
    if (dist < kExactMatchDistance) {
      // s sits on prototype k: the weighted mix collapses to tau_{i,k}.
      std::vector<double> alpha(ax);
      for (std::size_t i = 0; i < ax; ++i) alpha[i] = coef.tau(i, k);
      return alpha;
    }
    weights[k] = 1.0 / dist;
  }
  double total = 0.0;
  for (double w : weights) total += w;
  std::vector<double> alpha(ax);
  for (std::size_t i = 0; i < ax; ++i) alpha[i] = dot(coef.tau.row(i), weights) / total;
  return alpha;
}

double synthetic_label(Family family, const GeneratorCoefficients& coef, std::span<const double> x,
                       std::span<const double> s) {
  const std::vector<double> alpha = feature_coefficients(family, coef, s);
  double y = coef.beta;
  for (std::size_t i = 0; i < x.size(); ++i) y += alpha[i] * x[i];
  return y;
}

GeneratedDataset generate_with_coefficients(const SynthSpec& spec) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  GeneratorCoefficients coef = draw_coefficients(spec, rng);
  ZeroShotDataset data = draw_dataset(spec, coef, rng);
  return {std::move(data), std::move(coef)};
}

ZeroShotDataset generate(const SynthSpec& spec) { return generate_with_coefficients(spec).data; }

ZeroShotDataset generate_from_coefficients(const SynthSpec& spec, const GeneratorCoefficients& coefficients) {
  spec.validate();
  std::mt19937_64 rng(spec.seed);
  return draw_dataset(spec, coefficients, rng);
}

void TimingGridSpec::validate() const {
  if (feature_dims.empty() || side_dims.empty() || instances_per_target.empty() || targets.empty()) {
    throw ValidationError("timing grid: value lists must be non-empty");
  }
  if (feature_dims.size() != side_dims.size()) {
    throw ValidationError("timing grid: feature and side-information lists are paired and must have equal length");
  }
  if (instances_per_target.size() != targets.size()) {
    throw ValidationError("timing grid: instance and target lists are paired and must have equal length");
  }
}

std::vector<TimingDataset> generate_timing_grid(const TimingGridSpec& spec) {
  spec.validate();
  std::vector<TimingDataset> out;
  std::uint64_t index = 0;
  for (std::size_t f = 0; f < spec.feature_dims.size(); ++f) {
    for (std::size_t n = 0; n < spec.targets.size(); ++n, ++index) {
      SynthSpec s;
      s.family = Family::R;
      s.feature_dim = spec.feature_dims[f];
      s.side_dim = spec.side_dims[f];
      s.instances_per_target = spec.instances_per_target[n];
      s.targets = spec.targets[n];
      s.seed = spec.seed + index;
      out.push_back({s.feature_dim, s.side_dim, s.instances_per_target, s.targets, generate(s)});
    }
  }
  return out;
}

void save_dataset(const ZeroShotDataset& ds, const SynthSpec& spec, const std::filesystem::path& dir) {
  write_dataset(ds, dir);
  nlohmann::ordered_json meta{{"family", to_string(spec.family)},
                              {"targets", spec.targets},
                              {"side_dim", spec.side_dim},
                              {"instances_per_target", spec.instances_per_target},
                              {"feature_dim", spec.feature_dim},
                              {"seed", spec.seed},
                              {"name", spec.name()}};
  if (spec.family == Family::S) meta["prototypes"] = spec.prototypes;
  std::ofstream out(dir / "meta.json", std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write " + (dir / "meta.json").string());
  out << meta.dump(2) << '\n';
}

}  // namespace zsk
