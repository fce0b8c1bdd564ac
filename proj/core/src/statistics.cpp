#include "zsk/statistics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "zsk/error.hpp"

namespace zsk {
namespace {

// q_alpha for k = 2..10 (studentized range at infinite df over sqrt(2)).
constexpr std::array<double, 9> kQ01 = {2.576, 2.913, 3.113, 3.255, 3.364, 3.452, 3.526, 3.590, 3.646};
constexpr std::array<double, 9> kQ05 = {1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164};
constexpr std::array<double, 9> kQ10 = {1.645, 2.052, 2.291, 2.459, 2.589, 2.693, 2.780, 2.855, 2.920};

}  // namespace

std::vector<double> rank_row(std::span<const double> errors) {
  const std::size_t k = errors.size();
  for (double e : errors) {
    if (std::isnan(e)) throw DataError("friedman_ranks: NaN score");
  }
  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return errors[a] < errors[b]; });
  std::vector<double> ranks(k);
  std::size_t i = 0;
  while (i < k) {
    std::size_t j = i;
    while (j + 1 < k && errors[order[j + 1]] == errors[order[i]]) ++j;
    // positions i..j share the average of ranks i+1..j+1
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t p = i; p <= j; ++p) ranks[order[p]] = avg;
    i = j + 1;
  }
  return ranks;
}

FriedmanResult friedman_ranks(const Matrix& scores) {
  if (scores.cols() < 2) throw ValidationError("friedman_ranks: need at least 2 methods");
  if (scores.rows() < 2) throw ValidationError("friedman_ranks: need at least 2 datasets");
  FriedmanResult out{Matrix(scores.rows(), scores.cols()), std::vector<double>(scores.cols(), 0.0)};
  for (std::size_t r = 0; r < scores.rows(); ++r) {
    const auto ranks = rank_row(scores.row(r));
    std::copy(ranks.begin(), ranks.end(), out.ranks.row(r).begin());
    for (std::size_t c = 0; c < ranks.size(); ++c) out.average_ranks[c] += ranks[c];
  }
  for (double& a : out.average_ranks) a /= static_cast<double>(scores.rows());
  return out;
}

double alpha_value(Alpha a) noexcept {
  switch (a) {
    case Alpha::P01: return 0.01;
    case Alpha::P05: return 0.05;
    case Alpha::P10: return 0.10;
  }
  return 0.0;
}

double nemenyi_q(std::size_t k, Alpha alpha) {
  if (k < 2 || k > 10) throw ValidationError("nemenyi: k must be in [2, 10], got " + std::to_string(k));
  const std::size_t idx = k - 2;
  switch (alpha) {
    case Alpha::P01: return kQ01[idx];
    case Alpha::P05: return kQ05[idx];
    case Alpha::P10: return kQ10[idx];
  }
  throw ValidationError("nemenyi: unsupported alpha");
}

double nemenyi_cd(std::size_t k, std::size_t n_datasets, Alpha alpha) {
  if (n_datasets < 1) throw ValidationError("nemenyi: need at least one dataset");
  const double kk = static_cast<double>(k);
  return nemenyi_q(k, alpha) * std::sqrt(kk * (kk + 1.0) / (6.0 * static_cast<double>(n_datasets)));
}

std::vector<std::vector<bool>> nemenyi_significance(const std::vector<double>& average_ranks, double cd) {
  const std::size_t k = average_ranks.size();
  std::vector<std::vector<bool>> flags(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) flags[a][b] = a != b && std::abs(average_ranks[a] - average_ranks[b]) >= cd;
  }
  return flags;
}

}  // namespace zsk
