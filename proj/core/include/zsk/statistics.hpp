#pragma once

#include <cstddef>
#include <vector>

#include "zsk/matrix.hpp"

namespace zsk {

struct FriedmanResult {
  Matrix ranks;                       ///< datasets x methods, 1 = lowest error, ties averaged
  std::vector<double> average_ranks;  ///< column means
};

/// Ranks each row (dataset) of an error matrix. Throws ValidationError with
/// fewer than 2 methods or 2 datasets, DataError on NaN.
FriedmanResult friedman_ranks(const Matrix& scores);

/// Ranks a single row; works for any number of methods.
std::vector<double> rank_row(std::span<const double> errors);

/// Significance levels with an embedded critical-value table.
enum class Alpha { P01, P05, P10 };

double alpha_value(Alpha a) noexcept;

/// Two-tailed Nemenyi critical value q_alpha for k compared methods (the
/// studentized range statistic divided by sqrt(2)), k in [2, 10].
double nemenyi_q(std::size_t k, Alpha alpha);

/// CD = q_alpha(k) * sqrt(k (k + 1) / (6 N)). Throws ValidationError when k
/// is outside [2, 10] or N < 1.
double nemenyi_cd(std::size_t k, std::size_t n_datasets, Alpha alpha);

/// flags[a][b] is true when |avg_rank[a] - avg_rank[b]| >= cd.
std::vector<std::vector<bool>> nemenyi_significance(const std::vector<double>& average_ranks, double cd);

}  // namespace zsk
