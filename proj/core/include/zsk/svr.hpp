#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "zsk/kernels.hpp"
#include "zsk/matrix.hpp"

namespace zsk {

/// Hyperparameters of the epsilon-SVR.
struct SvrConfig {
  double c = 1.0;         ///< box bound on every dual coefficient
  double epsilon = 0.1;   ///< half-width of the insensitive tube, in label units
  double tol = 1e-3;      ///< stop once the maximal KKT violation drops below this
  std::size_t max_passes = 10'000'000;  ///< cap on pairwise updates

  /// Throws ValidationError unless c > 0, epsilon >= 0, tol > 0, max_passes >= 1.
  void validate() const;
};

struct FitDiagnostics {
  std::size_t iterations = 0;
  bool converged = true;  ///< false: the cap was hit; the model is still usable
  double kernel_seconds = 0.0;
  double solve_seconds = 0.0;
};

/// Output of the dual solver on a precomputed Gram matrix: one signed
/// coefficient (alpha_i - alpha_i^*) per training point and the bias.
struct DualSolution {
  std::vector<double> coefficients;
  double bias = 0.0;
  std::size_t iterations = 0;
  bool converged = true;
};

/// Solves the epsilon-SVR dual by sequential pairwise updates. The working
/// pair is the maximal violating index together with the partner that gives
/// the largest second-order decrease of the dual objective. Periodically the
/// variables strictly inside the box take one line-searched Newton step on
/// their face, which shortens the slow tail on ill-conditioned Gram matrices.
/// Deterministic.
///
/// `warm_start` (optional, one signed coefficient per point, summing to 0)
/// seeds the solver, e.g. with the solution for a smaller C. It is scaled
/// down if it violates the box.
DualSolution solve_dual(const Matrix& gram, std::span<const double> y, const SvrConfig& cfg,
                        std::span<const double> warm_start = {});

/// A fitted epsilon-SVR: only points with non-zero coefficients are kept.
class SvrModel {
 public:
  SvrModel() = default;
  SvrModel(PointSet support, std::vector<double> coefficients, double bias, KernelSpec kernel, std::size_t x_dim,
           std::size_t s_dim, FitDiagnostics diagnostics = {});

  [[nodiscard]] const PointSet& support() const noexcept { return support_; }
  [[nodiscard]] const std::vector<double>& dual_coeffs() const noexcept { return coefficients_; }
  [[nodiscard]] double bias() const noexcept { return bias_; }
  [[nodiscard]] const KernelSpec& kernel() const noexcept { return kernel_; }
  [[nodiscard]] std::size_t x_dim() const noexcept { return x_dim_; }
  [[nodiscard]] std::size_t s_dim() const noexcept { return s_dim_; }
  [[nodiscard]] const FitDiagnostics& diagnostics() const noexcept { return diagnostics_; }

  /// Present only for the explicit-expansion kernel: g's weights over phi space.
  [[nodiscard]] const std::optional<std::vector<double>>& phi_weights() const noexcept { return phi_weights_; }

  friend bool operator==(const SvrModel& a, const SvrModel& b) {
    return a.support_ == b.support_ && a.coefficients_ == b.coefficients_ && a.bias_ == b.bias_ &&
           a.kernel_ == b.kernel_ && a.x_dim_ == b.x_dim_ && a.s_dim_ == b.s_dim_;
  }

 private:
  PointSet support_;
  std::vector<double> coefficients_;
  double bias_ = 0.0;
  KernelSpec kernel_;
  std::size_t x_dim_ = 0;
  std::size_t s_dim_ = 0;
  FitDiagnostics diagnostics_;
  std::optional<std::vector<double>> phi_weights_;
};

/// Fits an epsilon-SVR. Throws DataError on non-finite input or a size
/// mismatch, ValidationError on a bad config. Non-convergence is reported
/// through diagnostics().converged, never thrown.
SvrModel fit_svr(const PointSet& points, std::span<const double> y, const KernelSpec& kernel, const SvrConfig& cfg);

/// Keeps the points with non-zero coefficients of a dual solution.
SvrModel model_from_dual(const PointSet& points, const DualSolution& sol, const KernelSpec& kernel,
                         FitDiagnostics diagnostics = {});

/// Fit from a Gram matrix the caller already built for `points`.
SvrModel fit_svr_with_gram(const PointSet& points, const Matrix& gram, std::span<const double> y,
                           const KernelSpec& kernel, const SvrConfig& cfg);

std::vector<double> predict(const SvrModel& model, const PointSet& points);
double predict_one(const SvrModel& model, JointPoint p);

struct LinearWeights {
  std::vector<double> w;
  double b = 0.0;
};

/// w = sum_i coef_i * support_i over the concatenated [x | s] points. Only
/// valid for the linear kernel; throws ValidationError otherwise.
LinearWeights extract_linear_weights(const SvrModel& model);

}  // namespace zsk
