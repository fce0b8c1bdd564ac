#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "zsk/dataset.hpp"
#include "zsk/kernels.hpp"
#include "zsk/svr.hpp"

namespace zsk {

enum class MethodKind { BL, SR, MPLC, DSIL };
enum class Distance { Euclidean, Manhattan };

/// One of the zero-shot regressors and its sub-option. Canonical names:
/// BL_L, BL_Q, SR_E, SR_M, MPLC, DSIL_Phi, DSIL_KPhi, DSIL_KQ ("DSIL" is DSIL_KQ).
struct MethodVariant {
  MethodKind kind = MethodKind::DSIL;
  bool quadratic = false;                              // BL only
  Distance distance = Distance::Euclidean;             // SR only
  DsilFormulation formulation = DsilFormulation::KQ;   // DSIL only

  static MethodVariant bl_linear() { return {MethodKind::BL, false, {}, {}}; }
  static MethodVariant bl_quadratic() { return {MethodKind::BL, true, {}, {}}; }
  static MethodVariant sr(Distance d) { return {MethodKind::SR, false, d, {}}; }
  static MethodVariant mplc() { return {MethodKind::MPLC, false, {}, {}}; }
  static MethodVariant dsil(DsilFormulation f = DsilFormulation::KQ) { return {MethodKind::DSIL, false, {}, f}; }

  [[nodiscard]] std::string name() const;
  /// Throws ValidationError on an unknown name.
  static MethodVariant from_name(const std::string& name);

  friend bool operator==(const MethodVariant&, const MethodVariant&) = default;
};

/// Returned by sr_similarity when the two side-information vectors coincide.
inline constexpr double kExactMatch = std::numeric_limits<double>::infinity();
inline constexpr double kExactMatchDistance = 1e-12;

double distance(std::span<const double> a, std::span<const double> b, Distance d);

/// 1 / d(s_o, s_u), or kExactMatch when d < 1e-12.
double sr_similarity(std::span<const double> s_o, std::span<const double> s_u, Distance d);

/// BL and DSIL: one SVR over joint points.
struct SingleModelState {
  SvrModel model;
};

/// SR: one linear SVR per observed target, on x only.
struct SrState {
  std::vector<SvrModel> target_models;
  Matrix target_side_info;  ///< row i belongs to target_models[i]
  std::vector<std::string> target_ids;
};

/// MPLC: p = a_x + 1 second-stage SVRs mapping side information to each
/// first-stage parameter (w_1..w_ax, b).
struct MplcState {
  std::vector<SvrModel> parameter_models;
  Matrix first_stage_parameters;  ///< m_o x p, rows follow target_ids
  Matrix target_side_info;
  std::vector<std::string> target_ids;
};

/// A fitted zero-shot regressor: predicts labels of instances of targets
/// that had no training rows, given the target's side information.
class ZeroShotRegressor {
 public:
  ZeroShotRegressor() = default;

  /// SR and MPLC need at least two observed targets with two rows each.
  static ZeroShotRegressor fit(const ZeroShotDataset& ds, const MethodVariant& variant, const SvrConfig& cfg);

  /// Rebuild from persisted state (model files).
  ZeroShotRegressor(MethodVariant variant, std::size_t x_dim, std::size_t s_dim,
                    std::variant<std::monostate, SingleModelState, SrState, MplcState> state);

  [[nodiscard]] bool fitted() const noexcept { return !std::holds_alternative<std::monostate>(state_); }
  [[nodiscard]] const MethodVariant& variant() const noexcept { return variant_; }
  [[nodiscard]] std::size_t x_dim() const noexcept { return x_dim_; }
  [[nodiscard]] std::size_t s_dim() const noexcept { return s_dim_; }
  [[nodiscard]] const auto& state() const noexcept { return state_; }

  /// Throws ValidationError when unfitted, DataError on a dimension mismatch.
  [[nodiscard]] double predict(std::span<const double> x_u, std::span<const double> s_u) const;

  /// Predicts every row of `features`, row r using the side information of `targets[r]` from `side_info`.
  [[nodiscard]] std::vector<double> predict(const Matrix& features, const std::vector<std::string>& targets,
                                            const SideInfoTable& side_info) const;
  [[nodiscard]] std::vector<double> predict(const ZeroShotDataset& ds) const;

  /// Per-target predictions and their normalised weights for SR; empty for other methods.
  struct SrBreakdown {
    std::vector<double> predictions;
    std::vector<double> weights;
  };
  [[nodiscard]] SrBreakdown sr_breakdown(std::span<const double> x_u, std::span<const double> s_u) const;

 private:
  void check_dims(std::span<const double> x_u, std::span<const double> s_u) const;

  MethodVariant variant_;
  std::size_t x_dim_ = 0;
  std::size_t s_dim_ = 0;
  std::variant<std::monostate, SingleModelState, SrState, MplcState> state_;
};

/// Kernel of the single SVR behind BL and DSIL; throws ValidationError for SR/MPLC.
KernelSpec method_kernel(const MethodVariant& variant);

/// Joint points [x | s(target)] for every row of a dataset.
PointSet joint_points(const ZeroShotDataset& ds);

}  // namespace zsk
