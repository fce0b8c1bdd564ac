#include "zsk/methods.hpp"

#include <cmath>
#include <string>

#include "zsk/error.hpp"

namespace zsk {
namespace {

struct TargetBlock {
  std::vector<std::string> ids;
  Matrix side_info;
  std::vector<TargetSlice> slices;
};

TargetBlock observed_targets(const ZeroShotDataset& ds, const MethodVariant& v) {
  TargetBlock block;
  block.slices = slice_by_target(ds);
  if (block.slices.size() < 2) {
    throw DataError(v.name() + " needs at least two observed targets, got " + std::to_string(block.slices.size()));
  }
  for (const auto& slice : block.slices) {
    if (slice.rows.size() < 2) {
      throw DataError(v.name() + ": target '" + slice.target_id + "' has fewer than two instances");
    }
    block.ids.push_back(slice.target_id);
    block.side_info.append_row(ds.side_info().at(slice.target_id));
  }
  return block;
}

SvrModel fit_target_model(const ZeroShotDataset& ds, const TargetSlice& slice, const SvrConfig& cfg) {
  const PointSet points = PointSet::plain(ds.features().select_rows(slice.rows));
  std::vector<double> y;
  y.reserve(slice.rows.size());
  for (std::size_t r : slice.rows) y.push_back(ds.labels()[r]);
  return fit_svr(points, y, KernelSpec::linear(), cfg);
}

}  // namespace

std::string MethodVariant::name() const {
  switch (kind) {
    case MethodKind::BL: return quadratic ? "BL_Q" : "BL_L";
    case MethodKind::SR: return distance == Distance::Euclidean ? "SR_E" : "SR_M";
    case MethodKind::MPLC: return "MPLC";
    case MethodKind::DSIL:
      switch (formulation) {
        case DsilFormulation::Phi: return "DSIL_Phi";
        case DsilFormulation::KPhi: return "DSIL_KPhi";
        case DsilFormulation::KQ: return "DSIL_KQ";
      }
  }
  return "unknown";
}

MethodVariant MethodVariant::from_name(const std::string& name) {
  if (name == "BL_L") return bl_linear();
  if (name == "BL_Q") return bl_quadratic();
  if (name == "SR_E") return sr(Distance::Euclidean);
  if (name == "SR_M") return sr(Distance::Manhattan);
  if (name == "MPLC") return mplc();
  if (name == "DSIL" || name == "DSIL_KQ") return dsil(DsilFormulation::KQ);
  if (name == "DSIL_Phi") return dsil(DsilFormulation::Phi);
  if (name == "DSIL_KPhi") return dsil(DsilFormulation::KPhi);
  throw ValidationError("unknown method '" + name + "' (expected BL_L, BL_Q, SR_E, SR_M, MPLC, DSIL, DSIL_Phi, "
                        "DSIL_KPhi or DSIL_KQ)");
}

double distance(std::span<const double> a, std::span<const double> b, Distance d) {
  if (a.size() != b.size()) {
    throw DataError("distance: length mismatch " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = a[i] - b[i];
    acc += d == Distance::Euclidean ? diff * diff : std::abs(diff);
  }
  return d == Distance::Euclidean ? std::sqrt(acc) : acc;
}

double sr_similarity(std::span<const double> s_o, std::span<const double> s_u, Distance d) {
  const double dist = distance(s_o, s_u, d);
  if (dist < kExactMatchDistance) return kExactMatch;
  return 1.0 / dist;
}

KernelSpec method_kernel(const MethodVariant& variant) {
  switch (variant.kind) {
    case MethodKind::BL: return variant.quadratic ? KernelSpec::quadratic(1.0) : KernelSpec::linear();
    case MethodKind::DSIL: return KernelSpec::dsil(variant.formulation);
    default: throw ValidationError(variant.name() + " is not a single-kernel method");
  }
}

PointSet joint_points(const ZeroShotDataset& ds) {
  Matrix rows(ds.rows(), ds.feature_dim() + ds.side_dim());
  for (std::size_t r = 0; r < ds.rows(); ++r) {
    auto dst = rows.row(r);
    const auto x = ds.x(r);
    const auto s = ds.s(r);
    std::copy(x.begin(), x.end(), dst.begin());
    std::copy(s.begin(), s.end(), dst.begin() + static_cast<std::ptrdiff_t>(x.size()));
  }
  return PointSet(std::move(rows), ds.feature_dim());
}

ZeroShotRegressor::ZeroShotRegressor(MethodVariant variant, std::size_t x_dim, std::size_t s_dim,
                                     std::variant<std::monostate, SingleModelState, SrState, MplcState> state)
    : variant_(variant), x_dim_(x_dim), s_dim_(s_dim), state_(std::move(state)) {}

ZeroShotRegressor ZeroShotRegressor::fit(const ZeroShotDataset& ds, const MethodVariant& variant,
                                         const SvrConfig& cfg) {
  cfg.validate();
  const std::size_t ax = ds.feature_dim();
  const std::size_t as = ds.side_dim();

  switch (variant.kind) {
    case MethodKind::BL:
    case MethodKind::DSIL: {
      SvrModel model = fit_svr(joint_points(ds), ds.labels(), method_kernel(variant), cfg);
      return ZeroShotRegressor(variant, ax, as, SingleModelState{std::move(model)});
    }
    case MethodKind::SR: {
      TargetBlock block = observed_targets(ds, variant);
      SrState state;
      for (const auto& slice : block.slices) state.target_models.push_back(fit_target_model(ds, slice, cfg));
      state.target_side_info = std::move(block.side_info);
      state.target_ids = std::move(block.ids);
      return ZeroShotRegressor(variant, ax, as, std::move(state));
    }
    case MethodKind::MPLC: {
      TargetBlock block = observed_targets(ds, variant);
      const std::size_t p = ax + 1;
      Matrix params(block.slices.size(), p);
      for (std::size_t t = 0; t < block.slices.size(); ++t) {
        const LinearWeights lw = extract_linear_weights(fit_target_model(ds, block.slices[t], cfg));
        auto row = params.row(t);
        std::copy(lw.w.begin(), lw.w.end(), row.begin());
        row[ax] = lw.b;
      }
      MplcState state;
      const PointSet side_points = PointSet::plain(block.side_info);
      // All p second-stage fits share one Gram matrix over the observed side information.
      const Matrix gram = gram_matrix(side_points, KernelSpec::linear());
      std::vector<double> column(block.slices.size());
      for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t t = 0; t < block.slices.size(); ++t) column[t] = params(t, j);
        state.parameter_models.push_back(fit_svr_with_gram(side_points, gram, column, KernelSpec::linear(), cfg));
      }
      state.first_stage_parameters = std::move(params);
      state.target_side_info = std::move(block.side_info);
      state.target_ids = std::move(block.ids);
      return ZeroShotRegressor(variant, ax, as, std::move(state));
    }
  }
  throw ValidationError("unknown method kind");
}

void ZeroShotRegressor::check_dims(std::span<const double> x_u, std::span<const double> s_u) const {
  if (!fitted()) throw ValidationError("predict called on an unfitted regressor");
  if (x_u.size() != x_dim_ || s_u.size() != s_dim_) {
    throw DataError("dimension mismatch: expected a_x=" + std::to_string(x_dim_) + ", a_s=" +
                    std::to_string(s_dim_) + " but got a_x=" + std::to_string(x_u.size()) +
                    ", a_s=" + std::to_string(s_u.size()));
  }
}

ZeroShotRegressor::SrBreakdown ZeroShotRegressor::sr_breakdown(std::span<const double> x_u,
                                                               std::span<const double> s_u) const {
  check_dims(x_u, s_u);
  SrBreakdown out;
  const auto* sr = std::get_if<SrState>(&state_);
  if (sr == nullptr) return out;

  const std::size_t m = sr->target_models.size();
  out.predictions.resize(m);
  out.weights.assign(m, 0.0);
  std::size_t exact = 0;
  for (std::size_t i = 0; i < m; ++i) {
    out.predictions[i] = predict_one(sr->target_models[i], {x_u, {}});
    const double sim = sr_similarity(sr->target_side_info.row(i), s_u, variant_.distance);
    if (sim == kExactMatch) ++exact;
    out.weights[i] = sim;
  }
  if (exact > 0) {
    for (double& w : out.weights) w = (w == kExactMatch) ? 1.0 / static_cast<double>(exact) : 0.0;
  } else {
    double total = 0.0;
    for (double w : out.weights) total += w;
    for (double& w : out.weights) w /= total;
  }
  return out;
}

double ZeroShotRegressor::predict(std::span<const double> x_u, std::span<const double> s_u) const {
  check_dims(x_u, s_u);
  return std::visit(
      [&](const auto& st) -> double {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          throw ValidationError("predict called on an unfitted regressor");
        } else if constexpr (std::is_same_v<T, SingleModelState>) {
          return predict_one(st.model, {x_u, s_u});
        } else if constexpr (std::is_same_v<T, SrState>) {
          const SrBreakdown b = sr_breakdown(x_u, s_u);
          double acc = 0.0;
          for (std::size_t i = 0; i < b.predictions.size(); ++i) acc += b.weights[i] * b.predictions[i];
          return acc;
        } else {
          // theta_j = g_j(s_u); prediction = sum_j theta_j x_j + theta_p
          double acc = 0.0;
          for (std::size_t j = 0; j < x_dim_; ++j) acc += predict_one(st.parameter_models[j], {s_u, {}}) * x_u[j];
          return acc + predict_one(st.parameter_models[x_dim_], {s_u, {}});
        }
      },
      state_);
}

std::vector<double> ZeroShotRegressor::predict(const Matrix& features, const std::vector<std::string>& targets,
                                               const SideInfoTable& side_info) const {
  if (targets.size() != features.rows()) throw DataError("predict: feature/target row count mismatch");
  std::vector<double> out(features.rows());
  for (std::size_t r = 0; r < features.rows(); ++r) out[r] = predict(features.row(r), side_info.at(targets[r]));
  return out;
}

std::vector<double> ZeroShotRegressor::predict(const ZeroShotDataset& ds) const {
  return predict(ds.features(), ds.targets(), ds.side_info());
}

}  // namespace zsk
