#include "zsk/svr.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "zsk/error.hpp"

namespace zsk {
namespace {

constexpr double kTau = 1e-12;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Dual variables are laid out as [alpha_0 .. alpha_{n-1}, alpha*_0 .. alpha*_{n-1}]
// with signs +1 / -1; both halves index the same Gram rows.
class DualSolver {
 public:
  DualSolver(const Matrix& gram, std::span<const double> y, const SvrConfig& cfg, std::span<const double> warm)
      : gram_(gram), n_(y.size()), c_(cfg.c), tol_(cfg.tol), max_iter_(cfg.max_passes),
        alpha_(2 * n_, 0.0), grad_(2 * n_) {
    for (std::size_t i = 0; i < n_; ++i) {
      grad_[i] = cfg.epsilon - y[i];
      grad_[i + n_] = cfg.epsilon + y[i];
    }
    if (!warm.empty()) seed(warm);
  }

  DualSolution run() {
    DualSolution out;
    std::size_t iter = 0;
    bool converged = false;
    std::size_t next_newton = newton_interval();
    while (iter < max_iter_) {
      std::size_t i = 0;
      std::size_t j = 0;
      if (!select_pair(i, j)) {
        converged = true;
        break;
      }
      ++iter;
      update_pair(i, j);
      if (iter >= next_newton) {
        newton_step();
        next_newton = iter + newton_interval();
      }
    }
    if (!converged) {
      std::size_t i = 0;
      std::size_t j = 0;
      converged = !select_pair(i, j);
    }
    out.coefficients.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) out.coefficients[k] = alpha_[k] - alpha_[k + n_];
    out.bias = -compute_rho();
    out.iterations = iter;
    out.converged = converged;
    return out;
  }

 private:
  [[nodiscard]] double sign(std::size_t t) const noexcept { return t < n_ ? 1.0 : -1.0; }
  [[nodiscard]] std::size_t point(std::size_t t) const noexcept { return t < n_ ? t : t - n_; }
  [[nodiscard]] bool at_upper(std::size_t t) const noexcept { return alpha_[t] >= c_; }
  [[nodiscard]] bool at_lower(std::size_t t) const noexcept { return alpha_[t] <= 0.0; }
  [[nodiscard]] double kernel(std::size_t t, std::size_t s) const noexcept { return gram_(point(t), point(s)); }
  [[nodiscard]] double diag(std::size_t t) const noexcept { return gram_(point(t), point(t)); }

  // Returns false when the maximal violation is below tolerance.
  bool select_pair(std::size_t& out_i, std::size_t& out_j) const {
    double gmax = -std::numeric_limits<double>::infinity();
    std::size_t i = npos;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      if (sign(t) > 0 ? !at_upper(t) : !at_lower(t)) {
        const double v = -sign(t) * grad_[t];
        if (v >= gmax) {
          gmax = v;
          i = t;
        }
      }
    }
    double gmax2 = -std::numeric_limits<double>::infinity();
    double best_obj = std::numeric_limits<double>::infinity();
    std::size_t j = npos;
    if (i != npos) {
      const double qdi = diag(i);
      for (std::size_t t = 0; t < 2 * n_; ++t) {
        if (sign(t) > 0 ? at_lower(t) : at_upper(t)) continue;
        const double v = sign(t) * grad_[t];
        if (v >= gmax2) gmax2 = v;
        const double grad_diff = gmax + v;
        if (grad_diff > 0.0) {
          double quad = qdi + diag(t) - 2.0 * kernel(i, t);
          if (quad <= 0.0) quad = kTau;
          const double obj = -(grad_diff * grad_diff) / quad;
          if (obj <= best_obj) {
            best_obj = obj;
            j = t;
          }
        }
      }
    }
    if (i == npos || j == npos || gmax + gmax2 < tol_) return false;
    out_i = i;
    out_j = j;
    return true;
  }

  void update_pair(std::size_t i, std::size_t j) {
    const double yi = sign(i);
    const double yj = sign(j);
    const double kij = kernel(i, j);
    const double old_ai = alpha_[i];
    const double old_aj = alpha_[j];
    double& ai = alpha_[i];
    double& aj = alpha_[j];

    if (yi != yj) {
      double quad = diag(i) + diag(j) + 2.0 * (yi * yj * kij);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad_[i] - grad_[j]) / quad;
      const double diff = ai - aj;
      ai += delta;
      aj += delta;
      if (diff > 0.0) {
        if (aj < 0.0) {
          aj = 0.0;
          ai = diff;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = -diff;
      }
      if (diff > 0.0) {
        if (ai > c_) {
          ai = c_;
          aj = c_ - diff;
        }
      } else if (aj > c_) {
        aj = c_;
        ai = c_ + diff;
      }
    } else {
      double quad = diag(i) + diag(j) - 2.0 * (yi * yj * kij);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad_[i] - grad_[j]) / quad;
      const double sum = ai + aj;
      ai -= delta;
      aj += delta;
      if (sum > c_) {
        if (ai > c_) {
          ai = c_;
          aj = sum - c_;
        }
      } else if (aj < 0.0) {
        aj = 0.0;
        ai = sum;
      }
      if (sum > c_) {
        if (aj > c_) {
          aj = c_;
          ai = sum - c_;
        }
      } else if (ai < 0.0) {
        ai = 0.0;
        aj = sum;
      }
    }

    const double dai = ai - old_ai;
    const double daj = aj - old_aj;
    const auto row_i = gram_.row(point(i));
    const auto row_j = gram_.row(point(j));
    const double ci = yi * dai;
    const double cj = yj * daj;
    for (std::size_t k = 0; k < n_; ++k) {
      // Q_tk = y_t y_k K; the alpha half has y_t = +1, the alpha* half y_t = -1.
      const double delta = ci * row_i[k] + cj * row_j[k];
      grad_[k] += delta;
      grad_[k + n_] -= delta;
    }
  }

  void seed(std::span<const double> beta) {
    double peak = 0.0;
    for (double b : beta) peak = std::max(peak, std::abs(b));
    const double scale = peak > c_ ? c_ / peak : 1.0;
    std::vector<double> coef(n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      const double b = beta[i] * scale;
      if (b > 0.0) alpha_[i] = std::min(b, c_);
      if (b < 0.0) alpha_[i + n_] = std::min(-b, c_);
      coef[i] = alpha_[i] - alpha_[i + n_];
    }
    add_to_gradient(coef);
  }

  // grad[k] += (K coef)_k on the alpha half and -= on the alpha* half.
  void add_to_gradient(const std::vector<double>& coef) {
    std::vector<double> delta(n_, 0.0);
    for (std::size_t p = 0; p < n_; ++p) {
      if (coef[p] == 0.0) continue;
      const auto row = gram_.row(p);
      for (std::size_t k = 0; k < n_; ++k) delta[k] += coef[p] * row[k];
    }
    for (std::size_t k = 0; k < n_; ++k) {
      grad_[k] += delta[k];
      grad_[k + n_] -= delta[k];
    }
  }

  [[nodiscard]] std::size_t free_count() const {
    std::size_t f = 0;
    for (std::size_t t = 0; t < 2 * n_; ++t) f += (!at_lower(t) && !at_upper(t)) ? 1 : 0;
    return f;
  }

  // Spaces the Newton steps so that their cubic solve costs no more than
  // roughly the pairwise updates in between.
  [[nodiscard]] std::size_t newton_interval() const {
    const double f = static_cast<double>(free_count());
    const double n = static_cast<double>(n_);
    return static_cast<std::size_t>(std::max(2.0 * n, f * f * f / (8.0 * n)));
  }

  // Minimises the dual over the free variables (the rest held fixed) subject
  // to the equality constraint, then steps toward that minimiser as far as
  // the box and the exact line minimum allow.
  void newton_step() {
    std::vector<std::size_t> free;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      if (!at_lower(t) && !at_upper(t)) free.push_back(t);
    }
    const std::size_t m = free.size();
    if (m < 2) return;

    Eigen::MatrixXd q(m, m);
    Eigen::VectorXd g(m);
    Eigen::VectorXd s(m);
    double max_diag = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) q(a, b) = sign(free[a]) * sign(free[b]) * kernel(free[a], free[b]);
      g(a) = grad_[free[a]];
      s(a) = sign(free[a]);
      max_diag = std::max(max_diag, q(a, a));
    }
    const double ridge = 1e-10 * std::max(1.0, max_diag);
    Eigen::MatrixXd reg = q;
    reg.diagonal().array() += ridge;
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(reg);
    if (ldlt.info() != Eigen::Success) return;
    const Eigen::VectorXd u = ldlt.solve(g);
    const Eigen::VectorXd v = ldlt.solve(s);
    const double sv = s.dot(v);
    if (!(sv > 0.0) || !u.allFinite() || !v.allFinite()) return;
    const Eigen::VectorXd d = -u + (s.dot(u) / sv) * v;

    const double slope = g.dot(d);
    if (!(slope < 0.0)) return;
    const double curvature = d.dot(q * d);
    double step = curvature > 0.0 ? -slope / curvature : std::numeric_limits<double>::infinity();
    std::size_t blocking = m;
    for (std::size_t a = 0; a < m; ++a) {
      const double al = alpha_[free[a]];
      double limit = std::numeric_limits<double>::infinity();
      if (d(a) > 0.0) limit = (c_ - al) / d(a);
      if (d(a) < 0.0) limit = -al / d(a);
      if (limit < step) {
        step = limit;
        blocking = a;
      }
    }
    if (!(step > 0.0) || !std::isfinite(step)) return;

    std::vector<double> coef(n_, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      const std::size_t t = free[a];
      const double old = alpha_[t];
      double next = std::clamp(old + step * d(a), 0.0, c_);
      if (a == blocking) next = d(a) > 0.0 ? c_ : 0.0;
      alpha_[t] = next;
      coef[point(t)] += sign(t) * (next - old);
    }
    add_to_gradient(coef);
  }

  [[nodiscard]] double compute_rho() const {
    double ub = std::numeric_limits<double>::infinity();
    double lb = -std::numeric_limits<double>::infinity();
    double sum_free = 0.0;
    std::size_t n_free = 0;
    for (std::size_t t = 0; t < 2 * n_; ++t) {
      const double yg = sign(t) * grad_[t];
      if (at_upper(t)) {
        if (sign(t) < 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else if (at_lower(t)) {
        if (sign(t) > 0) ub = std::min(ub, yg);
        else lb = std::max(lb, yg);
      } else {
        ++n_free;
        sum_free += yg;
      }
    }
    if (n_free > 0) return sum_free / static_cast<double>(n_free);
    return (ub + lb) / 2.0;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const Matrix& gram_;
  std::size_t n_;
  double c_;
  double tol_;
  std::size_t max_iter_;
  std::vector<double> alpha_;
  std::vector<double> grad_;
};

void check_inputs(const PointSet& points, std::span<const double> y) {
  if (points.empty()) throw DataError("fit: no training points");
  if (points.size() != y.size()) {
    throw DataError("fit: " + std::to_string(points.size()) + " points but " + std::to_string(y.size()) + " labels");
  }
  for (double v : points.rows().data()) {
    if (!std::isfinite(v)) throw DataError("fit: non-finite feature value");
  }
  for (double v : y) {
    if (!std::isfinite(v)) throw DataError("fit: non-finite label");
  }
}

void check_query(const SvrModel& model, JointPoint p) {
  if (p.x.size() != model.x_dim() || p.s.size() != model.s_dim()) {
    throw DataError("predict: expected a_x=" + std::to_string(model.x_dim()) + ", a_s=" +
                    std::to_string(model.s_dim()) + " but got a_x=" + std::to_string(p.x.size()) +
                    ", a_s=" + std::to_string(p.s.size()));
  }
}

}  // namespace

void SvrConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("SVR: C must be > 0");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) throw ValidationError("SVR: epsilon must be >= 0");
  if (!(tol > 0.0)) throw ValidationError("SVR: tol must be > 0");
  if (max_passes < 1) throw ValidationError("SVR: max_passes must be >= 1");
}

DualSolution solve_dual(const Matrix& gram, std::span<const double> y, const SvrConfig& cfg,
                        std::span<const double> warm_start) {
  cfg.validate();
  if (gram.rows() != y.size() || gram.cols() != y.size()) throw DataError("solve_dual: Gram/label size mismatch");
  if (!warm_start.empty() && warm_start.size() != y.size()) {
    throw DataError("solve_dual: warm start has " + std::to_string(warm_start.size()) + " coefficients, expected " +
                    std::to_string(y.size()));
  }
  return DualSolver(gram, y, cfg, warm_start).run();
}

SvrModel::SvrModel(PointSet support, std::vector<double> coefficients, double bias, KernelSpec kernel,
                   std::size_t x_dim, std::size_t s_dim, FitDiagnostics diagnostics)
    : support_(std::move(support)),
      coefficients_(std::move(coefficients)),
      bias_(bias),
      kernel_(kernel),
      x_dim_(x_dim),
      s_dim_(s_dim),
      diagnostics_(diagnostics) {
  if (support_.size() != coefficients_.size()) throw DataError("SvrModel: support/coefficient count mismatch");
  if (!support_.empty() && (support_.x_dim() != x_dim_ || support_.s_dim() != s_dim_)) {
    throw DataError("SvrModel: support dimensions disagree with the model");
  }
  if (kernel_.kind == KernelKind::DsilPhi) {
    std::vector<double> w(phi_dim(x_dim_, s_dim_), 0.0);
    std::vector<double> buf(w.size());
    for (std::size_t i = 0; i < support_.size(); ++i) {
      phi_expand_into(support_.point(i), buf);
      for (std::size_t k = 0; k < w.size(); ++k) w[k] += coefficients_[i] * buf[k];
    }
    phi_weights_ = std::move(w);
  }
}

SvrModel fit_svr_with_gram(const PointSet& points, const Matrix& gram, std::span<const double> y,
                           const KernelSpec& kernel, const SvrConfig& cfg) {
  check_inputs(points, y);
  const auto start = Clock::now();
  const DualSolution sol = solve_dual(gram, y, cfg);
  FitDiagnostics diag;
  diag.solve_seconds = seconds_since(start);
  return model_from_dual(points, sol, kernel, diag);
}

SvrModel model_from_dual(const PointSet& points, const DualSolution& sol, const KernelSpec& kernel,
                         FitDiagnostics diag) {
  if (sol.coefficients.size() != points.size()) throw DataError("model_from_dual: coefficient/point count mismatch");
  diag.iterations = sol.iterations;
  diag.converged = sol.converged;
  std::vector<std::size_t> keep;
  std::vector<double> coef;
  for (std::size_t i = 0; i < sol.coefficients.size(); ++i) {
    if (sol.coefficients[i] != 0.0) {
      keep.push_back(i);
      coef.push_back(sol.coefficients[i]);
    }
  }
  return SvrModel(points.select(keep), std::move(coef), sol.bias, kernel, points.x_dim(), points.s_dim(), diag);
}

SvrModel fit_svr(const PointSet& points, std::span<const double> y, const KernelSpec& kernel, const SvrConfig& cfg) {
  check_inputs(points, y);
  cfg.validate();
  const auto start = Clock::now();
  const Matrix gram = gram_matrix(points, kernel);
  const double kernel_seconds = seconds_since(start);
  SvrModel model = fit_svr_with_gram(points, gram, y, kernel, cfg);
  FitDiagnostics diag = model.diagnostics();
  diag.kernel_seconds = kernel_seconds;
  return SvrModel(model.support(), model.dual_coeffs(), model.bias(), kernel, points.x_dim(), points.s_dim(), diag);
}

double predict_one(const SvrModel& model, JointPoint p) {
  check_query(model, p);
  if (const auto& w = model.phi_weights()) {
    thread_local std::vector<double> buf;
    buf.resize(w->size());
    phi_expand_into(p, buf);
    return dot(*w, buf) + model.bias();
  }
  double acc = 0.0;
  const auto& coef = model.dual_coeffs();
  for (std::size_t i = 0; i < coef.size(); ++i) acc += coef[i] * evaluate(model.kernel(), model.support().point(i), p);
  return acc + model.bias();
}

std::vector<double> predict(const SvrModel& model, const PointSet& points) {
  std::vector<double> out(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) out[j] = predict_one(model, points.point(j));
  return out;
}

LinearWeights extract_linear_weights(const SvrModel& model) {
  if (model.kernel().kind != KernelKind::Linear) {
    throw ValidationError("extract_linear_weights: model kernel is '" + model.kernel().name() + "', not linear");
  }
  LinearWeights out;
  out.w.assign(model.x_dim() + model.s_dim(), 0.0);
  out.b = model.bias();
  const auto& coef = model.dual_coeffs();
  for (std::size_t i = 0; i < coef.size(); ++i) {
    const auto row = model.support().rows().row(i);
    for (std::size_t k = 0; k < row.size(); ++k) out.w[k] += coef[i] * row[k];
  }
  return out;
}

}  // namespace zsk
