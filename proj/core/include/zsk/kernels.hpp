#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "zsk/matrix.hpp"

namespace zsk {

/// An instance paired with the side information of its target. For kernels
/// that do not distinguish the two parts (linear, quadratic) the point is
/// treated as the concatenation [x | s]; `s` may then be empty.
struct JointPoint {
  std::span<const double> x;
  std::span<const double> s;
};

enum class DsilFormulation { Phi, KPhi, KQ };

enum class KernelKind { Linear, Quadratic, DsilPhi, DsilKPhi, DsilKQ };

/// Closed set of kernels the learners can run on. `offset` is only used by
/// the quadratic kernel (c in (<u,v> + c)^2) and must be non-negative.
struct KernelSpec {
  KernelKind kind = KernelKind::Linear;
  double offset = 0.0;

  static KernelSpec linear() { return {KernelKind::Linear, 0.0}; }
  static KernelSpec quadratic(double c);
  static KernelSpec dsil(DsilFormulation formulation);

  [[nodiscard]] bool is_dsil() const noexcept {
    return kind == KernelKind::DsilPhi || kind == KernelKind::DsilKPhi || kind == KernelKind::DsilKQ;
  }
  [[nodiscard]] std::string name() const;
  static KernelSpec from_name(const std::string& name, double offset = 0.0);

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

/// Length of the expanded vector: (a_x + 1) * (a_s + 1).
constexpr std::size_t phi_dim(std::size_t x_dim, std::size_t s_dim) noexcept { return (x_dim + 1) * (s_dim + 1); }

/// Kronecker expansion of (1, x) and (1, s): block j (s_0 = 1) holds
/// (s_j, x_1 s_j, ..., x_ax s_j). No squared or same-side cross terms.
using PhiVector = std::vector<double>;
PhiVector phi_expand(JointPoint p);
void phi_expand_into(JointPoint p, std::span<double> out);

double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// (<u, v> + c)^2. Throws DataError on length mismatch.
double quadratic_kernel(std::span<const double> u, std::span<const double> v, double c);

/// The side-information kernel <phi(p1), phi(p2)>, computed three ways:
///  - Phi:  expand both points into PhiVectors, then take the inner product;
///  - KPhi: expand inside the call into scratch buffers and accumulate;
///  - KQ:   (K_{Q,1}([x1|s1],[x2|s2]) - K_{Q,0}(x1,x2) - K_{Q,0}(s1,s2) + 1) / 2,
///          which never materialises phi and is linear in a_x + a_s.
/// Throws DataError if the x or s widths differ between the points.
double dsil_kernel(JointPoint p1, JointPoint p2, DsilFormulation formulation);

/// Single kernel evaluation for any KernelSpec.
double evaluate(const KernelSpec& spec, JointPoint p1, JointPoint p2);

/// A homogeneous collection of joint points stored row-wise as [x | s].
class PointSet {
 public:
  PointSet() = default;
  PointSet(Matrix rows, std::size_t x_dim);

  /// Plain vectors with no side-information part.
  static PointSet plain(Matrix rows) {
    const std::size_t d = rows.cols();
    return PointSet(std::move(rows), d);
  }

  [[nodiscard]] std::size_t size() const noexcept { return rows_.rows(); }
  [[nodiscard]] bool empty() const noexcept { return rows_.rows() == 0; }
  [[nodiscard]] std::size_t x_dim() const noexcept { return x_dim_; }
  [[nodiscard]] std::size_t s_dim() const noexcept { return rows_.cols() - x_dim_; }
  [[nodiscard]] std::size_t width() const noexcept { return rows_.cols(); }

  [[nodiscard]] JointPoint point(std::size_t i) const noexcept {
    auto r = rows_.row(i);
    return {r.first(x_dim_), r.subspan(x_dim_)};
  }
  [[nodiscard]] const Matrix& rows() const noexcept { return rows_; }
  [[nodiscard]] PointSet select(std::span<const std::size_t> indices) const {
    return PointSet(rows_.select_rows(indices), x_dim_);
  }

  friend bool operator==(const PointSet&, const PointSet&) = default;

 private:
  Matrix rows_;
  std::size_t x_dim_ = 0;
};

/// Expanded PhiVectors of every point, one per row.
Matrix phi_expand_all(const PointSet& points);

/// Dense symmetric Gram matrix G[i][j] = K(p_i, p_j). The upper triangle is
/// computed and mirrored. For DsilPhi all points are expanded once up front
/// and the entries are plain inner products of the expansions.
Matrix gram_matrix(const PointSet& points, const KernelSpec& spec);

/// K(a_i, b_j) for every pair; rows follow `a`.
Matrix cross_kernel(const PointSet& a, const PointSet& b, const KernelSpec& spec);

}  // namespace zsk
