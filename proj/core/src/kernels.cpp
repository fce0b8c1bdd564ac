#include "zsk/kernels.hpp"

#include <string>

#include "zsk/error.hpp"

namespace zsk {
namespace {

void check_same_shape(JointPoint p1, JointPoint p2) {
  if (p1.x.size() != p2.x.size() || p1.s.size() != p2.s.size()) {
    throw DataError("kernel dimension mismatch: (a_x=" + std::to_string(p1.x.size()) +
                    ", a_s=" + std::to_string(p1.s.size()) + ") vs (a_x=" + std::to_string(p2.x.size()) +
                    ", a_s=" + std::to_string(p2.s.size()) + ")");
  }
}

double joint_dot(JointPoint p1, JointPoint p2) noexcept { return dot(p1.x, p2.x) + dot(p1.s, p2.s); }

double dsil_phi(JointPoint p1, JointPoint p2) {
  const PhiVector a = phi_expand(p1);
  const PhiVector b = phi_expand(p2);
  return dot(a, b);
}

double dsil_kphi(JointPoint p1, JointPoint p2) {
  thread_local std::vector<double> a;
  thread_local std::vector<double> b;
  const std::size_t n = phi_dim(p1.x.size(), p1.s.size());
  a.resize(n);
  b.resize(n);
  phi_expand_into(p1, a);
  phi_expand_into(p2, b);
  return dot(a, b);
}

double dsil_kq(JointPoint p1, JointPoint p2) {
  const double xx = dot(p1.x, p2.x);
  const double ss = dot(p1.s, p2.s);
  const double joint = xx + ss + 1.0;
  // K_{Q,1} on the concatenation, minus K_{Q,0} on each part.
  return 0.5 * (joint * joint - xx * xx - ss * ss + 1.0);
}

}  // namespace

KernelSpec KernelSpec::quadratic(double c) {
  if (!(c >= 0.0)) throw ValidationError("quadratic kernel offset must be >= 0");
  return {KernelKind::Quadratic, c};
}

KernelSpec KernelSpec::dsil(DsilFormulation formulation) {
  switch (formulation) {
    case DsilFormulation::Phi: return {KernelKind::DsilPhi, 0.0};
    case DsilFormulation::KPhi: return {KernelKind::DsilKPhi, 0.0};
    case DsilFormulation::KQ: return {KernelKind::DsilKQ, 0.0};
  }
  throw ValidationError("unknown DSIL formulation");
}

std::string KernelSpec::name() const {
  switch (kind) {
    case KernelKind::Linear: return "linear";
    case KernelKind::Quadratic: return "quadratic";
    case KernelKind::DsilPhi: return "dsil_phi";
    case KernelKind::DsilKPhi: return "dsil_kphi";
    case KernelKind::DsilKQ: return "dsil_kq";
  }
  return "unknown";
}

KernelSpec KernelSpec::from_name(const std::string& name, double offset) {
  if (name == "linear") return linear();
  if (name == "quadratic") return quadratic(offset);
  if (name == "dsil_phi") return dsil(DsilFormulation::Phi);
  if (name == "dsil_kphi") return dsil(DsilFormulation::KPhi);
  if (name == "dsil_kq") return dsil(DsilFormulation::KQ);
  throw ValidationError("unknown kernel '" + name + "'");
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void phi_expand_into(JointPoint p, std::span<double> out) {
  const std::size_t ax = p.x.size();
  const std::size_t block = ax + 1;
  // block 0: s_0 = 1
  out[0] = 1.0;
  for (std::size_t i = 0; i < ax; ++i) out[1 + i] = p.x[i];
  for (std::size_t j = 0; j < p.s.size(); ++j) {
    const double sj = p.s[j];
    double* dst = out.data() + (j + 1) * block;
    dst[0] = sj;
    for (std::size_t i = 0; i < ax; ++i) dst[1 + i] = p.x[i] * sj;
  }
}

PhiVector phi_expand(JointPoint p) {
  PhiVector out(phi_dim(p.x.size(), p.s.size()));
  phi_expand_into(p, out);
  return out;
}

double quadratic_kernel(std::span<const double> u, std::span<const double> v, double c) {
  if (u.size() != v.size()) {
    throw DataError("quadratic kernel length mismatch: " + std::to_string(u.size()) + " vs " +
                    std::to_string(v.size()));
  }
  const double t = dot(u, v) + c;
  return t * t;
}

double dsil_kernel(JointPoint p1, JointPoint p2, DsilFormulation formulation) {
  check_same_shape(p1, p2);
  switch (formulation) {
    case DsilFormulation::Phi: return dsil_phi(p1, p2);
    case DsilFormulation::KPhi: return dsil_kphi(p1, p2);
    case DsilFormulation::KQ: return dsil_kq(p1, p2);
  }
  throw ValidationError("unknown DSIL formulation");
}

double evaluate(const KernelSpec& spec, JointPoint p1, JointPoint p2) {
  check_same_shape(p1, p2);
  switch (spec.kind) {
    case KernelKind::Linear: return joint_dot(p1, p2);
    case KernelKind::Quadratic: {
      const double t = joint_dot(p1, p2) + spec.offset;
      return t * t;
    }
    case KernelKind::DsilPhi: return dsil_phi(p1, p2);
    case KernelKind::DsilKPhi: return dsil_kphi(p1, p2);
    case KernelKind::DsilKQ: return dsil_kq(p1, p2);
  }
  throw ValidationError("unknown kernel kind");
}

PointSet::PointSet(Matrix rows, std::size_t x_dim) : rows_(std::move(rows)), x_dim_(x_dim) {
  if (x_dim_ > rows_.cols()) throw DataError("x_dim exceeds point width");
}

Matrix phi_expand_all(const PointSet& points) {
  Matrix out(points.size(), phi_dim(points.x_dim(), points.s_dim()));
  for (std::size_t i = 0; i < points.size(); ++i) phi_expand_into(points.point(i), out.row(i));
  return out;
}

Matrix gram_matrix(const PointSet& points, const KernelSpec& spec) {
  if (points.empty()) throw DataError("gram_matrix: empty point set");
  const std::size_t n = points.size();
  Matrix g(n, n);
  if (spec.kind == KernelKind::DsilPhi) {
    const Matrix expanded = phi_expand_all(points);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = dot(expanded.row(i), expanded.row(j));
    }
    return g;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const JointPoint pi = points.point(i);
    for (std::size_t j = i; j < n; ++j) g(i, j) = g(j, i) = evaluate(spec, pi, points.point(j));
  }
  return g;
}

Matrix cross_kernel(const PointSet& a, const PointSet& b, const KernelSpec& spec) {
  if (a.x_dim() != b.x_dim() || a.s_dim() != b.s_dim()) {
    throw DataError("cross_kernel: point sets have different dimensions");
  }
  Matrix k(a.size(), b.size());
  if (spec.kind == KernelKind::DsilPhi) {
    const Matrix ea = phi_expand_all(a);
    const Matrix eb = phi_expand_all(b);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) k(i, j) = dot(ea.row(i), eb.row(j));
    }
    return k;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const JointPoint pi = a.point(i);
    for (std::size_t j = 0; j < b.size(); ++j) k(i, j) = evaluate(spec, pi, b.point(j));
  }
  return k;
}

}  // namespace zsk
