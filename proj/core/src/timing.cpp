#include "zsk/timing.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <random>

#include "zsk/error.hpp"

namespace zsk {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

// Kernel calls whose results are never read could be elided; fold them into a sink.
volatile double g_sink = 0.0;

struct PairSample {
  std::vector<std::size_t> points;  ///< distinct point indices used by the sample
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  ///< indices into `points`
};

// Subset of points whose evaluated representation fits in this many bytes,
// as one block of a blocked Gram evaluation would.
constexpr std::size_t kSampleBlockBytes = std::size_t{4} << 20;

// Pairs are drawn from a small subset of points so the explicit-expansion
// path never has to hold all n expansions at once.
PairSample sample_pairs(std::size_t n, std::size_t wanted, std::size_t row_doubles) {
  PairSample s;
  std::size_t m = 1;
  while (m < n && m * (m + 1) / 2 < wanted) ++m;
  m = std::min(m, kSampleBlockBytes / (sizeof(double) * std::max<std::size_t>(row_doubles, 1)));
  m = std::min(n, std::max<std::size_t>(m, 2));
  std::mt19937_64 rng(0x5eed);
  std::vector<std::size_t> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = i;
  std::shuffle(all.begin(), all.end(), rng);
  s.points.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  for (std::size_t k = 0; k < wanted; ++k) {
    std::size_t a = pick(rng);
    std::size_t b = pick(rng);
    if (a > b) std::swap(a, b);
    s.pairs.emplace_back(a, b);
  }
  return s;
}

}  // namespace

std::vector<MethodVariant> default_timing_methods() {
  return {MethodVariant::bl_quadratic(), MethodVariant::dsil(DsilFormulation::Phi),
          MethodVariant::dsil(DsilFormulation::KPhi), MethodVariant::dsil(DsilFormulation::KQ)};
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

double measure_kernel_cost(const PointSet& points, const KernelSpec& kernel, std::size_t sample) {
  if (points.empty()) throw DataError("measure_kernel_cost: empty point set");
  const std::size_t n = points.size();
  const double full_pairs = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
  if (sample == 0 || static_cast<double>(sample) >= full_pairs) {
    const auto start = Clock::now();
    const Matrix g = gram_matrix(points, kernel);
    const double t = elapsed(start);
    g_sink = g_sink + g(0, 0);
    return t;
  }

  const std::size_t row_doubles =
      kernel.kind == KernelKind::DsilPhi ? phi_dim(points.x_dim(), points.s_dim()) : points.width();
  const PairSample s = sample_pairs(n, sample, row_doubles);
  const double scale = full_pairs / static_cast<double>(s.pairs.size());
  double acc = 0.0;
  if (kernel.kind == KernelKind::DsilPhi) {
    const PointSet subset = points.select(s.points);
    auto start = Clock::now();
    const Matrix expanded = phi_expand_all(subset);
    const double expand_seconds = elapsed(start) * static_cast<double>(n) / static_cast<double>(s.points.size());
    start = Clock::now();
    for (const auto& [a, b] : s.pairs) acc += dot(expanded.row(a), expanded.row(b));
    const double pair_seconds = elapsed(start) * scale;
    g_sink = g_sink + acc;
    return expand_seconds + pair_seconds;
  }
  const auto start = Clock::now();
  for (const auto& [a, b] : s.pairs) {
    acc += evaluate(kernel, points.point(s.points[a]), points.point(s.points[b]));
  }
  const double t = elapsed(start) * scale;
  g_sink = g_sink + acc;
  return t;
}

std::vector<TimingRecord> run_timing(const std::vector<TimingDataset>& grid, const std::vector<MethodVariant>& methods,
                                     const TimingOptions& options) {
  if (options.repeats < 1) throw ValidationError("run_timing: repeats must be >= 1");
  for (const auto& m : methods) (void)method_kernel(m);  // single-kernel methods only
  options.svr.validate();

  std::vector<TimingRecord> out;
  for (const auto& cell : grid) {
    const PointSet points = joint_points(cell.data);
    for (const auto& method : methods) {
      TimingRecord rec;
      rec.method = method.name();
      rec.joint_features = cell.joint_features();
      rec.instances = cell.data.rows();
      const KernelSpec kernel = method_kernel(method);
      const std::size_t runs = options.repeats + (options.warmup ? 1 : 0);
      for (std::size_t r = 0; r < runs; ++r) {
        const bool measured = !(options.warmup && r == 0);
        double kernel_seconds = 0.0;
        if (options.include_fit) {
          const auto start = Clock::now();
          const ZeroShotRegressor reg = ZeroShotRegressor::fit(cell.data, method, options.svr);
          const auto pred = reg.predict(cell.data);
          const double t = elapsed(start);
          g_sink = g_sink + pred.front();
          if (measured) rec.seconds.push_back(t);
          kernel_seconds = std::get<SingleModelState>(reg.state()).model.diagnostics().kernel_seconds;
        }
        if (options.kernel_sample_pairs > 0 || !options.include_fit) {
          kernel_seconds = measure_kernel_cost(points, kernel, options.kernel_sample_pairs);
        }
        if (measured) rec.kernel_seconds.push_back(kernel_seconds);
      }
      rec.seconds_median = median(rec.seconds);
      rec.kernel_seconds_median = median(rec.kernel_seconds);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

CurveFit polyfit(const std::vector<double>& x, const std::vector<double>& y, std::size_t degree) {
  if (x.size() != y.size() || x.size() < degree + 1) throw DataError("polyfit: not enough points");
  const auto n = static_cast<Eigen::Index>(x.size());
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  Eigen::MatrixXd a(n, cols);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (Eigen::Index c = 0; c < cols; ++c) {
      a(i, c) = p;
      p *= x[static_cast<std::size_t>(i)];
    }
    b(i) = y[static_cast<std::size_t>(i)];
  }
  const Eigen::VectorXd coef = a.colPivHouseholderQr().solve(b);
  const Eigen::VectorXd resid = b - a * coef;
  CurveFit fit;
  fit.coefficients.assign(coef.data(), coef.data() + coef.size());
  fit.rss = resid.squaredNorm();
  const double tss = (b.array() - b.mean()).square().sum();
  fit.r_squared = tss > 0.0 ? 1.0 - fit.rss / tss : 1.0;
  return fit;
}

}  // namespace zsk
