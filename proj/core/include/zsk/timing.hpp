#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "zsk/datagen.hpp"
#include "zsk/kernels.hpp"
#include "zsk/methods.hpp"
#include "zsk/svr.hpp"

namespace zsk {

/// BL_Q, DSIL_Phi, DSIL_KPhi, DSIL_KQ.
std::vector<MethodVariant> default_timing_methods();

struct TimingOptions {
  std::size_t repeats = 3;
  bool warmup = true;          ///< one discarded run before the measured repeats
  bool include_fit = true;     ///< time a full fit + predict per repeat
  /// 0: time full Gram construction. Otherwise time this many sampled
  /// kernel evaluations and scale to the n(n+1)/2 entries of a full Gram
  /// matrix; the explicit-expansion path also pays the expansion of all n
  /// points, estimated from the sampled points.
  std::size_t kernel_sample_pairs = 0;
  SvrConfig svr;
};

struct TimingRecord {
  std::string method;
  std::size_t joint_features = 0;  ///< a_x + a_s
  std::size_t instances = 0;       ///< n_o * m_o
  std::vector<double> seconds;         ///< fit + predict, one per repeat (empty if not timed)
  std::vector<double> kernel_seconds;  ///< Gram construction cost, one per repeat
  double seconds_median = 0.0;
  double kernel_seconds_median = 0.0;
};

/// Kernel-evaluation cost of a full Gram matrix over `points`, in seconds.
double measure_kernel_cost(const PointSet& points, const KernelSpec& kernel, std::size_t sample_pairs);

/// Runs every (dataset, method) cell serially; each repeat is a train-test
/// run on the whole dataset with a fixed C.
std::vector<TimingRecord> run_timing(const std::vector<TimingDataset>& grid, const std::vector<MethodVariant>& methods,
                                     const TimingOptions& options);

double median(std::vector<double> values);

struct CurveFit {
  std::vector<double> coefficients;  ///< lowest degree first
  double rss = 0.0;
  double r_squared = 0.0;
};

/// Least-squares polynomial fit of the given degree (1 or 2 in practice).
CurveFit polyfit(const std::vector<double>& x, const std::vector<double>& y, std::size_t degree);

}  // namespace zsk
