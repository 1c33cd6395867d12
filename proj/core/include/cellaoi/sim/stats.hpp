#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace cellaoi::sim {

/// Point estimate of a simulated metric with a 95% normal-approximation
/// confidence half-width.
struct SimEstimate {
  double value = 0.0;
  std::int64_t n_samples = 0;
  double ci_half_width = 0.0;
  std::uint64_t master_seed = 0;

  double lower() const noexcept { return value - ci_half_width; }
  double upper() const noexcept { return value + ci_half_width; }
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Mean and 95% half-width of the samples, summed in index order.
SimEstimate estimate_mean(const std::vector<double>& samples, std::uint64_t master_seed = 0);

/// Two-sample Kolmogorov-Smirnov distance; +inf entries are allowed.
double ks_distance(std::vector<double> a, std::vector<double> b);

/// One-sample KS distance of the samples against a (possibly discontinuous) CDF.
/// `cdf_left(x)` must return P[X < x] and `cdf(x)` P[X <= x].
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left);

/// Total-variation distance between two pmfs on {0, 1, ...}; missing entries are 0.
double total_variation(const std::vector<double>& p, const std::vector<double>& q);

/// Normalized histogram of non-negative integer samples.
std::vector<double> empirical_pmf(const std::vector<int>& samples);

}  // namespace cellaoi::sim
