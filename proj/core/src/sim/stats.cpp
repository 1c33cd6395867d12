#include "cellaoi/sim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cellaoi::sim {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

SimEstimate estimate_mean(const std::vector<double>& samples, std::uint64_t master_seed) {
  SimEstimate e;
  e.master_seed = master_seed;
  e.n_samples = static_cast<std::int64_t>(samples.size());
  if (samples.empty()) {
    e.value = std::numeric_limits<double>::quiet_NaN();
    return e;
  }
  CompensatedSum s;
  for (double x : samples) s.add(x);
  const double n = static_cast<double>(samples.size());
  e.value = s.value() / n;
  if (samples.size() > 1) {
    CompensatedSum ss;
    for (double x : samples) ss.add((x - e.value) * (x - e.value));
    e.ci_half_width = 1.959963984540054 * std::sqrt(ss.value() / (n - 1.0) / n);
  }
  return e;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) return 1.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf,
                   const std::function<double(double)>& cdf_left) {
  if (samples.empty()) return 1.0;
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < samples.size()) {
    const double x = samples[i];
    const double below = i / n;
    while (i < samples.size() && samples[i] == x) ++i;
    const double upto = i / n;
    d = std::max({d, std::abs(cdf_left(x) - below), std::abs(cdf(x) - upto)});
  }
  return d;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  const std::size_t n = std::max(p.size(), q.size());
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double a = k < p.size() ? p[k] : 0.0;
    const double b = k < q.size() ? q[k] : 0.0;
    s += std::abs(a - b);
  }
  return 0.5 * s;
}

std::vector<double> empirical_pmf(const std::vector<int>& samples) {
  std::vector<double> pmf;
  for (int x : samples) {
    if (x < 0) continue;
    if (static_cast<std::size_t>(x) >= pmf.size()) pmf.resize(static_cast<std::size_t>(x) + 1, 0.0);
    pmf[static_cast<std::size_t>(x)] += 1.0;
  }
  for (double& v : pmf) v /= static_cast<double>(samples.size());
  return pmf;
}

}  // namespace cellaoi::sim
