#include "alcove/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace alcove {

MeanEstimate mean_estimate(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of empty sample");
  // Welford
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (double x : xs) {
    ++n;
    const double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  return {mean, std::sqrt(var / static_cast<double>(n)), n};
}

namespace {

double ks_sorted(const std::vector<double>& s, std::span<const double> f) {
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double lo = static_cast<double>(i) / n, hi = static_cast<double>(i + 1) / n;
    d = std::max({d, std::abs(f[i] - lo), std::abs(hi - f[i])});
  }
  return d;
}

}  // namespace

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("KS of empty sample");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  std::vector<double> f(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) f[i] = cdf(s[i]);
  return ks_sorted(s, f);
}

double ks_statistic_batch(std::span<const double> samples,
                          const std::function<void(std::span<const double>, std::span<double>)>& cdf_batch) {
  if (samples.empty()) throw std::invalid_argument("KS of empty sample");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  std::vector<double> f(s.size());
  cdf_batch(s, f);
  return ks_sorted(s, f);
}

double ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("KS of empty sample");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double na = static_cast<double>(x.size()), nb = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double kolmogorov_tail(double x) {
  if (x <= 0.0) return 1.0;
  double s = 0.0;
  for (int k = 1; k < 200; ++k) {
    const double term = std::exp(-2.0 * k * k * x * x);
    s += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-18) break;
  }
  return std::clamp(s, 0.0, 1.0);
}

MeanEstimate empirical_laplace(std::span<const double> samples, double tau) {
  std::vector<double> e(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) e[i] = std::exp(-tau * samples[i]);
  return mean_estimate(e);
}

}  // namespace alcove
